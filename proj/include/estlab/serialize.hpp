#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "estlab/geometry.hpp"
#include "estlab/lattice.hpp"
#include "estlab/process.hpp"
#include "estlab/stats.hpp"

namespace estlab {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits; output files print these values, so
/// they stay byte-stable under deterministic arithmetic.
double round12(double x);
/// x printed with 12 significant digits.
std::string format12(double x);

namespace geometry {
void to_json(Json& j, const Region& r);
void from_json(const Json& j, Region& r);
}  // namespace geometry

namespace lattice {
/// Row-major matrix.
Json basis_to_json(const LatticeBasis& lat);
LatticeBasis basis_from_json(const Json& j);
}  // namespace lattice

namespace process {
void to_json(Json& j, const SamplerSpec& s);
void from_json(const Json& j, SamplerSpec& s);
}  // namespace process

namespace stats {
void to_json(Json& j, const MomentReport& r);
void to_json(Json& j, const ConcentrationReport& r);
void to_json(Json& j, const Comparison& c);
/// {"pmf": {k: p}, "counts": {k: n}, "samples": total}.
Json distribution_json(const EmpiricalDistribution& e);
}  // namespace stats

}  // namespace estlab
