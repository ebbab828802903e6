#pragma once

#include <cstdint>
#include <span>

#include "estlab/geometry.hpp"

namespace estlab::counting {

using geometry::ExponentMode;
using geometry::Matrix;
using geometry::NormKind;
using geometry::Vector;

enum class Variant { est, kesten };

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Enumeration budget in candidates; ESTLAB_BUDGET overrides the default.
std::uint64_t default_budget();

/// One counting experiment: m linear forms in n variables, ||q|| in
/// [w1, w2], and ||Xq - p|| at most bound(||q||).
struct CountSpec {
    int m = 1;
    int n = 1;
    double A = 1.0;
    double w1 = 1.0;
    double w2 = 2.0;
    Variant variant = Variant::est;
    std::int64_t N = 1;
    NormKind norm_x = NormKind::supremum;
    NormKind norm_y = NormKind::supremum;
    ExponentMode exponent_mode = ExponentMode::consistent;
    std::uint64_t budget = default_budget();

    void validate() const;
    /// Admissible radius for ||Xq - p|| given ||q||.
    double bound(double q_norm) const;
};

/// EST: ||q|| in [c1 N, c2 N], ||Xq - p|| <= A ||q||^{-n/m} (consistent).
CountSpec est_spec(double A, double c1, double c2, std::int64_t N, int m = 1, int n = 1,
                   NormKind norm = NormKind::supremum,
                   ExponentMode mode = ExponentMode::consistent);
/// Kesten: ||q|| in [1, N], ||Xq - p|| <= A N^{-n/m} (consistent).
CountSpec kesten_spec(double A, std::int64_t N, int m = 1, int n = 1,
                      NormKind norm = NormKind::supremum,
                      ExponentMode mode = ExponentMode::consistent);
/// Diophantine counting problem whose lattice-side limit region is `region`:
/// wedges become EST problems and boxes Kesten problems, both with
/// ||q|| in [c1 N, c2 N]. Requires y_sign = positive_cone.
CountSpec spec_for_region(const geometry::Region& region, std::int64_t N);

struct CurveSpec {
    int dimension = 2;
    double a = 0.0;
    double b = 1.0;
};

/// The Veronese curve (s, s^2, ..., s^dim) as a column vector.
Vector veronese(double s, int dimension);

/// Reduced fractions p/q with q in [c1 N, c2 N] and q |q alpha - p| <= A.
std::int64_t count_est_1d(double alpha, double A, double c1, double c2, std::int64_t N);
/// Primitive (p, q) with 1 <= q <= N and |alpha q - p| <= A / N.
std::int64_t count_kesten_1d(double alpha, double A, std::int64_t N);
/// Primitive (p, q) in Z^m x Z^n, q in the positive cone, ||q|| in the spec window.
std::int64_t count_md(const Matrix& X, const CountSpec& spec);
std::int64_t count_curve(double s, const CurveSpec& curve, const CountSpec& spec);
/// Primitive v in Z^2 with r_theta v in H_{A, c1 N, c2 N} (wedge) or in
/// R_{A,N} = {|x| <= A, 0 < y <= N} (box; c1 and c2 are unused).
std::int64_t count_circle(double theta, double A, double c1, double c2, std::int64_t N,
                          geometry::RegionFamily family);

bool is_primitive(std::span<const std::int64_t> w);

}  // namespace estlab::counting
