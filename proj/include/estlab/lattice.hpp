#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "estlab/counting.hpp"
#include "estlab/geometry.hpp"
#include "estlab/process.hpp"
#include "estlab/random.hpp"
#include "estlab/stats.hpp"

namespace estlab::lattice {

using geometry::Matrix;
using geometry::Vector;

/// g Z^d stored as the d x d matrix g; columns are basis vectors.
class LatticeBasis {
public:
    /// Throws Error(invalid_argument) unless square with det 1 (see determinant_slack).
    explicit LatticeBasis(Matrix basis);

    static LatticeBasis identity(int d) { return LatticeBasis(Matrix::Identity(d, d)); }

    int dimension() const { return static_cast<int>(basis_.rows()); }
    const Matrix& basis() const { return basis_; }

    /// The lattice g' g Z^d.
    LatticeBasis transformed(const geometry::GroupElement& g) const;

private:
    Matrix basis_;
};

struct HaarSample2 {
    double tau_x = 0.0;
    double tau_y = 1.0;
    double phi = 0.0;
    int attempts = 1;  // rejection-loop iterations used
    LatticeBasis basis = LatticeBasis::identity(2);
};

/// Haar-random unimodular lattice in R^2: tau from dx dy / y^2 on the standard
/// fundamental domain, rotated by a uniform angle.
HaarSample2 sample_haar_lattice2(Rng& rng);

/// Basis rotation(phi) * (1/sqrt(tau_y)) * (1, tau_x; 0, tau_y).
LatticeBasis haar_basis(double tau_x, double tau_y, double phi);

struct Disc {
    double radius = 1.0;
};

using Target = std::variant<geometry::Region, Disc>;
using Coord2 = std::array<std::int64_t, 2>;

/// Primitive w (gcd 1) with basis * w in the target, sorted lexicographically.
/// Errors: "dimension" unless d = 2, "unbounded", "budget".
std::vector<Coord2> enumerate_primitive(const LatticeBasis& lat, const Target& target,
                                        std::uint64_t budget = counting::default_budget());
std::int64_t lattice_count(const LatticeBasis& lat, const Target& target,
                           std::uint64_t budget = counting::default_budget());

/// Length of a shortest nonzero vector (Lagrange-Gauss reduction).
double shortest_vector_length(const LatticeBasis& lat);

process::EquivariantProcess<LatticeBasis> haar_lattice_process();

/// Empirical distribution of lattice_count over Haar-random lattices.
stats::EmpiricalDistribution estimate_lattice_pmf(const geometry::Region& region,
                                                  std::uint64_t samples, std::uint64_t seed,
                                                  unsigned workers = 1);

}  // namespace estlab::lattice
