#pragma once

#include <cmath>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace estlab::geometry {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class NormKind { supremum, euclidean };
enum class RegionFamily { hyperbolic_wedge, box };
// consistent: ||x|| * ||y||^(n/m) <= A.  paper_literal: ||x|| * ||y|| <= A.
enum class ExponentMode { consistent, paper_literal };
// positive_cone keeps one representative of each +-y pair: y > 0 for n = 1,
// first nonzero coordinate positive for n >= 2.
enum class YSign { positive_cone, full };

// Relative slack on every non-strict inequality. Keeps the direct counters
// and the lattice-side enumerator in agreement when the same point is
// reached through different floating-point paths (q = N vs q * e^{-log N}).
inline constexpr double kBoundaryTolerance = 1e-12;

inline bool leq(double lhs, double rhs) {
    return lhs <= rhs + kBoundaryTolerance * std::abs(rhs);
}

double norm(NormKind kind, std::span<const double> v);
double norm(NormKind kind, const Vector& v);

/// Lebesgue volume of the unit ball of `kind` in R^dim.
double unit_ball_volume(NormKind kind, int dim);

struct Region {
    RegionFamily family = RegionFamily::hyperbolic_wedge;
    int m = 1;
    int n = 1;
    double A = 1.0;
    double c1 = 1.0;
    double c2 = 2.0;
    NormKind norm_x = NormKind::supremum;
    NormKind norm_y = NormKind::supremum;
    ExponentMode exponent_mode = ExponentMode::consistent;
    YSign y_sign = YSign::positive_cone;

    int dimension() const { return m + n; }
    /// Exponent on ||y|| in the wedge predicate.
    double kappa() const;
    /// Throws Error(invalid_argument) when the invariants do not hold.
    void validate() const;
};

/// H_{A,c1,c2}: ||x|| ||y||^kappa <= A, c1 <= ||y|| <= c2.
Region wedge(double A, double c1, double c2, int m = 1, int n = 1,
             NormKind norm = NormKind::supremum,
             ExponentMode mode = ExponentMode::consistent);
/// R_{A,c1,c2}: ||x|| <= A, c1 <= ||y|| <= c2. Defaults give R_A.
Region box(double A, double c1 = 0.0, double c2 = 1.0, int m = 1, int n = 1,
           NormKind norm = NormKind::supremum);

bool contains(const Region& region, std::span<const double> v);
bool contains(const Region& region, const Vector& v);

struct Volume {
    double value = 0.0;
    bool numeric = false;  // true when obtained by quadrature
};

Volume volume(const Region& region);

struct BoundingBox {
    Vector lo;
    Vector hi;
};

/// Axis-aligned box containing the region (with y restricted per y_sign).
BoundingBox bounding_box(const Region& region);

/// Preimage of `region` under diag_flow(t, m, n): {v : diag_flow(t) v in region}.
/// Diagonal flows map both families onto themselves.
Region pullback(const Region& region, double t);

class GroupElement {
public:
    /// Throws Error(invalid_argument) unless square with determinant 1.
    explicit GroupElement(Matrix matrix);

    const Matrix& matrix() const { return matrix_; }
    int dimension() const { return static_cast<int>(matrix_.rows()); }

    GroupElement operator*(const GroupElement& other) const;
    Vector operator*(const Vector& v) const { return matrix_ * v; }
    GroupElement inverse() const;

private:
    Matrix matrix_;
};

/// Allowed |det - 1| for a matrix meant to lie in SL_d: 1e-10 scaled by the
/// Hadamard bound, since rounding in det grows with the entries.
double determinant_slack(const Matrix& g);

/// diag(e^{t/m} Id_m, e^{-t/n} Id_n); the last n coordinates contract for t > 0.
GroupElement diag_flow(double t, int m, int n);
/// (Id_m, -X; 0, Id_n), so shear(alpha) (p, q) = (p - alpha q, q).
GroupElement shear(const Matrix& X);
GroupElement shear(double alpha);
GroupElement rotation(double theta);

std::string_view to_string(NormKind kind);
std::string_view to_string(RegionFamily family);
std::string_view to_string(ExponentMode mode);
std::string_view to_string(YSign sign);

}  // namespace estlab::geometry
