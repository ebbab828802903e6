#include "estlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "estlab/error.hpp"

namespace estlab::geometry {

namespace {

[[noreturn]] void invalid(const std::string& msg) {
    throw Error(ErrorKind::invalid_argument, msg);
}

bool first_nonzero_positive(std::span<const double> y) {
    for (double v : y) {
        if (v > 0.0) return true;
        if (v < 0.0) return false;
    }
    return false;
}

}  // namespace

double norm(NormKind kind, std::span<const double> v) {
    if (v.size() == 1) return std::abs(v[0]);
    if (kind == NormKind::supremum) {
        double r = 0.0;
        for (double x : v) r = std::max(r, std::abs(x));
        return r;
    }
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm(NormKind kind, const Vector& v) {
    return norm(kind, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

double unit_ball_volume(NormKind kind, int dim) {
    if (dim < 1) invalid("unit ball dimension must be positive");
    if (kind == NormKind::supremum || dim == 1) return std::ldexp(1.0, dim);
    const double half = 0.5 * dim;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double Region::kappa() const {
    if (exponent_mode == ExponentMode::paper_literal) return 1.0;
    return static_cast<double>(n) / static_cast<double>(m);
}

void Region::validate() const {
    if (m < 1 || n < 1) invalid("region dimensions m, n must be positive");
    if (!(A > 0.0)) invalid("region requires A > 0");
    if (family == RegionFamily::hyperbolic_wedge) {
        if (!(c1 > 0.0 && c1 < c2)) invalid("hyperbolic wedge requires 0 < c1 < c2");
    } else if (!(c1 >= 0.0 && c1 < c2)) {
        invalid("box requires 0 <= c1 < c2");
    }
}

Region wedge(double A, double c1, double c2, int m, int n, NormKind norm, ExponentMode mode) {
    Region r{RegionFamily::hyperbolic_wedge, m, n, A, c1, c2, norm, norm, mode, YSign::positive_cone};
    r.validate();
    return r;
}

Region box(double A, double c1, double c2, int m, int n, NormKind norm) {
    Region r{RegionFamily::box, m, n, A, c1, c2, norm, norm, ExponentMode::consistent,
             YSign::positive_cone};
    r.validate();
    return r;
}

bool contains(const Region& region, std::span<const double> v) {
    const auto m = static_cast<std::size_t>(region.m);
    const auto n = static_cast<std::size_t>(region.n);
    if (v.size() != m + n) {
        std::ostringstream os;
        os << "dimension mismatch: region expects " << m + n << " coordinates, got " << v.size();
        throw Error(ErrorKind::dimension, os.str());
    }
    const auto x = v.first(m);
    const auto y = v.subspan(m, n);
    if (region.y_sign == YSign::positive_cone && !first_nonzero_positive(y)) return false;

    const double ny = norm(region.norm_y, y);
    if (!leq(region.c1, ny) || !leq(ny, region.c2)) return false;
    const double nx = norm(region.norm_x, x);
    if (region.family == RegionFamily::box) return leq(nx, region.A);
    return leq(nx * std::pow(ny, region.kappa()), region.A);
}

bool contains(const Region& region, const Vector& v) {
    return contains(region, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

Volume volume(const Region& region) {
    region.validate();
    const int m = region.m;
    const int n = region.n;
    const double vx = unit_ball_volume(region.norm_x, m);
    const double vy = unit_ball_volume(region.norm_y, n);
    // positive_cone keeps half of every centrally symmetric y-shell.
    const double cone = region.y_sign == YSign::positive_cone ? 0.5 : 1.0;

    if (region.family == RegionFamily::box) {
        const double shell = vy * (std::pow(region.c2, n) - std::pow(region.c1, n));
        return {vx * std::pow(region.A, m) * shell * cone, false};
    }
    const double kappa = region.kappa();
    if (std::abs(kappa * m - n) < 1e-15) {
        // x-ball radius A r^{-n/m} cancels the r^{n-1} shell density.
        return {vx * std::pow(region.A, m) * n * vy * std::log(region.c2 / region.c1) * cone, false};
    }
    // Shell integrand: vol of the x-ball at radius r times the y-shell density.
    auto integrand = [&](double r) {
        return vx * std::pow(region.A * std::pow(r, -kappa), m) * n * vy * std::pow(r, n - 1);
    };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, region.c1, region.c2, 15, 1e-8, &error);
    return {value * cone, true};
}

BoundingBox bounding_box(const Region& region) {
    const int m = region.m;
    const int n = region.n;
    BoundingBox bb{Vector(m + n), Vector(m + n)};
    double xmax = region.A;
    if (region.family == RegionFamily::hyperbolic_wedge) {
        xmax = region.A / std::pow(region.c1, region.kappa());
    }
    for (int i = 0; i < m; ++i) {
        bb.lo[i] = -xmax;
        bb.hi[i] = xmax;
    }
    for (int j = 0; j < n; ++j) {
        bb.lo[m + j] = -region.c2;
        bb.hi[m + j] = region.c2;
    }
    if (region.y_sign == YSign::positive_cone) {
        // First coordinate of y is >= 0 in the cone; for n = 1 also >= c1.
        bb.lo[m] = n == 1 ? region.c1 : 0.0;
    }
    return bb;
}

Region pullback(const Region& region, double t) {
    Region out = region;
    const double y_scale = std::exp(t / region.n);
    out.c1 *= y_scale;
    out.c2 *= y_scale;
    if (region.family == RegionFamily::box) {
        out.A *= std::exp(-t / region.m);
    } else if (region.exponent_mode == ExponentMode::paper_literal) {
        // ||x|| ||y|| picks up e^{t/m} e^{-t/n}.
        out.A *= std::exp(t / region.n - t / region.m);
    }
    return out;
}

double determinant_slack(const Matrix& g) {
    double hadamard = 1.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i) hadamard *= g.row(i).norm();
    return 1e-10 * std::max(1.0, hadamard);
}

GroupElement::GroupElement(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        invalid("group element must be a nonempty square matrix");
    }
    const double det = matrix_.determinant();
    if (!(std::abs(det - 1.0) <= determinant_slack(matrix_))) {
        std::ostringstream os;
        os << "group element must have determinant 1, got " << det;
        invalid(os.str());
    }
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
    if (dimension() != other.dimension()) throw Error(ErrorKind::dimension, "dimension mismatch in product");
    return GroupElement(matrix_ * other.matrix_);
}

GroupElement GroupElement::inverse() const { return GroupElement(matrix_.inverse()); }

GroupElement diag_flow(double t, int m, int n) {
    if (m < 1 || n < 1) invalid("diag_flow requires positive block sizes");
    Vector diag(m + n);
    diag.head(m).setConstant(std::exp(t / m));
    diag.tail(n).setConstant(std::exp(-t / n));
    return GroupElement(Matrix(diag.asDiagonal()));
}

GroupElement shear(const Matrix& X) {
    const auto m = X.rows();
    const auto n = X.cols();
    Matrix u = Matrix::Identity(m + n, m + n);
    u.topRightCorner(m, n) = -X;
    return GroupElement(std::move(u));
}

GroupElement shear(double alpha) { return shear(Matrix::Constant(1, 1, alpha)); }

GroupElement rotation(double theta) {
    Matrix r(2, 2);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    r << c, -s, s, c;
    return GroupElement(std::move(r));
}

std::string_view to_string(NormKind kind) {
    return kind == NormKind::supremum ? "supremum" : "euclidean";
}

std::string_view to_string(RegionFamily family) {
    return family == RegionFamily::hyperbolic_wedge ? "HyperbolicWedge" : "Box";
}

std::string_view to_string(ExponentMode mode) {
    return mode == ExponentMode::consistent ? "consistent" : "paper_literal";
}

std::string_view to_string(YSign sign) {
    return sign == YSign::positive_cone ? "positive_cone" : "full";
}

}  // namespace estlab::geometry
