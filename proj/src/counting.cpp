#include "estlab/counting.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "estlab/error.hpp"
#include "estlab/lattice.hpp"

namespace estlab::counting {

using geometry::kBoundaryTolerance;
using geometry::leq;

namespace {

[[noreturn]] void budget_exceeded(double candidates, std::uint64_t budget) {
    std::ostringstream os;
    os << "enumeration budget exceeded: " << candidates << " candidates > limit " << budget
       << " (set ESTLAB_BUDGET to raise it)";
    throw Error(ErrorKind::budget, os.str());
}

std::int64_t ceil_lo(double v) {
    return static_cast<std::int64_t>(std::ceil(v - kBoundaryTolerance * std::abs(v)));
}

std::int64_t floor_hi(double v) {
    return static_cast<std::int64_t>(std::floor(v + kBoundaryTolerance * std::abs(v)));
}

// Shared by the 1-D counters: primitive p with |q alpha - p| <= radius.
std::int64_t count_near(double alpha, std::int64_t q, double radius) {
    const double center = static_cast<double>(q) * alpha;
    std::int64_t count = 0;
    for (auto p = ceil_lo(center - radius) - 1; p <= floor_hi(center + radius) + 1; ++p) {
        if (leq(std::abs(center - static_cast<double>(p)), radius) && std::gcd(p, q) == 1) ++count;
    }
    return count;
}

}  // namespace

std::uint64_t default_budget() {
    static const std::uint64_t budget = [] {
        if (const char* env = std::getenv("ESTLAB_BUDGET")) {
            try {
                return static_cast<std::uint64_t>(std::stoull(env));
            } catch (const std::exception&) {
                return kDefaultBudget;
            }
        }
        return kDefaultBudget;
    }();
    return budget;
}

void CountSpec::validate() const {
    if (m < 1 || n < 1) throw Error(ErrorKind::invalid_argument, "count spec requires m, n >= 1");
    if (!(A > 0.0)) throw Error(ErrorKind::invalid_argument, "count spec requires A > 0");
    if (N < 1) throw Error(ErrorKind::invalid_argument, "count spec requires N >= 1");
    if (!(w1 >= 0.0 && w1 <= w2) || !std::isfinite(w2)) {
        throw Error(ErrorKind::invalid_argument, "count spec requires 0 <= w1 <= w2 < inf");
    }
}

double CountSpec::bound(double q_norm) const {
    const double exponent = exponent_mode == ExponentMode::consistent
                                ? static_cast<double>(n) / m
                                : 1.0 / static_cast<double>(m + n);
    const double base = variant == Variant::est ? q_norm : static_cast<double>(N);
    return A * std::pow(base, -exponent);
}

CountSpec est_spec(double A, double c1, double c2, std::int64_t N, int m, int n, NormKind norm,
                   ExponentMode mode) {
    if (!(c1 > 0.0 && c1 < c2)) throw Error(ErrorKind::invalid_argument, "EST requires 0 < c1 < c2");
    CountSpec s{m, n, A, c1 * static_cast<double>(N), c2 * static_cast<double>(N), Variant::est, N,
                norm, norm, mode};
    s.validate();
    return s;
}

CountSpec kesten_spec(double A, std::int64_t N, int m, int n, NormKind norm, ExponentMode mode) {
    CountSpec s{m, n, A, 1.0, static_cast<double>(N), Variant::kesten, N, norm, norm, mode};
    s.validate();
    return s;
}

CountSpec spec_for_region(const geometry::Region& region, std::int64_t N) {
    region.validate();
    if (region.y_sign != geometry::YSign::positive_cone) {
        throw Error(ErrorKind::invalid_argument, "Diophantine counting requires a positive_cone region");
    }
    const auto Nd = static_cast<double>(N);
    CountSpec s{region.m,
                region.n,
                region.A,
                region.c1 * Nd,
                region.c2 * Nd,
                region.family == geometry::RegionFamily::hyperbolic_wedge ? Variant::est
                                                                          : Variant::kesten,
                N,
                region.norm_x,
                region.norm_y,
                region.exponent_mode};
    s.validate();
    return s;
}

Vector veronese(double s, int dimension) {
    Vector v(dimension);
    double power = 1.0;
    for (int i = 0; i < dimension; ++i) {
        power *= s;
        v[i] = power;
    }
    return v;
}

std::int64_t count_est_1d(double alpha, double A, double c1, double c2, std::int64_t N) {
    if (!(c1 > 0.0 && c1 < c2)) throw Error(ErrorKind::invalid_argument, "EST requires 0 < c1 < c2");
    if (N < 1) throw Error(ErrorKind::invalid_argument, "EST requires N >= 1");
    const double lo = c1 * static_cast<double>(N);
    const double hi = c2 * static_cast<double>(N);
    std::int64_t count = 0;
    for (auto q = std::max<std::int64_t>(1, ceil_lo(lo)); q <= floor_hi(hi); ++q) {
        const auto qd = static_cast<double>(q);
        if (!leq(lo, qd) || !leq(qd, hi)) continue;
        count += count_near(alpha, q, A / qd);
    }
    return count;
}

std::int64_t count_kesten_1d(double alpha, double A, std::int64_t N) {
    if (N < 1) throw Error(ErrorKind::invalid_argument, "Kesten requires N >= 1");
    const double radius = A / static_cast<double>(N);
    std::int64_t count = 0;
    for (std::int64_t q = 1; q <= N; ++q) count += count_near(alpha, q, radius);
    return count;
}

std::int64_t count_md(const Matrix& X, const CountSpec& spec) {
    spec.validate();
    const int m = spec.m;
    const int n = spec.n;
    if (X.rows() != m || X.cols() != n) {
        std::ostringstream os;
        os << "dimension mismatch: X is " << X.rows() << "x" << X.cols() << ", spec expects " << m
           << "x" << n;
        throw Error(ErrorKind::dimension, os.str());
    }

    const std::int64_t W = floor_hi(spec.w2);
    // For n = 1 the positive cone is q >= 1; otherwise scan the half cube
    // [0, W] x [-W, W]^{n-1}.
    const std::int64_t q_first = n == 1 ? std::max<std::int64_t>(1, ceil_lo(spec.w1)) : 0;
    const double candidates =
        static_cast<double>(W - q_first + 1) * std::pow(2.0 * static_cast<double>(W) + 1.0, n - 1);
    if (candidates > static_cast<double>(spec.budget)) budget_exceeded(candidates, spec.budget);

    std::vector<std::int64_t> q(n, -W);
    q[0] = q_first;
    std::vector<double> qd(n);
    std::vector<double> center(m);
    std::vector<double> diff(m);
    std::vector<std::int64_t> p_lo(m);
    std::vector<std::int64_t> p_hi(m);
    std::vector<std::int64_t> p(m);

    // Odometer over q; returns false once the cube is exhausted.
    auto advance_q = [&]() {
        for (int j = n - 1; j >= 0; --j) {
            if (q[j] < W) {
                ++q[j];
                return true;
            }
            q[j] = j == 0 ? q_first : -W;
        }
        return false;
    };

    std::int64_t count = 0;
    do {
        // Positive cone: first nonzero coordinate positive.
        int lead = 0;
        while (lead < n && q[lead] == 0) ++lead;
        if (lead == n || q[lead] < 0) continue;

        for (int j = 0; j < n; ++j) qd[j] = static_cast<double>(q[j]);
        const double q_norm = geometry::norm(spec.norm_y, std::span<const double>(qd));
        if (!leq(spec.w1, q_norm) || !leq(q_norm, spec.w2)) continue;

        const double radius = spec.bound(q_norm);
        bool empty = false;
        for (int i = 0; i < m; ++i) {
            double c = 0.0;
            for (int j = 0; j < n; ++j) c += X(i, j) * qd[j];
            center[i] = c;
            p_lo[i] = ceil_lo(c - radius) - 1;
            p_hi[i] = floor_hi(c + radius) + 1;
            empty = empty || p_lo[i] > p_hi[i];
        }
        if (empty) continue;

        std::int64_t q_gcd = 0;
        for (auto v : q) q_gcd = std::gcd(q_gcd, v);

        p = p_lo;
        while (true) {
            for (int i = 0; i < m; ++i) diff[i] = center[i] - static_cast<double>(p[i]);
            if (leq(geometry::norm(spec.norm_x, std::span<const double>(diff)), radius)) {
                std::int64_t g = q_gcd;
                for (auto v : p) g = std::gcd(g, v);
                if (g == 1) ++count;
            }
            int i = m - 1;
            while (i >= 0 && p[i] == p_hi[i]) {
                p[i] = p_lo[i];
                --i;
            }
            if (i < 0) break;
            ++p[i];
        }
    } while (advance_q());
    return count;
}

std::int64_t count_curve(double s, const CurveSpec& curve, const CountSpec& spec) {
    if (!(curve.a < curve.b)) throw Error(ErrorKind::invalid_argument, "curve interval requires a < b");
    if (spec.n != 1 || spec.m != curve.dimension) {
        throw Error(ErrorKind::dimension, "dimension mismatch: curve counting needs m = curve dimension, n = 1");
    }
    return count_md(Matrix(veronese(s, curve.dimension)), spec);
}

std::int64_t count_circle(double theta, double A, double c1, double c2, std::int64_t N,
                          geometry::RegionFamily family) {
    if (N < 1) throw Error(ErrorKind::invalid_argument, "circle counting requires N >= 1");
    const auto Nd = static_cast<double>(N);
    const geometry::Region region = family == geometry::RegionFamily::hyperbolic_wedge
                                        ? geometry::wedge(A, c1 * Nd, c2 * Nd)
                                        : geometry::box(A, 0.0, Nd);
    const lattice::LatticeBasis rotated(geometry::rotation(theta).matrix());
    return lattice::lattice_count(rotated, region, default_budget());
}

bool is_primitive(std::span<const std::int64_t> w) {
    std::int64_t g = 0;
    for (auto v : w) g = std::gcd(g, v);
    if (g == 0) throw Error(ErrorKind::zero_vector, "is_primitive: zero vector");
    return g == 1;
}

}  // namespace estlab::counting
