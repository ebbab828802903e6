#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "estlab/counting.hpp"
#include "estlab/error.hpp"
#include "estlab/lattice.hpp"
#include "oracles.hpp"

using namespace estlab;
using namespace estlab::counting;
using geometry::RegionFamily;

TEST_CASE("count_est_1d: enumeration examples") {
    CHECK(oracle::est_1d(0.5, 0.3, 1.0, 2.0, 10) == 0);
    CHECK(count_est_1d(0.5, 0.3, 1.0, 2.0, 10) == 0);
    CHECK(oracle::est_1d(0.0, 1.0, 1.0, 2.0, 2) == 0);
    CHECK(count_est_1d(0.0, 1.0, 1.0, 2.0, 2) == 0);
    // q = 1 admits p = -1, 0, 1 for alpha = 0 (boundary inclusive); q = 2 only p = 0, not coprime.
    CHECK(oracle::est_1d(0.0, 1.0, 1.0, 2.0, 1) == 3);
    CHECK(count_est_1d(0.0, 1.0, 1.0, 2.0, 1) == 3);
    CHECK_THROWS_AS(count_est_1d(0.3, 1.0, 2.0, 1.0, 10), Error);
}

TEST_CASE("count_est_1d: matches the exhaustive oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double alpha = u(rng);
        const double A = 0.05 + 2.0 * u(rng);
        const double c1 = 0.5 + u(rng);
        const double c2 = c1 + 0.1 + 2.0 * u(rng);
        const std::int64_t N = 1 + static_cast<std::int64_t>(60 * u(rng));
        CHECK(count_est_1d(alpha, A, c1, c2, N) == oracle::est_1d(alpha, A, c1, c2, N));
    }
}

TEST_CASE("count_est_1d: at most one solution when A < c/(1+c^2)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::int64_t N : {10, 100, 1000}) {
        for (double c : {1.5, 2.0, 3.0}) {
            const double A = 0.99 * c / (1 + c * c);
            bool ok = true;
            for (int i = 0; i < 2000; ++i) ok = ok && count_est_1d(u(rng), A, 1.0, c, N) <= 1;
            CHECK(ok);
        }
    }
}

TEST_CASE("count_kesten_1d: examples and oracle") {
    CHECK(count_kesten_1d(0.0, 0.5, 3) == 1);
    CHECK(oracle::kesten_1d(0.0, 0.5, 3) == 1);
    CHECK(count_kesten_1d(0.5, 1.0, 2) == 3);
    CHECK(oracle::kesten_1d(0.5, 1.0, 2) == 3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double alpha = 4.0 * u(rng) - 2.0;
        CHECK(count_kesten_1d(alpha, 1.0 + u(rng), 1) >= 1);
        const double A = 3.0 * u(rng);
        const std::int64_t N = 1 + static_cast<std::int64_t>(80 * u(rng));
        CHECK(count_kesten_1d(alpha, A, N) == oracle::kesten_1d(alpha, A, N));
    }
}

TEST_CASE("count_kesten_1d: reflection and integer-shift symmetry") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double alpha = u(rng);
        const double A = 2.0 * u(rng);
        const std::int64_t N = 1 + static_cast<std::int64_t>(500 * u(rng));
        const auto k = count_kesten_1d(alpha, A, N);
        CHECK(count_kesten_1d(1.0 - alpha, A, N) == k);
        CHECK(count_kesten_1d(alpha + 1.0, A, N) == k);
    }
}

TEST_CASE("counts are nondecreasing in A") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = u(rng);
        const std::int64_t N = 1 + static_cast<std::int64_t>(200 * u(rng));
        std::int64_t prev_est = 0;
        std::int64_t prev_kesten = 0;
        for (double A = 0.1; A < 3.0; A += 0.3) {
            const auto e = count_est_1d(alpha, A, 1.0, 2.0, N);
            const auto k = count_kesten_1d(alpha, A, N);
            CHECK(e >= prev_est);
            CHECK(k >= prev_kesten);
            prev_est = e;
            prev_kesten = k;
        }
    }
}

TEST_CASE("count_md: enumeration examples") {
    CHECK(count_md(Matrix::Zero(2, 1), kesten_spec(0.5, 3, 2, 1)) == 1);
    CHECK(count_md(Matrix::Zero(1, 2), kesten_spec(0.9, 2, 1, 2)) == 8);

    oracle::MdProblem pr;
    pr.m = 1;
    pr.n = 2;
    pr.X = {0.0, 0.0};
    pr.A = 0.9;
    pr.w1 = 1.0;
    pr.w2 = 2.0;
    pr.est = false;
    pr.N = 2;
    CHECK(oracle::md(pr, 3, 3) == 8);
}

TEST_CASE("count_md: m = n = 1 reduces to the 1-D counters") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double alpha = u(rng);
        const double A = 0.05 + 1.5 * u(rng);
        const std::int64_t N = 1 + static_cast<std::int64_t>(300 * u(rng));
        const Matrix X = Matrix::Constant(1, 1, alpha);
        CHECK(count_md(X, kesten_spec(A, N)) == count_kesten_1d(alpha, A, N));
        const double c = 1.1 + 2.0 * u(rng);
        CHECK(count_md(X, est_spec(A, 1.0, c, N)) == count_est_1d(alpha, A, 1.0, c, N));
    }
}

TEST_CASE("count_md: agrees with brute force on small instances") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int m = 1; m <= 2; ++m) {
        for (int n = 1; n <= 2; ++n) {
            for (int i = 0; i < 40; ++i) {
                oracle::MdProblem pr;
                pr.m = m;
                pr.n = n;
                pr.X.resize(m * n);
                Matrix X(m, n);
                for (int r = 0; r < m; ++r) {
                    for (int c = 0; c < n; ++c) X(r, c) = pr.X[r * n + c] = u(rng);
                }
                pr.A = 0.2 + u(rng);
                pr.N = 2 + static_cast<std::int64_t>(4 * u(rng));
                pr.est = i % 2 == 0;
                pr.consistent = i % 3 != 0;
                pr.norm = i % 4 < 2 ? geometry::NormKind::supremum : geometry::NormKind::euclidean;
                const auto mode = pr.consistent ? geometry::ExponentMode::consistent
                                                : geometry::ExponentMode::paper_literal;
                CountSpec spec = pr.est ? est_spec(pr.A, 1.0, 2.0, pr.N, m, n, pr.norm, mode)
                                        : kesten_spec(pr.A, pr.N, m, n, pr.norm, mode);
                pr.w1 = spec.w1;
                pr.w2 = spec.w2;
                const auto Q = static_cast<std::int64_t>(spec.w2) + 1;
                CHECK(count_md(X, spec) == oracle::md(pr, 2 * Q + 2, Q));
                ++checked;
            }
        }
    }
    CHECK(checked == 160);
}

TEST_CASE("count_md: errors") {
    CHECK_THROWS_WITH_AS(count_md(Matrix::Zero(2, 2), kesten_spec(0.5, 3, 2, 1)),
                         doctest::Contains("dimension"), Error);
    CountSpec spec = kesten_spec(0.5, 100000, 1, 2);
    spec.budget = 1000;
    try {
        count_md(Matrix::Zero(1, 2), spec);
        FAIL("expected a budget error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget);
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
}

TEST_CASE("count_curve") {
    const CurveSpec parabola{2, 0.0, 1.0};
    CHECK(count_curve(0.0, parabola, kesten_spec(0.5, 3, 2, 1)) == 1);

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng);
        const auto spec = kesten_spec(0.5, 50, 2, 1);
        CHECK(count_curve(s, parabola, spec) == count_md(Matrix(veronese(s, 2)), spec));
    }
    const CurveSpec line{1, 0.0, 1.0};
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng);
        CHECK(count_curve(s, line, est_spec(0.7, 1.0, 2.0, 40)) == oracle::est_1d(s, 0.7, 1.0, 2.0, 40));
    }
    CHECK_THROWS_AS(count_curve(0.5, parabola, kesten_spec(0.5, 3, 1, 1)), Error);
}

namespace {

// Every primitive v with |v|_inf <= R and rotated coordinates in the target.
std::int64_t brute_circle(double theta, double A, double c1, double c2, std::int64_t N, bool wedge, std::int64_t R) {
    std::int64_t count = 0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::int64_t p = -R; p <= R; ++p) {
        for (std::int64_t q = -R; q <= R; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const double x = c * p - s * q;
            const double y = s * p + c * q;
            if (y <= 0) continue;
            if (wedge) {
                if (y >= c1 * N * (1 - 1e-12) && y <= c2 * N * (1 + 1e-12) && std::abs(x) * y <= A * (1 + 1e-12)) ++count;
            } else if (y <= N * (1 + 1e-12) && std::abs(x) <= A * (1 + 1e-12)) {
                ++count;
            }
        }
    }
    return count;
}

}  // namespace

TEST_CASE("count_circle: examples, periodicity, brute force") {
    CHECK(count_circle(0.0, 1.0, 1.0, 2.0, 2, RegionFamily::hyperbolic_wedge) == 0);
    CHECK(count_circle(std::numbers::pi / 2, 0.5, 1.0, 2.0, 1, RegionFamily::box) == 1);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const double theta = u(rng);
        const double A = 0.2 + u(rng) / 3.0;
        const std::int64_t N = 1 + i % 12;
        const auto w = count_circle(theta, A, 1.0, 2.0, N, RegionFamily::hyperbolic_wedge);
        const auto b = count_circle(theta, A, 1.0, 2.0, N, RegionFamily::box);
        CHECK(w == count_circle(theta + 2.0 * std::numbers::pi, A, 1.0, 2.0, N, RegionFamily::hyperbolic_wedge));
        CHECK(b == count_circle(theta + 2.0 * std::numbers::pi, A, 1.0, 2.0, N, RegionFamily::box));
        CHECK(w == brute_circle(theta, A, 1.0, 2.0, N, true, 2 * N + 3));
        CHECK(b == brute_circle(theta, A, 1.0, 2.0, N, false, N + 3));
    }
}

TEST_CASE("is_primitive") {
    const std::vector<std::int64_t> a{2, 4};
    const std::vector<std::int64_t> b{0, 1};
    const std::vector<std::int64_t> c{6, 10, 15};
    const std::vector<std::int64_t> z{0, 0};
    CHECK_FALSE(is_primitive(a));
    CHECK(is_primitive(b));
    CHECK(is_primitive(c));
    CHECK_THROWS_WITH_AS(is_primitive(z), doctest::Contains("zero vector"), Error);
}

TEST_CASE("conjugation identity: direct count equals lattice-side count") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double alpha = u(rng);
        const double A = 0.05 + 1.5 * u(rng);
        const double c = 1.05 + 2.0 * u(rng);
        const std::int64_t N = 1 + static_cast<std::int64_t>(199 * u(rng));
        const auto g = geometry::diag_flow(std::log(static_cast<double>(N)), 1, 1) * geometry::shear(alpha);
        const lattice::LatticeBasis lat(g.matrix());
        CHECK(count_est_1d(alpha, A, 1.0, c, N) == lattice::lattice_count(lat, geometry::wedge(A, 1.0, c)));
        CHECK(count_kesten_1d(alpha, A, N) == lattice::lattice_count(lat, geometry::box(A)));
    }
}
