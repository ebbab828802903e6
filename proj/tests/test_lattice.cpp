#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "estlab/error.hpp"
#include "estlab/lattice.hpp"
#include "estlab/serialize.hpp"

using namespace estlab;
using namespace estlab::lattice;
using geometry::Region;

namespace {

std::vector<Coord2> brute_primitive(const LatticeBasis& lat, const Target& target, std::int64_t R) {
    std::vector<Coord2> out;
    for (std::int64_t a = -R; a <= R; ++a) {
        for (std::int64_t b = -R; b <= R; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const Vector v = lat.basis().col(0) * static_cast<double>(a) + lat.basis().col(1) * static_cast<double>(b);
            const bool inside = std::holds_alternative<Disc>(target)
                                    ? geometry::leq(v.norm(), std::get<Disc>(target).radius)
                                    : geometry::contains(std::get<Region>(target), v);
            if (inside) out.push_back({a, b});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("Haar samples are unimodular and lie in the fundamental domain") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const auto s = sample_haar_lattice2(rng);
        CHECK(std::abs(s.basis.basis().determinant() - 1.0) <= 1e-10);
        CHECK(std::abs(s.tau_x) <= 0.5);
        CHECK(s.tau_x * s.tau_x + s.tau_y * s.tau_y >= 1.0);
        CHECK(s.phi >= 0.0);
        CHECK(s.phi < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("Haar sampler acceptance rate is pi / (2 sqrt 3)") {
    Rng rng(2);
    constexpr int draws = 1'000'000;
    std::int64_t attempts = 0;
    for (int i = 0; i < draws; ++i) attempts += sample_haar_lattice2(rng).attempts;
    const double rate = static_cast<double>(draws) / static_cast<double>(attempts);
    const double expected = std::numbers::pi / (2.0 * std::numbers::sqrt3);
    const double se = std::sqrt(expected * (1 - expected) / static_cast<double>(attempts));
    CHECK(std::abs(rate - expected) <= 3.0 * se);
}

TEST_CASE("Siegel mean value: primitive points in a disc of radius 2") {
    constexpr std::uint64_t draws = 1'000'000;
    std::vector<std::int64_t> counts(draws);
    process::parallel_for(draws, 8, [&](std::uint64_t i) {
        Rng rng = sample_rng(42, i);
        counts[i] = lattice_count(sample_haar_lattice2(rng).basis, Disc{2.0});
    });
    const auto e = stats::EmpiricalDistribution::from_samples(counts);
    const double expected = 6.0 / (std::numbers::pi * std::numbers::pi) * std::numbers::pi * 4.0;
    CHECK(expected == doctest::Approx(7.6394).epsilon(1e-4));
    CHECK(std::abs(e.mean() - expected) <= 3.0 * e.se_mean());
}

TEST_CASE("enumerate_primitive: Z^2 examples") {
    const auto Z2 = LatticeBasis::identity(2);
    const auto disc = enumerate_primitive(Z2, Disc{2.5});
    CHECK(disc.size() == 16);
    CHECK(std::is_sorted(disc.begin(), disc.end()));
    CHECK(disc == brute_primitive(Z2, Disc{2.5}, 5));
    CHECK(std::find(disc.begin(), disc.end(), Coord2{2, -1}) != disc.end());

    const auto r = enumerate_primitive(Z2, geometry::box(0.5));
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Coord2{0, 1});
    CHECK(lattice_count(Z2, geometry::box(0.5)) == 1);

    CHECK(enumerate_primitive(Z2, geometry::box(1e-3, 0.5, 0.9)).empty());
    CHECK(lattice_count(Z2, Disc{2.5}) == 16);
}

TEST_CASE("enumerate_primitive: agrees with the naive double loop") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Rng haar(4);
    for (int i = 0; i < 1000; ++i) {
        // Alternate Z^2 with moderately skewed Haar lattices (short vectors >= 0.3).
        LatticeBasis lat = LatticeBasis::identity(2);
        if (i % 2) {
            auto s = sample_haar_lattice2(haar);
            while (s.tau_y > 10.0) s = sample_haar_lattice2(haar);
            lat = s.basis;
        }
        Region r = i % 3 == 0 ? geometry::box(0.1 + 3.0 * u(rng), 0.0, 0.5 + 8.0 * u(rng))
                              : geometry::wedge(0.1 + 2.0 * u(rng), 0.5 + u(rng), 1.6 + 6.0 * u(rng));
        if (i % 5 == 0) r.y_sign = geometry::YSign::full;
        const auto fast = enumerate_primitive(lat, r);
        CHECK(fast == brute_primitive(lat, r, 50));
    }
}

TEST_CASE("enumerate_primitive: errors") {
    const auto Z2 = LatticeBasis::identity(2);
    Region unbounded = geometry::box(1.0);
    unbounded.c2 = std::numeric_limits<double>::infinity();
    CHECK_THROWS_WITH_AS(enumerate_primitive(Z2, unbounded), doctest::Contains("unbounded"), Error);
    CHECK_THROWS_WITH_AS(enumerate_primitive(Z2, Disc{1000.0}, 500), doctest::Contains("budget"), Error);
    CHECK_THROWS_WITH_AS(lattice_count(LatticeBasis::identity(3), Disc{1.0}), doctest::Contains("dimension"), Error);
    CHECK_THROWS_AS(LatticeBasis(Matrix::Identity(2, 2) * 2.0), Error);
}

TEST_CASE("rotation invariance of disc counts, sample by sample") {
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        const auto lat = sample_haar_lattice2(rng).basis;
        const auto rotated = lat.transformed(geometry::rotation(0.37 + i * 0.01));
        CHECK(lattice_count(rotated, Disc{1.7}) == lattice_count(lat, Disc{1.7}));
    }
}

TEST_CASE("group actions preserve unimodularity") {
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
        auto lat = sample_haar_lattice2(rng).basis;
        lat = lat.transformed(geometry::diag_flow(uniform(rng, -3.0, 3.0), 1, 1));
        lat = lat.transformed(geometry::shear(uniform(rng, -2.0, 2.0)));
        lat = lat.transformed(geometry::rotation(uniform(rng, 0.0, 6.3)));
        CHECK(std::abs(lat.basis().determinant() - 1.0) <= 1e-10);
    }
}

TEST_CASE("equivariance: count(g L, R) == count(L, g^-1 R)") {
    Rng rng(7);
    const double t = 0.3;
    const auto g = geometry::diag_flow(t, 1, 1);
    const std::vector<Region> regions{geometry::wedge(1.0, 1.0, 2.0), geometry::box(0.5),
                                      geometry::wedge(0.3, 0.5, 3.0), geometry::box(1.2, 0.2, 1.5)};
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto lat = sample_haar_lattice2(rng).basis;
        const auto& r = regions[static_cast<std::size_t>(i) % regions.size()];
        agree += lattice_count(lat.transformed(g), r) == lattice_count(lat, geometry::pullback(r, t));
    }
    CHECK(agree == 1000);
}

TEST_CASE("Haar sampler self-test against horocycle translates") {
    // Shortest-vector lengths of Haar lattices vs g_{log N} u_alpha Z^2 with
    // uniform alpha, which equidistributes toward Haar measure.
    constexpr std::uint64_t samples = 100000;
    constexpr double N = 1000.0;
    constexpr int bins = 12;
    auto bin_of = [](double len) { return std::min(bins - 1, static_cast<int>(len / 0.1)); };
    std::vector<std::int64_t> haar(samples);
    std::vector<std::int64_t> horo(samples);
    process::parallel_for(samples, 8, [&](std::uint64_t i) {
        Rng rng = sample_rng(8, i);
        haar[i] = bin_of(shortest_vector_length(sample_haar_lattice2(rng).basis));
        const double alpha = uniform01(rng);
        const auto g = geometry::rotation(uniform(rng, 0.0, 2.0 * std::numbers::pi)) *
                       geometry::diag_flow(std::log(N), 1, 1) * geometry::shear(alpha);
        horo[i] = bin_of(shortest_vector_length(LatticeBasis(g.matrix())));
    });
    const auto a = stats::EmpiricalDistribution::from_samples(haar);
    const auto b = stats::EmpiricalDistribution::from_samples(horo);
    CHECK(stats::compare(a, b).tv <= 0.02);
    // Probability that the shortest vector has length >= 1.
    CHECK(std::abs((1.0 - a.cdf(9)) - (1.0 - b.cdf(9))) <= 0.01);
}

TEST_CASE("shortest_vector_length") {
    CHECK(shortest_vector_length(LatticeBasis::identity(2)) == doctest::Approx(1.0));
    Matrix B(2, 2);
    B << 1.0, 37.0, 0.0, 1.0;  // still Z^2
    CHECK(shortest_vector_length(LatticeBasis(B)) == doctest::Approx(1.0));
    CHECK(shortest_vector_length(haar_basis(0.0, 4.0, 0.3)) == doctest::Approx(0.5));
}

TEST_CASE("estimate_lattice_pmf") {
    CHECK_THROWS_WITH_AS(estimate_lattice_pmf(geometry::box(0.5), 0, 1), doctest::Contains("no samples"), Error);

    const auto box = estimate_lattice_pmf(geometry::box(0.5), 100000, 9, 8);
    const double expected = 6.0 / (std::numbers::pi * std::numbers::pi) * 2.0 * 0.5;
    CHECK(std::abs(box.mean() - expected) <= 3.0 * box.se_mean());

    const auto concentrated = estimate_lattice_pmf(geometry::wedge(0.35, 1.0, 2.0), 100000, 10, 8);
    CHECK(concentrated.count(0) + concentrated.count(1) == concentrated.total());
}

TEST_CASE("lattice basis JSON is row-major") {
    Matrix B(2, 2);
    B << 2.0, 1.0, 3.0, 2.0;
    const LatticeBasis lat(B);
    const Json j = basis_to_json(lat);
    CHECK(j.dump() == "[[2.0,1.0],[3.0,2.0]]");
    CHECK(basis_from_json(j).basis() == B);
    CHECK_THROWS_AS(basis_from_json(Json::parse("[[1.0, 0.0],[0.0]]")), Error);
}
