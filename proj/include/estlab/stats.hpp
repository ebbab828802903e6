#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "estlab/geometry.hpp"

namespace estlab::stats {

/// Histogram of nonnegative integer outcomes. PMF values are count/total, so
/// they sum to one exactly in rational arithmetic.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;

    static EmpiricalDistribution from_samples(std::span<const std::int64_t> samples);

    void add(std::int64_t k, std::uint64_t count = 1);

    const std::map<std::int64_t, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    std::uint64_t count(std::int64_t k) const;
    double pmf(std::int64_t k) const;
    double cdf(std::int64_t k) const;
    /// Binomial standard error of pmf(k).
    double se(std::int64_t k) const;

    double mean() const;
    /// Unbiased (n - 1) sample variance.
    double variance() const;
    double se_mean() const;
    double probability_positive() const;
    double se_probability_positive() const;

    friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

private:
    std::map<std::int64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Riemann zeta at an integer s >= 2, absolute error below 1e-12.
double zeta(int s);

/// Rogers-Schmidt variance constant 8 zeta(d-1) / zeta(d); requires d >= 3.
double rogers_constant(int d);

/// Limit of P(EST(A, c) > 0) in the regime A <= c / (1 + c^2).
double est_closed_form(double A, double c);

/// Expected primitive-lattice-point count of a Haar-random lattice in `region`.
double siegel_expectation(const geometry::Region& region);

struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    std::uint64_t samples = 0;
    // Present only for d >= 3, where the Rogers bound is proved.
    std::optional<double> variance_bound;
    std::optional<bool> bound_satisfied;
    double variance_bootstrap_se = 0.0;
};

inline constexpr int kBootstrapResamples = 200;

MomentReport moment_report(const EmpiricalDistribution& e, int d, std::uint64_t bootstrap_seed = 0);

struct ConcentrationReport {
    double T = 0.0;
    double mean = 0.0;
    double tail_frequency = 0.0;  // fraction with |k - mean| > T sqrt(mean)
    double tail_se = 0.0;
    std::optional<double> bound;  // C_d / T^2, d >= 3 only
    bool violated = false;        // tail exceeds bound by more than 3 SE
};

ConcentrationReport concentration_check(const EmpiricalDistribution& e, int d, double T);

struct Comparison {
    double tv = 0.0;
    double ks = 0.0;
};

Comparison compare(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

}  // namespace estlab::stats
