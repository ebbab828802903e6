#include "estlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "estlab/error.hpp"
#include "estlab/random.hpp"

namespace estlab::stats {

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const std::int64_t> samples) {
    EmpiricalDistribution e;
    for (auto k : samples) e.add(k);
    return e;
}

void EmpiricalDistribution::add(std::int64_t k, std::uint64_t count) {
    if (count == 0) return;
    counts_[k] += count;
    total_ += count;
}

std::uint64_t EmpiricalDistribution::count(std::int64_t k) const {
    auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
}

double EmpiricalDistribution::pmf(std::int64_t k) const {
    if (total_ == 0) return 0.0;
    return static_cast<double>(count(k)) / static_cast<double>(total_);
}

double EmpiricalDistribution::cdf(std::int64_t k) const {
    if (total_ == 0) return 0.0;
    std::uint64_t acc = 0;
    for (auto it = counts_.begin(); it != counts_.end() && it->first <= k; ++it) acc += it->second;
    return static_cast<double>(acc) / static_cast<double>(total_);
}

double EmpiricalDistribution::se(std::int64_t k) const {
    if (total_ == 0) return 0.0;
    const double p = pmf(k);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total_));
}

double EmpiricalDistribution::mean() const {
    if (total_ == 0) return 0.0;
    double s = 0.0;
    for (auto [k, c] : counts_) s += static_cast<double>(k) * static_cast<double>(c);
    return s / static_cast<double>(total_);
}

double EmpiricalDistribution::variance() const {
    if (total_ < 2) return 0.0;
    const double mu = mean();
    double s = 0.0;
    for (auto [k, c] : counts_) {
        const double d = static_cast<double>(k) - mu;
        s += d * d * static_cast<double>(c);
    }
    return s / static_cast<double>(total_ - 1);
}

double EmpiricalDistribution::se_mean() const {
    if (total_ == 0) return 0.0;
    return std::sqrt(variance() / static_cast<double>(total_));
}

double EmpiricalDistribution::probability_positive() const {
    if (total_ == 0) return 0.0;
    std::uint64_t pos = 0;
    for (auto [k, c] : counts_) {
        if (k > 0) pos += c;
    }
    return static_cast<double>(pos) / static_cast<double>(total_);
}

double EmpiricalDistribution::se_probability_positive() const {
    if (total_ == 0) return 0.0;
    const double p = probability_positive();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total_));
}

double zeta(int s) {
    if (s < 2) throw Error(ErrorKind::divergent, "zeta(s) is divergent for s < 2");
    if (s == 2) return std::numbers::pi * std::numbers::pi / 6.0;
    // Partial sum below K, Euler-Maclaurin tail from K on.
    constexpr int K = 1000;
    const double sd = s;
    double sum = 0.0;
    for (int k = K - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -sd);
    const double kd = K;
    const double tail = std::pow(kd, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(kd, -sd) +
                        sd * std::pow(kd, -sd - 1.0) / 12.0 -
                        sd * (sd + 1.0) * (sd + 2.0) * std::pow(kd, -sd - 3.0) / 720.0;
    return sum + tail;
}

double rogers_constant(int d) {
    if (d < 3) throw Error(ErrorKind::invalid_argument, "Rogers variance constant requires d >= 3");
    return 8.0 * zeta(d - 1) / zeta(d);
}

double est_closed_form(double A, double c) {
    if (!(A > 0.0) || !(c > 1.0)) {
        throw Error(ErrorKind::invalid_argument, "est_closed_form requires A > 0 and c > 1");
    }
    if (A > c / (1.0 + c * c)) {
        throw Error(ErrorKind::outside_validity,
                    "est_closed_form: A outside validity range A <= c/(1+c^2)");
    }
    return 12.0 / (std::numbers::pi * std::numbers::pi) * A * std::log(c);
}

double siegel_expectation(const geometry::Region& region) {
    return geometry::volume(region).value / zeta(region.dimension());
}

namespace {

void require_samples(const EmpiricalDistribution& e) {
    if (e.total() < 2) throw Error(ErrorKind::insufficient_samples, "insufficient samples: need at least 2");
}

// Standard deviation of the sample variance over multinomial resamples of the
// histogram. One binomial draw per support point instead of one per sample.
double bootstrap_variance_se(const EmpiricalDistribution& e, std::uint64_t seed) {
    std::vector<std::int64_t> ks;
    std::vector<double> probs;
    for (auto [k, c] : e.counts()) {
        ks.push_back(k);
        probs.push_back(static_cast<double>(c) / static_cast<double>(e.total()));
    }
    std::vector<double> vars;
    vars.reserve(kBootstrapResamples);
    for (int b = 0; b < kBootstrapResamples; ++b) {
        Rng rng = sample_rng(seed, static_cast<std::uint64_t>(b));
        EmpiricalDistribution r;
        std::uint64_t left = e.total();
        double mass_left = 1.0;
        for (std::size_t i = 0; i < ks.size() && left > 0; ++i) {
            std::uint64_t draw = left;
            if (i + 1 < ks.size()) {
                const double p = std::clamp(probs[i] / mass_left, 0.0, 1.0);
                std::binomial_distribution<std::uint64_t> binom(left, p);
                draw = binom(rng);
            }
            r.add(ks[i], draw);
            left -= draw;
            mass_left -= probs[i];
        }
        vars.push_back(r.variance());
    }
    double mu = 0.0;
    for (double v : vars) mu += v;
    mu /= static_cast<double>(vars.size());
    double s = 0.0;
    for (double v : vars) s += (v - mu) * (v - mu);
    return std::sqrt(s / static_cast<double>(vars.size() - 1));
}

}  // namespace

MomentReport moment_report(const EmpiricalDistribution& e, int d, std::uint64_t bootstrap_seed) {
    require_samples(e);
    MomentReport r;
    r.mean = e.mean();
    r.variance = e.variance();
    r.se_mean = e.se_mean();
    r.samples = e.total();
    r.variance_bootstrap_se = bootstrap_variance_se(e, bootstrap_seed);
    if (d >= 3) {
        r.variance_bound = rogers_constant(d) * r.mean;
        r.bound_satisfied = r.variance <= *r.variance_bound + 3.0 * r.variance_bootstrap_se;
    }
    return r;
}

ConcentrationReport concentration_check(const EmpiricalDistribution& e, int d, double T) {
    require_samples(e);
    if (!(T > 0.0)) throw Error(ErrorKind::invalid_argument, "concentration_check requires T > 0");
    ConcentrationReport r;
    r.T = T;
    r.mean = e.mean();
    const double threshold = T * std::sqrt(r.mean);
    std::uint64_t tail = 0;
    for (auto [k, c] : e.counts()) {
        if (std::abs(static_cast<double>(k) - r.mean) > threshold) tail += c;
    }
    const auto n = static_cast<double>(e.total());
    r.tail_frequency = static_cast<double>(tail) / n;
    r.tail_se = std::sqrt(r.tail_frequency * (1.0 - r.tail_frequency) / n);
    if (d >= 3) {
        r.bound = rogers_constant(d) / (T * T);
        r.violated = r.tail_frequency - 3.0 * r.tail_se > *r.bound;
    }
    return r;
}

Comparison compare(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.empty() || b.empty()) throw Error(ErrorKind::no_samples, "compare requires nonempty distributions");
    std::set<std::int64_t> keys;
    for (auto [k, c] : a.counts()) keys.insert(k);
    for (auto [k, c] : b.counts()) keys.insert(k);
    Comparison out;
    double ca = 0.0;
    double cb = 0.0;
    double l1 = 0.0;
    for (auto k : keys) {
        const double pa = a.pmf(k);
        const double pb = b.pmf(k);
        l1 += std::abs(pa - pb);
        ca += pa;
        cb += pb;
        out.ks = std::max(out.ks, std::abs(ca - cb));
    }
    out.tv = 0.5 * l1;
    return out;
}

}  // namespace estlab::stats
