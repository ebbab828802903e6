#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "estlab/counting.hpp"
#include "estlab/error.hpp"
#include "estlab/geometry.hpp"
#include "estlab/random.hpp"
#include "estlab/stats.hpp"

namespace estlab::process {

/// A sampler of configurations together with the counting measure it assigns
/// to regions. Configurations are opaque; only `count` interprets them.
template <class Config>
struct EquivariantProcess {
    std::function<Config(Rng&)> sample;
    std::function<std::int64_t(const Config&, const geometry::Region&)> count;
};

/// Calls body(i) for every i < count, spread over `workers` threads. The first
/// exception thrown by any call is rethrown on the calling thread.
void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& body);

/// Histogram of count(sample(rng_i), region) over i < samples, where rng_i is
/// sample_rng(seed, i). Identical for every worker count.
template <class Config>
stats::EmpiricalDistribution estimate_distribution(const EquivariantProcess<Config>& proc,
                                                   const geometry::Region& region,
                                                   std::uint64_t samples, std::uint64_t seed,
                                                   unsigned workers = 1) {
    if (samples == 0) throw Error(ErrorKind::no_samples, "no samples requested");
    std::vector<std::int64_t> results(samples);
    parallel_for(samples, workers, [&](std::uint64_t i) {
        Rng rng = sample_rng(seed, i);
        results[i] = proc.count(proc.sample(rng), region);
    });
    return stats::EmpiricalDistribution::from_samples(results);
}

enum class SamplerKind { uniform, density, window, circle, curve };
enum class DensityKind { uniform, linear_2s, truncated_gaussian };

struct Density {
    DensityKind kind = DensityKind::uniform;
    double mu = 0.5;     // truncated_gaussian only
    double sigma = 0.1;  // truncated_gaussian only
};

struct SamplerSpec {
    SamplerKind kind = SamplerKind::uniform;
    double lo = 0.0;  // support
    double hi = 1.0;
    std::optional<Density> density;
    std::optional<double> density_bound;  // rejection envelope; defaults to sup of the density
    double x0 = 0.5;                      // window center
    double beta = 0.0;                    // window width N^{-beta}
};

/// Normalized density on [lo, hi].
double density_value(const Density& density, double lo, double hi, double x);

using Sampler = std::function<double(Rng&)>;

/// Throws Error(window_too_narrow) for beta >= 1/2 and Error(invalid_argument)
/// when the density does not integrate to 1 within 1e-6.
Sampler make_sampler(const SamplerSpec& spec, std::int64_t N);

/// alpha from `sampler`; counts via count_est_1d / count_kesten_1d (falling back
/// to count_md for windows or exponent modes the 1-D counters do not cover).
EquivariantProcess<double> diophantine_1d(Sampler sampler, std::int64_t N);
/// X in Mat_{m x n} with independent entries from `sampler`; counts via count_md.
EquivariantProcess<geometry::Matrix> linear_forms(int m, int n, Sampler sampler, std::int64_t N);
/// s from `sampler`, X = veronese(s); counts via count_curve.
EquivariantProcess<double> curve(counting::CurveSpec curve, Sampler sampler, std::int64_t N);
/// theta uniform on [0, 2 pi); counts r_theta Z^2_prim in the region scaled by N.
EquivariantProcess<double> circle(std::int64_t N);

std::string_view to_string(SamplerKind kind);
std::string_view to_string(DensityKind kind);

}  // namespace estlab::process
