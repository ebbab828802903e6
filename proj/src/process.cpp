#include "estlab/process.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace estlab::process {

void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t)>& body) {
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    constexpr std::uint64_t kChunk = 256;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::uint64_t begin = next.fetch_add(kChunk);
            if (begin >= count) return;
            const std::uint64_t end = std::min(count, begin + kChunk);
            try {
                for (std::uint64_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const auto n_threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

double density_value(const Density& density, double lo, double hi, double x) {
    if (x < lo || x > hi) return 0.0;
    const double width = hi - lo;
    switch (density.kind) {
        case DensityKind::uniform:
            return 1.0 / width;
        case DensityKind::linear_2s:
            return 2.0 * (x - lo) / (width * width);
        case DensityKind::truncated_gaussian: {
            const double s = density.sigma;
            const double mass = 0.5 * (std::erf((hi - density.mu) / (s * std::numbers::sqrt2)) -
                                       std::erf((lo - density.mu) / (s * std::numbers::sqrt2)));
            const double z = (x - density.mu) / s;
            return std::exp(-0.5 * z * z) / (s * std::sqrt(2.0 * std::numbers::pi) * mass);
        }
    }
    return 0.0;
}

namespace {

double density_sup(const Density& density, double lo, double hi) {
    switch (density.kind) {
        case DensityKind::uniform:
            return 1.0 / (hi - lo);
        case DensityKind::linear_2s:
            return 2.0 / (hi - lo);
        case DensityKind::truncated_gaussian:
            return density_value(density, lo, hi, std::clamp(density.mu, lo, hi));
    }
    return 0.0;
}

}  // namespace

Sampler make_sampler(const SamplerSpec& spec, std::int64_t N) {
    const double lo = spec.lo;
    const double hi = spec.hi;
    if (!(lo < hi)) throw Error(ErrorKind::invalid_argument, "sampler support requires lo < hi");
    if (N < 1) throw Error(ErrorKind::invalid_argument, "sampler requires N >= 1");

    switch (spec.kind) {
        case SamplerKind::uniform:
        case SamplerKind::curve:
            return [lo, hi](Rng& rng) { return uniform(rng, lo, hi); };
        case SamplerKind::circle:
            return [](Rng& rng) { return uniform(rng, 0.0, 2.0 * std::numbers::pi); };
        case SamplerKind::window: {
            if (!(spec.beta >= 0.0)) throw Error(ErrorKind::invalid_argument, "window requires beta >= 0");
            if (spec.beta >= 0.5) {
                throw Error(ErrorKind::window_too_narrow,
                            "window too narrow: beta must be below 1/2");
            }
            const double half = 0.5 * std::pow(static_cast<double>(N), -spec.beta);
            const double a = std::max(lo, spec.x0 - half);
            const double b = std::min(hi, spec.x0 + half);
            if (!(a < b)) throw Error(ErrorKind::invalid_argument, "window does not meet the support");
            return [a, b](Rng& rng) { return uniform(rng, a, b); };
        }
        case SamplerKind::density: {
            const Density density = spec.density.value_or(Density{});
            if (density.kind == DensityKind::truncated_gaussian && !(density.sigma > 0.0)) {
                throw Error(ErrorKind::invalid_argument, "truncated_gaussian requires sigma > 0");
            }
            auto f = [=](double x) { return density_value(density, lo, hi, x); };
            const double mass =
                boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-12);
            if (std::abs(mass - 1.0) > 1e-6) {
                throw Error(ErrorKind::invalid_argument, "density does not integrate to 1 over support");
            }
            const double envelope = spec.density_bound.value_or(density_sup(density, lo, hi));
            if (!(envelope > 0.0)) throw Error(ErrorKind::invalid_argument, "density bound must be positive");
            return [=](Rng& rng) {
                while (true) {
                    const double x = uniform(rng, lo, hi);
                    if (uniform01(rng) * envelope <= f(x)) return x;
                }
            };
        }
    }
    throw Error(ErrorKind::invalid_argument, "unknown sampler kind");
}

EquivariantProcess<double> diophantine_1d(Sampler sampler, std::int64_t N) {
    EquivariantProcess<double> proc;
    proc.sample = std::move(sampler);
    proc.count = [N](const double& alpha, const geometry::Region& region) -> std::int64_t {
        const bool plain = region.m == 1 && region.n == 1 &&
                           region.exponent_mode == geometry::ExponentMode::consistent &&
                           region.y_sign == geometry::YSign::positive_cone;
        if (plain && region.family == geometry::RegionFamily::hyperbolic_wedge) {
            return counting::count_est_1d(alpha, region.A, region.c1, region.c2, N);
        }
        if (plain && region.c1 == 0.0 && region.c2 == 1.0) {
            return counting::count_kesten_1d(alpha, region.A, N);
        }
        return counting::count_md(geometry::Matrix::Constant(1, 1, alpha),
                                  counting::spec_for_region(region, N));
    };
    return proc;
}

EquivariantProcess<geometry::Matrix> linear_forms(int m, int n, Sampler sampler, std::int64_t N) {
    if (m < 1 || n < 1) throw Error(ErrorKind::invalid_argument, "linear forms require m, n >= 1");
    EquivariantProcess<geometry::Matrix> proc;
    proc.sample = [m, n, sampler = std::move(sampler)](Rng& rng) {
        geometry::Matrix X(m, n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) X(i, j) = sampler(rng);
        }
        return X;
    };
    proc.count = [N](const geometry::Matrix& X, const geometry::Region& region) {
        return counting::count_md(X, counting::spec_for_region(region, N));
    };
    return proc;
}

EquivariantProcess<double> curve(counting::CurveSpec curve_spec, Sampler sampler, std::int64_t N) {
    EquivariantProcess<double> proc;
    proc.sample = std::move(sampler);
    proc.count = [curve_spec, N](const double& s, const geometry::Region& region) {
        return counting::count_curve(s, curve_spec, counting::spec_for_region(region, N));
    };
    return proc;
}

EquivariantProcess<double> circle(std::int64_t N) {
    EquivariantProcess<double> proc;
    SamplerSpec spec;
    spec.kind = SamplerKind::circle;
    proc.sample = make_sampler(spec, N);
    proc.count = [N](const double& theta, const geometry::Region& region) {
        return counting::count_circle(theta, region.A, region.c1, region.c2, N, region.family);
    };
    return proc;
}

std::string_view to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::uniform: return "uniform";
        case SamplerKind::density: return "density";
        case SamplerKind::window: return "window";
        case SamplerKind::circle: return "circle";
        case SamplerKind::curve: return "curve";
    }
    return "uniform";
}

std::string_view to_string(DensityKind kind) {
    switch (kind) {
        case DensityKind::uniform: return "uniform";
        case DensityKind::linear_2s: return "linear_2s";
        case DensityKind::truncated_gaussian: return "truncated_gaussian";
    }
    return "uniform";
}

}  // namespace estlab::process
