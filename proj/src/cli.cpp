#include "estlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "estlab/counting.hpp"
#include "estlab/error.hpp"
#include "estlab/lattice.hpp"
#include "estlab/process.hpp"
#include "estlab/serialize.hpp"
#include "estlab/stats.hpp"

namespace estlab::cli {

namespace {

using geometry::Region;

const std::vector<std::string> kSubcommands{"est",    "kesten",   "linear-forms", "curve",
                                            "circle", "lattice2", "compare",      "moments"};

struct Resolved {
    Region region;
    process::SamplerSpec sampler;
    int curve_dimension = 0;
};

[[noreturn]] void config_error(const std::string& msg) {
    throw Error(ErrorKind::invalid_argument, msg);
}

std::string region_kind(const RunConfig& c) {
    if (c.subcommand == "est") return "wedge";
    if (c.subcommand == "kesten") return "box";
    if (c.region) return *c.region;
    return c.subcommand == "moments" || c.subcommand == "curve" ? "box" : "wedge";
}

Resolved resolve(const RunConfig& c) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
        config_error("unknown subcommand: " + c.subcommand);
    }
    if (c.samples < 1) config_error("--samples must be positive");
    if (c.N < 1) config_error("--N must be positive");

    const auto norm = c.norm == "euclid" ? geometry::NormKind::euclidean : geometry::NormKind::supremum;
    const auto mode = c.exponent == "paper" ? geometry::ExponentMode::paper_literal
                                            : geometry::ExponentMode::consistent;
    const double c1 = c.c ? 1.0 : c.c1;
    const double c2 = c.c ? *c.c : c.c2;

    int m = 1;
    int n = 1;
    Resolved r;
    if (c.subcommand == "linear-forms" || c.subcommand == "moments") {
        m = c.m.value_or(2);
        n = c.n.value_or(1);
    } else if (c.subcommand == "curve") {
        r.curve_dimension = c.n.value_or(2);
        m = r.curve_dimension;
    }
    if (m < 1 || n < 1) config_error("--m and --n must be positive");

    const std::string kind = region_kind(c);
    if (kind == "wedge") {
        r.region = geometry::wedge(c.A, c1, c2, m, n, norm, mode);
    } else {
        r.region = geometry::box(c.A, 0.0, 1.0, m, n, norm);
        r.region.exponent_mode = mode;
    }

    if (c.subcommand == "circle") {
        r.sampler.kind = process::SamplerKind::circle;
    } else if (c.subcommand == "curve") {
        r.sampler.kind = process::SamplerKind::curve;
    } else if (c.sampler == "density") {
        r.sampler.kind = process::SamplerKind::density;
        process::Density d;
        if (c.density == "uniform") d.kind = process::DensityKind::uniform;
        else if (c.density == "truncated_gaussian") d.kind = process::DensityKind::truncated_gaussian;
        else d.kind = process::DensityKind::linear_2s;
        d.mu = c.mu;
        d.sigma = c.sigma;
        r.sampler.density = d;
    } else if (c.sampler == "window") {
        r.sampler.kind = process::SamplerKind::window;
        r.sampler.x0 = c.x0;
        r.sampler.beta = c.beta;
    }
    if (c.subcommand == "circle") {
        r.sampler.lo = 0.0;
        r.sampler.hi = 2.0 * std::numbers::pi;
    }
    // Surfaces sampler errors (window too narrow, bad density) before any work.
    process::make_sampler(r.sampler, c.N);
    return r;
}

Json config_json(const RunConfig& c, const Resolved& r) {
    Json j{{"subcommand", c.subcommand}, {"region", r.region}};
    if (c.subcommand != "lattice2") {
        j["sampler"] = r.sampler;
        j["N"] = c.N;
    }
    if (c.subcommand == "curve") j["curve_dimension"] = r.curve_dimension;
    if (c.subcommand == "moments") j["T"] = round12(c.T);
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    return j;
}

stats::EmpiricalDistribution estimate(const RunConfig& c, const Resolved& r) {
    const auto sampler = process::make_sampler(r.sampler, c.N);
    const std::string& sub = c.subcommand;
    if (sub == "lattice2") return lattice::estimate_lattice_pmf(r.region, c.samples, c.seed, c.workers);
    if (sub == "circle") {
        return process::estimate_distribution(process::circle(c.N), r.region, c.samples, c.seed, c.workers);
    }
    if (sub == "curve") {
        const auto proc = process::curve(counting::CurveSpec{r.curve_dimension, 0.0, 1.0}, sampler, c.N);
        return process::estimate_distribution(proc, r.region, c.samples, c.seed, c.workers);
    }
    if (sub == "linear-forms" || sub == "moments") {
        const auto proc = process::linear_forms(r.region.m, r.region.n, sampler, c.N);
        return process::estimate_distribution(proc, r.region, c.samples, c.seed, c.workers);
    }
    return process::estimate_distribution(process::diophantine_1d(sampler, c.N), r.region, c.samples,
                                          c.seed, c.workers);
}

// Seed for the second half of a comparison run.
std::uint64_t companion_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x5bd1e9955bd1e995ULL); }

void write_pmf_csv(std::ostream& os, const stats::EmpiricalDistribution& e) {
    os << "k,count,pmf,se\n";
    for (auto [k, count] : e.counts()) {
        os << k << ',' << count << ',' << format12(e.pmf(k)) << ',' << format12(e.se(k)) << '\n';
    }
    std::uint64_t positive = 0;
    for (auto [k, count] : e.counts()) {
        if (k > 0) positive += count;
    }
    os << "p_positive," << positive << ',' << format12(e.probability_positive()) << ','
       << format12(e.se_probability_positive()) << '\n';
    os << "mean," << e.total() << ',' << format12(e.mean()) << ',' << format12(e.se_mean()) << '\n';
}

void write_metrics_csv(std::ostream& os, const Json& metrics) {
    os << "metric,value\n";
    for (const auto& [key, value] : metrics.items()) {
        if (value.is_number_float()) {
            os << key << ',' << format12(value.get<double>()) << '\n';
        } else {
            os << key << ',' << value.dump() << '\n';
        }
    }
}

Json pmf_report(const RunConfig& c, const Resolved& r, const stats::EmpiricalDistribution& e) {
    Json j{{"subcommand", c.subcommand}, {"config", config_json(c, r)}};
    const Json dist = stats::distribution_json(e);
    j["samples"] = e.total();
    j["pmf"] = dist["pmf"];
    j["counts"] = dist["counts"];
    j["mean"] = round12(e.mean());
    j["se_mean"] = round12(e.se_mean());
    j["variance"] = round12(e.variance());
    j["p_positive"] = round12(e.probability_positive());
    j["se_p_positive"] = round12(e.se_probability_positive());
    j["siegel_expectation"] = round12(stats::siegel_expectation(r.region));
    if (c.subcommand == "est" && r.region.c1 == 1.0 &&
        r.region.A <= r.region.c2 / (1.0 + r.region.c2 * r.region.c2)) {
        j["closed_form_p_positive"] = round12(stats::est_closed_form(r.region.A, r.region.c2));
    }
    if (c.subcommand == "kesten") {
        // 6A/pi^2 reported beside the Siegel value 6|R_A|/pi^2 = 12A/pi^2.
        j["mean_6A_over_pi2"] = round12(6.0 * r.region.A / (std::numbers::pi * std::numbers::pi));
    }
    if (e.total() >= 2 && (c.subcommand == "linear-forms" || c.subcommand == "curve")) {
        j["moments"] = stats::moment_report(e, r.region.dimension(), c.seed);
    }
    return j;
}

int execute(const RunConfig& c, std::ostream& os) {
    const Resolved r = resolve(c);
    if (c.dry_run) {
        os << config_json(c, r).dump(2) << '\n';
        return kExitOk;
    }
    const bool json = c.format == "json";

    if (c.subcommand == "compare") {
        const auto sampler = process::make_sampler(r.sampler, c.N);
        const auto lhs = process::estimate_distribution(process::diophantine_1d(sampler, c.N), r.region,
                                                        c.samples, c.seed, c.workers);
        const auto rhs = lattice::estimate_lattice_pmf(r.region, c.samples, companion_seed(c.seed), c.workers);
        const auto cmp = stats::compare(lhs, rhs);
        if (json) {
            Json j{{"subcommand", c.subcommand}, {"config", config_json(c, r)}};
            j["tv"] = round12(cmp.tv);
            j["ks"] = round12(cmp.ks);
            j["diophantine"] = stats::distribution_json(lhs);
            j["lattice"] = stats::distribution_json(rhs);
            os << j.dump(2) << '\n';
        } else {
            write_metrics_csv(os, Json{{"tv", cmp.tv}, {"ks", cmp.ks},
                                       {"mean_diophantine", lhs.mean()}, {"mean_lattice", rhs.mean()}});
        }
        return kExitOk;
    }

    const auto e = estimate(c, r);
    if (c.subcommand == "moments") {
        const int d = r.region.dimension();
        Json j{{"subcommand", c.subcommand}, {"config", config_json(c, r)}};
        j["moments"] = stats::moment_report(e, d, c.seed);
        j["concentration"] = stats::concentration_check(e, d, c.T);
        j["siegel_expectation"] = round12(stats::siegel_expectation(r.region));
        if (json) {
            os << j.dump(2) << '\n';
        } else {
            Json flat = j["moments"];
            for (const auto& [key, value] : j["concentration"].items()) flat["concentration_" + key] = value;
            flat["siegel_expectation"] = j["siegel_expectation"];
            write_metrics_csv(os, flat);
        }
        return kExitOk;
    }

    if (json) {
        os << pmf_report(c, r, e).dump(2) << '\n';
    } else {
        write_pmf_csv(os, e);
    }
    return kExitOk;
}

void add_flags(CLI::App* sub, RunConfig& c) {
    sub->add_option("--A", c.A, "approximation constant")->check(CLI::PositiveNumber);
    sub->add_option("--c", c.c, "window [1, c] (sets c1 = 1, c2 = c)");
    sub->add_option("--c1", c.c1, "window lower end");
    sub->add_option("--c2", c.c2, "window upper end");
    sub->add_option("--N", c.N, "scale parameter")->check(CLI::PositiveNumber);
    sub->add_option("--m", c.m, "number of linear forms")->check(CLI::PositiveNumber);
    sub->add_option("--n", c.n, "number of variables (curve: curve dimension)")->check(CLI::PositiveNumber);
    sub->add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--norm", c.norm, "norm on both blocks")->check(CLI::IsMember({"sup", "euclid"}));
    sub->add_option("--exponent", c.exponent, "exponent convention")
        ->check(CLI::IsMember({"consistent", "paper"}));
    sub->add_option("--sampler", c.sampler, "target sampler")
        ->check(CLI::IsMember({"uniform", "density", "window"}));
    sub->add_option("--density", c.density, "density for --sampler density")
        ->check(CLI::IsMember({"uniform", "linear_2s", "truncated_gaussian"}));
    sub->add_option("--mu", c.mu, "truncated_gaussian mean");
    sub->add_option("--sigma", c.sigma, "truncated_gaussian standard deviation");
    sub->add_option("--x0", c.x0, "window center");
    sub->add_option("--beta", c.beta, "window width exponent, width N^-beta");
    sub->add_option("--region", c.region, "target region")->check(CLI::IsMember({"wedge", "box"}));
    sub->add_option("--T", c.T, "concentration threshold (moments)")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "output path");
    sub->add_flag("--dry-run", c.dry_run, "validate and echo the resolved config");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::ostringstream buffer;
        const int status = execute(config, buffer);
        if (config.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
            if (!file) {
                err << "error: cannot open output file " << config.out << '\n';
                return kExitConfig;
            }
            file << buffer.str();
        }
        return status;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::budget ? kExitBudget : kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    CLI::App app{"Erdos-Szusz-Turan and Kesten distribution experiments", "estlab"};
    app.require_subcommand(1);
    for (const auto& name : kSubcommands) {
        auto* sub = app.add_subcommand(name);
        add_flags(sub, config);
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << e.what() << '\n';
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    for (auto* sub : app.get_subcommands()) {
        if (sub->parsed()) config.subcommand = sub->get_name();
    }
    return run(config, out, err);
}

}  // namespace estlab::cli
