#include "estlab/serialize.hpp"

#include <fmt/format.h>

#include "estlab/error.hpp"

namespace estlab {

double round12(double x) { return std::stod(format12(x)); }

std::string format12(double x) { return fmt::format("{:.12g}", x); }

namespace {

template <class Enum>
Enum parse_enum(const Json& j, const char* key, std::initializer_list<std::pair<const char*, Enum>> options) {
    const auto value = j.at(key).get<std::string>();
    for (const auto& [name, e] : options) {
        if (value == name) return e;
    }
    throw Error(ErrorKind::invalid_argument, std::string("invalid value for ") + key + ": " + value);
}

}  // namespace

namespace geometry {

void to_json(Json& j, const Region& r) {
    j = Json{{"family", to_string(r.family)},
             {"m", r.m},
             {"n", r.n},
             {"A", round12(r.A)},
             {"c1", round12(r.c1)},
             {"c2", round12(r.c2)},
             {"norm_x", to_string(r.norm_x)},
             {"norm_y", to_string(r.norm_y)},
             {"exponent_mode", to_string(r.exponent_mode)},
             {"y_sign", to_string(r.y_sign)}};
}

void from_json(const Json& j, Region& r) {
    r.family = parse_enum<RegionFamily>(j, "family", {{"HyperbolicWedge", RegionFamily::hyperbolic_wedge},
                                                      {"Box", RegionFamily::box}});
    r.m = j.at("m").get<int>();
    r.n = j.at("n").get<int>();
    r.A = j.at("A").get<double>();
    r.c1 = j.at("c1").get<double>();
    r.c2 = j.at("c2").get<double>();
    const std::initializer_list<std::pair<const char*, NormKind>> norms{
        {"supremum", NormKind::supremum}, {"euclidean", NormKind::euclidean}};
    r.norm_x = parse_enum<NormKind>(j, "norm_x", norms);
    r.norm_y = parse_enum<NormKind>(j, "norm_y", norms);
    r.exponent_mode = parse_enum<ExponentMode>(
        j, "exponent_mode",
        {{"consistent", ExponentMode::consistent}, {"paper_literal", ExponentMode::paper_literal}});
    r.y_sign = parse_enum<YSign>(j, "y_sign",
                                 {{"positive_cone", YSign::positive_cone}, {"full", YSign::full}});
    r.validate();
}

}  // namespace geometry

namespace lattice {

Json basis_to_json(const LatticeBasis& lat) {
    Json rows = Json::array();
    const auto& B = lat.basis();
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < B.cols(); ++k) row.push_back(B(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

LatticeBasis basis_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::invalid_argument, "lattice basis must be a nonempty array");
    const auto d = static_cast<Eigen::Index>(j.size());
    Matrix B(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            throw Error(ErrorKind::dimension, "lattice basis rows must have length d");
        }
        for (Eigen::Index k = 0; k < d; ++k) B(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return LatticeBasis(std::move(B));
}

}  // namespace lattice

namespace process {

void to_json(Json& j, const SamplerSpec& s) {
    j = Json{{"kind", to_string(s.kind)}, {"support", {round12(s.lo), round12(s.hi)}}};
    if (s.kind == SamplerKind::window) {
        j["x0"] = round12(s.x0);
        j["beta"] = round12(s.beta);
    }
    if (s.kind == SamplerKind::density) {
        const Density d = s.density.value_or(Density{});
        Json dj{{"name", to_string(d.kind)}};
        if (d.kind == DensityKind::truncated_gaussian) {
            dj["mu"] = round12(d.mu);
            dj["sigma"] = round12(d.sigma);
        }
        j["density"] = dj;
    }
}

void from_json(const Json& j, SamplerSpec& s) {
    s.kind = parse_enum<SamplerKind>(j, "kind", {{"uniform", SamplerKind::uniform},
                                                 {"density", SamplerKind::density},
                                                 {"window", SamplerKind::window},
                                                 {"circle", SamplerKind::circle},
                                                 {"curve", SamplerKind::curve}});
    if (j.contains("support")) {
        s.lo = j.at("support").at(0).get<double>();
        s.hi = j.at("support").at(1).get<double>();
    }
    s.x0 = j.value("x0", s.x0);
    s.beta = j.value("beta", s.beta);
    if (j.contains("density")) {
        const auto& dj = j.at("density");
        Density d;
        d.kind = parse_enum<DensityKind>(dj, "name", {{"uniform", DensityKind::uniform},
                                                      {"linear_2s", DensityKind::linear_2s},
                                                      {"truncated_gaussian", DensityKind::truncated_gaussian}});
        d.mu = dj.value("mu", d.mu);
        d.sigma = dj.value("sigma", d.sigma);
        s.density = d;
    }
}

}  // namespace process

namespace stats {

void to_json(Json& j, const MomentReport& r) {
    j = Json{{"mean", round12(r.mean)},
             {"variance", round12(r.variance)},
             {"se_mean", round12(r.se_mean)},
             {"samples", r.samples}};
    if (r.variance_bound) {
        j["variance_bound"] = round12(*r.variance_bound);
        j["bound_satisfied"] = *r.bound_satisfied;
    }
    j["variance_bootstrap_se"] = round12(r.variance_bootstrap_se);
}

void to_json(Json& j, const ConcentrationReport& r) {
    j = Json{{"T", round12(r.T)},
             {"mean", round12(r.mean)},
             {"tail_frequency", round12(r.tail_frequency)},
             {"tail_se", round12(r.tail_se)}};
    if (r.bound) j["bound"] = round12(*r.bound);
    j["violated"] = r.violated;
}

void to_json(Json& j, const Comparison& c) { j = Json{{"tv", round12(c.tv)}, {"ks", round12(c.ks)}}; }

Json distribution_json(const EmpiricalDistribution& e) {
    Json pmf = Json::object();
    Json counts = Json::object();
    for (auto [k, c] : e.counts()) {
        pmf[std::to_string(k)] = round12(e.pmf(k));
        counts[std::to_string(k)] = c;
    }
    return Json{{"pmf", pmf}, {"counts", counts}, {"samples", e.total()}};
}

}  // namespace stats

}  // namespace estlab
