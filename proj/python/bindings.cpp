#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "estlab/cli.hpp"
#include "estlab/counting.hpp"
#include "estlab/error.hpp"
#include "estlab/geometry.hpp"
#include "estlab/lattice.hpp"
#include "estlab/process.hpp"
#include "estlab/stats.hpp"

namespace py = pybind11;
using namespace estlab;

namespace {

py::dict histogram(const stats::EmpiricalDistribution& e) {
    py::dict d;
    for (auto [k, c] : e.counts()) d[py::int_(k)] = c;
    return d;
}

stats::EmpiricalDistribution from_histogram(const std::map<std::int64_t, std::uint64_t>& h) {
    stats::EmpiricalDistribution e;
    for (auto [k, c] : h) e.add(k, c);
    return e;
}

}  // namespace

PYBIND11_MODULE(_estlab, mod) {
    mod.doc() = "Counting Diophantine approximations and their lattice-side limits";

    py::register_exception<Error>(mod, "Error", PyExc_ValueError);

    using namespace geometry;
    py::enum_<NormKind>(mod, "NormKind").value("supremum", NormKind::supremum).value("euclidean", NormKind::euclidean);
    py::enum_<RegionFamily>(mod, "RegionFamily")
        .value("hyperbolic_wedge", RegionFamily::hyperbolic_wedge)
        .value("box", RegionFamily::box);
    py::enum_<ExponentMode>(mod, "ExponentMode")
        .value("consistent", ExponentMode::consistent)
        .value("paper_literal", ExponentMode::paper_literal);
    py::enum_<YSign>(mod, "YSign").value("positive_cone", YSign::positive_cone).value("full", YSign::full);

    py::class_<Region>(mod, "Region")
        .def_readwrite("family", &Region::family)
        .def_readwrite("m", &Region::m)
        .def_readwrite("n", &Region::n)
        .def_readwrite("A", &Region::A)
        .def_readwrite("c1", &Region::c1)
        .def_readwrite("c2", &Region::c2)
        .def_readwrite("norm_x", &Region::norm_x)
        .def_readwrite("norm_y", &Region::norm_y)
        .def_readwrite("exponent_mode", &Region::exponent_mode)
        .def_readwrite("y_sign", &Region::y_sign)
        .def("validate", &Region::validate)
        .def("__repr__", [](const Region& r) {
            std::ostringstream os;
            os << "Region(" << to_string(r.family) << ", m=" << r.m << ", n=" << r.n << ", A=" << r.A
               << ", window=(" << r.c1 << ", " << r.c2 << "))";
            return os.str();
        });

    mod.def("wedge", &wedge, py::arg("A"), py::arg("c1"), py::arg("c2"), py::arg("m") = 1, py::arg("n") = 1,
            py::arg("norm") = NormKind::supremum, py::arg("mode") = ExponentMode::consistent);
    mod.def("box", &box, py::arg("A"), py::arg("c1") = 0.0, py::arg("c2") = 1.0, py::arg("m") = 1,
            py::arg("n") = 1, py::arg("norm") = NormKind::supremum);
    mod.def("contains", py::overload_cast<const Region&, const Vector&>(&contains), py::arg("region"),
            py::arg("v"));
    mod.def("volume", [](const Region& r) {
        const auto v = volume(r);
        return py::make_tuple(v.value, v.numeric);
    });
    mod.def("diag_flow", [](double t, int m, int n) { return diag_flow(t, m, n).matrix(); });
    mod.def("shear", [](double alpha) { return shear(alpha).matrix(); });

    mod.def("count_est_1d", &counting::count_est_1d, py::arg("alpha"), py::arg("A"), py::arg("c1"), py::arg("c2"),
            py::arg("N"));
    mod.def("count_kesten_1d", &counting::count_kesten_1d, py::arg("alpha"), py::arg("A"), py::arg("N"));
    mod.def(
        "count_md",
        [](const Matrix& X, double A, std::int64_t N, bool kesten, double c1, double c2, NormKind norm,
           ExponentMode mode) {
            const int m = static_cast<int>(X.rows());
            const int n = static_cast<int>(X.cols());
            const auto spec = kesten ? counting::kesten_spec(A, N, m, n, norm, mode)
                                     : counting::est_spec(A, c1, c2, N, m, n, norm, mode);
            return counting::count_md(X, spec);
        },
        py::arg("X"), py::arg("A"), py::arg("N"), py::arg("kesten") = false, py::arg("c1") = 1.0,
        py::arg("c2") = 2.0, py::arg("norm") = NormKind::supremum, py::arg("mode") = ExponentMode::consistent);
    mod.def(
        "count_circle",
        [](double theta, const Region& r, std::int64_t N) {
            return counting::count_circle(theta, r.A, r.c1, r.c2, N, r.family);
        },
        py::arg("theta"), py::arg("region"), py::arg("N"));

    mod.def(
        "haar_lattice",
        [](std::uint64_t seed) {
            Rng rng = sample_rng(seed, 0);
            return lattice::sample_haar_lattice2(rng).basis.basis();
        },
        py::arg("seed"));
    mod.def(
        "lattice_count",
        [](const Matrix& basis, const Region& r) { return lattice::lattice_count(lattice::LatticeBasis(basis), r); },
        py::arg("basis"), py::arg("region"));
    mod.def(
        "estimate_lattice_pmf",
        [](const Region& r, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
            py::gil_scoped_release release;
            auto e = lattice::estimate_lattice_pmf(r, samples, seed, workers);
            py::gil_scoped_acquire acquire;
            return histogram(e);
        },
        py::arg("region"), py::arg("samples"), py::arg("seed") = 0, py::arg("workers") = 1);
    mod.def(
        "estimate_alpha_pmf",
        [](const Region& r, std::int64_t N, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
            stats::EmpiricalDistribution e;
            {
                py::gil_scoped_release release;
                const auto proc = process::diophantine_1d(process::make_sampler(process::SamplerSpec{}, N), N);
                e = process::estimate_distribution(proc, r, samples, seed, workers);
            }
            return histogram(e);
        },
        py::arg("region"), py::arg("N"), py::arg("samples"), py::arg("seed") = 0, py::arg("workers") = 1);

    mod.def("zeta", &stats::zeta, py::arg("s"));
    mod.def("est_closed_form", &stats::est_closed_form, py::arg("A"), py::arg("c"));
    mod.def("siegel_expectation", &stats::siegel_expectation, py::arg("region"));
    mod.def(
        "compare",
        [](const std::map<std::int64_t, std::uint64_t>& a, const std::map<std::int64_t, std::uint64_t>& b) {
            const auto c = stats::compare(from_histogram(a), from_histogram(b));
            return py::dict(py::arg("tv") = c.tv, py::arg("ks") = c.ks);
        },
        py::arg("a"), py::arg("b"));

    mod.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int status;
            {
                py::gil_scoped_release release;
                status = cli::main_with_args(args, out, err);
            }
            return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"));
}
