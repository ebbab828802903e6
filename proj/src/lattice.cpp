#include "estlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "estlab/error.hpp"

namespace estlab::lattice {

LatticeBasis::LatticeBasis(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols() || basis_.rows() == 0) {
        throw Error(ErrorKind::invalid_argument, "lattice basis must be a nonempty square matrix");
    }
    const double det = basis_.determinant();
    if (!(std::abs(det - 1.0) <= geometry::determinant_slack(basis_))) {
        std::ostringstream os;
        os << "lattice basis must be unimodular, det = " << det;
        throw Error(ErrorKind::invalid_argument, os.str());
    }
}

LatticeBasis LatticeBasis::transformed(const geometry::GroupElement& g) const {
    if (g.dimension() != dimension()) throw Error(ErrorKind::dimension, "dimension mismatch in lattice action");
    return LatticeBasis(g.matrix() * basis_);
}

LatticeBasis haar_basis(double tau_x, double tau_y, double phi) {
    Matrix shape(2, 2);
    shape << 1.0, tau_x, 0.0, tau_y;
    shape /= std::sqrt(tau_y);
    return LatticeBasis(geometry::rotation(phi).matrix() * shape);
}

HaarSample2 sample_haar_lattice2(Rng& rng) {
    constexpr double y_min = std::numbers::sqrt3 / 2.0;
    HaarSample2 s;
    s.attempts = 0;
    while (true) {
        ++s.attempts;
        const double x = uniform(rng, -0.5, 0.5);
        // Inverse CDF of (y_min / y^2) dy on [y_min, inf); 1 - U lies in (0, 1].
        const double y = y_min / (1.0 - uniform01(rng));
        if (x * x + y * y >= 1.0) {
            s.tau_x = x;
            s.tau_y = y;
            break;
        }
    }
    s.phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    s.basis = haar_basis(s.tau_x, s.tau_y, s.phi);
    return s;
}

namespace {

struct Box2 {
    double lo[2];
    double hi[2];
};

Box2 target_box(const Target& target) {
    if (const auto* disc = std::get_if<Disc>(&target)) {
        if (!(disc->radius >= 0.0)) throw Error(ErrorKind::invalid_argument, "disc radius must be nonnegative");
        const double r = disc->radius;
        return {{-r, -r}, {r, r}};
    }
    const auto& region = std::get<geometry::Region>(target);
    region.validate();
    if (region.m != 1 || region.n != 1) {
        throw Error(ErrorKind::dimension, "dimension mismatch: lattice enumeration supports d = 2 only");
    }
    const auto bb = geometry::bounding_box(region);
    return {{bb.lo[0], bb.lo[1]}, {bb.hi[0], bb.hi[1]}};
}

bool target_contains(const Target& target, const Vector& v) {
    if (const auto* disc = std::get_if<Disc>(&target)) {
        return geometry::leq(v.norm(), disc->radius);
    }
    return geometry::contains(std::get<geometry::Region>(target), v);
}

double pad(double v) { return 1e-9 * (1.0 + std::abs(v)); }

// Visits every primitive w with basis * w in the target. The outer loop runs
// over the integer coordinate with the shorter range; for each value the
// other coordinate is confined to the interval cut out by the bounding box.
template <class Visit>
void for_each_primitive(const LatticeBasis& lat, const Target& target, std::uint64_t budget,
                        Visit&& visit) {
    if (lat.dimension() != 2) {
        throw Error(ErrorKind::dimension, "dimension mismatch: lattice enumeration supports d = 2 only");
    }
    const Box2 box = target_box(target);
    for (int r = 0; r < 2; ++r) {
        if (!std::isfinite(box.lo[r]) || !std::isfinite(box.hi[r])) {
            throw Error(ErrorKind::unbounded, "unbounded region: cannot enumerate lattice points");
        }
    }
    const Matrix& B = lat.basis();
    const Matrix Binv = B.inverse();

    double wmin[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double wmax[2] = {-wmin[0], -wmin[1]};
    for (int cx = 0; cx < 2; ++cx) {
        for (int cy = 0; cy < 2; ++cy) {
            Vector corner(2);
            corner << (cx ? box.hi[0] : box.lo[0]), (cy ? box.hi[1] : box.lo[1]);
            const Vector w = Binv * corner;
            for (int k = 0; k < 2; ++k) {
                wmin[k] = std::min(wmin[k], w[k]);
                wmax[k] = std::max(wmax[k], w[k]);
            }
        }
    }
    double lo[2];
    double hi[2];
    for (int k = 0; k < 2; ++k) {
        lo[k] = std::ceil(wmin[k] - pad(wmin[k]));
        hi[k] = std::floor(wmax[k] + pad(wmax[k]));
    }
    const int outer = (hi[0] - lo[0]) <= (hi[1] - lo[1]) ? 0 : 1;
    const int inner = 1 - outer;

    const double rows = hi[outer] - lo[outer] + 1.0;
    if (rows > static_cast<double>(budget)) {
        std::ostringstream os;
        os << "enumeration budget exceeded: " << rows << " rows > limit " << budget;
        throw Error(ErrorKind::budget, os.str());
    }

    std::uint64_t visited = 0;
    Vector v(2);
    for (auto a = static_cast<std::int64_t>(lo[outer]); a <= static_cast<std::int64_t>(hi[outer]); ++a) {
        double s_lo = lo[inner];
        double s_hi = hi[inner];
        bool feasible = true;
        for (int r = 0; r < 2 && feasible; ++r) {
            const double base = static_cast<double>(a) * B(r, outer);
            const double slope = B(r, inner);
            if (slope == 0.0) {
                feasible = box.lo[r] - pad(box.lo[r]) <= base && base <= box.hi[r] + pad(box.hi[r]);
                continue;
            }
            double t0 = (box.lo[r] - base) / slope;
            double t1 = (box.hi[r] - base) / slope;
            if (t0 > t1) std::swap(t0, t1);
            s_lo = std::max(s_lo, std::ceil(t0 - pad(t0)));
            s_hi = std::min(s_hi, std::floor(t1 + pad(t1)));
        }
        if (!feasible || s_lo > s_hi) continue;
        visited += static_cast<std::uint64_t>(s_hi - s_lo) + 1;
        if (visited > budget) {
            std::ostringstream os;
            os << "enumeration budget exceeded: more than " << budget << " candidates";
            throw Error(ErrorKind::budget, os.str());
        }
        for (auto b = static_cast<std::int64_t>(s_lo); b <= static_cast<std::int64_t>(s_hi); ++b) {
            Coord2 w{};
            w[outer] = a;
            w[inner] = b;
            if (std::gcd(w[0], w[1]) != 1) continue;
            v = B.col(0) * static_cast<double>(w[0]) + B.col(1) * static_cast<double>(w[1]);
            if (target_contains(target, v)) visit(w);
        }
    }
}

}  // namespace

std::vector<Coord2> enumerate_primitive(const LatticeBasis& lat, const Target& target,
                                        std::uint64_t budget) {
    std::vector<Coord2> out;
    for_each_primitive(lat, target, budget, [&](const Coord2& w) { out.push_back(w); });
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t lattice_count(const LatticeBasis& lat, const Target& target, std::uint64_t budget) {
    std::int64_t count = 0;
    for_each_primitive(lat, target, budget, [&](const Coord2&) { ++count; });
    return count;
}

double shortest_vector_length(const LatticeBasis& lat) {
    if (lat.dimension() != 2) throw Error(ErrorKind::dimension, "shortest vector supports d = 2 only");
    Vector u = lat.basis().col(0);
    Vector v = lat.basis().col(1);
    if (u.squaredNorm() > v.squaredNorm()) std::swap(u, v);
    while (true) {
        const double mu = std::round(u.dot(v) / u.squaredNorm());
        v -= mu * u;
        if (v.squaredNorm() >= u.squaredNorm()) break;
        std::swap(u, v);
    }
    return u.norm();
}

process::EquivariantProcess<LatticeBasis> haar_lattice_process() {
    process::EquivariantProcess<LatticeBasis> proc;
    proc.sample = [](Rng& rng) { return sample_haar_lattice2(rng).basis; };
    proc.count = [](const LatticeBasis& lat, const geometry::Region& region) {
        return lattice_count(lat, region);
    };
    return proc;
}

stats::EmpiricalDistribution estimate_lattice_pmf(const geometry::Region& region,
                                                  std::uint64_t samples, std::uint64_t seed,
                                                  unsigned workers) {
    return process::estimate_distribution(haar_lattice_process(), region, samples, seed, workers);
}

}  // namespace estlab::lattice
