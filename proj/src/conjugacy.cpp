#include "corrmate/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "corrmate/builders.hpp"
#include "corrmate/error.hpp"
#include "corrmate/markov.hpp"

namespace corrmate {

MonotoneCircleMap::MonotoneCircleMap(std::vector<double> inputs, std::vector<double> outputs)
    : in_(std::move(inputs)), out_(std::move(outputs)) {
    if (in_.size() != out_.size() || in_.empty()) throw InvalidMap("conjugacy table size mismatch");
}

double MonotoneCircleMap::mesh() const { return partition_mesh(out_); }

bool MonotoneCircleMap::strictly_monotone() const {
    for (std::size_t k = 1; k < out_.size(); ++k)
        if (!(out_[k] > out_[k - 1]) || !(in_[k] > in_[k - 1])) return false;
    return out_.back() < kTwoPi && in_.back() < kTwoPi;
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    x = wrap_angle(x);
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t k = (it == xs.begin()) ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin()) - 1;
    double x0 = xs[k], y0 = ys[k];
    double x1 = (k + 1 < xs.size()) ? xs[k + 1] : xs[0] + kTwoPi;
    double y1 = (k + 1 < ys.size()) ? ys[k + 1] : ys[0] + kTwoPi;
    if (x < x0) x += kTwoPi;
    return wrap_angle(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
}

}  // namespace

double MonotoneCircleMap::evaluate(double theta) const { return interpolate(in_, out_, theta); }

double MonotoneCircleMap::inverse(double phi) const { return interpolate(out_, in_, phi); }

ConjugacyResult power_conjugacy(const CircleMap& map, const ConjugacyOptions& opt) {
    int d = degree(map);
    if (d < 2) throw NotExpansive("degree below 2");
    if (circle_gap(map.evaluate(0.0), 0.0) > 1e-9) throw InvalidMap("angle 0 is not fixed");

    std::vector<double> level{0.0};
    std::vector<double> meshes{kTwoPi};
    int depth = 0;
    for (int L = 1; L <= opt.depth; ++L) {
        std::vector<double> next;
        next.reserve(level.size() * d);
        for (double y : level)
            for (double x : map.preimages(y)) next.push_back(x);
        next = merge_angles(next);
        if (next.size() != level.size() * static_cast<std::size_t>(d))
            throw NotACovering("preimage count differs from the degree power");
        double mesh = partition_mesh(next);
        if (!(mesh < meshes.back())) throw NotExpansive("preimage gaps do not shrink");
        level = std::move(next);
        meshes.push_back(mesh);
        depth = L;
        if (opt.mesh_target > 0 && mesh < opt.mesh_target) break;
    }
    std::size_t count = level.size();
    std::vector<double> inputs(count);
    for (std::size_t k = 0; k < count; ++k) inputs[k] = kTwoPi * static_cast<double>(k) / count;
    level[0] = 0.0;

    ConjugacyResult res{MonotoneCircleMap(inputs, level), d, depth, meshes, 0.0, 0.0};
    for (std::size_t k = 0; k < count; ++k) {
        double lhs = level[(k * d) % count];
        double rhs = map.evaluate(level[k]);
        res.table_residual = std::max(res.table_residual, circle_gap(lhs, rhs));
        double mid = inputs[k] + 0.5 * kTwoPi / count;
        double g = res.table.evaluate(mid);
        double lhs_mid = res.table.evaluate(d * mid);
        res.midpoint_residual = std::max(res.midpoint_residual, circle_gap(lhs_mid, map.evaluate(g)));
    }
    return res;
}

namespace {

// Hyperbolic geodesic between two boundary angles as a polyline.
Polyline geodesic_polyline(double a, double b, int samples) {
    Polyline p;
    if (circle_gap(a, b) < 1e-12) return p;
    GeodesicArc g(std::polar(1.0, a), std::polar(1.0, b));
    p.points.push_back(g.endpoint_a);
    for (int k = 1; k < samples; ++k) p.points.push_back(g.point_at(static_cast<double>(k) / samples));
    p.points.push_back(g.endpoint_b);
    return p;
}

// Ideal vertices of the fundamental domain in the circle-map coordinate, or
// empty when no map is constructed for the signature.
std::unique_ptr<CircleMap> constructible_map(const OrbifoldSignature& s, std::vector<double>& vertices) {
    if (s.order2_points == 0 && s.cone_order == 0 && s.punctures >= 3) {
        int d = s.punctures - 1;
        auto bs = build_punctured_sphere_bs(d);
        for (int k = 0; k < 2 * d; ++k) vertices.push_back(kPi * k / d);
        return std::make_unique<PiecewiseMoebiusMap>(bs.map);
    }
    if (s.punctures == 1 && s.order2_points == 1 && s.cone_order >= 4 && s.cone_order % 2 == 0) {
        auto h = build_hecke_fbs(s.cone_order / 2);
        vertices.push_back(0.0);
        return std::make_unique<FactorBSMap>(h.factor);
    }
    return nullptr;
}

std::vector<double> roots_of_unity_angles(int p) {
    std::vector<double> v;
    for (int k = 0; k < p; ++k) v.push_back(kTwoPi * k / p);
    return v;
}

}  // namespace

MatingModel mating_model(const OrbifoldSignature& sig1, const OrbifoldSignature& sig2,
                         const ConjugacyOptions& opt) {
    DerivedInvariants a = signature_invariants(sig1), b = signature_invariants(sig2);
    if (a.d != b.d) throw DegreeMismatch("degrees " + std::to_string(a.d) + " and " + std::to_string(b.d) + " differ");
    MatingModel m;
    m.degree = a.d;
    m.p1 = a.p;
    m.p2 = b.p;
    m.cut_points = std::gcd(a.p, b.p);

    std::vector<double> v1, v2;
    auto map1 = constructible_map(sig1, v1);
    auto map2 = constructible_map(sig2, v2);
    m.constructed = map1 && map2;
    auto pull_back = [&](const std::unique_ptr<CircleMap>& map, const std::vector<double>& verts, int p) {
        if (!map) return roots_of_unity_angles(p);
        ConjugacyResult c = power_conjugacy(*map, opt);
        std::vector<double> out;
        for (double v : verts) out.push_back(c.table.inverse(v));
        std::sort(out.begin(), out.end());
        return out;
    };
    m.ideal_angles_1 = pull_back(map1, v1, a.p);
    m.ideal_angles_2 = pull_back(map2, v2, b.p);
    for (double& t : m.ideal_angles_2) t = t == 0.0 ? 0.0 : wrap_angle(-t);  // w -> conj(w)
    std::sort(m.ideal_angles_2.begin(), m.ideal_angles_2.end());
    if (!m.constructed) m.notes.push_back("ideal points placed at roots of unity without computing conjugacies");

    // shared ideal points are the cut points of the model domain
    // distinct points of the two sets are at least 2pi/(p1 p2) apart
    double tol = 1e-6;
    if (map1 || map2) tol = std::min(1e-2, kPi / (a.p * b.p));
    for (double x : m.ideal_angles_1)
        for (double y : m.ideal_angles_2)
            if (circle_gap(x, y) < tol) ++m.component_count;

    auto curves = [](const std::vector<double>& v, bool outside) {
        std::vector<Polyline> out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            double a0 = v[k], a1 = (k + 1 < v.size()) ? v[k + 1] : v[0];
            Polyline p = v.size() == 1 ? Polyline{} : geodesic_polyline(a0, a1, 32);
            if (v.size() == 1) {
                // monogon: loop from the single vertex around through the disk
                for (int s = 0; s <= 64; ++s)
                    p.points.push_back(std::polar(1.0, a0) * (0.6 + 0.4 * std::polar(1.0, kTwoPi * s / 64)));
            }
            if (outside)
                for (cplx& z : p.points) z = 1.0 / std::conj(z);
            out.push_back(p);
        }
        return out;
    };
    m.curves_1 = curves(m.ideal_angles_1, false);
    m.curves_2 = curves(m.ideal_angles_2, true);
    return m;
}

}  // namespace corrmate
