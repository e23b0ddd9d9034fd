#include "corrmate/builders.hpp"

#include <algorithm>
#include <cmath>

#include "corrmate/error.hpp"

namespace corrmate {

double validate_group(const GroupData& group, double tol) {
    const auto& v = group.fundamental_polygon.vertices;
    int m = static_cast<int>(v.size());
    double worst = 0.0;
    for (const auto& g : group.generators) {
        cplx a = v[g.side_from], b = v[(g.side_from + 1) % m];
        cplx c = v[g.side_to], e = v[(g.side_to + 1) % m];
        cplx ga = g.map.apply(a), gb = g.map.apply(b);
        double err = std::min(std::max(std::abs(ga - c), std::abs(gb - e)),
                              std::max(std::abs(ga - e), std::abs(gb - c)));
        worst = std::max(worst, err);
    }
    if (group.rotation_symmetry) {
        const MobiusMap& r = *group.rotation_symmetry;
        for (const auto& g : group.generators) {
            MobiusMap conj = r * g.map * r.inverse();
            double best = 1e300;
            for (const auto& h : group.generators) best = std::min(best, conj.distance(h.map));
            worst = std::max(worst, best);
        }
    }
    if (worst > tol) throw InvalidMap("side pairing error " + std::to_string(worst));
    return worst;
}

namespace {

cplx unit(double angle) { return std::polar(1.0, angle); }

// Chooses sigma in the one-parameter family of maps with the prescribed
// endpoint correspondence so that sigma^{-1} prev is parabolic.
MobiusMap pin_by_parabolic_cycle(const MobiusMap& prev, cplx from0, cplx from1, cplx to0, cplx to1,
                                 cplx from_mid, cplx to_far) {
    MobiusMap m0 = mobius_three_points({ComplexPoint(from0), ComplexPoint(from1), ComplexPoint(from_mid)},
                                       {ComplexPoint(to0), ComplexPoint(to1), ComplexPoint(to_far)});
    // chart with 0 -> to0, infinity -> to1 and 1 -> a point of the circle
    MobiusMap chart = mobius_three_points({ComplexPoint(0.0), ComplexPoint::infinity(), ComplexPoint(1.0)},
                                          {ComplexPoint(to0), ComplexPoint(to1), ComplexPoint(-to_far)});
    MobiusMap nm = chart.inverse() * prev * m0.inverse() * chart;
    cplx n11 = nm.a(), n22 = nm.d();
    MobiusMap best;
    double best_defect = 1e300;
    for (double target : {2.0, -2.0}) {
        // n22 l^2 - target l + n11 = 0
        cplx disc = target * target - 4.0 * n22 * n11;
        std::vector<cplx> roots;
        if (std::abs(disc) < 1e-10 * target * target) {
            roots.push_back(target / (2.0 * n22));
        } else {
            cplx s = std::sqrt(disc);
            cplx big = (target + (std::real(std::conj(cplx(target)) * s) >= 0 ? s : -s)) / 2.0;
            roots.push_back(big / n22);
            roots.push_back(n11 / big);
        }
        for (cplx lam : roots) {
            if (std::abs(lam.imag()) > 1e-6 * std::abs(lam) || lam.real() <= 0) continue;
            double l = lam.real();
            MobiusMap sigma = chart * MobiusMap(l, 0.0, 0.0, 1.0 / l) * chart.inverse() * m0;
            double defect = parabolic_defect(sigma.inverse() * prev);
            if (defect < best_defect) {
                best_defect = defect;
                best = sigma;
            }
        }
    }
    if (best_defect > 1e-9) throw SolveFailure("no parabolic vertex cycle in the side-pairing family");
    return best;
}

}  // namespace

BowenSeriesData build_punctured_sphere_bs(int d) {
    if (d < 2) throw InvalidMap("punctured sphere map needs d >= 2");
    auto z = [d](int k) { return unit(kPi * k / d); };
    std::vector<MobiusMap> s(d + 1);
    s[1] = mobius_parabolic_through(ComplexPoint(1.0), ComplexPoint(std::conj(z(1))), ComplexPoint(z(1)));
    for (int i = 2; i < d; ++i) {
        double mid = kPi * (i - 0.5) / d;
        s[i] = pin_by_parabolic_cycle(s[i - 1], std::conj(z(i - 1)), std::conj(z(i)), z(i - 1), z(i),
                                      unit(-mid), -unit(mid));
    }
    s[d] = mobius_parabolic_through(ComplexPoint(z(d)), ComplexPoint(std::conj(z(d - 1))),
                                    ComplexPoint(z(d - 1)));

    GroupData group;
    std::vector<double> defects;
    std::vector<cplx> verts;
    std::vector<std::string> labels(2 * d);
    for (int k = 0; k < 2 * d; ++k) verts.push_back(unit(kPi * k / d));
    for (int i = 1; i <= d; ++i) {
        labels[i - 1] = "sigma_" + std::to_string(i) + "+";
        labels[2 * d - i] = "sigma_" + std::to_string(i) + "-";
        group.generators.push_back({"sigma_" + std::to_string(i), s[i], 2 * d - i, i - 1});
    }
    group.fundamental_polygon = IdealPolygon(verts, labels);
    validate_group(group);

    defects.push_back(parabolic_defect(s[1]));
    for (int i = 1; i < d; ++i) defects.push_back(parabolic_defect(s[i + 1].inverse() * s[i]));
    defects.push_back(parabolic_defect(s[d]));
    for (double c : defects)
        if (c > 1e-9) throw SolveFailure("vertex cycle is not parabolic");

    std::vector<CircleArcPiece> pieces;
    for (int i = 1; i <= d; ++i) {
        pieces.push_back(arc_piece(kPi * (i - 1) / d, kPi * i / d, s[i].inverse(),
                                   "sigma_" + std::to_string(i) + "^-1"));
        pieces.push_back(arc_piece(kTwoPi - kPi * i / d, kTwoPi - kPi * (i - 1) / d, s[i],
                                   "sigma_" + std::to_string(i)));
    }
    return {group, PiecewiseMoebiusMap(std::move(pieces)), defects};
}

HigherBowenSeriesData build_hbs_map(int d) {
    BowenSeriesData bs = build_punctured_sphere_bs(d);
    // sigma_i here is the generator pairing the edges at height d+1-i
    std::vector<MobiusMap> s(d + 1);
    for (int i = 1; i <= d; ++i) s[i] = bs.group.generators[d - i].map;
    auto upper = [d](int k) { return wrap_angle(kPi - (k - 1) * kPi / d); };
    auto lower = [d](int k) { return wrap_angle(kPi + (k - 1) * kPi / d); };

    GroupData group = bs.group;
    for (int i = 1; i <= d; ++i) group.generators[d - i].label = "sigma_" + std::to_string(i);
    std::reverse(group.generators.begin(), group.generators.end());

    std::vector<CircleArcPiece> pieces;
    std::vector<double> union_angles;
    for (int k = 0; k < 2 * d; ++k) union_angles.push_back(kPi * k / d);
    for (int i = 1; i <= d; ++i) {
        pieces.push_back(arc_piece(lower(i), lower(i + 1), s[i], "sigma_" + std::to_string(i)));
        // vertices of sigma_i W, clockwise from i to i+1
        std::vector<double> marks(2 * d + 1);
        for (int j = 1; j <= 2 * d; ++j) {
            double w_angle = kPi + (i - j) * kPi / d;
            marks[j] = arg_angle(s[i].apply(unit(w_angle)));
        }
        marks[1] = upper(i);
        marks[2 * d] = upper(i + 1);
        for (int j = 2; j < 2 * d; ++j) union_angles.push_back(marks[j]);
        MobiusMap inv = s[i].inverse();
        std::string tag = "sigma_" + std::to_string(i) + "^-1";
        for (int j = 1; j < 2 * d; ++j) {
            MobiusMap branch = inv;
            std::string label = tag;
            if (j < i) {
                int t = i - j;
                branch = s[t] * inv;
                label = "sigma_" + std::to_string(t) + "." + tag;
            } else if (j >= i + d) {
                int t = j - i - d;
                branch = s[d - t] * inv;
                label = "sigma_" + std::to_string(d - t) + "." + tag;
            }
            pieces.push_back(arc_piece(marks[j + 1], marks[j], branch, label));
        }
    }
    PiecewiseMoebiusMap aux(std::move(pieces));
    PiecewiseMoebiusMap minimal = minimalize(aux);
    InnerDomain inner;
    for (int k = 1; k <= d + 1; ++k) inner.vertex_angles.push_back(upper(k));
    std::sort(inner.vertex_angles.begin(), inner.vertex_angles.end());
    return {group, aux, minimal, inner, merge_angles(union_angles)};
}

FactorBSMap::FactorBSMap(PiecewiseMoebiusMap cover_map, int cover_degree)
    : cover_(std::move(cover_map)), n_(cover_degree) {
    if (n_ < 2) throw InvalidMap("cover degree must be at least 2");
    if (cover_.pieces().front().start != 0.0) throw InvalidMap("cover map must have a piece starting at 0");
}

double FactorBSMap::evaluate(double phi, Side side) const {
    double p = wrap_angle(phi);
    if (side == Side::cw && p < 1e-12) p = kTwoPi;
    double theta = p / n_;
    return wrap_angle(n_ * cover_.evaluate(theta, side));
}

double FactorBSMap::derivative(double phi, Side side) const {
    double p = wrap_angle(phi);
    if (side == Side::cw && p < 1e-12) p = kTwoPi;
    return cover_.derivative(p / n_, side);
}

std::vector<double> FactorBSMap::preimages(double phi) const {
    const MobiusMap inv = cover_.pieces().front().branch.inverse();
    double sector = kTwoPi / n_;
    std::vector<double> out;
    for (int k = 0; k < n_; ++k) {
        double target = (wrap_angle(phi) + kTwoPi * k) / n_;
        double theta = arg_angle(inv.apply(unit(target)));
        if (kTwoPi - theta < 1e-12) theta = 0.0;
        if (theta < sector - 1e-12) out.push_back(n_ * theta);
    }
    return merge_angles(out);
}

cplx FactorBSMap::evaluate_extended(cplx w) const {
    if (std::abs(w) < 1e-300) throw InvalidMap("w = 0 lies in the fundamental domain");
    cplx z = std::polar(std::pow(std::abs(w), 1.0 / n_), arg_angle(w) / n_);
    return std::pow(cover_.pieces().front().branch.apply(z), n_);
}

cplx FactorBSMap::derivative_extended(cplx w) const {
    cplx z = std::polar(std::pow(std::abs(w), 1.0 / n_), arg_angle(w) / n_);
    const MobiusMap& g = cover_.pieces().front().branch;
    cplx gz = g.apply(z);
    return std::pow(gz, n_ - 1) * g.derivative(z) * std::pow(z, 1 - n_);
}

HeckeData build_hecke_fbs(int half_order) {
    if (half_order < 2) throw InvalidMap("Hecke construction needs n >= 2");
    int n = 2 * half_order;
    GroupData group;
    std::vector<cplx> verts;
    std::vector<std::string> labels;
    std::vector<CircleArcPiece> pieces;
    for (int k = 0; k < n; ++k) {
        verts.push_back(unit(kTwoPi * k / n));
        labels.push_back("g_" + std::to_string(k + 1));
    }
    for (int k = 1; k <= n; ++k) {
        GeodesicArc side(verts[k - 1], verts[k % n]);
        MobiusMap g = mobius_elliptic_involution(side);
        group.generators.push_back({"g_" + std::to_string(k), g, k - 1, k - 1});
        pieces.push_back(arc_piece(kTwoPi * (k - 1) / n, kTwoPi * k / n, g, "g_" + std::to_string(k)));
    }
    group.fundamental_polygon = IdealPolygon(verts, labels);
    group.rotation_symmetry = MobiusMap::rotation(kTwoPi / n);
    validate_group(group);
    PiecewiseMoebiusMap cover(std::move(pieces), true);
    return {group, FactorBSMap(cover, n)};
}

CriticalPointData factor_critical_point(const HeckeData& h) {
    int n = h.factor.cover_degree();
    CriticalPointData c;
    c.point = std::pow(h.group.generators[0].map.apply(cplx(0.0)), n);
    for (const auto& g : h.group.generators) {
        cplx w = std::pow(g.map.apply(cplx(0.0)), n);
        c.cluster_radius = std::max(c.cluster_radius, std::abs(w - c.point));
        c.value_spread = std::max(c.value_spread, std::abs(h.factor.evaluate_extended(w)));
    }
    c.value = h.factor.evaluate_extended(c.point);
    // local degree from the winding of A(w) - A(w*) on a small circle
    double rho = 1e-3 * std::abs(c.point);
    const int steps = 512;
    double wind = 0.0;
    cplx prev = h.factor.evaluate_extended(c.point + rho) - c.value;
    for (int k = 1; k <= steps; ++k) {
        cplx cur = h.factor.evaluate_extended(c.point + rho * unit(kTwoPi * k / steps)) - c.value;
        wind += std::arg(cur / prev);
        prev = cur;
    }
    c.multiplicity = static_cast<int>(std::lround(wind / kTwoPi)) - 1;
    return c;
}

double boundary_involution_residual(const HeckeData& h, int samples) {
    int n = h.factor.cover_degree();
    GeodesicArc side(1.0, unit(kTwoPi / n));
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        double t = 0.001 + 0.998 * k / std::max(1, samples - 1);
        cplx w = std::pow(side.point_at(t), n);
        cplx back = h.factor.evaluate_extended(h.factor.evaluate_extended(w));
        worst = std::max(worst, std::abs(back - w));
    }
    return worst;
}

double rotation_commutation_residual(const HeckeData& h, int samples) {
    const auto& cover = h.factor.cover_map();
    double step = kTwoPi / h.factor.cover_degree();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        double theta = kTwoPi * (k + 0.5) / samples;
        double lhs = cover.evaluate(theta + step);
        double rhs = wrap_angle(cover.evaluate(theta) + step);
        worst = std::max(worst, circle_gap(lhs, rhs));
    }
    const MobiusMap& r = *h.group.rotation_symmetry;
    const auto& gens = h.group.generators;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        MobiusMap conj = r * gens[k].map * r.inverse();
        worst = std::max(worst, conj.distance(gens[(k + 1) % gens.size()].map));
    }
    return worst;
}

}  // namespace corrmate
