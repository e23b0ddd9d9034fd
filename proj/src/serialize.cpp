#include "corrmate/serialize.hpp"

#include <cmath>

#include "corrmate/error.hpp"

namespace corrmate {

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json point_json(const ComplexPoint& z) { return z.infinite ? Json(nullptr) : complex_json(z.value); }

Json matrix_json(const MobiusMap& m) {
    return Json::array({Json::array({complex_json(m.a()), complex_json(m.b())}),
                        Json::array({complex_json(m.c()), complex_json(m.d())})});
}

namespace {

Json complex_list(const std::vector<cplx>& zs) {
    Json out = Json::array();
    for (cplx z : zs) out.push_back(complex_json(z));
    return out;
}

Json optional_json(const auto& v) { return v ? Json(*v) : Json(nullptr); }

Json rational_json(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

}  // namespace

Json to_json(const OrbifoldSignature& sig) {
    return {{"punctures", sig.punctures}, {"order2", sig.order2_points}, {"cone_order", sig.cone_order}};
}

Json to_json(const DerivedInvariants& inv) {
    return {{"n", inv.n},
            {"p", inv.p},
            {"m", inv.m},
            {"d", inv.d},
            {"chi", rational_json(inv.chi)},
            {"cover_punctures", inv.cover_punctures},
            {"cover_order2_points", inv.cover_order2_points}};
}

Json to_json(const MateabilityReport& r) {
    Json mult = Json::array();
    for (const auto& b : r.breakpoint_multipliers) {
        mult.push_back({{"angle", b.angle},
                        {"period", b.period},
                        {"left", std::isnan(b.left) ? Json(nullptr) : Json(b.left)},
                        {"right", std::isnan(b.right) ? Json(nullptr) : Json(b.right)},
                        {"difference", b.difference},
                        {"symmetric", b.symmetric},
                        {"parabolic", b.parabolic}});
    }
    return {{"degree", r.degree},
            {"markov_level", optional_json(r.markov_level)},
            {"transition_matrix", r.transition_matrix},
            {"breakpoint_multipliers", mult},
            {"multipliers_symmetric", r.multipliers_symmetric},
            {"expansive", r.expansive},
            {"preimage_mesh", r.preimage_mesh},
            {"derivative_growth", r.derivative_growth},
            {"fold_free", optional_json(r.fold_free)},
            {"polygonal_degree", optional_json(r.polygonal_degree)},
            {"inner_vertices_fixed", optional_json(r.inner_vertices_fixed)},
            {"passed", r.passed()},
            {"failures", r.failures},
            {"notes", r.notes}};
}

Json to_json(const GroupData& g) {
    Json gens = Json::array();
    for (const auto& gen : g.generators)
        gens.push_back({{"label", gen.label},
                        {"matrix", matrix_json(gen.map)},
                        {"side_from", gen.side_from},
                        {"side_to", gen.side_to},
                        {"class", to_string(classify(gen.map))}});
    Json out = {{"generators", gens},
                {"fundamental_polygon",
                 {{"vertices", complex_list(g.fundamental_polygon.vertices)},
                  {"side_labels", g.fundamental_polygon.side_labels}}}};
    out["rotation_symmetry"] = g.rotation_symmetry ? matrix_json(*g.rotation_symmetry) : Json(nullptr);
    return out;
}

Json to_json(const PiecewiseMoebiusMap& map) {
    Json pieces = Json::array();
    for (const auto& p : map.pieces())
        pieces.push_back({{"start", p.start}, {"length", p.length}, {"label", p.label}, {"branch", matrix_json(p.branch)}});
    return {{"pieces", pieces}, {"allow_jumps", map.allow_jumps()}, {"jump_points", map.jump_points()}};
}

Json to_json(const CanonicalExtensionData& ext) {
    Json geo = Json::array();
    for (const auto& g : ext.geodesics) {
        Json poly = Json::array();
        for (int k = 0; k <= 32; ++k) poly.push_back(complex_json(g.point_at(k / 32.0)));
        geo.push_back(poly);
    }
    return {{"polygon", complex_list(ext.fundamental_polygon.vertices)}, {"geodesics", geo}};
}

Json to_json(const CriticalPointData& c) {
    return {{"point", complex_json(c.point)},
            {"value", complex_json(c.value)},
            {"multiplicity", c.multiplicity},
            {"cluster_radius", c.cluster_radius},
            {"value_spread", c.value_spread}};
}

Json to_json(const ConjugacyResult& r) {
    Json table = Json::array();
    for (std::size_t k = 0; k < r.table.inputs().size(); ++k)
        table.push_back(Json::array({r.table.inputs()[k], r.table.outputs()[k]}));
    return {{"degree", r.degree},
            {"depth", r.depth},
            {"mesh", r.table.mesh()},
            {"strictly_monotone", r.table.strictly_monotone()},
            {"table_residual", r.table_residual},
            {"midpoint_residual", r.midpoint_residual},
            {"level_mesh", r.level_mesh},
            {"table", table}};
}

Json to_json(const MatingModel& m) {
    auto curves = [](const std::vector<Polyline>& cs) {
        Json out = Json::array();
        for (const auto& c : cs) out.push_back(complex_list(c.points));
        return out;
    };
    return {{"degree", m.degree},
            {"p1", m.p1},
            {"p2", m.p2},
            {"gcd", m.cut_points},
            {"components", m.component_count},
            {"constructed", m.constructed},
            {"ideal_angles_1", m.ideal_angles_1},
            {"ideal_angles_2", m.ideal_angles_2},
            {"curves_1", curves(m.curves_1)},
            {"curves_2", curves(m.curves_2)},
            {"notes", m.notes}};
}

Json to_json(const VarietyPoint& p) {
    return {{"n", p.params.n},
            {"a", complex_list(p.params.a)},
            {"beta", p.beta ? complex_json(*p.beta) : Json(nullptr)},
            {"residuals",
             {{"variety", p.residuals.variety},
              {"beta_value", p.residuals.beta_value},
              {"beta_derivative", p.residuals.beta_derivative},
              {"pairing", p.residuals.pairing}}},
            {"validated", p.validated},
            {"sign", p.sign},
            {"flags", p.flags}};
}

Json to_json(const VarietySolution& s) {
    Json cands = Json::array();
    for (const auto& c : s.candidates) cands.push_back(to_json(c));
    return {{"unknown", "a" + std::to_string(s.unknown)},
            {"resultant_degree", s.resultant.degree()},
            {"interpolation_check", s.interpolation_check},
            {"candidates", cands}};
}

Json to_json(const CorrespondenceInstance& inst) {
    return {{"n", inst.params.n},
            {"a", complex_list(inst.params.a)},
            {"R", complex_list(inst.r.coefficients())},
            {"beta", complex_json(inst.beta)},
            {"critical_points", complex_list(inst.critical_points)},
            {"critical_values", complex_list(inst.critical_values)}};
}

Json to_json(const OrbitCloud& cloud) {
    Json out = Json::array();
    for (const auto& p : cloud.points) {
        if (p.z.infinite) continue;
        out.push_back(Json::array({p.z.value.real(), p.z.value.imag(), p.generation}));
    }
    return out;
}

Json to_json(const ComponentMap& m) {
    const int res = m.window.resolution;
    Json rows = Json::array();
    for (int r = 0; r < res; ++r) {
        Json runs = Json::array();
        int c = 0;
        while (c < res) {
            int label = m.label_at(c, r), start = c;
            while (c < res && m.label_at(c, r) == label) ++c;
            runs.push_back(Json::array({label, c - start}));
        }
        rows.push_back(runs);
    }
    Json comps = Json::array();
    for (const auto& ci : m.components)
        if (!ci.role.empty() && ci.role != "minor")
            comps.push_back({{"label", ci.label}, {"role", ci.role}, {"pixels", ci.pixels}});
    std::size_t minor = 0;
    for (const auto& ci : m.components)
        if (ci.role.empty() || ci.role == "minor") ++minor;
    Json adj = Json::array();
    for (std::size_t i = 0; i < m.adjacency.size(); ++i)
        for (std::size_t j = i + 1; j < m.adjacency.size(); ++j)
            if (m.adjacency[i][j] > 0) adj.push_back(Json::array({i, j, m.adjacency[i][j]}));
    Json sides = Json::array();
    for (auto [a, b] : m.critical_point_sides) sides.push_back(Json::array({a, b}));
    return {{"window", {{"center", complex_json(m.window.center)}, {"half_width", m.window.half_width}}},
            {"width", res},
            {"height", res},
            {"limit_label", -1},
            {"components", comps},
            {"minor_components", minor},
            {"chain", m.chain},
            {"adjacency", adj},
            {"critical_point_sides", sides},
            {"eta_agreement", m.eta_agreement},
            {"chain_ok", m.chain_ok},
            {"notes", m.notes},
            {"label_runs", rows}};
}

Json to_json(const FundamentalCurve& fc) {
    std::vector<cplx> thin;
    std::size_t stride = std::max<std::size_t>(1, fc.curve.size() / 600);
    for (std::size_t k = 0; k < fc.curve.size(); k += stride) thin.push_back(fc.curve[k]);
    return {{"anchors", complex_list(fc.anchors)},
            {"segment_shapes", fc.segment_shapes},
            {"shape_note", "edges are circle arcs, chords or bent chords standing in for hyperbolic geodesics"},
            {"eta_defect", fc.eta_defect},
            {"winding_about_zero", fc.winding_about_zero},
            {"image_winding", fc.image_winding},
            {"self_intersections", fc.self_intersections},
            {"min_image_separation", fc.min_image_separation},
            {"univalent", fc.univalent},
            {"notes", fc.notes},
            {"polyline", complex_list(thin)}};
}

ReducedFamilyParams params_from_json(const Json& j) {
    try {
        ReducedFamilyParams p;
        p.n = j.at("n").get<int>();
        for (const auto& v : j.at("a")) {
            if (v.is_number()) p.a.emplace_back(v.get<double>(), 0.0);
            else p.a.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        }
        if (p.n < 2 || static_cast<int>(p.a.size()) != p.n - 1)
            throw ConfigError("point file needs n >= 2 and n-1 coefficients");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed point file: ") + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace corrmate
