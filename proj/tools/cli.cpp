#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "corrmate/error.hpp"
#include "corrmate/serialize.hpp"

namespace corrmate::cli {

void RunConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(multiplier_tol, "multiplier-tol");
    positive(tolerance, "tolerance");
    positive(dedupe, "dedupe");
    positive(classify_dedupe, "classify-dedupe");
    positive(half_width, "half-width");
    if (mesh_target < 0.0) throw ConfigError("mesh-target must be non-negative");
    if (radius < 0.0) throw ConfigError("radius must be non-negative");
    if (resolution < 64 || resolution > 4096 || (resolution & (resolution - 1)) != 0)
        throw ConfigError("resolution must be a power of two between 64 and 4096");
    if (depth < 1 || orbit_depth < 1) throw ConfigError("depth must be at least 1");
    if (cap < 1 || classify_cap < 1) throw ConfigError("cap must be at least 1");
    if (max_period < 1) throw ConfigError("max-period must be at least 1");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        auto issp = [](unsigned char c) { return std::isspace(c); };
        s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
        s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
        return s;
    };
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
        std::replace(key.begin(), key.end(), '_', '-');
        out[key] = value;
    }
    return out;
}

namespace {

void emit(const RunConfig& cfg, const Json& j, std::ostream& out) {
    std::string text = dump(j);
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << text;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << bytes;
}

MateabilityOptions mateability_options(const RunConfig& cfg) {
    MateabilityOptions mo;
    mo.max_period = cfg.max_period;
    mo.multiplier_tol = cfg.multiplier_tol;
    mo.seed = cfg.seed;
    return mo;
}

void run_signature(const RunConfig& cfg, std::ostream& out) {
    OrbifoldSignature sig{cfg.punctures, cfg.order2, cfg.cone};
    Json j = to_json(signature_invariants(sig));
    j["signature"] = to_json(sig);
    emit(cfg, j, out);
}

void run_bs(const RunConfig& cfg, std::ostream& out) {
    BowenSeriesData bs = build_punctured_sphere_bs(cfg.d);
    Json j = {{"d", cfg.d},
              {"group", to_json(bs.group)},
              {"map", to_json(bs.map)},
              {"cycle_defects", bs.cycle_defects},
              {"report", to_json(mateability_report(bs.map, mateability_options(cfg)))}};
    if (!cfg.domain_json.empty()) write_file(cfg.domain_json, dump(to_json(canonical_extension(bs.map))));
    emit(cfg, j, out);
}

void run_hbs(const RunConfig& cfg, std::ostream& out) {
    HigherBowenSeriesData h = build_hbs_map(cfg.d);
    Json j = {{"d", cfg.d},
              {"group", to_json(h.group)},
              {"aux_map", to_json(h.aux_map)},
              {"map", to_json(h.map)},
              {"inner_vertex_angles", h.inner.vertex_angles},
              {"report", to_json(mateability_report(h.map, mateability_options(cfg), &h.inner))}};
    if (!cfg.domain_json.empty()) write_file(cfg.domain_json, dump(to_json(canonical_extension(h.aux_map))));
    emit(cfg, j, out);
}

void run_fbs(const RunConfig& cfg, std::ostream& out) {
    HeckeData h = build_hecke_fbs(cfg.half_order);
    Json j = {{"n", cfg.half_order},
              {"group", to_json(h.group)},
              {"cover_map", to_json(h.factor.cover_map())},
              {"degree", degree(h.factor)},
              {"critical_point", to_json(factor_critical_point(h))},
              {"involution_residual", boundary_involution_residual(h)},
              {"rotation_residual", rotation_commutation_residual(h)},
              {"report", to_json(mateability_report(h.factor, mateability_options(cfg)))}};
    if (!cfg.domain_json.empty()) write_file(cfg.domain_json, dump(to_json(canonical_extension(h.factor.cover_map()))));
    emit(cfg, j, out);
}

void run_conjugacy(const RunConfig& cfg, std::ostream& out) {
    ConjugacyOptions co{cfg.depth, cfg.mesh_target};
    ConjugacyResult r = [&] {
        if (cfg.family == "bs") return power_conjugacy(build_punctured_sphere_bs(cfg.d).map, co);
        if (cfg.family == "hbs") return power_conjugacy(build_hbs_map(cfg.d).map, co);
        if (cfg.family == "fbs") return power_conjugacy(build_hecke_fbs(cfg.half_order).factor, co);
        throw ConfigError("family must be bs, hbs or fbs");
    }();
    Json j = to_json(r);
    j["family"] = cfg.family;
    emit(cfg, j, out);
}

void run_mating_model(const RunConfig& cfg, std::ostream& out) {
    MatingModel m = mating_model(parse_signature(cfg.sig1), parse_signature(cfg.sig2), {cfg.depth, cfg.mesh_target});
    emit(cfg, to_json(m), out);
}

void run_variety(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    int unknown = cfg.unknown == 0 ? cfg.n : cfg.unknown;
    if (cfg.n < 2 || unknown < 2 || unknown > cfg.n) throw ConfigError("need n >= 2 and 2 <= unknown <= n");
    ReducedFamilyParams fixed{cfg.n, std::vector<cplx>(cfg.n - 1, 0.0)};
    if (!cfg.fixed.empty()) {
        if (static_cast<int>(cfg.fixed.size()) != cfg.n - 1)
            throw ConfigError("fixed needs n-1 values a_2..a_n (the unknown entry is ignored)");
        for (int k = 0; k < cfg.n - 1; ++k) fixed.a[k] = cfg.fixed[k];
    }
    VarietyOptions vo;
    vo.tolerance = cfg.tolerance;
    vo.radius = cfg.radius;
    vo.seed = cfg.seed;
    VarietySolution sol = solve_variety(cfg.n, fixed, unknown, vo);
    Json j = to_json(sol);
    err << std::setw(26) << "a" << std::setw(7) << "valid" << std::setw(11) << "variety" << std::setw(11)
        << "beta_val" << std::setw(11) << "beta_der" << std::setw(11) << "pairing";
    if (cfg.physical) err << std::setw(10) << "physical";
    err << "\n";
    for (std::size_t k = 0; k < sol.candidates.size(); ++k) {
        const VarietyPoint& p = sol.candidates[k];
        cplx a = p.params.a[unknown - 2];
        std::ostringstream as;
        as << std::setprecision(10) << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i";
        err << std::setw(26) << as.str() << std::setw(7) << (p.validated ? "yes" : "no") << std::scientific
            << std::setprecision(2) << std::setw(11) << p.residuals.variety << std::setw(11) << p.residuals.beta_value
            << std::setw(11) << p.residuals.beta_derivative << std::setw(11) << p.residuals.pairing
            << std::defaultfloat;
        if (cfg.physical && p.validated) {
            PhysicalOptions po;
            po.seed = cfg.seed;
            PhysicalCheck pc = check_physical(p.params, po);
            j["candidates"][k]["physical"] = pc.physical;
            if (!pc.reason.empty()) j["candidates"][k]["physical_note"] = pc.reason;
            err << std::setw(10) << (pc.physical ? "yes" : "no");
        }
        err << "\n";
    }
    emit(cfg, j, out);
}

void run_corr(const RunConfig& cfg, std::ostream& out) {
    if (cfg.point.empty()) throw ConfigError("corr needs --point FILE");
    std::ifstream in(cfg.point);
    if (!in) throw ConfigError("cannot read point file " + cfg.point);
    Json pj;
    try {
        pj = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("point file is not JSON: ") + e.what());
    }
    if (pj.is_object() && pj.contains("candidates")) {
        // a whole variety solution: take the first physical candidate, else the first validated one
        const Json* pick = nullptr;
        for (const auto& c : pj["candidates"])
            if (c.value("physical", false)) {
                pick = &c;
                break;
            }
        if (!pick)
            for (const auto& c : pj["candidates"])
                if (c.value("validated", false)) {
                    pick = &c;
                    break;
                }
        if (!pick) throw ConfigError("point file has no validated candidate");
        pj = Json(*pick);
    }
    ReducedFamilyParams params = params_from_json(pj);
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create " + cfg.out_dir);

    CorrespondenceInstance inst = make_instance(params, cfg.seed);
    OrbitOptions oo;
    oo.cap = cfg.cap;
    oo.depth = cfg.orbit_depth;
    oo.dedupe_resolution = cfg.dedupe;
    OrbitCloud cloud = grand_orbit(inst, oo);
    double max_residual = 0.0, max_modulus = 0.0;
    std::size_t infinite = 0;
    for (std::size_t k = 0; k < cloud.points.size(); ++k) {
        max_residual = std::max(max_residual, relation_residual(inst, cloud, k));
        if (cloud.points[k].z.infinite) ++infinite;
        else max_modulus = std::max(max_modulus, std::abs(cloud.points[k].z.value));
    }
    RasterWindow window{{cfg.center_re, cfg.center_im}, cfg.half_width, cfg.resolution};
    SymmetryDefect sym = eta_symmetry_defect(cloud, window);

    PhysicalOptions po;
    po.classify_dedupe = cfg.classify_dedupe;
    po.classify_cap = cfg.classify_cap;
    po.classify_depth = cfg.orbit_depth;
    OrbitCloud coarse = classification_cloud(inst, po);
    ComponentMap comps = classify_regular_set(inst, coarse, window);
    LimitRaster raster = rasterize(coarse, comps.window);

    Json report = {{"instance", to_json(inst)},
                   {"orbit",
                    {{"points", cloud.points.size()},
                     {"generations", cloud.generations},
                     {"cap_exceeded", cloud.cap_exceeded},
                     {"saturated", cloud.saturated},
                     {"infinite_points", infinite},
                     {"max_modulus", max_modulus},
                     {"max_relation_residual", max_residual},
                     {"dedupe", cloud.dedupe_resolution}}},
                   {"symmetry",
                    {{"differing_pixels", sym.differing},
                     {"limit_pixels", sym.limit_pixels},
                     {"fraction_of_raster", sym.fraction_of_raster},
                     {"fraction_of_limit", sym.fraction_of_limit}}},
                   {"classification_cloud",
                    {{"points", coarse.points.size()}, {"dedupe", coarse.dedupe_resolution}, {"saturated", coarse.saturated}}}};
    Json cj = to_json(comps);
    Json summary = cj;
    summary.erase("label_runs");
    report["components"] = summary;

    std::optional<FundamentalCurve> curve;
    if (comps.chain_ok) {
        curve = fundamental_curve(inst, comps);
        cplx xp = inst.r.evaluate(1.0);
        auto F = evaluate_F(inst, *curve, xp);
        report["curve"] = to_json(*curve);
        report["fixed_point_check"] = {{"x_plus", complex_json(xp)},
                                       {"F", F ? complex_json(*F) : Json(nullptr)},
                                       {"error", F ? Json(std::abs(*F - xp)) : Json(nullptr)}};
    } else {
        report["curve"] = nullptr;
    }
    write_file(dir / "corr.ppm", render_ppm(comps, &raster, curve ? &*curve : nullptr, &inst));
    write_file(dir / "orbit.json", dump(to_json(cloud)));
    write_file(dir / "components.json", dump(cj));
    write_file(dir / "corr.json", dump(report));
    if (curve && !curve->univalent) throw UnivalenceFailure("R is not univalent inside the fundamental curve");
    emit(cfg, report, out);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::optional<std::string> config_path;
        for (std::size_t k = 0; k < args.size(); ++k) {
            if (args[k] == "--config") {
                if (k + 1 >= args.size()) throw ConfigError("--config needs a path");
                config_path = args[k + 1];
                args.erase(args.begin() + k, args.begin() + k + 2);
                break;
            }
            if (args[k].rfind("--config=", 0) == 0) {
                config_path = args[k].substr(9);
                args.erase(args.begin() + k);
                break;
            }
        }
        if (config_path)
            for (const auto& [key, value] : read_config_file(*config_path)) {
                bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
                    return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
                });
                if (!given) args.push_back("--" + key + "=" + value);
            }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Boundary maps, matings and correspondences"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* s) {
        s->add_option("--seed", cfg.seed, "Root-solver seed");
        s->add_option("--out", cfg.out, "Write JSON here instead of stdout");
    };
    auto mate_opts = [&](CLI::App* s) {
        s->add_option("--domain-json", cfg.domain_json, "Write the fundamental-domain polylines here");
        s->add_option("--max-period", cfg.max_period);
        s->add_option("--multiplier-tol", cfg.multiplier_tol);
    };

    auto* sig = app.add_subcommand("signature", "Orbifold invariants");
    sig->add_option("--punctures", cfg.punctures);
    sig->add_option("--order2", cfg.order2);
    sig->add_option("--cone", cfg.cone);
    auto* bs = app.add_subcommand("bs", "Bowen-Series map of the punctured sphere");
    bs->add_option("--d", cfg.d);
    mate_opts(bs);
    auto* hbs = app.add_subcommand("hbs", "Higher Bowen-Series map");
    hbs->add_option("--d", cfg.d);
    mate_opts(hbs);
    auto* fbs = app.add_subcommand("fbs", "Factor Bowen-Series map of a Hecke orbifold");
    fbs->add_option("--n", cfg.half_order);
    mate_opts(fbs);
    auto* conj = app.add_subcommand("conjugacy", "Monotone conjugacy table from z^d");
    conj->add_option("--family", cfg.family)->check(CLI::IsMember({"bs", "hbs", "fbs"}));
    conj->add_option("--d", cfg.d);
    conj->add_option("--n", cfg.half_order);
    conj->add_option("--depth", cfg.depth);
    conj->add_option("--mesh-target", cfg.mesh_target);
    auto* mm = app.add_subcommand("mating-model", "Model mating domain counts and curves");
    mm->add_option("--sig1", cfg.sig1);
    mm->add_option("--sig2", cfg.sig2);
    mm->add_option("--depth", cfg.depth);
    mm->add_option("--mesh-target", cfg.mesh_target);
    auto* var = app.add_subcommand("variety", "Solve the mating variety");
    var->add_option("--n", cfg.n);
    var->add_option("--fixed", cfg.fixed, "a_2..a_n, the unknown entry ignored")->delimiter(',');
    var->add_option("--unknown", cfg.unknown, "index k of the unknown a_k (default n)");
    var->add_option("--tolerance", cfg.tolerance);
    var->add_option("--radius", cfg.radius);
    var->add_flag("--physical", cfg.physical, "Run the correspondence checks on validated candidates");
    auto* corr = app.add_subcommand("corr", "Orbit, classification and rendering of a correspondence");
    corr->add_option("--point", cfg.point, "VarietyPoint JSON");
    corr->add_option("--out-dir", cfg.out_dir);
    corr->add_option("--resolution", cfg.resolution);
    corr->add_option("--half-width", cfg.half_width);
    corr->add_option("--center-re", cfg.center_re);
    corr->add_option("--center-im", cfg.center_im);
    corr->add_option("--cap", cfg.cap);
    corr->add_option("--depth", cfg.orbit_depth);
    corr->add_option("--dedupe", cfg.dedupe);
    corr->add_option("--classify-dedupe", cfg.classify_dedupe);
    corr->add_option("--classify-cap", cfg.classify_cap);
    for (auto* s : {sig, bs, hbs, fbs, conj, mm, var, corr}) common(s);

    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: ConfigError: " << e.what() << "\n";
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        cfg.validate();
        if (cfg.command == "signature") run_signature(cfg, out);
        else if (cfg.command == "bs") run_bs(cfg, out);
        else if (cfg.command == "hbs") run_hbs(cfg, out);
        else if (cfg.command == "fbs") run_fbs(cfg, out);
        else if (cfg.command == "conjugacy") run_conjugacy(cfg, out);
        else if (cfg.command == "mating-model") run_mating_model(cfg, out);
        else if (cfg.command == "variety") run_variety(cfg, out, err);
        else if (cfg.command == "corr") run_corr(cfg, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace corrmate::cli
