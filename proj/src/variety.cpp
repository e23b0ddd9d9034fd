#include "corrmate/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrmate/error.hpp"
#include "corrmate/parallel.hpp"

namespace corrmate {

ComplexPolynomial reduced_polynomial(const ReducedFamilyParams& params) {
    int n = params.n;
    if (n < 2) throw ConfigError("reduced family needs n >= 2");
    if (static_cast<int>(params.a.size()) != n - 1)
        throw ConfigError("expected " + std::to_string(n - 1) + " coefficients a_2..a_n");
    auto a = [&](int k) { return params.a[k - 2]; };
    std::vector<cplx> c(2 * n + 1, 0.0);
    c[2 * n] = 1.0;
    for (int j = 1; j <= n - 1; ++j)
        c[2 * n - j] += -static_cast<double>(j + 1) / (2 * n - j) * a(j + 1);
    for (int j = n; j <= 2 * n - 2; ++j) c[2 * n - j] += a(2 * n - j);
    c[1] = -2.0 * n;
    return ComplexPolynomial(c);
}

namespace {

ComplexPolynomial deflate_once(const ComplexPolynomial& p) {
    LinearDivision div = divide_linear(p, 1.0);
    if (std::abs(div.remainder) > 1e-10 * p.norm())
        throw DivisionResidue("(z-1) does not divide exactly; remainder " + std::to_string(std::abs(div.remainder)));
    return div.quotient;
}

// derivative of R with respect to a_k
ComplexPolynomial coefficient_direction(int n, int k) {
    std::vector<cplx> c(2 * n + 1, 0.0);
    c[k] += 1.0;
    c[2 * n - k + 1] += -static_cast<double>(k) / (2 * n - k + 1);
    return ComplexPolynomial(c);
}

}  // namespace

ResultantInputs resultant_inputs(const ComplexPolynomial& r) {
    int deg = r.degree();
    if (deg < 4 || deg % 2 != 0) throw ConfigError("R must have even degree at least 4");
    int n = deg / 2;
    ComplexPolynomial dr = r.derivative();
    ResultantInputs in;
    in.n = n;
    in.p1 = r.shifted(2 * n) - r.reversed(2 * n);
    in.p2 = (dr.reversed(2 * n - 1) + dr.shifted(2 * n + 1)) * cplx(-1.0);
    if (std::abs(in.p1[0]) == 0.0 || std::abs(in.p2[0]) == 0.0)
        throw DivisionResidue("pole clearing introduced a root at z = 0");
    in.q1 = deflate_once(deflate_once(in.p1));
    in.q2 = deflate_once(deflate_once(in.p2));
    in.q2_at_one = std::abs(in.q2.evaluate(1.0)) / in.q2.evaluation_scale(1.0);
    return in;
}

VarietyResidual variety_residual(const ComplexPolynomial& r) {
    ResultantInputs in = resultant_inputs(r);
    VarietyResidual v;
    v.naive = sylvester_resultant(in.p1, in.p2);
    v.naive_scale = sylvester_scale(in.p1, in.p2);
    ComplexPolynomial s1 = divide_linear(in.p1, 1.0).quotient, s2 = divide_linear(in.p2, 1.0).quotient;
    v.single_deflated = sylvester_resultant(s1, s2);
    v.single_scale = sylvester_scale(s1, s2);
    v.deflated = sylvester_resultant(in.q1, in.q2);
    v.deflated_scale = sylvester_scale(in.q1, in.q2);
    v.further_trivial_factor = in.q2_at_one < 1e-10;
    return v;
}

VarietyResidual variety_residual(const ReducedFamilyParams& params) {
    return variety_residual(reduced_polynomial(params));
}

CriticalPairing critical_pairing(const ComplexPolynomial& r, double tol) {
    ComplexPolynomial dr = r.derivative();
    RootResult rr = find_roots(dr);
    std::vector<cplx> roots;
    for (cplx z : rr.roots) roots.push_back(polish_root(dr, z));
    CriticalPairing cp;
    std::size_t one = 0;
    for (std::size_t k = 1; k < roots.size(); ++k)
        if (std::abs(roots[k] - 1.0) < std::abs(roots[one] - 1.0)) one = k;
    cp.fixed_critical_point = roots[one];
    std::vector<bool> used(roots.size(), false);
    used[one] = true;
    bool ok = std::abs(roots[one] - 1.0) < tol;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::size_t best = roots.size();
        double best_defect = 1e300;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            double defect = std::abs(roots[i] * roots[j] - 1.0);
            if (defect < best_defect) {
                best_defect = defect;
                best = j;
            }
        }
        if (best == roots.size()) {
            ok = false;
            cp.defect = 1e300;
            break;
        }
        used[best] = true;
        cp.pairs.emplace_back(roots[i], roots[best]);
        cp.defect = std::max(cp.defect, best_defect);
    }
    cp.ok = ok && cp.defect < tol;
    return cp;
}

BetaData find_beta(const ComplexPolynomial& r, double match_tol, unsigned seed) {
    ResultantInputs in = resultant_inputs(r);
    RootOptions ro;
    ro.seed = seed;
    RootResult r1 = find_roots(in.q1, ro), r2 = find_roots(in.q2, ro);
    ComplexPolynomial dr = r.derivative();
    BetaData out;
    for (cplx x : r2.roots) {
        if (std::abs(x - 1.0) < 1e-6 || std::abs(x + 1.0) < 1e-6) continue;
        double best = 1e300;
        for (cplx y : r1.roots) best = std::min(best, std::abs(x - y));
        if (best >= match_tol) continue;
        cplx z = polish_root(in.q2, x);
        if (std::abs(z - x) > match_tol) z = x;
        bool dup = false;
        for (const auto& c : out.common_roots) dup = dup || std::abs(c.z - z) < 1e-9;
        if (dup) continue;
        bool critical = std::abs(dr.evaluate(z)) <= 1e-8 * dr.evaluation_scale(z);
        out.common_roots.push_back({z, best, critical});
    }
    if (out.common_roots.empty()) throw NoCommonRoot("Q1 and Q2 share no root away from z = +-1");
    // prefer a non-critical root in the upper half-plane with the smallest argument
    auto rank = [](const CommonRoot& c) {
        double a = std::arg(c.z);
        return std::make_tuple(c.critical ? 1 : 0, a > 1e-12 ? 0 : 1, a > 1e-12 ? a : -a);
    };
    const CommonRoot* best = &out.common_roots[0];
    for (const auto& c : out.common_roots)
        if (rank(c) < rank(*best)) best = &c;
    out.beta = best->z;
    out.beta_inverse = 1.0 / out.beta;
    out.value_residual = std::abs(r.evaluate(out.beta) - r.evaluate(out.beta_inverse));
    out.derivative_residual = std::abs(-dr.evaluate(out.beta_inverse) / (out.beta * out.beta) - dr.evaluate(out.beta));
    out.pairing = critical_pairing(r);
    return out;
}

namespace {

// Newton on (R(b) - R(1/b), -R'(1/b)/b^2 - R'(b)) in the unknowns (a_k, b).
bool polish_joint(ReducedFamilyParams& params, int k, cplx& beta) {
    ComplexPolynomial dir = coefficient_direction(params.n, k), ddir = dir.derivative();
    ReducedFamilyParams p = params;
    cplx b = beta;
    for (int it = 0; it < 60; ++it) {
        ComplexPolynomial r = reduced_polynomial(p), dr = r.derivative(), ddr = dr.derivative();
        cplx ib = 1.0 / b;
        cplx e1 = r.evaluate(b) - r.evaluate(ib);
        cplx e2 = -dr.evaluate(ib) * ib * ib - dr.evaluate(b);
        cplx j11 = dr.evaluate(b) + dr.evaluate(ib) * ib * ib;
        cplx j12 = dir.evaluate(b) - dir.evaluate(ib);
        cplx j21 = ddr.evaluate(ib) * std::pow(ib, 4) + 2.0 * dr.evaluate(ib) * std::pow(ib, 3) - ddr.evaluate(b);
        cplx j22 = -ddir.evaluate(ib) * ib * ib - ddir.evaluate(b);
        cplx det = j11 * j22 - j12 * j21;
        if (std::abs(det) == 0.0) return false;
        cplx db = (e1 * j22 - j12 * e2) / det;
        cplx da = (j11 * e2 - j21 * e1) / det;
        b -= db;
        p.a[k - 2] -= da;
        if (std::abs(db) + std::abs(da) > 1.0) return false;
        if (std::abs(db) + std::abs(da) < 1e-15 * (1.0 + std::abs(p.a[k - 2]))) break;
    }
    params = p;
    beta = b;
    return true;
}

}  // namespace

VarietyPoint validate_point(const ReducedFamilyParams& params, const VarietyOptions& opt) {
    VarietyPoint pt;
    pt.params = params;
    const double inf = std::numeric_limits<double>::infinity();
    pt.residuals = {inf, inf, inf, inf};
    try {
        ComplexPolynomial r = reduced_polynomial(params);
        VarietyResidual v = variety_residual(r);
        pt.residuals.variety = std::abs(v.deflated) / v.deflated_scale;
        if (v.further_trivial_factor) pt.flags.push_back("Q1 and Q2 share a further factor (z-1)");
        BetaData bd = find_beta(r, 1e-6, opt.seed);
        pt.beta = bd.beta;
        pt.residuals.beta_value = bd.value_residual;
        pt.residuals.beta_derivative = bd.derivative_residual;
        pt.residuals.pairing = bd.pairing.defect;
        bool critical = false;
        for (const auto& c : bd.common_roots)
            if (std::abs(c.z - bd.beta) < 1e-12) critical = c.critical;
        if (critical) pt.flags.push_back("beta is a critical point of R");
        if (!bd.pairing.ok) pt.flags.push_back("critical pairing failed");
        bool small = pt.residuals.variety < opt.tolerance && pt.residuals.beta_value < opt.tolerance &&
                     pt.residuals.beta_derivative < opt.tolerance && pt.residuals.pairing < opt.tolerance;
        if (!small) pt.flags.push_back("residual above tolerance");
        pt.validated = small && !critical && bd.pairing.ok;
    } catch (const Error& e) {
        pt.flags.push_back(e.what());
    }
    return pt;
}

VarietySolution solve_variety(int n, const ReducedFamilyParams& fixed, int unknown, const VarietyOptions& opt) {
    if (n < 2) throw ConfigError("n must be at least 2");
    if (unknown < 2 || unknown > n) throw ConfigError("unknown coefficient index outside 2..n");
    ReducedFamilyParams base = fixed;
    base.n = n;
    if (base.a.empty()) base.a.assign(n - 1, 0.0);
    if (static_cast<int>(base.a.size()) != n - 1) throw ConfigError("expected n-1 coefficients");

    double rho = opt.radius;
    if (rho <= 0.0) {
        rho = 4.0;
        for (int k = 0; k < n - 1; ++k)
            if (k != unknown - 2) rho = std::max(rho, 1.0 + std::abs(base.a[k]));
    }
    int qdeg = 4 * n - 2;
    int bound = 2 * qdeg;
    int samples = 2 * (bound + 1);
    auto evaluate = [&](cplx t) {
        ReducedFamilyParams p = base;
        p.a[unknown - 2] = t;
        ResultantInputs in = resultant_inputs(reduced_polynomial(p));
        return sylvester_resultant(in.q1, in.q2);
    };
    std::vector<cplx> values(samples);
    parallel_for(samples, [&](std::size_t m) { values[m] = evaluate(std::polar(rho, kTwoPi * m / samples)); });

    std::vector<cplx> coeffs(samples);
    double top = 0.0;
    for (int j = 0; j < samples; ++j) {
        cplx acc = 0.0;
        for (int m = 0; m < samples; ++m) acc += values[m] * std::polar(1.0, -kTwoPi * static_cast<double>(j) * m / samples);
        coeffs[j] = acc / static_cast<double>(samples);  // scaled coefficient c_j rho^j
        top = std::max(top, std::abs(coeffs[j]));
    }
    if (top == 0.0) throw InterpolationIllConditioned("deflated resultant vanishes on the whole slice");
    double alias = 0.0;
    for (int j = bound + 1; j < samples; ++j) alias = std::max(alias, std::abs(coeffs[j]) / top);
    if (alias > 1e-8) throw InterpolationIllConditioned("interpolant exceeds the degree bound");
    std::vector<cplx> c(bound + 1);
    for (int j = 0; j <= bound; ++j) c[j] = coeffs[j] / std::pow(rho, j);

    VarietySolution sol;
    sol.unknown = unknown;
    sol.resultant = ComplexPolynomial(c).trimmed(1e-11, rho);
    cplx probe = std::polar(0.7 * rho, 0.3);
    cplx direct = evaluate(probe);
    sol.interpolation_check = std::abs(sol.resultant.evaluate(probe) - direct) / std::max(std::abs(direct), 1e-300);
    if (sol.interpolation_check > 1e-6) throw InterpolationIllConditioned("interpolant disagrees off the sample circle");
    if (sol.resultant.degree() < 1) return sol;

    RootOptions ro;
    ro.seed = opt.seed;
    RootResult roots = find_roots(sol.resultant, ro);
    for (cplx t : roots.roots) {
        ReducedFamilyParams p = base;
        p.a[unknown - 2] = t;
        bool polished = false;
        try {
            BetaData bd = find_beta(reduced_polynomial(p), 1e-2, opt.seed);
            cplx b = bd.beta;
            polished = polish_joint(p, unknown, b);
        } catch (const Error&) {
        }
        VarietyPoint pt = validate_point(p, opt);
        if (!polished) pt.flags.push_back("joint Newton polish not applied");
        if (!roots.converged) pt.flags.push_back("root solver stalled");
        sol.candidates.push_back(pt);
    }
    return sol;
}

}  // namespace corrmate
