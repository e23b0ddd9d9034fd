#include "doctest.h"

#include <random>

#include "corrmate/error.hpp"
#include "corrmate/serialize.hpp"
#include "corrmate/variety.hpp"
#include "oracles.hpp"

using namespace corrmate;

namespace {

ReducedFamilyParams random_params(std::mt19937& rng, int n) {
    std::normal_distribution<double> g(0.0, 2.0);
    ReducedFamilyParams p{n, {}};
    for (int k = 2; k <= n; ++k) p.a.emplace_back(g(rng), g(rng));
    return p;
}

double deflated_modulus(int n, const std::vector<cplx>& a) {
    VarietyResidual v = variety_residual(ReducedFamilyParams{n, a});
    return std::abs(v.deflated) / v.deflated_scale;
}

// A candidate is a local zero of |deflated resultant| on a grid sweep around it.
void check_local_zero(int n, std::vector<cplx> a, int index) {
    double center = deflated_modulus(n, a);
    cplx a0 = a[index];
    double ring = 1e300;
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            if (std::max(std::abs(i), std::abs(j)) != 3) continue;
            a[index] = a0 + 1e-3 * cplx(i, j);
            ring = std::min(ring, deflated_modulus(n, a));
        }
    CHECK(center < 1e-8);
    CHECK(center < 1e-3 * ring);
}

}  // namespace

TEST_CASE("reduced polynomial") {
    cplx a(1.7, -0.4);
    ComplexPolynomial r = reduced_polynomial({2, {a}});
    std::vector<cplx> expect{0.0, -4.0, a, -2.0 / 3.0 * a, 1.0};
    REQUIRE(r.degree() == 4);
    for (int k = 0; k <= 4; ++k) CHECK(std::abs(r[k] - expect[k]) < 1e-15);
    ComplexPolynomial z = reduced_polynomial({2, {0.0}});
    CHECK(std::abs(z[4] - 1.0) + std::abs(z[1] + 4.0) + std::abs(z[2]) + std::abs(z[3]) < 1e-15);
    CHECK_THROWS_AS(reduced_polynomial({2, {}}), ConfigError);
}

TEST_CASE("family identities") {
    std::mt19937 rng(21);
    for (int n = 2; n <= 5; ++n)
        for (int t = 0; t < 100; ++t) {
            ComplexPolynomial r = reduced_polynomial(random_params(rng, n));
            REQUIRE(r.degree() == 2 * n);
            REQUIRE(r.leading() == cplx(1.0));
            REQUIRE(r[0] == cplx(0.0));
            REQUIRE(r[1] == cplx(-2.0 * n));
            REQUIRE(std::abs(r.derivative().evaluate(1.0)) < 1e-10 * r.norm());
        }
}

TEST_CASE("the naive resultant vanishes identically") {
    std::mt19937 rng(22);
    for (int n : {2, 3})
        for (int t = 0; t < 100; ++t) {
            VarietyResidual v = variety_residual(random_params(rng, n));
            REQUIRE(std::abs(v.naive) < 1e-6 * v.naive_scale);
            REQUIRE(std::abs(v.single_deflated) < 1e-6 * v.single_scale);
        }
}

TEST_CASE("corrupted family member") {
    ComplexPolynomial r = reduced_polynomial({2, {cplx(1.5)}});
    std::vector<cplx> c = r.coefficients();
    c[1] = -3.0;
    CHECK_THROWS_AS(resultant_inputs(ComplexPolynomial(c)), DivisionResidue);
}

TEST_CASE("exact Sylvester determinant at a2 = 0") {
    using oracle::BigInt;
    // R = z^4 - 4z: P1 = z^8 - 4z^5 + 4z^3 - 1, P2 = -4z^8 + 4z^5 + 4z^3 - 4
    std::vector<BigInt> p1{-1, 0, 0, 4, 0, -4, 0, 0, 1}, p2{-4, 0, 0, 4, 0, 4, 0, 0, -4};
    auto q1 = oracle::divide_by_z_minus_one(oracle::divide_by_z_minus_one(p1));
    auto q2 = oracle::divide_by_z_minus_one(oracle::divide_by_z_minus_one(p2));
    BigInt exact = oracle::bareiss_determinant(oracle::sylvester(q1, q2));
    ResultantInputs in = resultant_inputs(reduced_polynomial({2, {0.0}}));
    REQUIRE(in.q1.degree() == 6);
    REQUIRE(in.q2.degree() == 6);
    for (int k = 0; k <= 6; ++k) {
        CHECK(std::abs(in.q1[k] - q1[k].convert_to<double>()) < 1e-12);
        CHECK(std::abs(in.q2[k] - q2[k].convert_to<double>()) < 1e-12);
    }
    cplx numeric = sylvester_resultant(in.q1, in.q2);
    double e = exact.convert_to<double>();
    MESSAGE("exact deflated resultant at a2 = 0: " << exact);
    CHECK(e != 0.0);
    CHECK(std::abs(numeric - e) < 1e-10 * std::abs(e));
    VarietyResidual v = variety_residual(ReducedFamilyParams{2, {0.0}});
    CHECK(std::abs(v.deflated - e) < 1e-10 * std::abs(e));
}

TEST_CASE("n = 2 variety") {
    VarietySolution sol = solve_variety(2, {2, {}}, 2);
    CHECK(sol.resultant.degree() > 0);
    CHECK(static_cast<int>(sol.candidates.size()) == sol.resultant.degree());
    CHECK(sol.interpolation_check < 1e-6);
    int validated = 0;
    for (const auto& c : sol.candidates) {
        if (!c.validated) {
            CHECK(!c.flags.empty());
            continue;
        }
        ++validated;
        CHECK(c.residuals.variety < 1e-8);
        CHECK(c.residuals.beta_value < 1e-8);
        CHECK(c.residuals.beta_derivative < 1e-8);
        CHECK(c.residuals.pairing < 1e-8);
        check_local_zero(2, c.params.a, 0);
    }
    CHECK(validated >= 1);
}

TEST_CASE("n = 3 slice") {
    ReducedFamilyParams fixed{3, {0.0, 0.0}};
    VarietySolution sol = solve_variety(3, fixed, 3);
    int validated = 0;
    for (const auto& c : sol.candidates)
        if (c.validated) {
            ++validated;
            check_local_zero(3, c.params.a, 1);
        }
    CHECK(validated >= 1);

    // fixing a2 from a validated slice point recovers its a3
    for (const auto& c : sol.candidates) {
        if (!c.validated) continue;
        VarietySolution back = solve_variety(3, ReducedFamilyParams{3, {c.params.a[0], 0.0}}, 3);
        bool found = false;
        for (const auto& b : back.candidates) found |= b.validated && std::abs(b.params.a[1] - c.params.a[1]) < 1e-6;
        CHECK(found);
        break;
    }
}

TEST_CASE("beta data") {
    VarietySolution sol = solve_variety(2, {2, {}}, 2);
    const VarietyPoint* v = nullptr;
    for (const auto& c : sol.candidates)
        if (c.validated) v = &c;
    REQUIRE(v != nullptr);
    ComplexPolynomial r = reduced_polynomial(v->params);
    BetaData bd = find_beta(r);
    CHECK(std::abs(r.evaluate(bd.beta) - r.evaluate(1.0 / bd.beta)) < 1e-8);
    CHECK(std::abs(bd.beta * bd.beta_inverse - 1.0) < 1e-8);
    int non_critical = 0;
    for (const auto& c : bd.common_roots) {
        CHECK((std::abs(c.z - bd.beta) < 1e-6 || std::abs(c.z - bd.beta_inverse) < 1e-6 || std::abs(c.z - std::conj(bd.beta)) < 1e-6 ||
               std::abs(c.z - std::conj(bd.beta_inverse)) < 1e-6 || c.critical));
        if (!c.critical) ++non_critical;
    }
    CHECK(non_critical >= 2);
    REQUIRE(bd.pairing.ok);
    CHECK(std::abs(bd.pairing.fixed_critical_point - 1.0) < 1e-8);
    REQUIRE(bd.pairing.pairs.size() == 1);
    auto [c1, partner] = bd.pairing.pairs.front();
    CHECK(std::abs(c1 * partner - 1.0) < 1e-8);

    std::mt19937 rng(30);
    for (int t = 0; t < 5; ++t) CHECK_THROWS_AS(find_beta(reduced_polynomial(random_params(rng, 2))), NoCommonRoot);
}

TEST_CASE("variety point JSON") {
    VarietyPoint p = validate_point({2, {cplx(4.854101966249685)}});
    CHECK(p.validated);
    Json j = to_json(p);
    CHECK(j["n"] == 2);
    CHECK(j["a"].size() == 1);
    CHECK(j["beta"].size() == 2);
    for (const char* key : {"variety", "beta_value", "beta_derivative", "pairing"}) CHECK(j["residuals"].contains(key));
    ReducedFamilyParams back = params_from_json(j);
    CHECK(back.a[0] == p.params.a[0]);
}
