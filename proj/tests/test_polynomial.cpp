#include "doctest.h"

#include <algorithm>
#include <random>

#include "corrmate/polynomial.hpp"

using namespace corrmate;

namespace {

ComplexPolynomial from_roots(const std::vector<cplx>& roots, cplx lead) {
    ComplexPolynomial p({lead});
    for (cplx r : roots) p = p * ComplexPolynomial({-r, 1.0});
    return p;
}

}  // namespace

TEST_CASE("arithmetic and synthetic division") {
    ComplexPolynomial p({1.0, 0.0, 1.0});  // z^2 + 1
    CHECK(p.degree() == 2);
    CHECK(std::abs(p.evaluate(cplx(0, 1))) < 1e-15);
    CHECK(p.derivative().degree() == 1);
    ComplexPolynomial q({-1.0, 1.0});
    ComplexPolynomial prod = p * q;
    LinearDivision div = divide_linear(prod, 1.0);
    CHECK(std::abs(div.remainder) < 1e-15);
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(div.quotient[k] - p[k]) < 1e-15);
    CHECK((p - p).is_zero());
    CHECK((p + q).degree() == 2);
    CHECK(p.reversed(3).degree() == 3);
}

TEST_CASE("roots") {
    RootResult rr = find_roots(ComplexPolynomial({1.0, 0.0, 1.0}));
    REQUIRE(rr.converged);
    REQUIRE(rr.roots.size() == 2);
    std::sort(rr.roots.begin(), rr.roots.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    CHECK(std::abs(rr.roots[0] - cplx(0, -1)) < 1e-12);
    CHECK(std::abs(rr.roots[1] - cplx(0, 1)) < 1e-12);

    std::mt19937 rng(9);
    std::normal_distribution<double> g;
    for (int t = 0; t < 100; ++t) {
        int deg = 1 + t % 12;
        std::vector<cplx> c(deg + 1);
        for (auto& x : c) x = cplx(g(rng), g(rng));
        ComplexPolynomial p(c);
        RootResult r = find_roots(p);
        REQUIRE(r.converged);
        REQUIRE(static_cast<int>(r.roots.size()) == deg);
        for (cplx z : r.roots) REQUIRE(std::abs(p.evaluate(z)) <= 1e-10 * p.evaluation_scale(z));
    }
}

TEST_CASE("resultant sign convention and common roots") {
    cplx a(0.3, -1.2), b(2.0, 0.5);
    cplx r = sylvester_resultant(ComplexPolynomial({-a, 1.0}), ComplexPolynomial({-b, 1.0}));
    CHECK(std::abs(r - (a - b)) < 1e-14);
    CHECK(std::abs(sylvester_resultant(ComplexPolynomial({-1.0, 0.0, 1.0}), ComplexPolynomial({-1.0, 1.0}))) < 1e-14);
}

TEST_CASE("resultant against the product of root differences") {
    std::mt19937 rng(4);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> deg(1, 6);
    for (int t = 0; t < 200; ++t) {
        int n = deg(rng), m = deg(rng);
        std::vector<cplx> ra(n), rb(m);
        for (auto& x : ra) x = cplx(g(rng), g(rng));
        for (auto& x : rb) x = cplx(g(rng), g(rng));
        cplx la(g(rng), g(rng)), lb(g(rng), g(rng));
        cplx expect = std::pow(la, m) * std::pow(lb, n);
        for (cplx x : ra)
            for (cplx y : rb) expect *= x - y;
        cplx got = sylvester_resultant(from_roots(ra, la), from_roots(rb, lb));
        REQUIRE(std::abs(got - expect) <= 1e-8 * std::abs(expect));
    }
}
