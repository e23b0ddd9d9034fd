#include "doctest.h"

#include <random>

#include "corrmate/builders.hpp"
#include "corrmate/error.hpp"
#include "corrmate/markov.hpp"
#include "corrmate/mateability.hpp"
#include "corrmate/piecewise_map.hpp"

using namespace corrmate;

namespace {

// Disk automorphism obtained by conjugating a real Moebius map of the upper
// half plane through psi(z) = i(1+z)/(1-z), which sends 1 to infinity.
MobiusMap from_half_plane(double a, double b, double c, double d) {
    MobiusMap psi(cplx(0, 1), cplx(0, 1), -1.0, 1.0);
    return compose(psi.inverse(), compose(MobiusMap(a, b, c, d), psi));
}

// Degree-two map with a fixed break-point at angle 0 whose one-sided
// multipliers are 2 (clockwise side) and 3 (counterclockwise side).
PiecewiseMoebiusMap asymmetric_map() {
    std::vector<CircleArcPiece> pieces;
    pieces.push_back(arc_piece(0.0, kPi / 2, from_half_plane(1.0, 1.0, 0.0, 3.0), "x/3+1/3"));
    pieces.push_back(arc_piece(kPi / 2, kPi, from_half_plane(1.0, 1.0, -1.0, 0.0), "-(x+1)/x"));
    pieces.push_back(arc_piece(kPi, 3 * kPi / 2, from_half_plane(1.0, -1.0, 1.0, 0.0), "(x-1)/x"));
    pieces.push_back(arc_piece(3 * kPi / 2, kTwoPi, from_half_plane(1.0, -1.0, 0.0, 2.0), "x/2-1/2"));
    return PiecewiseMoebiusMap(pieces);
}

PiecewiseMoebiusMap rotation_on_thirds() {
    MobiusMap rot(std::polar(1.0, kPi / 3), 0.0, 0.0, std::polar(1.0, -kPi / 3));
    std::vector<CircleArcPiece> pieces;
    for (int k = 0; k < 3; ++k) pieces.push_back(arc_piece(k * kTwoPi / 3, (k + 1) * kTwoPi / 3, rot));
    return PiecewiseMoebiusMap(pieces);
}

double angle_error(double a, double b) { return circle_gap(a, b); }

}  // namespace

TEST_CASE("orbits") {
    auto orbit = eval_orbit(PowerMap(3), 0.0, 3);
    REQUIRE(orbit.size() == 3);
    for (double t : orbit) CHECK(angle_error(t, 0.0) < 1e-15);
    CHECK(angle_error(PowerMap(2).evaluate(kTwoPi / 3), 2 * kTwoPi / 3) < 1e-14);
    auto bs = build_punctured_sphere_bs(2);
    CHECK(angle_error(bs.map.evaluate(0.0), 0.0) < 1e-12);
}

TEST_CASE("degree") {
    for (int d : {2, 3, 7}) CHECK(degree(PowerMap(d)) == d);
    CHECK(degree(build_punctured_sphere_bs(3).map) == 5);
    CHECK(degree(build_hbs_map(3).map) == 9);
    MobiusMap flip(0.0, 1.0, 1.0, 0.0);  // z -> 1/z reverses the circle
    std::vector<CircleArcPiece> pieces{arc_piece(0.0, kPi, flip), arc_piece(kPi, kTwoPi, flip)};
    CHECK_THROWS_AS(degree(PiecewiseMoebiusMap(pieces)), NotACovering);
}

TEST_CASE("minimalize") {
    // z -> 4z leaves the circle
    std::vector<CircleArcPiece> off{arc_piece(0.0, 1.0, MobiusMap()), arc_piece(1.0, kTwoPi, MobiusMap(2.0, 0.0, 0.0, 0.5))};
    CHECK_THROWS(PiecewiseMoebiusMap(off));
    std::vector<CircleArcPiece> ids{arc_piece(0.0, kPi, MobiusMap()), arc_piece(kPi, kTwoPi, MobiusMap())};
    CHECK(minimalize(PiecewiseMoebiusMap(ids)).pieces().size() == 1);

    auto h = build_hbs_map(2);
    CHECK(h.map.breakpoints().size() < h.aux_map.breakpoints().size());
    auto bs = build_punctured_sphere_bs(3);
    CHECK(minimalize(bs.map).pieces().size() == bs.map.pieces().size());
}

TEST_CASE("minimalize preserves values and degree") {
    auto h = build_hbs_map(3);
    CHECK(degree(h.map) == degree(h.aux_map));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int k = 0; k < 10000; ++k) {
        double t = u(rng);
        REQUIRE(angle_error(h.map.evaluate(t), h.aux_map.evaluate(t)) < 1e-10);
    }
}

TEST_CASE("Markov partitions") {
    MarkovData sq = markov_check(PowerMap(2), 3);
    CHECK(sq.refinement_level == 0);
    for (const auto& row : sq.transition_matrix)
        for (bool b : row) CHECK(b);
    for (int d : {2, 3}) {
        auto bs = build_punctured_sphere_bs(d);
        MarkovData md = markov_check(bs.map, 3);
        CHECK(md.refinement_level == 0);
        for (const auto& row : md.transition_matrix) CHECK(std::count(row.begin(), row.end(), true) >= 1);
        MarkovData mh = markov_check(build_hbs_map(d).map, 3);
        CHECK(mh.refinement_level == 0);
        for (const auto& row : mh.transition_matrix) CHECK(std::count(row.begin(), row.end(), true) >= 1);
    }
    MarkovData fb = markov_check(build_hecke_fbs(2).factor, 4);
    CHECK(fb.refinement_level >= 0);
    MESSAGE("Hecke factor map Markov level " << fb.refinement_level);
}

TEST_CASE("mateability of the constructed maps") {
    auto bs = build_punctured_sphere_bs(3);
    MateabilityReport r = mateability_report(bs.map);
    CHECK(r.passed());
    CHECK(r.degree == 5);
    CHECK(r.expansive);
    REQUIRE(!r.breakpoint_multipliers.empty());
    for (const auto& b : r.breakpoint_multipliers) {
        CHECK(std::abs(b.left - 1.0) < 1e-9);
        CHECK(std::abs(b.right - 1.0) < 1e-9);
    }
    bool structural = false;
    for (const auto& n : r.notes) structural |= n.find("not checked") != std::string::npos;
    CHECK(structural);

    auto h = build_hbs_map(2);
    MateabilityReport rh = mateability_report(h.map, {}, &h.inner);
    CHECK(rh.passed());
    CHECK(rh.fold_free == std::optional<bool>(true));
    CHECK(rh.polygonal_degree == std::optional<int>(2));
    CHECK(rh.inner_vertices_fixed == std::optional<bool>(true));

    for (int d : {2, 3, 5}) {
        auto m = mateability_report(build_punctured_sphere_bs(d).map);
        for (const auto& b : m.breakpoint_multipliers) CHECK(b.difference < 1e-8);
    }
    for (int d : {2, 3}) {
        auto hh = build_hbs_map(d);
        for (const auto& b : mateability_report(hh.map, {}, &hh.inner).breakpoint_multipliers) CHECK(b.difference < 1e-8);
    }
    for (int n : {2, 3})
        for (const auto& b : mateability_report(build_hecke_fbs(n).factor).breakpoint_multipliers)
            CHECK(b.difference < 1e-8);
}

TEST_CASE("an asymmetrically hyperbolic break-point is flagged") {
    PiecewiseMoebiusMap a = asymmetric_map();
    CHECK(degree(a) == 2);
    CHECK(std::abs(a.derivative(0.0, Side::ccw) - 3.0) < 1e-9);
    CHECK(std::abs(a.derivative(0.0, Side::cw) - 2.0) < 1e-9);
    MateabilityReport r = mateability_report(a);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(r.multipliers_symmetric);
    bool found = false;
    for (const auto& b : r.breakpoint_multipliers)
        if (angle_error(b.angle, 0.0) < 1e-12) {
            found = true;
            CHECK(b.period == 1);
            CHECK(std::abs(b.left - 2.0) < 1e-8);
            CHECK(std::abs(b.right - 3.0) < 1e-8);
            CHECK_FALSE(b.symmetric);
        }
    CHECK(found);
}

TEST_CASE("pieces are monotone") {
    std::vector<const PiecewiseMoebiusMap*> maps;
    auto b2 = build_punctured_sphere_bs(2), b3 = build_punctured_sphere_bs(3);
    auto h2 = build_hbs_map(2), h3 = build_hbs_map(3);
    for (auto* m : {&b2.map, &b3.map, &h2.map, &h3.map, &h2.aux_map}) maps.push_back(m);
    for (const auto* m : maps)
        for (const auto& p : m->pieces())
            for (int s = 0; s < 64; ++s) {
                double t = p.start + p.length * (s + 0.5) / 64;
                REQUIRE(m->derivative(wrap_angle(t)) > 0.0);
            }
}

TEST_CASE("canonical extension") {
    auto bs = build_punctured_sphere_bs(2);
    CanonicalExtensionData ext = canonical_extension(bs.map);
    std::vector<cplx> expect{1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    REQUIRE(ext.fundamental_polygon.vertices.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ext.fundamental_polygon.vertices[k] - expect[k]) < 1e-12);
    CHECK(ext.geodesics.size() == 4);

    CHECK(canonical_extension(rotation_on_thirds()).fundamental_polygon.vertices.size() == 3);

    auto h = build_hbs_map(2);
    CanonicalExtensionData eh = canonical_extension(h.aux_map);
    REQUIRE(eh.fundamental_polygon.vertices.size() == h.union_polygon_angles.size());
    for (std::size_t k = 0; k < h.union_polygon_angles.size(); ++k)
        CHECK(circle_gap(arg_angle(eh.fundamental_polygon.vertices[k]), h.union_polygon_angles[k]) < 1e-10);

    std::vector<CircleArcPiece> two{arc_piece(0.0, kPi, MobiusMap()), arc_piece(kPi, kTwoPi, MobiusMap())};
    CHECK_THROWS_AS(canonical_extension(PiecewiseMoebiusMap(two)), TooFewBreakpoints);
}
