#pragma once

#include <cstddef>
#include <vector>

#include "corrmate/moebius.hpp"
#include "corrmate/polynomial.hpp"
#include "corrmate/variety.hpp"

namespace corrmate {

// The correspondence (R(w) - R(1/u)) / (w - 1/u) = 0 for a validated R.
struct CorrespondenceInstance {
    ReducedFamilyParams params;
    ComplexPolynomial r;
    ComplexPolynomial dr;
    std::vector<cplx> critical_points;  // finite critical points, 1 first
    std::vector<cplx> critical_values;
    cplx beta;
    unsigned seed = 1;

    int branch_count() const { return r.degree() - 1; }
};

// Computes beta and the critical data; NoCommonRoot off the variety.
CorrespondenceInstance make_instance(const ReducedFamilyParams& params, unsigned seed = 1);

inline ComplexPoint eta(const ComplexPoint& z) {
    if (z.infinite) return ComplexPoint(0.0);
    if (z.value == cplx(0.0)) return ComplexPoint::infinity();
    return ComplexPoint(1.0 / z.value);
}

enum class Direction { forward, backward };

// Forward: the 2n-1 solutions w of the relation with u1 = u (with multiplicity).
// Backward: the 2n-1 solutions u1 of the relation with w = u.
std::vector<ComplexPoint> correspondence_step(const CorrespondenceInstance& inst, const ComplexPoint& u,
                                              Direction direction);

struct OrbitPoint {
    ComplexPoint z;
    int generation = 0;
    long parent = -1;
    Direction direction = Direction::forward;  // how it was reached from the parent
};

struct OrbitCloud {
    std::vector<OrbitPoint> points;
    ComplexPoint seed;
    double dedupe_resolution = 1e-9;
    bool cap_exceeded = false;
    bool saturated = false;  // a generation produced no new points
    int generations = 0;
};

struct OrbitOptions {
    ComplexPoint seed{1.0, 0.0};
    int depth = 64;
    std::size_t cap = 100000;
    double dedupe_resolution = 1e-9;
};

// Breadth-first closure under both directions with spatial-hash dedupe.
OrbitCloud grand_orbit(const CorrespondenceInstance& inst, const OrbitOptions& options = {});

// |R(v) - R(1/parent)| / max(1, |R(1/parent)|) for a forward child, and the
// mirror quantity for a backward child.
double relation_residual(const CorrespondenceInstance& inst, const OrbitCloud& cloud, std::size_t index);

}  // namespace corrmate
