#pragma once

#include <optional>
#include <vector>

#include "corrmate/circle_map.hpp"
#include "corrmate/signature.hpp"

namespace corrmate {

// Finite monotone table with monotone-linear interpolation in between.
class MonotoneCircleMap {
public:
    MonotoneCircleMap(std::vector<double> inputs, std::vector<double> outputs);

    const std::vector<double>& inputs() const { return in_; }
    const std::vector<double>& outputs() const { return out_; }
    double mesh() const;  // largest gap between consecutive outputs
    bool strictly_monotone() const;
    double evaluate(double theta) const;
    double inverse(double phi) const;

private:
    std::vector<double> in_, out_;
};

struct ConjugacyResult {
    MonotoneCircleMap table;
    int degree = 0;
    int depth = 0;
    std::vector<double> level_mesh;   // mesh of the preimage set at each level
    double table_residual = 0.0;      // sup over table points of |g(d theta) - A(g(theta))|
    double midpoint_residual = 0.0;   // same at midpoints, through interpolation
};

struct ConjugacyOptions {
    int depth = 8;
    double mesh_target = 1e-3;  // stop early once reached; 0 disables
};

// Conjugacy from z -> z^d to the covering A, anchored at the fixed angle 0.
ConjugacyResult power_conjugacy(const CircleMap& map, const ConjugacyOptions& options = {});

struct Polyline {
    std::vector<cplx> points;
};

struct MatingModel {
    int degree = 0;
    int p1 = 0, p2 = 0;
    int cut_points = 0;       // gcd(p1, p2)
    int component_count = 0;  // shared ideal points of the two pulled-back boundaries
    bool constructed = false; // curves come from computed conjugacies
    std::vector<double> ideal_angles_1;  // pulled-back vertices, inside the disk
    std::vector<double> ideal_angles_2;  // pulled-back vertices, outside (after conjugation)
    std::vector<Polyline> curves_1;
    std::vector<Polyline> curves_2;
    std::vector<std::string> notes;
};

MatingModel mating_model(const OrbifoldSignature& sig1, const OrbifoldSignature& sig2,
                         const ConjugacyOptions& options = {});

}  // namespace corrmate
