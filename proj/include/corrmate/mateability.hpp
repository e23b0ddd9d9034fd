#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrmate/circle_map.hpp"

namespace corrmate {

struct BreakpointMultiplier {
    double angle = 0.0;
    int period = 0;
    double left = 0.0;   // return-map multiplier on the clockwise side (NaN if that side is not periodic)
    double right = 0.0;  // counterclockwise side
    double difference = 0.0;
    bool symmetric = false;
    bool parabolic = false;
};

// Ideal vertices of an inner polygon, counterclockwise.
struct InnerDomain {
    std::vector<double> vertex_angles;
};

struct MateabilityReport {
    int degree = 0;
    std::optional<int> markov_level;
    std::vector<std::vector<bool>> transition_matrix;
    std::vector<double> preimage_mesh;       // mesh of the level-k preimage partition
    std::vector<double> derivative_growth;   // min over samples of |(A^N)'|, N = 1, 2, ...
    bool expansive = false;
    std::vector<BreakpointMultiplier> breakpoint_multipliers;
    bool multipliers_symmetric = true;
    std::optional<bool> fold_free;
    std::optional<int> polygonal_degree;
    std::optional<bool> inner_vertices_fixed;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    bool passed() const { return failures.empty(); }
};

struct MateabilityOptions {
    int max_period = 6;
    int samples = 256;
    int max_refinement = 4;
    int derivative_iterations = 8;
    int mesh_levels = 6;
    unsigned seed = 1;
    double multiplier_tol = 1e-8;
};

MateabilityReport mateability_report(const CircleMap& map, const MateabilityOptions& options = {},
                                     const InnerDomain* inner = nullptr);

}  // namespace corrmate
