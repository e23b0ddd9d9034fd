#pragma once

#include <vector>

#include "corrmate/circle_map.hpp"

namespace corrmate {

struct MarkovData {
    std::vector<double> partition;
    std::vector<std::vector<bool>> transition_matrix;  // [from][to]: arc `to` lies in the image of `from`
    int refinement_level = 0;
};

// Partition at level n: break-points together with their k-fold preimages,
// k <= n. Returns the first level at which every arc maps onto a union of
// arcs. NotMarkovWithinBudget otherwise.
MarkovData markov_check(const CircleMap& map, int max_refinement, double tol = 1e-8);

// Preimage partitions of the break-points up to the given level (level 0 is
// the break-point set itself), stopping early once `max_points` is exceeded.
std::vector<std::vector<double>> preimage_partitions(const CircleMap& map, int levels,
                                                     std::size_t max_points = 200000);

// Largest arc of a sorted angle partition.
double partition_mesh(const std::vector<double>& partition);

}  // namespace corrmate
