#include "corrmate/mateability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "corrmate/error.hpp"
#include "corrmate/markov.hpp"

namespace corrmate {

namespace {

// Follows the orbit of x on one side. Returns the period (0 if none) and the
// return-map multiplier.
std::pair<int, double> one_sided_return(const CircleMap& map, double x, Side side, int max_period) {
    double t = x, mult = 1.0;
    for (int k = 1; k <= max_period; ++k) {
        mult *= std::abs(map.derivative(t, side));
        t = map.evaluate(t, side);
        if (circle_gap(t, x) < 1e-9) return {k, mult};
    }
    return {0, std::numeric_limits<double>::quiet_NaN()};
}

int nearest_vertex(const std::vector<double>& vertices, double x, double tol) {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (circle_gap(vertices[k], x) < tol) return static_cast<int>(k);
    return -1;
}

}  // namespace

MateabilityReport mateability_report(const CircleMap& map, const MateabilityOptions& opt,
                                     const InnerDomain* inner) {
    MateabilityReport r;
    r.notes.push_back("orbit equivalence: structural, not checked");
    r.notes.push_back("break-point convention: counterclockwise-side branch");

    try {
        r.degree = degree(map);
        if (r.degree < 2) r.failures.push_back("degree below 2");
    } catch (const Error& e) {
        r.failures.push_back(std::string("covering: ") + e.what());
    }

    try {
        MarkovData m = markov_check(map, opt.max_refinement);
        r.markov_level = m.refinement_level;
        r.transition_matrix = m.transition_matrix;
    } catch (const Error& e) {
        r.failures.push_back(std::string("markov: ") + e.what());
    }

    // expansivity: preimage partitions get finer, iterate derivatives
    auto levels = preimage_partitions(map, opt.mesh_levels, 50000);
    for (const auto& p : levels) r.preimage_mesh.push_back(partition_mesh(p));
    r.expansive = r.preimage_mesh.size() >= 3;
    for (std::size_t k = 1; k < r.preimage_mesh.size(); ++k)
        if (!(r.preimage_mesh[k] < r.preimage_mesh[k - 1] || r.preimage_mesh[k] < 1e-3))
            r.expansive = false;
    if (r.preimage_mesh.size() >= 2 && !(r.preimage_mesh.back() < 0.5 * r.preimage_mesh.front()))
        r.expansive = false;
    if (!r.expansive) r.failures.push_back("expansivity: preimage partitions do not shrink");

    std::vector<double> bps = map.breakpoints();
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    std::vector<double> samples;
    while (static_cast<int>(samples.size()) < opt.samples) {
        double t = uni(rng);
        bool close = false;
        for (double b : bps) close = close || circle_gap(b, t) < 1e-6;
        if (!close) samples.push_back(t);
    }
    std::vector<double> deriv(samples.size(), 1.0), pos = samples;
    for (int n = 1; n <= opt.derivative_iterations; ++n) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < samples.size(); ++s) {
            deriv[s] *= std::abs(map.derivative(pos[s]));
            pos[s] = map.evaluate(pos[s]);
            lo = std::min(lo, deriv[s]);
        }
        r.derivative_growth.push_back(lo);
    }

    // one-sided multipliers at periodic break-points
    for (double b : bps) {
        auto [pl, ml] = one_sided_return(map, b, Side::cw, opt.max_period);
        auto [pr, mr] = one_sided_return(map, b, Side::ccw, opt.max_period);
        if (pl == 0 && pr == 0) continue;
        BreakpointMultiplier bm;
        bm.angle = b;
        bm.period = std::max(pl, pr);
        bm.left = ml;
        bm.right = mr;
        if (pl != 0 && pr != 0) {
            bm.difference = std::abs(ml - mr);
            bm.symmetric = bm.difference < opt.multiplier_tol;
            bm.parabolic = std::abs(ml - 1.0) < opt.multiplier_tol && std::abs(mr - 1.0) < opt.multiplier_tol;
            if (!bm.symmetric) {
                r.multipliers_symmetric = false;
                r.failures.push_back("symmetric multipliers: break-point at angle " + std::to_string(b) +
                                     " has left " + std::to_string(ml) + " and right " + std::to_string(mr));
            }
        } else {
            bm.difference = std::numeric_limits<double>::quiet_NaN();
            r.notes.push_back("break-point at angle " + std::to_string(b) + " is periodic on one side only");
        }
        r.breakpoint_multipliers.push_back(bm);
    }

    if (inner) {
        const auto& v = inner->vertex_angles;
        int l = static_cast<int>(v.size());
        bool fixed = true;
        for (double x : v) fixed = fixed && circle_gap(map.evaluate(x), x) < 1e-9;
        r.inner_vertices_fixed = fixed;
        if (!fixed) r.failures.push_back("inner polygon vertex not fixed");

        std::vector<int> idx;
        bool onto_vertices = true;
        for (double b : bps) {
            int k = nearest_vertex(v, map.evaluate(b), 1e-8);
            onto_vertices = onto_vertices && k >= 0;
            idx.push_back(k);
        }
        if (!onto_vertices || l < 3 || bps.size() < 2) {
            r.fold_free = false;
            r.failures.push_back("break-points do not map onto inner polygon vertices");
        } else {
            std::vector<int> steps;
            bool folds = false, adjacent = true;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                int s = ((idx[(k + 1) % idx.size()] - idx[k]) % l + l) % l;
                if (s == 1) steps.push_back(1);
                else if (s == l - 1) steps.push_back(-1);
                else adjacent = false;
            }
            if (!adjacent) {
                r.fold_free = false;
                r.failures.push_back("an edge of the fundamental domain is not mapped to an inner edge");
            } else {
                for (std::size_t k = 0; k < steps.size(); ++k)
                    folds = folds || steps[k] != steps[(k + 1) % steps.size()];
                r.fold_free = !folds;
                if (folds) r.failures.push_back("diagonal fold detected");
                int sum = 0;
                for (int s : steps) sum += s;
                r.polygonal_degree = std::abs(sum) / l;
            }
        }
    }
    return r;
}

}  // namespace corrmate
