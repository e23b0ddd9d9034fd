#include "corrmate/markov.hpp"

#include <algorithm>
#include <cmath>

#include "corrmate/error.hpp"

namespace corrmate {

namespace {

bool in_partition(const std::vector<double>& part, double x, double tol) {
    auto it = std::lower_bound(part.begin(), part.end(), x);
    if (it != part.end() && circle_gap(*it, x) <= tol) return true;
    if (it != part.begin() && circle_gap(*(it - 1), x) <= tol) return true;
    return circle_gap(part.front(), x) <= tol || circle_gap(part.back(), x) <= tol;
}

std::vector<double> base_partition(const CircleMap& map) {
    std::vector<double> b = map.breakpoints();
    if (b.empty()) b.push_back(0.0);
    return merge_angles(b);
}

}  // namespace

std::vector<std::vector<double>> preimage_partitions(const CircleMap& map, int levels,
                                                     std::size_t max_points) {
    std::vector<std::vector<double>> out{base_partition(map)};
    std::vector<double> frontier = out[0];
    for (int n = 1; n <= levels; ++n) {
        std::vector<double> next;
        for (double x : frontier)
            for (double y : map.preimages(x)) next.push_back(y);
        std::vector<double> all = out.back();
        all.insert(all.end(), next.begin(), next.end());
        all = merge_angles(all);
        out.push_back(all);
        frontier = merge_angles(next);
        if (all.size() > max_points) break;
    }
    return out;
}

double partition_mesh(const std::vector<double>& p) {
    if (p.size() < 2) return kTwoPi;
    double best = p.front() + kTwoPi - p.back();
    for (std::size_t k = 1; k < p.size(); ++k) best = std::max(best, p[k] - p[k - 1]);
    return best;
}

MarkovData markov_check(const CircleMap& map, int max_refinement, double tol) {
    auto levels = preimage_partitions(map, max_refinement);
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const auto& part = levels[n];
        std::size_t m = part.size();
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            double a = part[i], b = (i + 1 < m) ? part[i + 1] : part[0] + kTwoPi;
            ok = in_partition(part, map.evaluate(a, Side::ccw), tol) &&
                 in_partition(part, map.evaluate(wrap_angle(b), Side::cw), tol);
        }
        if (!ok) continue;
        MarkovData data;
        data.partition = part;
        data.refinement_level = static_cast<int>(n);
        data.transition_matrix.assign(m, std::vector<bool>(m, false));
        for (std::size_t i = 0; i < m; ++i) {
            double a = part[i], len = ((i + 1 < m) ? part[i + 1] : part[0] + kTwoPi) - a;
            double start = map.evaluate(a, Side::ccw);
            double cover = arc_image_length(map, a, len, 16);
            bool any = false;
            for (std::size_t j = 0; j < m; ++j) {
                double bj = part[j];
                double lj = ((j + 1 < m) ? part[j + 1] : part[0] + kTwoPi) - bj;
                double off = ccw_distance(start, bj);
                if (off > kTwoPi - tol) off = 0.0;
                bool inside = cover >= kTwoPi - tol || off + lj <= cover + tol;
                data.transition_matrix[i][j] = inside;
                any = any || inside;
            }
            if (!any) throw NotMarkovWithinBudget("partition arc with empty image row");
        }
        return data;
    }
    throw NotMarkovWithinBudget("no Markov partition up to refinement level " +
                                std::to_string(max_refinement));
}

}  // namespace corrmate
