#include "corrmate/circle_map.hpp"

#include <algorithm>
#include <cmath>

#include "corrmate/error.hpp"

namespace corrmate {

PowerMap::PowerMap(int d) : d_(d) {
    if (d < 1) throw InvalidMap("power map needs d >= 1");
}

std::vector<double> PowerMap::breakpoints() const {
    std::vector<double> b;
    for (int k = 0; k < d_; ++k) b.push_back(kTwoPi * k / d_);
    return b;
}

double PowerMap::evaluate(double theta, Side) const { return wrap_angle(d_ * wrap_angle(theta)); }

double PowerMap::derivative(double, Side) const { return d_; }

std::vector<double> PowerMap::preimages(double phi) const {
    std::vector<double> out;
    for (int k = 0; k < d_; ++k) out.push_back(wrap_angle((wrap_angle(phi) + kTwoPi * k) / d_));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> eval_orbit(const CircleMap& map, double theta, int iterations, int cap) {
    if (iterations < 1 || iterations > cap) throw InvalidMap("iteration count outside [1, cap]");
    std::vector<double> orbit;
    orbit.reserve(iterations);
    double t = wrap_angle(theta);
    for (int k = 0; k < iterations; ++k) {
        t = map.evaluate(t, Side::ccw);
        orbit.push_back(t);
    }
    return orbit;
}

std::vector<AngleArc> breakpoint_arcs(const CircleMap& map) {
    std::vector<double> b = map.breakpoints();
    if (b.empty()) return {{0.0, kTwoPi}};
    std::vector<AngleArc> arcs;
    for (std::size_t k = 0; k < b.size(); ++k) {
        double next = (k + 1 < b.size()) ? b[k + 1] : b[0] + kTwoPi;
        arcs.push_back({b[k], next - b[k]});
    }
    return arcs;
}

double arc_image_length(const CircleMap& map, double start, double length, int steps) {
    double prev = map.evaluate(start, Side::ccw);
    double total = 0.0;
    for (int s = 1; s <= steps; ++s) {
        double t = start + length * s / steps;
        double cur = map.evaluate(wrap_angle(t), s == steps ? Side::cw : Side::ccw);
        total += ccw_distance(prev, cur);
        prev = cur;
    }
    return total;
}

int degree(const CircleMap& map, int samples_per_piece) {
    double total = 0.0;
    for (const AngleArc& arc : breakpoint_arcs(map)) {
        for (int s = 0; s <= samples_per_piece; ++s) {
            double t = arc.start + arc.length * (s + 0.5) / (samples_per_piece + 1);
            if (map.derivative(wrap_angle(t)) <= 0.0)
                throw NotACovering("branch is not orientation-preserving");
        }
        total += arc_image_length(map, arc.start, arc.length, samples_per_piece);
    }
    double w = total / kTwoPi;
    double r = std::round(w);
    if (std::abs(w - r) > 1e-6) throw NotACovering("winding number is not integral");
    return static_cast<int>(r);
}

std::vector<double> merge_angles(std::vector<double> angles, double tol) {
    for (double& a : angles) a = wrap_angle(a);
    std::sort(angles.begin(), angles.end());
    std::vector<double> out;
    for (double a : angles)
        if (out.empty() || a - out.back() > tol) out.push_back(a);
    if (out.size() > 1 && out.front() + kTwoPi - out.back() <= tol) out.pop_back();
    return out;
}

double circle_gap(double a, double b) {
    double d = ccw_distance(a, b);
    return std::min(d, kTwoPi - d);
}

}  // namespace corrmate
