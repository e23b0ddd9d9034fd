#pragma once

#include <vector>

#include "corrmate/moebius.hpp"

namespace corrmate {

// Which one-sided limit to use at a break-point. ccw means the branch of the
// arc that starts at the point (the default for evaluation).
enum class Side { ccw, cw };

// A covering of the unit circle given in angle coordinates.
class CircleMap {
public:
    virtual ~CircleMap() = default;
    // Sorted angles in [0, 2pi) where the analytic branch changes.
    virtual std::vector<double> breakpoints() const = 0;
    virtual double evaluate(double theta, Side side = Side::ccw) const = 0;
    // Signed derivative of the angle map.
    virtual double derivative(double theta, Side side = Side::ccw) const = 0;
    // All angles mapped to phi (ccw convention at break-points), sorted.
    virtual std::vector<double> preimages(double phi) const = 0;
};

// z -> z^d, with break-points at the d-th roots of unity.
class PowerMap : public CircleMap {
public:
    explicit PowerMap(int d);
    int power() const { return d_; }
    std::vector<double> breakpoints() const override;
    double evaluate(double theta, Side side = Side::ccw) const override;
    double derivative(double theta, Side side = Side::ccw) const override;
    std::vector<double> preimages(double phi) const override;

private:
    int d_;
};

// Orbit theta -> A(theta) -> ... of the given length (first entry is A(theta)).
std::vector<double> eval_orbit(const CircleMap& map, double theta, int iterations,
                               int cap = 1 << 20);

// Arcs between consecutive break-points as (start, length) pairs.
struct AngleArc {
    double start;
    double length;
};
std::vector<AngleArc> breakpoint_arcs(const CircleMap& map);

// Counterclockwise length swept by the image of [start, start + length).
double arc_image_length(const CircleMap& map, double start, double length, int steps = 64);

// Winding number of the covering. NotACovering when a branch reverses
// orientation or the winding is not integral within 1e-6.
int degree(const CircleMap& map, int samples_per_piece = 64);

// Sorted union with near-duplicates (1e-11) removed.
std::vector<double> merge_angles(std::vector<double> angles, double tol = 1e-11);

// Distance on the circle between two angles.
double circle_gap(double a, double b);

}  // namespace corrmate
