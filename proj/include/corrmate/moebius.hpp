#pragma once

#include <complex>
#include <string>
#include <vector>

namespace corrmate {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// A point of the Riemann sphere. Infinity is a flag, never a big number.
struct ComplexPoint {
    cplx value{0.0, 0.0};
    bool infinite = false;

    ComplexPoint() = default;
    ComplexPoint(cplx z) : value(z) {}
    ComplexPoint(double re, double im) : value(re, im) {}
    static ComplexPoint infinity() {
        ComplexPoint p;
        p.infinite = true;
        return p;
    }
    bool is_finite() const { return !infinite; }
};

// Chordal-free comparison: both infinite, or both finite and close.
bool near(const ComplexPoint& a, const ComplexPoint& b, double tol);

enum class MobiusClass { identity, parabolic, elliptic, hyperbolic, loxodromic };
std::string to_string(MobiusClass k);

class MobiusMap {
public:
    MobiusMap();  // identity
    // Normalizes to determinant one. Throws DegenerateConstraint on ad-bc=0.
    MobiusMap(cplx a, cplx b, cplx c, cplx d);

    static MobiusMap identity() { return MobiusMap(); }
    static MobiusMap rotation(double angle);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }
    cplx trace() const { return a_ + d_; }

    ComplexPoint apply(const ComplexPoint& z) const;
    cplx apply(cplx z) const;  // finite input, finite result expected
    cplx derivative(cplx z) const;
    MobiusMap inverse() const;

    // Matrix distance modulo the sign ambiguity of SL(2,C).
    double distance(const MobiusMap& other) const;

private:
    cplx a_{1}, b_{0}, c_{0}, d_{1};
};

// m1 after m2.
MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2);
inline MobiusMap operator*(const MobiusMap& m1, const MobiusMap& m2) { return compose(m1, m2); }

MobiusClass classify(const MobiusMap& m, double tol = 1e-9);

// |tr^2 - 4| for a normalized map.
double parabolic_defect(const MobiusMap& m);

struct GeodesicArc {
    cplx endpoint_a;
    cplx endpoint_b;

    GeodesicArc(cplx a, cplx b);  // validates unit modulus and distinctness
    // Point of the geodesic closest to the origin.
    cplx midpoint() const;
    // Point at parameter t in (0,1) along the geodesic from a to b.
    cplx point_at(double t) const;
};

struct IdealPolygon {
    std::vector<cplx> vertices;          // strictly increasing argument
    std::vector<std::string> side_labels;  // side k joins vertex k and k+1

    IdealPolygon() = default;
    IdealPolygon(std::vector<cplx> vertices, std::vector<std::string> labels);
};

MobiusMap mobius_three_points(const ComplexPoint (&from)[3], const ComplexPoint (&to)[3]);
// Parabolic fixing p with q -> q'. For p on the unit circle the result must
// preserve the disk, otherwise NoParabolicSolution.
MobiusMap mobius_parabolic_through(const ComplexPoint& p, const ComplexPoint& q,
                                   const ComplexPoint& q_image);
// Half-turn about the geodesic's midpoint; swaps its endpoints.
MobiusMap mobius_elliptic_involution(const GeodesicArc& g);

// |m'(e^{i theta})|; PoleOnCircle when the pole lies on e^{i theta}.
double circle_derivative(const MobiusMap& m, double theta);

// Angle helpers: wrap into [0, 2pi) and counterclockwise distance.
double wrap_angle(double theta);
double ccw_distance(double from, double to);
double arg_angle(cplx z);  // argument in [0, 2pi)

}  // namespace corrmate
