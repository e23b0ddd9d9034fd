#include "corrmate/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "corrmate/error.hpp"

namespace corrmate {

bool near(const ComplexPoint& a, const ComplexPoint& b, double tol) {
    if (a.infinite || b.infinite) return a.infinite && b.infinite;
    return std::abs(a.value - b.value) <= tol;
}

std::string to_string(MobiusClass k) {
    switch (k) {
        case MobiusClass::identity: return "identity";
        case MobiusClass::parabolic: return "parabolic";
        case MobiusClass::elliptic: return "elliptic";
        case MobiusClass::hyperbolic: return "hyperbolic";
        case MobiusClass::loxodromic: return "loxodromic";
    }
    return "unknown";
}

MobiusMap::MobiusMap() = default;

MobiusMap::MobiusMap(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (scale == 0.0 || std::abs(det) <= 1e-300 || std::abs(det) <= 1e-14 * scale * scale)
        throw DegenerateConstraint("singular matrix");
    cplx s = std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

MobiusMap MobiusMap::rotation(double angle) {
    return MobiusMap(std::polar(1.0, angle), 0.0, 0.0, 1.0);
}

ComplexPoint MobiusMap::apply(const ComplexPoint& z) const {
    if (z.infinite) {
        if (c_ == cplx(0.0)) return ComplexPoint::infinity();
        return ComplexPoint(a_ / c_);
    }
    cplx den = c_ * z.value + d_;
    if (den == cplx(0.0)) return ComplexPoint::infinity();
    return ComplexPoint((a_ * z.value + b_) / den);
}

cplx MobiusMap::apply(cplx z) const { return (a_ * z + b_) / (c_ * z + d_); }

cplx MobiusMap::derivative(cplx z) const {
    cplx den = c_ * z + d_;
    return 1.0 / (den * den);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

double MobiusMap::distance(const MobiusMap& o) const {
    double plus = std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                            std::abs(d_ - o.d_)});
    double minus = std::max({std::abs(a_ + o.a_), std::abs(b_ + o.b_), std::abs(c_ + o.c_),
                             std::abs(d_ + o.d_)});
    return std::min(plus, minus);
}

MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2) {
    return MobiusMap(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                     m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d());
}

double parabolic_defect(const MobiusMap& m) {
    cplx t = m.trace();
    return std::abs(t * t - 4.0);
}

MobiusClass classify(const MobiusMap& m, double tol) {
    cplx t = m.trace();
    cplx t2 = t * t;
    if (std::abs(t2 - 4.0) < tol) {
        if (m.distance(MobiusMap::identity()) < tol) return MobiusClass::identity;
        return MobiusClass::parabolic;
    }
    if (std::abs(t2.imag()) < tol) {
        if (t2.real() >= -tol && t2.real() < 4.0) return MobiusClass::elliptic;
        if (t2.real() > 4.0) return MobiusClass::hyperbolic;
    }
    return MobiusClass::loxodromic;
}

GeodesicArc::GeodesicArc(cplx a, cplx b) : endpoint_a(a), endpoint_b(b) {
    if (std::abs(std::abs(a) - 1.0) > 1e-12 || std::abs(std::abs(b) - 1.0) > 1e-12)
        throw DegenerateConstraint("geodesic endpoints must lie on the unit circle");
    if (std::abs(a - b) < 1e-12) throw DegenerateConstraint("geodesic endpoints coincide");
}

cplx GeodesicArc::midpoint() const {
    cplx s = endpoint_a + endpoint_b;
    if (std::abs(s) < 1e-14) return 0.0;
    // half the angle subtended between the endpoints
    double psi = 0.5 * std::abs(std::arg(endpoint_b / endpoint_a));
    double r = (1.0 - std::sin(psi)) / std::cos(psi);
    return r * s / std::abs(s);
}

cplx GeodesicArc::point_at(double t) const {
    // In the upper half-plane chart sending a -> 0 and b -> infinity the
    // geodesic is the positive imaginary axis.
    ComplexPoint from[3] = {ComplexPoint(endpoint_a), ComplexPoint(midpoint()), ComplexPoint(endpoint_b)};
    ComplexPoint to[3] = {ComplexPoint(0.0), ComplexPoint(cplx(0.0, 1.0)), ComplexPoint::infinity()};
    MobiusMap chart = mobius_three_points(from, to);
    double y = std::tan(0.5 * kPi * t);
    return chart.inverse().apply(cplx(0.0, y));
}

IdealPolygon::IdealPolygon(std::vector<cplx> v, std::vector<std::string> labels)
    : vertices(std::move(v)), side_labels(std::move(labels)) {
    if (vertices.size() != side_labels.size())
        throw InvalidMap("side count differs from vertex count");
    for (std::size_t k = 1; k < vertices.size(); ++k)
        if (arg_angle(vertices[k]) <= arg_angle(vertices[k - 1]))
            throw InvalidMap("polygon vertices not in increasing argument order");
}

namespace {

// Matrix sending (z1, z2, z3) to (0, 1, infinity).
MobiusMap to_standard(const ComplexPoint& z1, const ComplexPoint& z2, const ComplexPoint& z3) {
    if (near(z1, z2, 1e-14) || near(z2, z3, 1e-14) || near(z1, z3, 1e-14))
        throw DegenerateConstraint("three-point constraint has coincident points");
    if (z1.infinite) return MobiusMap(0.0, z2.value - z3.value, 1.0, -z3.value);
    if (z2.infinite) return MobiusMap(1.0, -z1.value, 1.0, -z3.value);
    if (z3.infinite) return MobiusMap(1.0, -z1.value, 0.0, z2.value - z1.value);
    cplx p = z2.value - z3.value, q = z2.value - z1.value;
    return MobiusMap(p, -z1.value * p, q, -z3.value * q);
}

}  // namespace

MobiusMap mobius_three_points(const ComplexPoint (&from)[3], const ComplexPoint (&to)[3]) {
    MobiusMap f = to_standard(from[0], from[1], from[2]);
    MobiusMap g = to_standard(to[0], to[1], to[2]);
    return compose(g.inverse(), f);
}

MobiusMap mobius_parabolic_through(const ComplexPoint& p, const ComplexPoint& q,
                                   const ComplexPoint& q_image) {
    if (near(p, q, 1e-14) || near(p, q_image, 1e-14))
        throw DegenerateConstraint("parabolic constraint point equals the fixed point");
    // chart sending p to infinity
    MobiusMap chart = p.infinite ? MobiusMap() : MobiusMap(0.0, 1.0, 1.0, -p.value);
    ComplexPoint cq = chart.apply(q), cqi = chart.apply(q_image);
    if (cq.infinite || cqi.infinite) throw DegenerateConstraint("constraint point maps to the fixed point");
    cplx t = cqi.value - cq.value;
    MobiusMap result = compose(chart.inverse(), compose(MobiusMap(1.0, t, 0.0, 1.0), chart));
    if (!p.infinite && std::abs(std::abs(p.value) - 1.0) < 1e-12) {
        // must preserve the unit circle and the disk
        for (double s : {0.3, 1.7, 4.1}) {
            cplx w = result.apply(std::polar(1.0, s));
            if (std::abs(std::abs(w) - 1.0) > 1e-9)
                throw NoParabolicSolution("no disk-preserving parabolic with these constraints");
        }
        if (std::abs(result.apply(cplx(0.0))) >= 1.0)
            throw NoParabolicSolution("parabolic would swap disk and exterior");
    }
    return result;
}

MobiusMap mobius_elliptic_involution(const GeodesicArc& g) {
    cplx m = g.midpoint();
    MobiusMap phi(1.0, -m, -std::conj(m), 1.0);  // disk automorphism m -> 0
    return compose(phi.inverse(), compose(MobiusMap(cplx(0.0, 1.0), 0.0, 0.0, cplx(0.0, -1.0)), phi));
}

double circle_derivative(const MobiusMap& m, double theta) {
    cplx den = m.c() * std::polar(1.0, theta) + m.d();
    double scale = std::abs(m.c()) + std::abs(m.d());
    if (std::abs(den) <= 1e-14 * scale) throw PoleOnCircle("pole of the map lies on the evaluation point");
    return 1.0 / std::norm(den);
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

double ccw_distance(double from, double to) { return wrap_angle(to - from); }

double arg_angle(cplx z) { return wrap_angle(std::arg(z)); }

}  // namespace corrmate
