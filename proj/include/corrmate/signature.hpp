#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace corrmate {

using Rational = boost::rational<std::int64_t>;

// Genus-zero orbifold: punctures, optional order-2 point, optional cone
// point of order cone_order >= 3 (0 means absent).
struct OrbifoldSignature {
    int punctures = 1;
    int order2_points = 0;
    int cone_order = 0;
};

struct DerivedInvariants {
    int n = 1;  // degree of the cyclic cover
    int p = 0;
    int m = 0;
    int d = 0;
    Rational chi{0};
    int cover_punctures = 0;
    int cover_order2_points = 0;
};

// NotInFamilyF / NotHyperbolic on invalid input.
void validate_signature(const OrbifoldSignature& sig);
Rational orbifold_euler_characteristic(const OrbifoldSignature& sig);
DerivedInvariants signature_invariants(const OrbifoldSignature& sig);

// Parses "punctures,order2,cone".
OrbifoldSignature parse_signature(const std::string& text);
std::string to_string(const OrbifoldSignature& sig);

// All signatures with punctures <= max_punctures and cone order <= max_cone.
std::vector<OrbifoldSignature> enumerate_family(int max_punctures, int max_cone);

}  // namespace corrmate
