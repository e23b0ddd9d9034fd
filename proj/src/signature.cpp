#include "corrmate/signature.hpp"

#include <sstream>

#include "corrmate/error.hpp"

namespace corrmate {

Rational orbifold_euler_characteristic(const OrbifoldSignature& s) {
    Rational chi = Rational(2) - Rational(s.punctures) - Rational(s.order2_points, 2);
    if (s.cone_order != 0) chi -= Rational(1) - Rational(1, s.cone_order);
    return chi;
}

void validate_signature(const OrbifoldSignature& s) {
    if (s.punctures < 1) throw NotInFamilyF("at least one puncture is required");
    if (s.order2_points != 0 && s.order2_points != 1)
        throw NotInFamilyF("at most one order-2 point is allowed");
    if (s.cone_order != 0 && s.cone_order < 3) throw NotInFamilyF("cone order must be 0 or at least 3");
    if (orbifold_euler_characteristic(s) >= 0) throw NotHyperbolic("orbifold Euler characteristic is not negative");
}

DerivedInvariants signature_invariants(const OrbifoldSignature& s) {
    validate_signature(s);
    DerivedInvariants inv;
    inv.n = s.cone_order >= 3 ? s.cone_order : 1;
    inv.p = s.order2_points == 0 ? 2 * (s.punctures - 1) : 2 * s.punctures - 1;
    inv.m = inv.n * inv.p;
    inv.d = inv.m - 1;
    inv.chi = orbifold_euler_characteristic(s);
    inv.cover_punctures = inv.n * (s.punctures - 1) + 1;
    inv.cover_order2_points = inv.n * s.order2_points;
    if (Rational(inv.d) != Rational(1) - Rational(2 * inv.n) * inv.chi)
        throw NotHyperbolic("degree identity failed");
    return inv;
}

OrbifoldSignature parse_signature(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    std::vector<int> v;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size()) throw ConfigError("bad integer in signature: " + item);
        } catch (const std::logic_error&) {
            throw ConfigError("bad integer in signature: " + item);
        }
    }
    if (v.size() != 3) throw ConfigError("signature must be punctures,order2,cone");
    return {v[0], v[1], v[2]};
}

std::string to_string(const OrbifoldSignature& s) {
    return std::to_string(s.punctures) + "," + std::to_string(s.order2_points) + "," +
           std::to_string(s.cone_order);
}

std::vector<OrbifoldSignature> enumerate_family(int max_punctures, int max_cone) {
    std::vector<OrbifoldSignature> out;
    for (int d1 = 1; d1 <= max_punctures; ++d1)
        for (int d2 = 0; d2 <= 1; ++d2)
            for (int nu = 0; nu <= max_cone; ++nu) {
                if (nu == 1 || nu == 2) continue;
                OrbifoldSignature s{d1, d2, nu};
                if (orbifold_euler_characteristic(s) < 0) out.push_back(s);
            }
    return out;
}

}  // namespace corrmate
