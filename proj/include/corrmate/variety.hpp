#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrmate/polynomial.hpp"

namespace corrmate {

// R(z) = z^{2n} + ... + a_2 z^2 - 2n z with a = (a_2, ..., a_n).
struct ReducedFamilyParams {
    int n = 2;
    std::vector<cplx> a;
};

ComplexPolynomial reduced_polynomial(const ReducedFamilyParams& params);

// P1 = z^{2n}(R(z) - R(1/z)), P2 = z^{2n+1}(R'(1/z)(-1/z^2) - R'(z)) and
// their quotients by (z - 1)^2.
struct ResultantInputs {
    int n = 0;
    ComplexPolynomial p1, p2, q1, q2;
    double q2_at_one = 0.0;  // |Q2(1)| / scale: nonzero unless a further (z-1) factor is shared
};

// DivisionResidue when R is not in the reduced family.
ResultantInputs resultant_inputs(const ComplexPolynomial& r);

struct VarietyResidual {
    cplx naive;
    double naive_scale = 1.0;
    cplx single_deflated;  // one factor (z-1) removed from each
    double single_scale = 1.0;
    cplx deflated;         // (z-1)^2 removed from each
    double deflated_scale = 1.0;
    bool further_trivial_factor = false;
};

VarietyResidual variety_residual(const ComplexPolynomial& r);
VarietyResidual variety_residual(const ReducedFamilyParams& params);

struct CriticalPairing {
    cplx fixed_critical_point;            // the root of R' at 1
    std::vector<std::pair<cplx, cplx>> pairs;  // (c_j, its partner near 1/c_j)
    double defect = 0.0;                  // max |c_j * partner - 1|
    bool ok = false;
};

CriticalPairing critical_pairing(const ComplexPolynomial& r, double tol = 1e-6);

struct CommonRoot {
    cplx z;
    double match_distance = 0.0;
    bool critical = false;  // also a root of R'
};

struct BetaData {
    cplx beta;
    cplx beta_inverse;
    double value_residual = 0.0;       // |R(beta) - R(1/beta)|
    double derivative_residual = 0.0;  // |R'(1/beta)(-1/beta^2) - R'(beta)|
    std::vector<CommonRoot> common_roots;  // excluding +-1
    CriticalPairing pairing;
};

// NoCommonRoot when Q1 and Q2 share no root away from +-1.
BetaData find_beta(const ComplexPolynomial& r, double match_tol = 1e-6, unsigned seed = 1);

struct VarietyResiduals {
    double variety = 0.0;  // |deflated resultant| / Hadamard bound
    double beta_value = 0.0;
    double beta_derivative = 0.0;
    double pairing = 0.0;
};

struct VarietyPoint {
    ReducedFamilyParams params;
    std::optional<cplx> beta;
    VarietyResiduals residuals;
    bool validated = false;
    int sign = 1;  // which of z = +-1 is the normalized critical point
    std::vector<std::string> flags;
};

struct VarietyOptions {
    double tolerance = 1e-8;
    double radius = 0.0;  // sampling circle in the unknown; 0 picks automatically
    unsigned seed = 1;
};

struct VarietySolution {
    ComplexPolynomial resultant;  // deflated resultant as a polynomial in the unknown
    int unknown = 2;              // index k of the unknown a_k
    std::vector<VarietyPoint> candidates;
    double interpolation_check = 0.0;
};

// Solves for a_k (k = unknown) with the other coefficients taken from `fixed`.
// For n = 2, `fixed.a` may be empty.
VarietySolution solve_variety(int n, const ReducedFamilyParams& fixed, int unknown,
                              const VarietyOptions& options = {});

// Residual check of one parameter choice; never throws.
VarietyPoint validate_point(const ReducedFamilyParams& params, const VarietyOptions& options = {});

}  // namespace corrmate
