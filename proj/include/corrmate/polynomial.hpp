#pragma once

#include <vector>

#include "corrmate/moebius.hpp"

namespace corrmate {

// Dense polynomial, coefficients in ascending degree.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<cplx> coefficients);
    static ComplexPolynomial monomial(cplx c, int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<cplx>& coefficients() const { return c_; }
    cplx operator[](int k) const { return (k >= 0 && k <= degree()) ? c_[k] : cplx(0.0); }
    cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

    cplx evaluate(cplx z) const;
    // sum |c_k| |z|^k, the scale of an evaluation at z
    double evaluation_scale(cplx z) const;
    ComplexPolynomial derivative() const;
    double norm() const;  // largest coefficient modulus

    ComplexPolynomial shifted(int k) const;   // z^k P(z)
    ComplexPolynomial reversed(int n) const;  // z^n P(1/z), requires n >= degree
    // Drops leading coefficients with |c_k| rho^k below rel_tol times the largest such term.
    ComplexPolynomial trimmed(double rel_tol, double rho = 1.0) const;

    ComplexPolynomial operator+(const ComplexPolynomial& o) const;
    ComplexPolynomial operator-(const ComplexPolynomial& o) const;
    ComplexPolynomial operator*(const ComplexPolynomial& o) const;
    ComplexPolynomial operator*(cplx s) const;

private:
    void trim_exact();
    std::vector<cplx> c_;
};

struct LinearDivision {
    ComplexPolynomial quotient;
    cplx remainder;
};

// Synthetic division by (z - root).
LinearDivision divide_linear(const ComplexPolynomial& p, cplx root);

struct RootOptions {
    int max_iterations = 500;
    double tolerance = 1e-10;  // on |P(z)| / sum |c_k||z|^k
    unsigned seed = 1;
};

struct RootResult {
    std::vector<cplx> roots;
    bool converged = false;
    int iterations = 0;
    double max_residual = 0.0;
};

// Aberth-Ehrlich simultaneous iteration. Never throws on stalls: the best
// iterate is returned with converged = false.
RootResult find_roots(const ComplexPolynomial& p, const RootOptions& options = {});

// Newton refinement of one root.
cplx polish_root(const ComplexPolynomial& p, cplx z, int iterations = 50);

// det of the Sylvester matrix with the rows of p first:
// Res(p, q) = lc(p)^deg q * prod q(alpha) over the roots alpha of p.
cplx sylvester_resultant(const ComplexPolynomial& p, const ComplexPolynomial& q);
// Hadamard bound on that determinant (product of row norms).
double sylvester_scale(const ComplexPolynomial& p, const ComplexPolynomial& q);

}  // namespace corrmate
