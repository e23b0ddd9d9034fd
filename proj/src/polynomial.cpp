#include "corrmate/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "corrmate/error.hpp"

namespace corrmate {

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> c) : c_(std::move(c)) { trim_exact(); }

ComplexPolynomial ComplexPolynomial::monomial(cplx c, int k) {
    std::vector<cplx> v(k + 1, 0.0);
    v[k] = c;
    return ComplexPolynomial(v);
}

void ComplexPolynomial::trim_exact() {
    while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx ComplexPolynomial::evaluate(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double ComplexPolynomial::evaluation_scale(cplx z) const {
    double r = std::abs(z), acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return ComplexPolynomial(d);
}

double ComplexPolynomial::norm() const {
    double m = 0.0;
    for (cplx c : c_) m = std::max(m, std::abs(c));
    return m;
}

ComplexPolynomial ComplexPolynomial::shifted(int k) const {
    if (c_.empty()) return {};
    std::vector<cplx> v(k, 0.0);
    v.insert(v.end(), c_.begin(), c_.end());
    return ComplexPolynomial(v);
}

ComplexPolynomial ComplexPolynomial::reversed(int n) const {
    if (n < degree()) throw InvalidMap("reversal degree below polynomial degree");
    std::vector<cplx> v(n + 1, 0.0);
    for (int k = 0; k <= degree(); ++k) v[n - k] = c_[k];
    return ComplexPolynomial(v);
}

ComplexPolynomial ComplexPolynomial::trimmed(double rel_tol, double rho) const {
    double top = 0.0;
    for (int k = 0; k <= degree(); ++k) top = std::max(top, std::abs(c_[k]) * std::pow(rho, k));
    std::vector<cplx> v = c_;
    while (!v.empty() && std::abs(v.back()) * std::pow(rho, static_cast<int>(v.size()) - 1) <= rel_tol * top)
        v.pop_back();
    return ComplexPolynomial(v);
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& o) const {
    std::vector<cplx> v(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
    return ComplexPolynomial(v);
}

ComplexPolynomial ComplexPolynomial::operator-(const ComplexPolynomial& o) const { return *this + o * cplx(-1.0); }

ComplexPolynomial ComplexPolynomial::operator*(const ComplexPolynomial& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<cplx> v(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return ComplexPolynomial(v);
}

ComplexPolynomial ComplexPolynomial::operator*(cplx s) const {
    std::vector<cplx> v = c_;
    for (cplx& x : v) x *= s;
    return ComplexPolynomial(v);
}

LinearDivision divide_linear(const ComplexPolynomial& p, cplx root) {
    int n = p.degree();
    if (n < 1) return {ComplexPolynomial(), p[0]};
    std::vector<cplx> q(n);
    cplx acc = p[n];
    for (int k = n - 1; k >= 0; --k) {
        q[k] = acc;
        acc = acc * root + p[k];
    }
    return {ComplexPolynomial(q), acc};
}

cplx polish_root(const ComplexPolynomial& p, cplx z, int iterations) {
    ComplexPolynomial dp = p.derivative();
    for (int it = 0; it < iterations; ++it) {
        cplx v = p.evaluate(z), dv = dp.evaluate(z);
        if (v == cplx(0.0) || dv == cplx(0.0)) break;
        cplx step = v / dv;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

RootResult find_roots(const ComplexPolynomial& p, const RootOptions& opt) {
    int n = p.degree();
    if (n < 1) throw InvalidMap("root finding needs degree >= 1");
    RootResult res;
    // factor out roots at the origin exactly
    int zeros = 0;
    while (zeros < n && p[zeros] == cplx(0.0)) ++zeros;
    std::vector<cplx> core(p.coefficients().begin() + zeros, p.coefficients().end());
    ComplexPolynomial q(core);
    int m = q.degree();
    std::vector<cplx> z(m);
    if (m == 1) {
        z[0] = -q[0] / q[1];
    } else if (m > 1) {
        double radius = 0.0;
        for (int k = 0; k < m; ++k)
            radius = std::max(radius, std::pow(std::abs(q[k] / q[m]), 1.0 / (m - k)));
        radius = std::max(radius * 0.5, 1e-3);
        std::mt19937_64 rng(opt.seed);
        double offset = std::uniform_real_distribution<double>(0.0, kTwoPi / m)(rng);
        for (int k = 0; k < m; ++k) z[k] = std::polar(radius, kTwoPi * k / m + offset + 0.25);
        ComplexPolynomial dq = q.derivative();
        for (res.iterations = 1; res.iterations <= opt.max_iterations; ++res.iterations) {
            double worst = 0.0;
            for (int i = 0; i < m; ++i) {
                cplx v = q.evaluate(z[i]);
                if (v == cplx(0.0)) continue;
                cplx ratio = v / dq.evaluate(z[i]);
                cplx s = 0.0;
                for (int j = 0; j < m; ++j)
                    if (j != i) s += 1.0 / (z[i] - z[j]);
                cplx w = ratio / (1.0 - ratio * s);
                if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = cplx(1e-8, 1e-8);
                z[i] -= w;
                worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
            }
            if (worst <= 1e-15) break;
        }
        res.iterations = std::min(res.iterations, opt.max_iterations);
    }
    for (int k = 0; k < zeros; ++k) res.roots.push_back(0.0);
    for (cplx r : z) res.roots.push_back(r);
    for (cplx r : res.roots) {
        double scale = p.evaluation_scale(r);
        double rel = scale > 0 ? std::abs(p.evaluate(r)) / scale : 0.0;
        res.max_residual = std::max(res.max_residual, rel);
    }
    res.converged = res.max_residual < opt.tolerance;
    std::sort(res.roots.begin(), res.roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return res;
}

namespace {

Eigen::MatrixXcd sylvester_matrix(const ComplexPolynomial& p, const ComplexPolynomial& q) {
    int m = p.degree(), n = q.degree();
    if (m < 0 || n < 0) throw InvalidMap("resultant of a zero polynomial");
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s(r, r + k) = p[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s(n + r, r + k) = q[n - k];
    return s;
}

}  // namespace

cplx sylvester_resultant(const ComplexPolynomial& p, const ComplexPolynomial& q) {
    if (p.degree() == 0 && q.degree() == 0) return 1.0;
    if (p.degree() == 0) return std::pow(p[0], q.degree());
    if (q.degree() == 0) return std::pow(q[0], p.degree());
    Eigen::MatrixXcd s = sylvester_matrix(p, q);
    return s.partialPivLu().determinant();
}

double sylvester_scale(const ComplexPolynomial& p, const ComplexPolynomial& q) {
    if (p.degree() <= 0 || q.degree() <= 0) return std::max(1.0, std::abs(sylvester_resultant(p, q)));
    Eigen::MatrixXcd s = sylvester_matrix(p, q);
    double prod = 1.0;
    for (int r = 0; r < s.rows(); ++r) prod *= s.row(r).norm();
    return prod;
}

}  // namespace corrmate
