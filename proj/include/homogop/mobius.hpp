#pragma once

// Disc automorphisms g(z) = (a z + b) / (bbar z + abar) with |a|^2 - |b|^2 = 1,
// their derivative powers on the principal branch, and the lower-triangular
// matrix multiplier J(g, z) that implements the group action on vector-valued
// holomorphic functions.  The representation convention is
// (U(g^-1) f)(z) = J(g, z) f(g z), and J obeys J(gh, z) = J(h, z) J(g, hz).

#include "params.hpp"
#include "series.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace homogop {

struct GroupElement {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  GroupElement() = default;

  GroupElement(cplx a_, cplx b_) : a(a_), b(b_) {
    if (std::abs(std::norm(a) - std::norm(b) - 1.0) > 1e-12)
      throw std::invalid_argument("GroupElement: requires |a|^2 - |b|^2 = 1");
  }

  static GroupElement identity() { return GroupElement(); }

  // The automorphism taking 0 to w (|w| < 1); its inverse takes w to 0.
  static GroupElement translation(cplx w) {
    const double n = std::norm(w);
    if (!(n < 1.0)) throw std::invalid_argument("translation: requires |w| < 1");
    const double s = 1.0 / std::sqrt(1.0 - n);
    return GroupElement(s, w * s);
  }

  GroupElement inverse() const { return GroupElement(std::conj(a), -b); }

  // Principal-branch powers are single-valued on the neighborhood
  // |a - 1| < 1/2, |b| < 1/2 of the identity; samplers stay inside it.
  bool branch_valid() const {
    return std::abs(a - cplx(1.0)) < 0.5 && std::abs(b) < 0.5;
  }

  cplx operator()(cplx z) const {
    return (a * z + b) / (std::conj(b) * z + std::conj(a));
  }

  cplx deriv(cplx z) const {
    const cplx w = std::conj(b) * z + std::conj(a);
    return 1.0 / (w * w);
  }

  // (g')^expo on the principal branch: exp(-2 expo Log(bbar z + abar)).
  cplx deriv_power(cplx z, double expo) const {
    const cplx w = std::conj(b) * z + std::conj(a);
    if (w.real() <= 0.0)
      throw std::domain_error("deriv_power: principal branch requires Re(bbar z + abar) > 0");
    return std::exp(-2.0 * expo * std::log(w));
  }

  // The constant c with g''(z) = -2 c (g')^{3/2}(z); equals bbar exactly.
  cplx cocycle_constant() const { return std::conj(b); }
};

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  // 2x2 matrix product; (g*h)(z) = g(h(z)).
  return GroupElement(g.a * h.a + g.b * std::conj(h.b),
                      g.a * h.b + g.b * std::conj(h.a));
}

// J(g, z): lower-triangular (m+1)x(m+1) with
//   J_{p,l} = binom(p,l) (-c)^{p-l} (g')^{lambda - m/2 + (p+l)/2}(z),  p >= l.
inline Matrix multiplier(const GroupElement& g, cplx z, int m, double lambda) {
  const cplx neg_c = -g.cocycle_constant();
  Matrix J = Matrix::Zero(m + 1, m + 1);
  for (int p = 0; p <= m; ++p)
    for (int l = 0; l <= p; ++l)
      J(p, l) = binomial(p, l) * std::pow(neg_c, p - l) *
                g.deriv_power(z, lambda - 0.5 * m + 0.5 * (p + l));
  return J;
}

inline Matrix multiplier(const GroupElement& g, cplx z, const ParameterSet& params) {
  return multiplier(g, z, params.m, params.lambda);
}

// Frobenius norm of J(gh, z) - J(h, z) J(g, hz).
inline double cocycle_defect(const GroupElement& g, const GroupElement& h, cplx z,
                             int m, double lambda) {
  const Matrix lhs = multiplier(g * h, z, m, lambda);
  const Matrix rhs = multiplier(h, z, m, lambda) * multiplier(g, h(z), m, lambda);
  return (lhs - rhs).norm();
}

inline double cocycle_defect(const GroupElement& g, const GroupElement& h, cplx z,
                             const ParameterSet& params) {
  return cocycle_defect(g, h, z, params.m, params.lambda);
}

// Higher-derivative product rule for (g')^ell (f o g): the k-th derivative
// equals sum_i binom(k,i) (2 ell + i)_{k-i} (-c)^{k-i} (g')^{ell+(k+i)/2} f^(i)(g z).
// The left side is computed independently by jet arithmetic; returns |LHS - RHS|.
inline double leibniz_defect(const GroupElement& g, double ell, int k, const Poly& f,
                             cplx z) {
  const int order = k;  // jets at z of order k carry the k-th derivative
  // w(h) = bbar (z+h) + abar, linear in h.
  Jet w = Jet::constant(std::conj(g.b) * z + std::conj(g.a), z, order);
  if (order >= 1) w.coeff(1) = std::conj(g.b);
  if (w.coeff(0).real() <= 0.0)
    throw std::domain_error("leibniz_defect: principal branch requires Re(bbar z + abar) > 0");

  Jet num = Jet::constant(g.a * z + g.b, z, order);
  if (order >= 1) num.coeff(1) = g.a;
  const Jet gjet = num * w.pow(-1.0);        // jet of g(z+h)
  const Jet gp_ell = w.pow(-2.0 * ell);      // jet of (g')^ell (z+h)
  const cplx lhs = (gp_ell * poly_on_jet(f, gjet)).derivative(k);

  const cplx neg_c = -g.cocycle_constant();
  const cplx gz = g(z);
  cplx rhs = 0.0;
  Poly fi = f;
  for (int i = 0; i <= k; ++i) {
    rhs += binomial(k, i) * pochhammer(2.0 * ell + i, k - i) * std::pow(neg_c, k - i) *
           g.deriv_power(z, ell + 0.5 * (k + i)) * fi.eval(gz);
    fi = fi.derivative();
  }
  return std::abs(lhs - rhs);
}

}  // namespace homogop
