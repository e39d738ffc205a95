#pragma once

// The vector-valued function space behind the operator: scalar-to-vector
// embeddings built from scaled derivatives, the induced orthonormal basis,
// and the matrix reproducing kernel computed two independent ways (basis
// summation vs closed form), plus the quasi-invariance defect under the
// group action.

#include "mobius.hpp"
#include "params.hpp"
#include "series.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace homogop {

// Polynomial in z with values in complex (m+1)-space; coeffs[k] multiplies z^k.
struct VPoly {
  int dim = 1;
  std::vector<Vector> coeffs;

  VPoly() : coeffs(1, Vector::Zero(1)) {}
  VPoly(int dim_, int degree) : dim(dim_), coeffs(degree + 1, Vector::Zero(dim_)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  Vector eval(cplx z) const {
    Vector acc = Vector::Zero(dim);
    for (int k = degree(); k >= 0; --k) acc = z * acc + coeffs[k];
    return acc;
  }

  // Multiplication by z: shift all coefficients up one power.
  VPoly mul_z() const {
    VPoly r(dim, degree() + 1);
    for (int k = 0; k <= degree(); ++k) r.coeffs[k + 1] = coeffs[k];
    return r;
  }
};

// Coefficient-weight inner product of the scalar space with parameter
// two_lambda: <z^n, z^n> = n! / (two_lambda)_n, monomials orthogonal.
inline cplx weighted_inner(const Poly& f, const Poly& g, double two_lambda) {
  cplx acc = 0.0;
  const int d = std::min(f.degree(), g.degree());
  for (int n = 0; n <= d; ++n)
    acc += f.c[n] * std::conj(g.c[n]) * (factorial(n) / pochhammer(two_lambda, n));
  return acc;
}

// Embeds a scalar polynomial into the j-th slot of the vector-valued space:
// component l = binom(l,j) (two_lambda_j)_{l-j}^{-1} f^(l-j) for l >= j, else 0.
inline VPoly embed_scalar(const ParameterSet& params, int j, const Poly& f) {
  if (j < 0 || j > params.m) throw std::invalid_argument("embed_scalar: slot out of range");
  const int deg = f.degree();
  VPoly r(params.dim(), deg);
  Poly der = f;
  for (int l = j; l <= params.m; ++l) {
    const double scale = binomial(l, j) / pochhammer(params.two_lambda(j), l - j);
    for (int k = 0; k <= der.degree(); ++k) r.coeffs[k](l) += scale * der.c[k];
    der = der.derivative();
  }
  return r;
}

// Orthonormal basis vector e_n^j by its closed-form components:
// component l = binom(l,j) (sqrt(n!)/(n-l+j)!) (sqrt((2l_j)_n)/(2l_j)_{l-j}) z^{n-l+j}.
inline VPoly basis_vector(const ParameterSet& params, int j, int n) {
  if (j < 0 || j > params.m) throw std::invalid_argument("basis_vector: slot out of range");
  if (n < 0) throw std::invalid_argument("basis_vector: negative degree");
  const double tl = params.two_lambda(j);
  VPoly r(params.dim(), n + j);
  const double sn = std::sqrt(factorial(n));
  const double sp = std::sqrt(pochhammer(tl, n));
  const int lmax = std::min(params.m, n + j);
  for (int l = j; l <= lmax; ++l) {
    const double coef =
        binomial(l, j) * (sn / factorial(n - l + j)) * (sp / pochhammer(tl, l - j));
    r.coeffs[n - l + j](l) = coef;
  }
  return r;
}

// Kernel value at the origin: positive diagonal with
// entry (l,l) = sum_j mu_j^2 binom(l,j)^2 (l-j)! / (two_lambda_j)_{l-j}.
inline Matrix kernel_at_origin(const ParameterSet& params) {
  Matrix B = Matrix::Zero(params.dim(), params.dim());
  for (int l = 0; l <= params.m; ++l) {
    double acc = 0.0;
    for (int j = 0; j <= l; ++j) {
      const double bl = binomial(l, j);
      acc += params.mu[j] * params.mu[j] * bl * bl * factorial(l - j) /
             pochhammer(params.two_lambda(j), l - j);
    }
    B(l, l) = acc;
  }
  return B;
}

// Nilpotent forward shift with weights 1..m: S e_p = (p+1) e_{p+1}.
inline Matrix shift_matrix(int m) {
  Matrix S = Matrix::Zero(m + 1, m + 1);
  for (int l = 1; l <= m; ++l) S(l, l - 1) = l;
  return S;
}

// Diagonal series with entries (1 - z wbar)^{m-l}: exact finite binomial.
inline BiSeries diagonal_series(int m, int N) {
  BiSeries D(m + 1, N);
  for (int s = 0; s <= std::min(m, N); ++s) {
    Matrix c = Matrix::Zero(m + 1, m + 1);
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    for (int l = 0; l <= m; ++l) c(l, l) = sign * binomial(m - l, s);
    D.coeff(s, s) = c;
  }
  return D;
}

namespace detail {

// exp(wbar S) as a BiSeries (coefficients in wbar only; finite by nilpotency).
inline BiSeries exp_wbar(const Matrix& S, int N) {
  const int d = static_cast<int>(S.rows());
  BiSeries r(d, N);
  Matrix P = Matrix::Identity(d, d);
  for (int t = 0; t <= std::min(d - 1, N); ++t) {
    if (t > 0) P = (P * S / double(t)).eval();
    r.coeff(0, t) = P;
  }
  return r;
}

// exp(z A) as a BiSeries (coefficients in z only; finite by nilpotency).
inline BiSeries exp_z(const Matrix& A, int N) {
  const int d = static_cast<int>(A.rows());
  BiSeries r(d, N);
  Matrix P = Matrix::Identity(d, d);
  for (int s = 0; s <= std::min(d - 1, N); ++s) {
    if (s > 0) P = (P * A / double(s)).eval();
    r.coeff(s, 0) = P;
  }
  return r;
}

inline BiSeries constant_series(const Matrix& A, int N) {
  BiSeries r(static_cast<int>(A.rows()), N);
  r.coeff(0, 0) = A;
  return r;
}

}  // namespace detail

// Kernel coefficients by summing mu_j^2 e_n^j(z) e_n^j(w)^* over the basis.
// Terms with n > N + m cannot reach coefficients with s,t <= N.
inline BiSeries kernel_from_onb(const ParameterSet& params, int N) {
  BiSeries K(params.dim(), N);
  for (int j = 0; j <= params.m; ++j) {
    const double w = params.mu[j] * params.mu[j];
    for (int n = 0; n <= N + params.m; ++n) {
      const VPoly v = basis_vector(params, j, n);
      const int top = std::min(v.degree(), N);
      for (int s = 0; s <= top; ++s)
        for (int t = 0; t <= top; ++t)
          K.coeff(s, t) += w * v.coeffs[s] * v.coeffs[t].adjoint();
    }
  }
  return K;
}

// Kernel coefficients from the closed form
//   (1 - z wbar)^{-2 lambda - m} D(z wbar) exp(wbar S) B exp(z S*) D(z wbar).
inline BiSeries kernel_closed_form(const ParameterSet& params, int N) {
  const int d = params.dim();
  const Matrix S = shift_matrix(params.m);
  const BiSeries D = diagonal_series(params.m, N);
  const BiSeries pref = BiSeries::geometric(2.0 * params.lambda + params.m, d, N);
  const BiSeries ew = detail::exp_wbar(S, N);
  const BiSeries ez = detail::exp_z(S.adjoint(), N);
  const BiSeries Bc = detail::constant_series(kernel_at_origin(params), N);
  return pref * D * ew * Bc * ez * D;
}

// Pointwise kernel evaluation of the same closed form (exact finite sums
// plus a principal-branch scalar prefactor).
inline Matrix kernel_eval(const ParameterSet& params, cplx z, cplx w) {
  const int d = params.dim();
  const cplx u = 1.0 - z * std::conj(w);
  const Matrix S = shift_matrix(params.m);

  Matrix D = Matrix::Zero(d, d);
  for (int l = 0; l <= params.m; ++l) {
    cplx p = 1.0;
    for (int i = 0; i < params.m - l; ++i) p *= u;
    D(l, l) = p;
  }

  Matrix ew = Matrix::Identity(d, d);
  Matrix ez = Matrix::Identity(d, d);
  Matrix Pw = Matrix::Identity(d, d);
  Matrix Pz = Matrix::Identity(d, d);
  const Matrix Sa = S.adjoint();
  for (int k = 1; k <= params.m; ++k) {
    Pw = (Pw * (std::conj(w) * S) / double(k)).eval();
    Pz = (Pz * (z * Sa) / double(k)).eval();
    ew += Pw;
    ez += Pz;
  }

  const cplx pref = std::pow(u, -(2.0 * params.lambda + params.m));
  return pref * (D * ew * kernel_at_origin(params) * ez * D);
}

// Frobenius norm of J(g,z) K(gz, gw) J(g,w)^* - K(z,w); zero in exact
// arithmetic for every branch-valid g.
inline double quasi_invariance_defect(const ParameterSet& params, const GroupElement& g,
                                      cplx z, cplx w) {
  const Matrix Jz = multiplier(g, z, params);
  const Matrix Jw = multiplier(g, w, params);
  const Matrix lhs = Jz * kernel_eval(params, g(z), g(w)) * Jw.adjoint();
  return (lhs - kernel_eval(params, z, w)).norm();
}

}  // namespace homogop
