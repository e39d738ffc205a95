#pragma once

// Structure theory of the operator family: irreducibility through the
// commutant of the normalized-kernel Taylor coefficients, the coefficient
// pattern of the polynomial part of the normalized kernel (which forces the
// commutant to be scalar), and the complete unitary invariant (lambda, mu)
// used for pairwise inequivalence.

#include "blocks.hpp"
#include "kernels.hpp"
#include "params.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace homogop {

namespace detail {

inline Matrix diag_sqrt(const Matrix& D, bool inverse) {
  Matrix r = Matrix::Zero(D.rows(), D.cols());
  for (int i = 0; i < D.rows(); ++i) {
    const double v = std::sqrt(D(i, i).real());
    r(i, i) = inverse ? 1.0 / v : v;
  }
  return r;
}

}  // namespace detail

// Normalized kernel Khat(z,w) = K0(z,0)^{-1} K0(z,w) K0(0,w)^{-1} with
// K0 = B^{-1/2} K B^{-1/2}; characterized by Khat(z,0) == I as a series.
inline BiSeries normalized_kernel(const ParameterSet& params, int N) {
  if (N < 2 * params.m + 2)
    throw std::invalid_argument("normalized_kernel: requires N >= 2m+2");
  const Matrix B = kernel_at_origin(params);
  const Matrix Bih = detail::diag_sqrt(B, true);
  const BiSeries K0 = left_mul(Bih, right_mul(kernel_closed_form(params, N), Bih));
  return invert(section_at_w_zero(K0)) * K0 * invert(section_at_z_zero(K0));
}

// Exact polynomial factor A(z,w) with
//   Khat(z,w) = (1 - z wbar)^{-2 lambda - m} B^{1/2} A(z,w) B^{1/2}:
//   A = exp(-z S*) B^{-1} D(z wbar) exp(wbar S) B exp(z S*) D(z wbar) B^{-1} exp(-wbar S).
// Every factor is a finite expansion, so coefficients up to the truncation
// rectangle are exact.
inline BiSeries normalized_polynomial(const ParameterSet& params, int N) {
  const int d = params.dim();
  const Matrix S = shift_matrix(params.m);
  const Matrix B = kernel_at_origin(params);
  const Matrix Binv = B.inverse();
  const BiSeries D = diagonal_series(params.m, N);
  const BiSeries ewp = detail::exp_wbar(S, N);
  const BiSeries ewm = detail::exp_wbar(-S, N);
  const BiSeries ezp = detail::exp_z(S.adjoint(), N);
  const BiSeries ezm = detail::exp_z(-S.adjoint(), N);
  const BiSeries Bc = detail::constant_series(B, N);
  const BiSeries Bi = detail::constant_series(Binv, N);
  return ezm * Bi * D * ewp * Bc * ezp * D * Bi * ewm;
}

// Coefficient a(l) of z^{m+l+1} wbar^{m+l} in A(z,w), 0 <= l <= m-1. Its
// support is confined to the superdiagonal positions (k, k+1) with
// k <= m-l-1, and the designated entry (m-l-1, m-l) is real and negative.
inline Matrix superdiagonal_coefficient(const ParameterSet& params, int ell) {
  if (ell < 0 || ell >= params.m)
    throw std::invalid_argument("superdiagonal_coefficient: requires 0 <= ell <= m-1");
  const int N = 2 * params.m + 2;
  return normalized_polynomial(params, N).coeff(params.m + ell + 1, params.m + ell);
}

// Diagonal coefficient D_s of (-1)^s z^s wbar^s in D(z wbar): entries binom(m-l, s).
inline Matrix diagonal_coefficient(int m, int s) {
  Matrix D = Matrix::Zero(m + 1, m + 1);
  for (int l = 0; l <= m; ++l) D(l, l) = binomial(m - l, s);
  return D;
}

// The six-index product S*^i Dt_s S^p B S*^q Dt_t S^j with Dt_s = B^{-1} D_s;
// these are the terms whose signed sum gives the coefficients of A(z,w).
inline Matrix lemma_product(const ParameterSet& params, int i, int s, int p, int q, int t,
                            int j) {
  const Matrix S = shift_matrix(params.m);
  const Matrix B = kernel_at_origin(params);
  const Matrix Binv = B.inverse();
  auto power = [](const Matrix& A, int k) {
    Matrix r = Matrix::Identity(A.rows(), A.cols());
    for (int i2 = 0; i2 < k; ++i2) r = (r * A).eval();
    return r;
  };
  return power(S.adjoint(), i) * (Binv * diagonal_coefficient(params.m, s)) * power(S, p) *
         B * power(S.adjoint(), q) * (Binv * diagonal_coefficient(params.m, t)) *
         power(S, j);
}

// Verifies the support implication for one six-index product: every nonzero
// entry (k, n) must satisfy s <= m-k-i, t <= m-n-j, p <= k+i, q <= n+j and
// k+i-p = n+j-q.  Entries are sums of products of nonnegative factors, so the
// zero pattern is exact in floating point.
inline bool lemma_product_check(const ParameterSet& params, int i, int j, int s, int t,
                                int p, int q) {
  const Matrix P = lemma_product(params, i, s, p, q, t, j);
  const int m = params.m;
  for (int k = 0; k <= m; ++k)
    for (int n = 0; n <= m; ++n) {
      if (P(k, n) == cplx(0.0)) continue;
      if (s > m - k - i || t > m - n - j || p > k + i || q > n + j) return false;
      if (k + i - p != n + j - q) return false;
    }
  return true;
}

// Dimension of {X : XC = CX for all C in family}, via the nullity of the
// stacked Sylvester system (C^T (x) I - I (x) C) vec(X) = 0; singular values
// below 1e-8 * sigma_max count as zero.
inline int commutant_dimension(const std::vector<Matrix>& family,
                               double threshold = 1e-8) {
  if (family.empty()) throw std::invalid_argument("commutant_dimension: empty family");
  const int d = static_cast<int>(family.front().rows());
  const int dd = d * d;
  Matrix stacked(static_cast<int>(family.size()) * dd, dd);
  const Matrix id = Matrix::Identity(d, d);
  int row = 0;
  for (const Matrix& C : family) {
    if (C.rows() != d || C.cols() != d)
      throw std::invalid_argument("commutant_dimension: mixed dimensions");
    // vec is column-major: vec(XC) = (C^T (x) I) vec(X), vec(CX) = (I (x) C) vec(X).
    Matrix block(dd, dd);
    for (int cc = 0; cc < d; ++cc)
      for (int rc = 0; rc < d; ++rc)
        block.block(cc * d, rc * d, d, d) = C(rc, cc) * id;
    for (int cc = 0; cc < d; ++cc)
      block.block(cc * d, cc * d, d, d) -= C;
    stacked.block(row, 0, dd, dd) = block;
    row += dd;
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int nullity = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= threshold * smax) ++nullity;
  nullity += dd - static_cast<int>(sv.size());
  return nullity;
}

struct IrreducibilityReport {
  int commutant_dim = 0;
  bool reducible = false;
};

// Commutant of all Taylor coefficients of the normalized kernel up to order N;
// dimension 1 (scalars only) means there is no nontrivial reducing projection.
inline IrreducibilityReport irreducibility_report(const ParameterSet& params, int N) {
  const BiSeries Khat = normalized_kernel(params, N);
  std::vector<Matrix> family;
  family.reserve((N + 1) * (N + 1));
  for (int s = 0; s <= N; ++s)
    for (int t = 0; t <= N; ++t) family.push_back(Khat.coeff(s, t));
  IrreducibilityReport r;
  r.commutant_dim = commutant_dimension(family);
  r.reducible = r.commutant_dim > 1;
  return r;
}

// (lambda, mu) is a complete unitary invariant of the family at fixed m.
inline bool equivalence_check(const ParameterSet& p, const ParameterSet& q,
                              double tol = 1e-12) {
  if (p.m != q.m)
    throw std::invalid_argument("equivalence_check: parameter sets must share m");
  if (std::abs(p.lambda - q.lambda) > tol) return false;
  for (int j = 0; j <= p.m; ++j)
    if (std::abs(p.mu[j] - q.mu[j]) > tol) return false;
  return true;
}

}  // namespace homogop
