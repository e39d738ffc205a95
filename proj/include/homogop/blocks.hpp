#pragma once

// Block-matrix form of the multiplication operator.  Multiplication by z maps
// the K-type subspace H(n) into H(n+1); in the normalized orthonormal basis
// the operator is block sub-diagonal with blocks
//   M(n) = D(mu)^{-1} E(n+1)^{-1} E(n) D(mu),
// where E(n) collects the monomial coefficients of the basis of H(n).
// This header provides the blocks, the truncated dense matrix, the operator
// norm, the Hilbert-Schmidt deviation from the unweighted block shift, the
// sampled Gram certificate for boundedness, and the kernel-preserving
// lambda-shift reparameterization.

#include "kernels.hpp"
#include "params.hpp"

#include <cassert>
#include <cmath>
#include <optional>
#include <vector>

namespace homogop {

namespace detail {

inline double log_pochhammer(double x, int n) { return std::lgamma(x + n) - std::lgamma(x); }

}  // namespace detail

// E(n): lower-triangular matrix with (basis vector of H(n) in slot j)_l =
// E(n)_{l,j} z^{n-l}; rows/columns 0..min(m,n).  Entries are evaluated by
// direct Pochhammer products for moderate n and in log space for large n
// (the raw factorials overflow doubles near n ~ 150).
inline Matrix basis_matrix(const ParameterSet& params, int n) {
  if (n < 0) throw std::invalid_argument("basis_matrix: negative K-type");
  const int r = std::min(params.m, n);
  Matrix E = Matrix::Zero(r + 1, r + 1);
  const bool direct = (n <= 120);
  for (int l = 0; l <= r; ++l)
    for (int j = 0; j <= l; ++j) {
      const double tl = params.two_lambda(j);
      double v;
      if (direct) {
        v = binomial(l, j) * (std::sqrt(factorial(n - j)) / factorial(n - l)) *
            (std::sqrt(pochhammer(tl, n - j)) / pochhammer(tl, l - j));
      } else {
        const double ln = std::log(binomial(l, j)) + 0.5 * std::lgamma(n - j + 1.0) -
                          std::lgamma(n - l + 1.0) + 0.5 * detail::log_pochhammer(tl, n - j) -
                          detail::log_pochhammer(tl, l - j);
        v = std::exp(ln);
      }
      E(l, j) = v;
    }
  return E;
}

// M(n): block of the operator from H(n) coordinates to H(n+1) coordinates,
// min(m,n)+1 columns and min(m,n+1)+1 rows (square m+1 for n >= m).
inline Matrix operator_block(const ParameterSet& params, int n) {
  const int cols = std::min(params.m, n) + 1;
  const int rows = std::min(params.m, n + 1) + 1;
  const Matrix En1 = basis_matrix(params, n + 1);
  assert(En1.diagonal().cwiseAbs().minCoeff() > 0.0 && "basis matrix must be invertible");
  Matrix pad = Matrix::Zero(rows, cols);
  pad.topLeftCorner(cols, cols) = basis_matrix(params, n);
  const Matrix X = En1.triangularView<Eigen::Lower>().solve(pad);
  Matrix M = X;
  for (int k = 0; k < rows; ++k) M.row(k) /= params.mu[k];
  for (int j = 0; j < cols; ++j) M.col(j) *= params.mu[j];
  return M;
}

// Identity-shaped inclusion H(n) -> H(n+1) (the block of the unweighted shift).
inline Matrix inclusion_block(const ParameterSet& params, int n) {
  const int cols = std::min(params.m, n) + 1;
  const int rows = std::min(params.m, n + 1) + 1;
  Matrix I = Matrix::Zero(rows, cols);
  for (int k = 0; k < cols; ++k) I(k, k) = 1.0;
  return I;
}

// Dense matrix of the operator on the K-types 0..n_max (block sub-diagonal).
inline Matrix truncated_matrix(const ParameterSet& params, int n_max) {
  if (n_max < params.m) throw std::invalid_argument("truncated_matrix: requires n_max >= m");
  std::vector<int> offset(n_max + 2, 0);
  for (int n = 0; n <= n_max; ++n) offset[n + 1] = offset[n] + std::min(params.m, n) + 1;
  const int dim = offset[n_max + 1];
  Matrix T = Matrix::Zero(dim, dim);
  for (int n = 0; n + 1 <= n_max; ++n) {
    const Matrix M = operator_block(params, n);
    T.block(offset[n + 1], offset[n], M.rows(), M.cols()) = M;
  }
  return T;
}

// Operator norm of the truncation, by power iteration on M*M.  M*M is block
// diagonal (one Gram block per K-type), so the iteration runs per block and
// the norm is the max over blocks; the result does not depend on n_max except
// through which blocks are included.
inline double operator_norm(const ParameterSet& params, int n_max = 200) {
  if (n_max < params.m) throw std::invalid_argument("operator_norm: requires n_max >= m");
  double best = 0.0;
  for (int n = 0; n + 1 <= n_max; ++n) {
    const Matrix M = operator_block(params, n);
    const Matrix G = M.adjoint() * M;
    Vector x = Vector::Ones(G.rows()).normalized();
    double rho = 0.0;
    for (int it = 0; it < 10000; ++it) {
      Vector y = G * x;
      const double next = y.dot(x).real();
      y.normalize();
      x.swap(y);
      if (std::abs(next - rho) <= 1e-10 * std::max(1.0, std::abs(next))) {
        rho = next;
        break;
      }
      rho = next;
    }
    best = std::max(best, rho);
  }
  return std::sqrt(best);
}

// Partial sums sum_{n<=k} ||M(n) - I_block||_F^2 for k = 0..n_max; bounded
// growth certifies that the deviation from the unweighted shift is
// Hilbert-Schmidt.
inline std::vector<double> hs_partial_sums(const ParameterSet& params, int n_max) {
  std::vector<double> sums(n_max + 1, 0.0);
  double acc = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const Matrix d = operator_block(params, n) - inclusion_block(params, n);
    acc += d.squaredNorm();
    sums[n] = acc;
  }
  return sums;
}

// Minimum eigenvalue of the sampled Gram matrix [(c - w_i conj(w_j)) K(w_i, w_j)].
// Nonnegative values certify the sampled positivity condition behind
// boundedness with bound sqrt(c).
inline double boundedness_certificate(const ParameterSet& params, double c,
                                      const std::vector<cplx>& points) {
  if (points.empty()) throw std::invalid_argument("boundedness_certificate: no points");
  const int d = params.dim();
  const int P = static_cast<int>(points.size());
  Matrix G(d * P, d * P);
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j)
      G.block(i * d, j * d, d, d) =
          (c - points[i] * std::conj(points[j])) * kernel_eval(params, points[i], points[j]);
  const Matrix H = 0.5 * (G + G.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  return es.eigenvalues().minCoeff();
}

// Solves for parameters (lambda - eps, mu') reproducing the same kernel up to
// the scalar factor (1 - z wbar)^{-2 eps}.  The linear system for mu'^2 is
// unit lower triangular; a non-positive solution component means the shift is
// too large, reported as failure rather than an exception.
inline std::optional<ParameterSet> reduce_lambda(const ParameterSet& params, double eps) {
  const double lam2 = params.lambda - eps;
  if (!(lam2 > 0.5 * params.m)) return std::nullopt;

  const int d = params.dim();
  auto weight_matrix = [&](double lam) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
    for (int l = 0; l < d; ++l)
      for (int j = 0; j <= l; ++j) {
        const double tl = 2.0 * lam - params.m + 2.0 * j;
        const double bl = binomial(l, j);
        L(l, j) = bl * bl * factorial(l - j) / pochhammer(tl, l - j);
      }
    return L;
  };

  Eigen::VectorXd musq(d);
  for (int j = 0; j < d; ++j) musq(j) = params.mu[j] * params.mu[j];
  const Eigen::VectorXd rhs = weight_matrix(params.lambda) * musq;
  const Eigen::VectorXd y =
      weight_matrix(lam2).triangularView<Eigen::Lower>().solve(rhs);

  std::vector<double> mu2(d);
  for (int j = 0; j < d; ++j) {
    if (!(y(j) > 0.0)) return std::nullopt;
    mu2[j] = std::sqrt(y(j));
  }
  mu2[0] = 1.0;  // row 0 of the system reads mu'_0^2 = 1 exactly
  return ParameterSet(params.m, lam2, std::move(mu2));
}

// Conservative default shift; solvability is only guaranteed for small eps.
inline std::optional<ParameterSet> reduce_lambda(const ParameterSet& params) {
  return reduce_lambda(params, std::min(0.1, (params.lambda - 0.5 * params.m) / 4.0));
}

}  // namespace homogop
