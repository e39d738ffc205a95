#pragma once

// Parameters (m, lambda, mu) of the vector-valued space and its operator.
// The kernel is positive definite exactly when lambda > m/2, so the
// constructor enforces it; mu is normalized by mu[0] = 1.

#include "series.hpp"

#include <vector>

namespace homogop {

struct ParameterSet {
  int m = 0;
  double lambda = 1.0;
  std::vector<double> mu{1.0};

  ParameterSet() = default;

  ParameterSet(int m_, double lambda_, std::vector<double> mu_)
      : m(m_), lambda(lambda_), mu(std::move(mu_)) {
    if (m < 0) throw std::invalid_argument("ParameterSet: m must be nonnegative");
    if (!(lambda > 0.5 * m))
      throw std::invalid_argument("ParameterSet: requires lambda > m/2");
    if (static_cast<int>(mu.size()) != m + 1)
      throw std::invalid_argument("ParameterSet: mu must have m+1 entries");
    if (std::abs(mu[0] - 1.0) > 1e-12)
      throw std::invalid_argument("ParameterSet: normalization requires mu[0] = 1");
    for (double v : mu)
      if (!(v > 0.0)) throw std::invalid_argument("ParameterSet: mu entries must be positive");
  }

  // Convenience for the scalar case mu = (1).
  ParameterSet(int m_, double lambda_) : ParameterSet(m_, lambda_, std::vector<double>(m_ + 1, 1.0)) {}

  int dim() const { return m + 1; }

  // 2*lambda_j = 2*lambda - m + 2j, positive for 0 <= j <= m.
  double two_lambda(int j) const { return 2.0 * lambda - m + 2.0 * j; }

  // diag(mu_0..mu_k) on the leading k+1 components (defaults to all).
  Matrix mu_diag(int size = -1) const {
    if (size < 0) size = m + 1;
    Matrix d = Matrix::Zero(size, size);
    for (int j = 0; j < size; ++j) d(j, j) = mu[j];
    return d;
  }
};

}  // namespace homogop
