#pragma once

// Deterministic samplers for the verification suites.  All draws come from a
// caller-owned mt19937_64, so a fixed seed reproduces every sample exactly.

#include "mobius.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace homogop {

inline double sample_uniform(std::mt19937_64& rng, double lo, double hi) {
  // 53-bit mantissa draw; avoids distribution-object implementation drift.
  const double u = (rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

// Uniform w.r.t. area on the disc of the given radius.
inline cplx sample_disc(std::mt19937_64& rng, double radius) {
  const double r = radius * std::sqrt(sample_uniform(rng, 0.0, 1.0));
  const double th = sample_uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return cplx(r * std::cos(th), r * std::sin(th));
}

// Group element near the identity: direction of a drawn around 1, b drawn in
// the disc of radius b_max, then |a| fixed by the determinant constraint.
// Redraws (deterministically) until the element lies in the principal-branch
// neighborhood |a-1| < 1/2, |b| < 1/2.
inline GroupElement sample_group(std::mt19937_64& rng, double b_max = 0.4) {
  for (;;) {
    const cplx dir = 1.0 + sample_disc(rng, b_max);
    const cplx b = sample_disc(rng, b_max);
    const cplx a = dir * (std::sqrt(1.0 + std::norm(b)) / std::abs(dir));
    const GroupElement g(a, b);
    if (g.branch_valid()) return g;
  }
}

// Random weight vector with mu_0 = 1; the range keeps the lambda-shift
// factorization solvable at the acceptance shift eps = (lambda - m/2)/4.
inline std::vector<double> sample_mu(std::mt19937_64& rng, int m) {
  std::vector<double> mu(m + 1, 1.0);
  for (int j = 1; j <= m; ++j) mu[j] = sample_uniform(rng, 0.8, 1.5);
  return mu;
}

}  // namespace homogop
