#pragma once

// Named verification suites over a single parameter set.  Each check returns
// a measured value and passes iff value <= tolerance; tolerances can be
// overridden globally.  All sampling is seeded, so a fixed seed reproduces
// every measured value exactly.

#include "analysis.hpp"
#include "blocks.hpp"
#include "kernels.hpp"
#include "mobius.hpp"
#include "sampling.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace homogop {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
};

struct SuiteOptions {
  int degree = 12;   // series truncation order
  int n_max = 200;   // operator truncation for norm estimates
  uint64_t seed = 0;
  std::optional<double> tol_override;  // replaces every default tolerance
};

namespace detail {

inline std::mt19937_64 make_rng(uint64_t seed, uint64_t stream) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + stream);
}

template <typename Body>
inline CheckResult run_check(const SuiteOptions& o, const std::string& name,
                             double default_tol, Body&& body) {
  CheckResult r;
  r.name = name;
  r.tolerance = o.tol_override.value_or(default_tol);
  const auto t0 = std::chrono::steady_clock::now();
  r.value = body();
  const auto t1 = std::chrono::steady_clock::now();
  r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  r.passed = r.value <= r.tolerance;
  return r;
}

}  // namespace detail

// --- kernel coherence -------------------------------------------------------

inline std::vector<CheckResult> suite_kernel(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;
  const BiSeries closed = kernel_closed_form(p, o.degree);

  out.push_back(detail::run_check(o, "kernel/cross_check", 1e-9, [&] {
    return rel_distance(kernel_from_onb(p, o.degree), closed);
  }));

  out.push_back(detail::run_check(o, "kernel/hermitian_symmetry", 1e-12, [&] {
    return rel_distance(closed, closed.adjoint());
  }));

  out.push_back(detail::run_check(o, "kernel/origin_match", 1e-12, [&] {
    const Matrix B = kernel_at_origin(p);
    const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
    return (closed.coeff(0, 0) - B).cwiseAbs().maxCoeff() / scale;
  }));

  out.push_back(detail::run_check(o, "kernel/gram_psd", 1e-10, [&] {
    auto rng = detail::make_rng(o.seed, 11);
    std::vector<cplx> pts(6);
    for (auto& w : pts) w = sample_disc(rng, 0.7);
    const int d = p.dim();
    Matrix G(d * 6, d * 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        G.block(i * d, j * d, d, d) = kernel_eval(p, pts[i], pts[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (G + G.adjoint()));
    return std::max(0.0, -es.eigenvalues().minCoeff());
  }));

  return out;
}

// --- multiplier cocycle ------------------------------------------------------

inline std::vector<CheckResult> suite_cocycle(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(o, "cocycle/random_triples", 1e-9, [&] {
    auto rng = detail::make_rng(o.seed, 21);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const GroupElement g = sample_group(rng, 0.1);
      const GroupElement h = sample_group(rng, 0.1);
      const cplx z = sample_disc(rng, 0.8);
      worst = std::max(worst, cocycle_defect(g, h, z, p));
    }
    return worst;
  }));
  return out;
}

// --- kernel quasi-invariance -------------------------------------------------

inline std::vector<CheckResult> suite_quasi(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;

  out.push_back(detail::run_check(o, "quasi/random_samples", 1e-8, [&] {
    auto rng = detail::make_rng(o.seed, 31);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const GroupElement g = sample_group(rng, 0.1);
      const cplx z = sample_disc(rng, 0.6);
      const cplx w = sample_disc(rng, 0.6);
      worst = std::max(worst, quasi_invariance_defect(p, g, z, w));
    }
    return worst;
  }));

  // Specialization to the automorphism sending w to 0, evaluated at z = w:
  // J K(0,0) J^* must reproduce K(w,w).
  out.push_back(detail::run_check(o, "quasi/point_translation", 1e-9, [&] {
    auto rng = detail::make_rng(o.seed, 32);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const cplx w = sample_disc(rng, 0.4);
      const GroupElement g = GroupElement::translation(w).inverse();
      worst = std::max(worst, quasi_invariance_defect(p, g, w, w));
    }
    return worst;
  }));

  return out;
}

// --- higher-derivative product rule -------------------------------------------

inline std::vector<CheckResult> suite_leibniz(const ParameterSet& p, const SuiteOptions& o) {
  (void)p;  // the identity is parameter-free; kept in the suite interface for symmetry
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(o, "leibniz/max_defect", 1e-8, [&] {
    auto rng = detail::make_rng(o.seed, 41);
    const Poly f({cplx(0.0), cplx(2.0), cplx(0.0), cplx(1.0)});  // z^3 + 2z
    const double ells[] = {0.5, 1.0, 1.5, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const GroupElement g = sample_group(rng, 0.1);
      const cplx z = sample_disc(rng, 0.6);
      for (double ell : ells)
        for (int k = 0; k <= 6; ++k)
          worst = std::max(worst, leibniz_defect(g, ell, k, f, z));
    }
    return worst;
  }));
  return out;
}

// --- block asymptotics ---------------------------------------------------------

inline std::vector<CheckResult> suite_blocks(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;

  // Definitional oracle: multiply basis vectors (built by the derivative
  // route) by z as polynomials, re-expand in the next K-type, compare blocks.
  out.push_back(detail::run_check(o, "blocks/defining_relation", 1e-10, [&] {
    double worst = 0.0;
    const int n_hi = std::max(8, p.m + 2);
    for (int n = 0; n <= n_hi; ++n) {
      const int rows = std::min(p.m, n + 1) + 1;
      const int cols = std::min(p.m, n) + 1;
      auto embedded_basis = [&](int k, int deg) {
        const double tl = p.two_lambda(k);
        const double scale = std::sqrt(pochhammer(tl, deg) / factorial(deg));
        return embed_scalar(p, k, Poly::monomial(deg, scale));
      };
      // Coordinates of a K-type N function: entry l = coefficient of z^{N-l}
      // in component l.
      auto coordinates = [&](const VPoly& v, int N, int size) {
        Vector c = Vector::Zero(size);
        for (int l = 0; l < size; ++l)
          if (N - l >= 0 && N - l <= v.degree()) c(l) = v.coeffs[N - l](l);
        return c;
      };
      Matrix F(rows, rows);
      for (int k = 0; k < rows; ++k)
        F.col(k) = coordinates(embedded_basis(k, n + 1 - k), n + 1, rows);
      Matrix predicted(rows, cols);
      for (int j = 0; j < cols; ++j) {
        const VPoly w = embedded_basis(j, n - j).mul_z();
        const Vector y = F.fullPivLu().solve(p.mu[j] * coordinates(w, n + 1, rows));
        for (int k = 0; k < rows; ++k) predicted(k, j) = y(k) / p.mu[k];
      }
      worst = std::max(worst,
                       (predicted - operator_block(p, n)).cwiseAbs().maxCoeff());
    }
    return worst;
  }));

  if (p.m == 0) {
    out.push_back(detail::run_check(o, "blocks/m0_oracle", 1e-12, [&] {
      double worst = 0.0;
      for (int n = 0; n <= 100; ++n) {
        const double want = std::sqrt((n + 1.0) / (2.0 * p.lambda + n));
        worst = std::max(worst, std::abs(operator_block(p, n)(0, 0).real() - want));
      }
      return worst;
    }));
  }

  std::vector<double> dev(501, 0.0);  // ||M(n) - I_block||_F for n = 50..500
  for (int n = 50; n <= 500; ++n)
    dev[n] = (operator_block(p, n) - inclusion_block(p, n)).norm();

  out.push_back(detail::run_check(o, "blocks/deviation_bound", 1e3, [&] {
    double worst = 0.0;
    for (int n = 50; n <= 500; ++n) worst = std::max(worst, n * dev[n]);
    return worst;
  }));

  out.push_back(detail::run_check(o, "blocks/deviation_decreasing", 0.0, [&] {
    double worst = -1.0;
    for (int n = 100; n < 500; ++n) worst = std::max(worst, dev[n + 1] - dev[n]);
    return worst;
  }));

  out.push_back(detail::run_check(o, "blocks/hs_tail_increment", 1e-3, [&] {
    double worst = 0.0;
    for (int n = 401; n <= 500; ++n) worst = std::max(worst, dev[n] * dev[n]);
    return worst;
  }));

  out.push_back(detail::run_check(o, "blocks/basis_ratio", 0.05, [&] {
    double worst = 0.0;
    for (int n : {200, 400}) {
      const Matrix E = basis_matrix(p, n);
      for (int l = 0; l <= p.m; ++l)
        for (int j = 0; j <= l; ++j) {
          const double limit =
              binomial(l, j) * std::exp(0.5 * std::lgamma(p.two_lambda(j)) -
                                        std::lgamma(2.0 * p.lambda - p.m + l + j));
          const double predicted =
              std::pow(double(n), l + p.lambda - 0.5 * p.m - 0.5) * limit;
          worst = std::max(worst, std::abs(E(l, j).real() / predicted - 1.0));
        }
    }
    return worst;
  }));

  return out;
}

// --- boundedness ---------------------------------------------------------------

inline std::vector<CheckResult> suite_bounded(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;

  out.push_back(detail::run_check(o, "bounded/certificate", 1e-10, [&] {
    const double norm = operator_norm(p, o.n_max);
    const double c = 1.1 * norm * norm;
    auto rng = detail::make_rng(o.seed, 61);
    std::vector<cplx> pts(8);
    for (auto& w : pts) w = sample_disc(rng, 0.7);
    return std::max(0.0, -boundedness_certificate(p, c, pts));
  }));

  out.push_back(detail::run_check(o, "bounded/norm_monotone", 1e-9, [&] {
    double prev = 0.0, worst = 0.0;
    for (int n_max : {25, 50, 100, 200}) {
      const double v = operator_norm(p, std::max(n_max, p.m));
      worst = std::max(worst, prev - v);
      prev = v;
    }
    return worst;
  }));

  out.push_back(detail::run_check(o, "bounded/lambda_shift", 1e-9, [&] {
    const double eps = (p.lambda - 0.5 * p.m) / 4.0;
    const auto shifted = reduce_lambda(p, eps);
    if (!shifted) return 1.0;  // solve failed; report as a unit defect
    const BiSeries lhs = kernel_closed_form(p, o.degree);
    const BiSeries rhs = BiSeries::geometric(2.0 * eps, p.dim(), o.degree) *
                         kernel_closed_form(*shifted, o.degree);
    return rel_distance(lhs, rhs);
  }));

  return out;
}

// --- irreducibility --------------------------------------------------------------

inline std::vector<CheckResult> suite_irreducible(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(o, "irreducible/commutant_dim", 0.0, [&] {
    const IrreducibilityReport r = irreducibility_report(p, 2 * p.m + 4);
    return std::abs(double(r.commutant_dim) - 1.0);
  }));
  return out;
}

// --- coefficient pattern -----------------------------------------------------------

inline std::vector<CheckResult> suite_pattern(const ParameterSet& p, const SuiteOptions& o) {
  std::vector<CheckResult> out;
  if (p.m == 0) {
    out.push_back(detail::run_check(o, "pattern/vacuous", 0.0, [] { return 0.0; }));
    return out;
  }

  std::vector<Matrix> a(p.m);
  for (int ell = 0; ell < p.m; ++ell) a[ell] = superdiagonal_coefficient(p, ell);

  out.push_back(detail::run_check(o, "pattern/superdiagonal_support", 1e-10, [&] {
    double worst = 0.0;
    for (int ell = 0; ell < p.m; ++ell) {
      const double scale = std::max(1.0, a[ell].cwiseAbs().maxCoeff());
      for (int k = 0; k <= p.m; ++k)
        for (int n = 0; n <= p.m; ++n) {
          const bool allowed = (n - k == 1) && (k <= p.m - ell - 1);
          if (!allowed) worst = std::max(worst, std::abs(a[ell](k, n)) / scale);
        }
    }
    return worst;
  }));

  out.push_back(detail::run_check(o, "pattern/designated_entry_real", 1e-10, [&] {
    double worst = 0.0;
    for (int ell = 0; ell < p.m; ++ell)
      worst = std::max(worst, std::abs(a[ell](p.m - ell - 1, p.m - ell).imag()));
    return worst;
  }));

  out.push_back(detail::run_check(o, "pattern/designated_entry_negative", -1e-6, [&] {
    double worst = -1e300;
    for (int ell = 0; ell < p.m; ++ell)
      worst = std::max(worst, a[ell](p.m - ell - 1, p.m - ell).real());
    return worst;
  }));

  // Independent assembly of a(l): signed sum of six-index products over the
  // exponent constraints, instead of the series product.
  out.push_back(detail::run_check(o, "pattern/assembly_cross_check", 1e-12, [&] {
    double worst = 0.0;
    for (int ell = 0; ell < p.m; ++ell) {
      Matrix acc = Matrix::Zero(p.dim(), p.dim());
      for (int i = 0; i <= p.m; ++i)
        for (int s = 0; s <= p.m; ++s)
          for (int q = 0; q <= p.m; ++q)
            for (int t = 0; t <= p.m; ++t) {
              if (i + s + q + t != p.m + ell + 1) continue;
              for (int pp = 0; pp <= p.m; ++pp)
                for (int j = 0; j <= p.m; ++j) {
                  if (s + pp + t + j != p.m + ell) continue;
                  const double sign = ((i + j + s + t) % 2 == 0) ? 1.0 : -1.0;
                  acc += sign /
                         (factorial(i) * factorial(j) * factorial(pp) * factorial(q)) *
                         lemma_product(p, i, s, pp, q, t, j);
                }
            }
      const double scale = std::max(1.0, a[ell].cwiseAbs().maxCoeff());
      worst = std::max(worst, (acc - a[ell]).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
  }));

  out.push_back(detail::run_check(o, "pattern/product_support", 0.0, [&] {
    int violations = 0;
    for (int i = 0; i <= p.m; ++i)
      for (int j = 0; j <= p.m; ++j)
        for (int s = 0; s <= p.m; ++s)
          for (int t = 0; t <= p.m; ++t)
            for (int pp = 0; pp <= p.m; ++pp)
              for (int q = 0; q <= p.m; ++q)
                if (!lemma_product_check(p, i, j, s, t, pp, q)) ++violations;
    return double(violations);
  }));

  return out;
}

// --- dispatch ------------------------------------------------------------------

inline std::vector<CheckResult> run_suite(const ParameterSet& p, const SuiteOptions& o,
                                          const std::string& selector) {
  auto append = [](std::vector<CheckResult>& dst, std::vector<CheckResult> src) {
    for (auto& r : src) dst.push_back(std::move(r));
  };
  std::vector<CheckResult> out;
  if (selector == "all") {
    append(out, suite_kernel(p, o));
    append(out, suite_cocycle(p, o));
    append(out, suite_quasi(p, o));
    append(out, suite_leibniz(p, o));
    append(out, suite_blocks(p, o));
    append(out, suite_bounded(p, o));
    append(out, suite_irreducible(p, o));
    append(out, suite_pattern(p, o));
  } else if (selector == "cocycle") {
    append(out, suite_cocycle(p, o));
  } else if (selector == "quasi") {
    append(out, suite_quasi(p, o));
  } else if (selector == "leibniz") {
    append(out, suite_leibniz(p, o));
  } else if (selector == "blocks") {
    append(out, suite_blocks(p, o));
  } else if (selector == "bounded") {
    append(out, suite_bounded(p, o));
  } else if (selector == "irreducible") {
    append(out, suite_irreducible(p, o));
  } else if (selector == "pattern") {
    append(out, suite_pattern(p, o));
  } else {
    throw std::invalid_argument("unknown suite selector: " + selector);
  }
  return out;
}

}  // namespace homogop
