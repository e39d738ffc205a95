#include <catch2/catch_amalgamated.hpp>

#include <homogop/blocks.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace homogop;

namespace {

// Long-double direct-product evaluation of the basis coefficient matrix
// entries; overflow-safe far past the double-precision crossover.
long double basis_entry_ld(const ParameterSet& p, int n, int l, int j) {
  auto poch = [](long double x, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r *= x + i;
    return r;
  };
  auto fact = [](int k) {
    long double r = 1.0L;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  const long double tl = p.two_lambda(j);
  return (long double)binomial(l, j) * (std::sqrt(fact(n - j)) / fact(n - l)) *
         (std::sqrt(poch(tl, n - j)) / poch(tl, l - j));
}

}  // namespace

TEST_CASE("basis coefficient matrix: shape, diagonal, triangularity") {
  const ParameterSet p(2, 1.7, {1.0, 1.3, 0.7});

  const Matrix E0 = basis_matrix(p, 0);
  REQUIRE(E0.rows() == 1);
  REQUIRE(std::abs(E0(0, 0) - cplx(1.0)) < 1e-15);

  for (int n : {1, 2, 5, 9}) {
    const Matrix E = basis_matrix(p, n);
    const int r = std::min(p.m, n);
    REQUIRE(E.rows() == r + 1);
    for (int j = 0; j <= r; ++j) {
      const double tl = p.two_lambda(j);
      const double want = std::sqrt(pochhammer(tl, n - j) / factorial(n - j));
      REQUIRE(std::abs(E(j, j) - cplx(want)) < 1e-12 * std::abs(want));
      for (int l = 0; l < j; ++l) REQUIRE(E(l, j) == cplx(0.0));
    }
  }
}

TEST_CASE("log-space evaluation agrees with extended-precision products") {
  const ParameterSet p(2, 1.7, {1.0, 1.3, 0.7});
  for (int n : {119, 120, 121, 122, 200}) {
    const Matrix E = basis_matrix(p, n);
    for (int l = 0; l <= p.m; ++l)
      for (int j = 0; j <= l; ++j) {
        const long double want = basis_entry_ld(p, n, l, j);
        REQUIRE(std::abs(double(E(l, j).real() / double(want)) - 1.0) < 1e-11);
      }
  }
}

TEST_CASE("operator blocks: shape, triangularity, defining relation") {
  const ParameterSet p(2, 1.9, {1.0, 1.2, 0.9});

  for (int n = 0; n <= 10; ++n) {
    const Matrix M = operator_block(p, n);
    REQUIRE(M.rows() == std::min(p.m, n + 1) + 1);
    REQUIRE(M.cols() == std::min(p.m, n) + 1);
    for (int i = 0; i < M.rows(); ++i)
      for (int j = i + 1; j < M.cols(); ++j) REQUIRE(std::abs(M(i, j)) < 1e-14);
  }

  // Defining relation: multiplication by z maps the weighted basis of one
  // K-type into the next, with the block as coordinate matrix.  Both sides
  // are built from the scaled-derivative embedding, independent of the
  // basis-matrix route.
  auto embedded_basis = [&](int k, int deg) {
    const double tl = p.two_lambda(k);
    return embed_scalar(p, k, Poly::monomial(deg, std::sqrt(pochhammer(tl, deg) / factorial(deg))));
  };
  auto coordinates = [&](const VPoly& v, int N, int size) {
    Vector c = Vector::Zero(size);
    for (int l = 0; l < size; ++l)
      if (N - l >= 0 && N - l <= v.degree()) c(l) = v.coeffs[N - l](l);
    return c;
  };
  for (int n = 0; n <= 10; ++n) {
    const int rows = std::min(p.m, n + 1) + 1;
    const int cols = std::min(p.m, n) + 1;
    Matrix F(rows, rows);
    for (int k = 0; k < rows; ++k)
      F.col(k) = coordinates(embedded_basis(k, n + 1 - k), n + 1, rows);
    Matrix predicted(rows, cols);
    for (int j = 0; j < cols; ++j) {
      const VPoly w = embedded_basis(j, n - j).mul_z();
      const Vector y = F.fullPivLu().solve(p.mu[j] * coordinates(w, n + 1, rows));
      for (int k = 0; k < rows; ++k) predicted(k, j) = y(k) / p.mu[k];
    }
    REQUIRE((predicted - operator_block(p, n)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("single-component blocks have the classical weights") {
  const ParameterSet p(0, 1.3);
  for (int n = 0; n <= 100; ++n) {
    const Matrix M = operator_block(p, n);
    REQUIRE(M.rows() == 1);
    const double want = std::sqrt((n + 1.0) / (2.0 * p.lambda + n));
    REQUIRE(std::abs(M(0, 0).real() - want) < 1e-12);
    REQUIRE(std::abs(M(0, 0).imag()) == 0.0);
  }
}

TEST_CASE("truncated dense matrix matches the blocks and the norm route") {
  const ParameterSet p(1, 1.4, {1.0, 1.25});
  REQUIRE_THROWS_AS(truncated_matrix(p, 0), std::invalid_argument);

  const int n_max = 6;
  const Matrix T = truncated_matrix(p, n_max);
  // Offsets: K-type n occupies min(m,n)+1 columns.
  std::vector<int> offset(n_max + 2, 0);
  for (int n = 0; n <= n_max; ++n) offset[n + 1] = offset[n] + std::min(p.m, n) + 1;
  REQUIRE(T.rows() == offset[n_max + 1]);
  for (int n = 0; n + 1 <= n_max; ++n) {
    const Matrix M = operator_block(p, n);
    REQUIRE((T.block(offset[n + 1], offset[n], M.rows(), M.cols()) - M).norm() == 0.0);
  }
  // Everything outside the sub-diagonal blocks is zero.
  Matrix rest = T;
  for (int n = 0; n + 1 <= n_max; ++n) {
    const Matrix M = operator_block(p, n);
    rest.block(offset[n + 1], offset[n], M.rows(), M.cols()).setZero();
  }
  REQUIRE(rest.cwiseAbs().maxCoeff() == 0.0);

  // Dense SVD of the truncation agrees with the per-block norm estimate.
  Eigen::JacobiSVD<Matrix> svd(T);
  REQUIRE(std::abs(svd.singularValues()(0) - operator_norm(p, n_max)) < 1e-8);
}

TEST_CASE("norm estimates grow with the truncation and cap at the scalar case") {
  const ParameterSet p(2, 1.6, {1.0, 1.3, 0.8});
  double prev = 0.0;
  for (int n_max : {10, 25, 50, 100, 200}) {
    const double v = operator_norm(p, n_max);
    REQUIRE(v >= prev - 1e-12);
    prev = v;
  }

  // m = 0, truncation at n_max: largest weight is the last block.
  const ParameterSet p0(0, 1.0);
  REQUIRE(std::abs(operator_norm(p0, 200) - std::sqrt(200.0 / 201.0)) < 1e-9);
}

TEST_CASE("squared deviations from the unweighted shift accumulate boundedly") {
  const ParameterSet p(1, 1.2, {1.0, 1.35});
  const auto sums = hs_partial_sums(p, 300);
  REQUIRE(sums.size() == 301);
  for (size_t k = 1; k < sums.size(); ++k) REQUIRE(sums[k] >= sums[k - 1]);

  // Scalar case closed form: each increment is (sqrt((n+1)/(2l+n)) - 1)^2.
  const ParameterSet p0(0, 1.0);
  const auto s0 = hs_partial_sums(p0, 150);
  double acc = 0.0;
  for (int n = 0; n <= 150; ++n) {
    const double d = std::sqrt((n + 1.0) / (2.0 + n)) - 1.0;
    acc += d * d;
    REQUIRE(std::abs(s0[n] - acc) < 1e-12);
  }
}

TEST_CASE("sampled positivity certificate") {
  const ParameterSet p(2, 1.8, {1.0, 1.1, 0.95});
  // Single point at the origin: the Gram matrix is c * B, positive.
  const double at_origin = boundedness_certificate(p, 1.0, {cplx(0.0)});
  Eigen::SelfAdjointEigenSolver<Matrix> es(kernel_at_origin(p));
  REQUIRE(std::abs(at_origin - es.eigenvalues().minCoeff()) < 1e-12);

  // Negative control: c below |w|^2 forces a negative diagonal block.
  const ParameterSet p0(0, 1.0);
  REQUIRE(boundedness_certificate(p0, 0.01, {cplx(0.9, 0.0)}) < 0.0);

  REQUIRE_THROWS_AS(boundedness_certificate(p, 1.0, {}), std::invalid_argument);
}

TEST_CASE("kernel-preserving weight shift") {
  const ParameterSet p(2, 1.9, {1.0, 1.2, 0.9});

  // Zero shift returns the same parameters.
  const auto same = reduce_lambda(p, 0.0);
  REQUIRE(same.has_value());
  REQUIRE(same->lambda == p.lambda);
  for (int j = 0; j <= p.m; ++j) REQUIRE(std::abs(same->mu[j] - p.mu[j]) < 1e-12);

  // A genuine shift keeps mu_0 = 1 and reproduces the kernel up to the
  // scalar geometric factor.
  const double eps = 0.2;
  const auto shifted = reduce_lambda(p, eps);
  REQUIRE(shifted.has_value());
  REQUIRE(shifted->mu[0] == 1.0);
  REQUIRE(shifted->lambda == p.lambda - eps);
  const BiSeries lhs = kernel_closed_form(p, 10);
  const BiSeries rhs =
      BiSeries::geometric(2.0 * eps, p.dim(), 10) * kernel_closed_form(*shifted, 10);
  REQUIRE(rel_distance(lhs, rhs) < 1e-9);

  // Shift to or past the positivity edge fails cleanly.
  REQUIRE_FALSE(reduce_lambda(p, p.lambda - 0.5 * p.m).has_value());

  // Small weights near the positivity edge make the solve infeasible: the
  // shifted squared weight goes negative, reported as absence of a value.
  const ParameterSet tight(1, 0.8, {1.0, 0.6});
  const auto infeasible = reduce_lambda(tight, (tight.lambda - 0.5 * tight.m) / 4.0);
  REQUIRE_FALSE(infeasible.has_value());

  // The conservative default shift succeeds on comfortable weights.
  REQUIRE(reduce_lambda(p).has_value());
}
