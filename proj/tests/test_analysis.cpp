#include <catch2/catch_amalgamated.hpp>

#include <homogop/analysis.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace homogop;

namespace {

Matrix diag_sqrt_of(const Matrix& D) {
  Matrix r = Matrix::Zero(D.rows(), D.cols());
  for (int i = 0; i < D.rows(); ++i) r(i, i) = std::sqrt(D(i, i).real());
  return r;
}

}  // namespace

TEST_CASE("normalized kernel is the identity along both axes") {
  const ParameterSet p(2, 1.8, {1.0, 1.2, 0.9});
  const int N = 8;
  const BiSeries Khat = normalized_kernel(p, N);
  const Matrix id = Matrix::Identity(p.dim(), p.dim());
  for (int s = 0; s <= N; ++s) {
    const Matrix want = s == 0 ? id : Matrix::Zero(p.dim(), p.dim());
    REQUIRE((Khat.coeff(s, 0) - want).cwiseAbs().maxCoeff() < 1e-11);
    REQUIRE((Khat.coeff(0, s) - want).cwiseAbs().maxCoeff() < 1e-11);
  }
  REQUIRE_THROWS_AS(normalized_kernel(p, 2 * p.m + 1), std::invalid_argument);
}

TEST_CASE("single-component normalization is the plain geometric kernel") {
  const double lambda = 1.3;
  const ParameterSet p(0, lambda);
  REQUIRE(rel_distance(normalized_kernel(p, 8),
                       BiSeries::geometric(2.0 * lambda, 1, 8)) < 1e-12);
}

TEST_CASE("normalized kernel factors through the exact polynomial part") {
  const ParameterSet p(2, 1.7, {1.0, 1.3, 0.7});
  const int N = 8;
  const Matrix Bh = diag_sqrt_of(kernel_at_origin(p));
  const BiSeries via_poly =
      BiSeries::geometric(2.0 * p.lambda + p.m, p.dim(), N) *
      left_mul(Bh, right_mul(normalized_polynomial(p, N), Bh));
  REQUIRE(rel_distance(normalized_kernel(p, N), via_poly) < 1e-10);
}

TEST_CASE("superdiagonal coefficients: support, reality, strict negativity") {
  for (const ParameterSet& p :
       {ParameterSet(1, 1.0, {1.0, 1.0}), ParameterSet(2, 1.6, {1.0, 1.25, 0.85}),
        ParameterSet(3, 2.3, {1.0, 0.9, 1.3, 1.05}),
        ParameterSet(4, 2.8, {1.0, 1.1, 0.9, 1.2, 0.95})}) {
    for (int ell = 0; ell < p.m; ++ell) {
      const Matrix a = superdiagonal_coefficient(p, ell);
      const double scale = a.cwiseAbs().maxCoeff();
      REQUIRE(scale > 0.0);
      for (int k = 0; k <= p.m; ++k)
        for (int n = 0; n <= p.m; ++n) {
          const bool allowed = (n - k == 1) && (k <= p.m - ell - 1);
          if (!allowed) REQUIRE(std::abs(a(k, n)) / scale < 1e-10);
        }
      const cplx designated = a(p.m - ell - 1, p.m - ell);
      REQUIRE(std::abs(designated.imag()) < 1e-10);
      REQUIRE(designated.real() < -1e-6);
    }
  }

  // m = 1: the only admissible position is (0,1).
  const Matrix a0 = superdiagonal_coefficient(ParameterSet(1, 1.0, {1.0, 1.0}), 0);
  REQUIRE(std::abs(a0(0, 0)) < 1e-12);
  REQUIRE(std::abs(a0(1, 0)) < 1e-12);
  REQUIRE(std::abs(a0(1, 1)) < 1e-12);
  REQUIRE(a0(0, 1).real() < -1e-6);

  REQUIRE_THROWS_AS(superdiagonal_coefficient(ParameterSet(1, 1.0, {1.0, 1.0}), 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(superdiagonal_coefficient(ParameterSet(1, 1.0, {1.0, 1.0}), -1),
                    std::invalid_argument);
}

TEST_CASE("six-index products: special values and support sweep") {
  const ParameterSet p(2, 1.9, {1.0, 1.15, 0.8});
  const Matrix B = kernel_at_origin(p);

  // All indices zero: the diagonal factors collapse to B^{-1} B B^{-1}.
  const Matrix all_zero = lemma_product(p, 0, 0, 0, 0, 0, 0);
  REQUIRE((all_zero - Matrix(B.inverse())).cwiseAbs().maxCoeff() < 1e-12);
  for (int k = 0; k <= p.m; ++k)
    for (int n = 0; n <= p.m; ++n)
      if (k != n) REQUIRE(std::abs(all_zero(k, n)) < 1e-14);

  // s = m keeps only the top-left cell of the first diagonal factor, which a
  // following adjoint-shift power annihilates.
  for (int i = 1; i <= p.m; ++i)
    REQUIRE(lemma_product(p, i, p.m, 0, 0, 0, 0).cwiseAbs().maxCoeff() == 0.0);

  for (int i = 0; i <= p.m; ++i)
    for (int j = 0; j <= p.m; ++j)
      for (int s = 0; s <= p.m; ++s)
        for (int t = 0; t <= p.m; ++t)
          for (int q = 0; q <= p.m; ++q)
            for (int r = 0; r <= p.m; ++r)
              REQUIRE(lemma_product_check(p, i, j, s, t, q, r));
}

TEST_CASE("superdiagonal coefficients equal the signed six-index sums") {
  const ParameterSet p(2, 1.7, {1.0, 1.3, 0.7});
  for (int ell = 0; ell < p.m; ++ell) {
    const Matrix direct = superdiagonal_coefficient(p, ell);
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
    REQUIRE((acc - direct).cwiseAbs().maxCoeff() <
            1e-12 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("commutant dimension on known families") {
  const int d = 3;
  const Matrix id = Matrix::Identity(d, d);
  REQUIRE(commutant_dimension({id}) == d * d);

  // A single full nilpotent shift: commutant = polynomials in it.
  REQUIRE(commutant_dimension({shift_matrix(d - 1)}) == d);

  // A diagonal with distinct entries: commutant = diagonals.
  Matrix D = Matrix::Zero(d, d);
  D(0, 0) = 1.0;
  D(1, 1) = 2.0;
  D(2, 2) = 5.0;
  REQUIRE(commutant_dimension({D}) == d);

  // Shift plus diagonal together force scalars.
  REQUIRE(commutant_dimension({shift_matrix(d - 1), D}) == 1);

  // Unitary conjugation preserves the dimension.
  Matrix H = Matrix::Zero(d, d);
  H(0, 1) = cplx(0.3, 0.4);
  H(1, 0) = cplx(0.3, -0.4);
  H(2, 2) = 1.0;
  H(0, 0) = 0.7;
  H(1, 1) = -0.2;
  const Matrix U = Eigen::SelfAdjointEigenSolver<Matrix>(H).eigenvectors();
  std::vector<Matrix> conj;
  for (const Matrix& C : {shift_matrix(d - 1), D}) conj.push_back(U * C * U.adjoint());
  REQUIRE(commutant_dimension(conj) == 1);

  REQUIRE_THROWS_AS(commutant_dimension({}), std::invalid_argument);
  REQUIRE_THROWS_AS(commutant_dimension({id, Matrix::Identity(2, 2)}),
                    std::invalid_argument);
}

TEST_CASE("normalized-kernel coefficients have scalar commutant") {
  for (const ParameterSet& p :
       {ParameterSet(1, 1.0, {1.0, 1.0}), ParameterSet(2, 1.6, {1.0, 1.25, 0.85})}) {
    const IrreducibilityReport r = irreducibility_report(p, 2 * p.m + 4);
    REQUIRE(r.commutant_dim == 1);
    REQUIRE_FALSE(r.reducible);
  }
}

TEST_CASE("parameter equivalence is decided by (lambda, mu)") {
  const ParameterSet a(1, 1.0, {1.0, 1.0});
  const ParameterSet b(1, 1.0, {1.0, 2.0});
  const ParameterSet c(1, 1.5, {1.0, 1.0});

  REQUIRE(equivalence_check(a, a));
  REQUIRE_FALSE(equivalence_check(a, b));  // same lambda, different weights
  REQUIRE_FALSE(equivalence_check(a, c));  // same weights, different lambda
  REQUIRE(equivalence_check(b, b));

  // The origin kernel separates the same pairs: diag(1,2) vs diag(1,5).
  const Matrix Ba = kernel_at_origin(a);
  const Matrix Bb = kernel_at_origin(b);
  REQUIRE(std::abs(Ba(1, 1).real() - 2.0) < 1e-14);
  REQUIRE(std::abs(Bb(1, 1).real() - 5.0) < 1e-14);

  // Near-identical parameters are identified at the default tolerance.
  const ParameterSet a_eps(1, 1.0 + 1e-13, {1.0, 1.0 + 1e-13});
  REQUIRE(equivalence_check(a, a_eps));
  REQUIRE_FALSE(equivalence_check(a, a_eps, 1e-15));

  // Symmetry on a sample of pairs.
  REQUIRE(equivalence_check(b, a) == equivalence_check(a, b));
  REQUIRE(equivalence_check(c, a) == equivalence_check(a, c));

  // Transitivity across a list that contains a genuine duplicate.
  const std::vector<ParameterSet> sets = {a, b, c, ParameterSet(1, 1.0, {1.0, 1.0}),
                                          ParameterSet(1, 1.5, {1.0, 2.0})};
  for (const auto& x : sets)
    for (const auto& y : sets)
      for (const auto& z : sets)
        if (equivalence_check(x, y) && equivalence_check(y, z))
          REQUIRE(equivalence_check(x, z));

  REQUIRE_THROWS_AS(equivalence_check(a, ParameterSet(2, 1.6, {1.0, 1.0, 1.0})),
                    std::invalid_argument);
}
