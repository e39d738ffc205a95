#pragma once

// Truncated series arithmetic used throughout the library:
//   * BiSeries — bivariate power series in (z, wbar) with square complex-matrix
//     coefficients, truncated at a fixed degree in each variable;
//   * Jet — univariate Taylor jets with principal-branch real powers;
//   * Poly — plain scalar polynomials.
// All operations are pure; values are immutable after construction.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace homogop {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
inline double pochhammer(double x, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: negative n");
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x + i;
  return r;
}

inline double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative n");
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// Scalar polynomial, coefficient order c[0] + c[1] z + c[2] z^2 + ...
// ---------------------------------------------------------------------------
struct Poly {
  std::vector<cplx> c{cplx(0.0)};

  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) c.assign(1, cplx(0.0));
  }
  static Poly monomial(int n, cplx scale = cplx(1.0)) {
    std::vector<cplx> v(n + 1, cplx(0.0));
    v[n] = scale;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  cplx eval(cplx z) const {
    cplx acc = 0.0;
    for (int k = degree(); k >= 0; --k) acc = acc * z + c[k];
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<cplx> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
    return Poly(std::move(d));
  }

  Poly derivative(int order) const {
    Poly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p;
  }
};

// ---------------------------------------------------------------------------
// Bivariate truncated series: sum_{s,t <= degree} C(s,t) z^s wbar^t with
// dim x dim complex-matrix coefficients.  Products are truncated to the same
// rectangle, under which coefficients with s,t <= degree are exact.
// ---------------------------------------------------------------------------
class BiSeries {
 public:
  BiSeries(int dim, int degree)
      : dim_(dim), degree_(degree),
        c_((degree + 1) * (degree + 1), Matrix::Zero(dim, dim)) {
    if (dim < 1 || degree < 0) throw std::invalid_argument("BiSeries: bad size");
  }

  static BiSeries identity(int dim, int degree) {
    BiSeries r(dim, degree);
    r.coeff(0, 0) = Matrix::Identity(dim, dim);
    return r;
  }

  // (1 - z wbar)^(-alpha) * I: coefficient (n,n) = (alpha)_n / n!.
  static BiSeries geometric(double alpha, int dim, int degree) {
    BiSeries r(dim, degree);
    double coef = 1.0;
    for (int n = 0; n <= degree; ++n) {
      if (n > 0) coef *= (alpha + n - 1) / n;
      r.coeff(n, n) = coef * Matrix::Identity(dim, dim);
    }
    return r;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  const Matrix& coeff(int s, int t) const { return c_[index(s, t)]; }
  Matrix& coeff(int s, int t) { return c_[index(s, t)]; }

  // Coefficient map of K(w,z)^*: (s,t) -> coeff(t,s)^H.
  BiSeries adjoint() const {
    BiSeries r(dim_, degree_);
    for (int s = 0; s <= degree_; ++s)
      for (int t = 0; t <= degree_; ++t) r.coeff(s, t) = coeff(t, s).adjoint();
    return r;
  }

  Matrix eval(cplx z, cplx w) const {
    Matrix acc = Matrix::Zero(dim_, dim_);
    cplx wb = std::conj(w);
    cplx zs = 1.0;
    for (int s = 0; s <= degree_; ++s) {
      cplx wt = 1.0;
      for (int t = 0; t <= degree_; ++t) {
        acc += (zs * wt) * coeff(s, t);
        wt *= wb;
      }
      zs *= z;
    }
    return acc;
  }

 private:
  int index(int s, int t) const {
    if (s < 0 || t < 0 || s > degree_ || t > degree_)
      throw std::out_of_range("BiSeries: coefficient index above truncation");
    return s * (degree_ + 1) + t;
  }

  int dim_;
  int degree_;
  std::vector<Matrix> c_;
};

inline void require_compatible(const BiSeries& a, const BiSeries& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree())
    throw std::invalid_argument("BiSeries: dimension/degree mismatch");
}

inline BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  require_compatible(a, b);
  BiSeries r(a.dim(), a.degree());
  for (int s = 0; s <= a.degree(); ++s)
    for (int t = 0; t <= a.degree(); ++t) r.coeff(s, t) = a.coeff(s, t) + b.coeff(s, t);
  return r;
}

inline BiSeries operator-(const BiSeries& a, const BiSeries& b) {
  require_compatible(a, b);
  BiSeries r(a.dim(), a.degree());
  for (int s = 0; s <= a.degree(); ++s)
    for (int t = 0; t <= a.degree(); ++t) r.coeff(s, t) = a.coeff(s, t) - b.coeff(s, t);
  return r;
}

// Truncated product: coefficient (s,t) = sum over splits, matrix order kept.
inline BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  require_compatible(a, b);
  const int N = a.degree();
  BiSeries r(a.dim(), N);
  for (int s = 0; s <= N; ++s)
    for (int t = 0; t <= N; ++t) {
      Matrix acc = Matrix::Zero(a.dim(), a.dim());
      for (int u = 0; u <= s; ++u)
        for (int v = 0; v <= t; ++v) acc += a.coeff(u, v) * b.coeff(s - u, t - v);
      r.coeff(s, t) = acc;
    }
  return r;
}

inline BiSeries left_mul(const Matrix& A, const BiSeries& b) {
  BiSeries r(b.dim(), b.degree());
  for (int s = 0; s <= b.degree(); ++s)
    for (int t = 0; t <= b.degree(); ++t) r.coeff(s, t) = A * b.coeff(s, t);
  return r;
}

inline BiSeries right_mul(const BiSeries& a, const Matrix& B) {
  BiSeries r(a.dim(), a.degree());
  for (int s = 0; s <= a.degree(); ++s)
    for (int t = 0; t <= a.degree(); ++t) r.coeff(s, t) = a.coeff(s, t) * B;
  return r;
}

// Multiplicative inverse in the truncated algebra, by coefficient recursion.
// Requires an invertible (0,0) coefficient; the result is two-sided.
inline BiSeries invert(const BiSeries& a) {
  const int N = a.degree();
  Eigen::FullPivLU<Matrix> lu(a.coeff(0, 0));
  if (!lu.isInvertible())
    throw std::domain_error("BiSeries invert: singular constant coefficient");
  const Matrix inv0 = lu.inverse();
  BiSeries x(a.dim(), N);
  x.coeff(0, 0) = inv0;
  for (int s = 0; s <= N; ++s)
    for (int t = 0; t <= N; ++t) {
      if (s == 0 && t == 0) continue;
      Matrix acc = Matrix::Zero(a.dim(), a.dim());
      for (int u = 0; u <= s; ++u)
        for (int v = 0; v <= t; ++v) {
          if (u == 0 && v == 0) continue;
          acc += a.coeff(u, v) * x.coeff(s - u, t - v);
        }
      x.coeff(s, t) = -inv0 * acc;
    }
  return x;
}

// Keep only the wbar-free column (the series of K(z, 0)).
inline BiSeries section_at_w_zero(const BiSeries& a) {
  BiSeries r(a.dim(), a.degree());
  for (int s = 0; s <= a.degree(); ++s) r.coeff(s, 0) = a.coeff(s, 0);
  return r;
}

// Keep only the z-free row (the series of K(0, w)).
inline BiSeries section_at_z_zero(const BiSeries& a) {
  BiSeries r(a.dim(), a.degree());
  for (int t = 0; t <= a.degree(); ++t) r.coeff(0, t) = a.coeff(0, t);
  return r;
}

inline double max_abs(const BiSeries& a) {
  double m = 0.0;
  for (int s = 0; s <= a.degree(); ++s)
    for (int t = 0; t <= a.degree(); ++t)
      m = std::max(m, a.coeff(s, t).cwiseAbs().maxCoeff());
  return m;
}

// Max-norm distance over all coefficient entries, relative to the larger of
// the two series' own max-norms (0 if both vanish).
inline double rel_distance(const BiSeries& a, const BiSeries& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) return 0.0;
  return max_abs(a - b) / scale;
}

// ---------------------------------------------------------------------------
// Taylor jet of order K at a base point: coefficients c0..cK of
// h -> f(base + h).  Products truncate at the shared order.
// ---------------------------------------------------------------------------
class Jet {
 public:
  Jet(cplx base, int order) : base_(base), c_(order + 1, cplx(0.0)) {
    if (order < 0) throw std::invalid_argument("Jet: negative order");
  }

  static Jet constant(cplx value, cplx base, int order) {
    Jet j(base, order);
    j.c_[0] = value;
    return j;
  }

  // Jet of the identity map h -> base + h.
  static Jet variable(cplx base, int order) {
    Jet j(base, order);
    j.c_[0] = base;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  cplx base() const { return base_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const cplx& coeff(int k) const { return c_.at(k); }
  cplx& coeff(int k) { return c_.at(k); }

  // k-th derivative value at the base point: k! * c_k.
  cplx derivative(int k) const { return factorial(k) * c_.at(k); }

  // Principal-branch power x -> x^alpha composed with the jet; the binomial
  // series in the nilpotent part is exact at this order.
  Jet pow(double alpha) const {
    const cplx c0 = c_[0];
    if (c0.real() <= 0.0)
      throw std::domain_error("Jet pow: constant term outside right half-plane");
    const int K = order();
    Jet u(base_, K);  // c/c0 - 1, nilpotent
    for (int k = 1; k <= K; ++k) u.c_[k] = c_[k] / c0;
    Jet acc = Jet::constant(1.0, base_, K);
    Jet upow = Jet::constant(1.0, base_, K);
    double bin = 1.0;
    for (int r = 1; r <= K; ++r) {
      bin *= (alpha - r + 1) / r;
      upow = upow * u;
      for (int k = 0; k <= K; ++k) acc.c_[k] += bin * upow.c_[k];
    }
    const cplx scale = std::pow(c0, alpha);
    for (int k = 0; k <= K; ++k) acc.c_[k] *= scale;
    return acc;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r = a;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r = a;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    const int K = a.order();
    Jet r(a.base_, K);
    for (int k = 0; k <= K; ++k) {
      cplx acc = 0.0;
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator*(cplx s, const Jet& a) {
    Jet r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  friend Jet operator+(cplx s, const Jet& a) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }

 private:
  void check(const Jet& other) const {
    if (c_.size() != other.c_.size() || base_ != other.base_)
      throw std::invalid_argument("Jet: base/order mismatch");
  }

  cplx base_;
  std::vector<cplx> c_;
};

// f evaluated on a jet (Horner in the jet algebra).
inline Jet poly_on_jet(const Poly& f, const Jet& x) {
  Jet acc = Jet::constant(0.0, x.base(), x.order());
  for (int k = f.degree(); k >= 0; --k) acc = acc * x + Jet::constant(f.c[k], x.base(), x.order());
  return acc;
}

}  // namespace homogop
