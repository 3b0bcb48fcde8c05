#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "whittaker/exact.hpp"
#include "whittaker/rootlie.hpp"

namespace whittaker {

struct LusztigChart {
  std::shared_ptr<const RootSystem> system;
  std::vector<Scalar> coords;  // aligned with system->positive_roots

  const Scalar& operator[](const Root& r) const;
  Scalar& operator[](const Root& r);
  bool positive() const;
  std::vector<double> to_double() const;
};

LusztigChart random_chart(Family family, int n, RationalSampler& rng);
LusztigChart constant_chart(Family family, int n, const Scalar& value);

Matrix chart_to_matrix(const LusztigChart& chart);
// X(sign * t)
Matrix chart_to_matrix(const Group& g, const std::vector<Scalar>& coords, int sign = 1);
LusztigChart extract_coordinates(const Matrix& x_bar, std::shared_ptr<const RootSystem> rs);

// Forward-mode dual number with a single tangent direction.
template <class S>
struct Dual {
  S v;
  S d;
  Dual() : v(0), d(0) {}
  Dual(long x) : v(x), d(0) {}  // NOLINT(google-explicit-constructor)
  Dual(S x, S dx) : v(std::move(x)), d(std::move(dx)) {}
  friend Dual operator+(const Dual& x, const Dual& y) { return {x.v + y.v, x.d + y.d}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.v - y.v, x.d - y.d}; }
  friend Dual operator-(const Dual& x) { return {S(0) - x.v, S(0) - x.d}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.v * y.v, x.d * y.v + x.v * y.d}; }
  friend Dual operator/(const Dual& x, const Dual& y) {
    S iv = S(1) / y.v;
    return {x.v * iv, (x.d * y.v - x.v * y.d) * iv * iv};
  }
  friend bool operator==(const Dual& x, const Dual& y) { return x.v == y.v && x.d == y.d; }
};

namespace detail {
template <class T>
bool vanishes(const T& x) {
  return x == T(0);
}
inline bool vanishes(const Scalar& x) { return x.is_zero(); }
template <class S>
bool vanishes(const Dual<S>& x) {
  return vanishes(x.v);
}
template <class T>
void require_nonzero(const T& x, const char* what) {
  if (vanishes(x)) throw Error(ErrorKind::DegenerateDenominator, what);
}
}  // namespace detail

// Tuples are ordered (a, a+b, b).
template <class T>
std::array<T, 3> mutate_a2(const std::array<T, 3>& x) {
  const T& a = x[0];
  const T& ab = x[1];
  const T& b = x[2];
  T s = a + b;
  detail::require_nonzero(s, "A2 mutation: t_a + t_b");
  return {a * ab / s, s, b * ab / s};
}

// Tuples are ordered (a, a+b, a+2b, b).
template <class T>
std::array<T, 4> mutate_b2(const std::array<T, 4>& x) {
  const T& a = x[0];
  const T& ab = x[1];
  const T& a2b = x[2];
  const T& b = x[3];
  T p1 = b * a2b + (b + ab) * a;
  T p2 = b * b * a2b + (b + ab) * (b + ab) * a;
  detail::require_nonzero(p1, "B2 mutation: pi_1");
  detail::require_nonzero(p2, "B2 mutation: pi_2");
  return {a2b * ab * ab * a / p2, p2 / p1, p1 * p1 / p2, b * ab * a2b / p1};
}

// Tuples are ordered (a, a+b, 2a+3b, a+2b, a+3b, b).
template <class T>
std::array<T, 6> mutate_g2(const std::array<T, 6>& x) {
  const T& a = x[0];
  const T& ab = x[1];
  const T& a23 = x[2];
  const T& a2b = x[3];
  const T& a3b = x[4];
  const T& b = x[5];
  auto sq = [](const T& v) { return v * v; };
  auto cu = [](const T& v) { return v * v * v; };
  T w = a2b + ab;
  T v = b + a2b;
  T p1 = b * a3b * sq(a2b) * a23 + b * a3b * sq(w) * a + v * a23 * sq(ab) * a;
  T p2 = sq(b) * sq(a3b) * cu(a2b) * a23 + sq(b) * sq(a3b) * cu(w) * a + sq(v) * sq(a23) * cu(ab) * a +
         b * a3b * a23 * sq(ab) * a * (T(3) * b * a2b + T(2) * sq(a2b) + T(2) * a2b * ab + T(2) * b * ab);
  T p3 = cu(b) * sq(a3b) * cu(a2b) * a23 + cu(b) * sq(a3b) * cu(w) * a + cu(v) * sq(a23) * cu(ab) * a +
         sq(b) * a3b * a23 * sq(ab) * a * (T(3) * b * a2b + T(3) * sq(a2b) + T(3) * a2b * ab + T(2) * b * ab);
  T p4 = sq(b) * sq(a3b) * cu(a2b) * a23 *
             (b * a3b * cu(a2b) * a23 + T(2) * b * a3b * cu(w) * a +
              (T(3) * b * a2b + T(3) * sq(a2b) + T(3) * a2b * ab + T(2) * b * ab) * a23 * sq(ab) * a) +
         sq(a) * cu(b * a3b * sq(w) + v * a23 * sq(ab));
  detail::require_nonzero(p1, "G2 mutation: pi_1");
  detail::require_nonzero(p2, "G2 mutation: pi_2");
  detail::require_nonzero(p3, "G2 mutation: pi_3");
  detail::require_nonzero(p4, "G2 mutation: pi_4");
  return {a * cu(ab) * sq(a23) * cu(a2b) * a3b / p3,
          p3 / p2,
          cu(p2) / (p3 * p4),
          p4 / (p1 * p2),
          cu(p1) / p4,
          b * a3b * sq(a2b) * a23 * ab / p1};
}

enum class Rank2 { A2, B2, G2 };

// Exponents of t^alpha and t^beta on each coordinate of the rank-2 tuple.
const std::vector<std::array<int, 2>>& rank2_monomial_exponents(Rank2 pattern);
// Index lists of the invariant partial sums of the rank-2 tuple.
std::vector<std::vector<int>> rank2_invariant_sums(Rank2 pattern);
Scalar rank2_monomial(Rank2 pattern, const std::vector<Scalar>& tuple, int which);  // which: 0 alpha, 1 beta

// prod t_gamma^{(mu, gamma^vee)}; exponents must be integral.
Scalar monomial_weight(const LusztigChart& chart, const Weight& mu);
// Same with a complex weight over positive real coordinates.
std::complex<double> monomial_weight(const RootSystem& rs, const std::vector<double>& coords,
                                     const std::vector<std::complex<double>>& mu);

// |det d(log F)/d(log t)| at the point, computed exactly with dual numbers.
// map must be callable on std::vector<Dual<Scalar>> and return a vector of the same length.
template <class F>
Scalar log_jacobian_det(F&& map, const std::vector<Scalar>& point) {
  const size_t d = point.size();
  Matrix jac(static_cast<int>(d), static_cast<int>(d));
  std::vector<Scalar> value;
  for (size_t j = 0; j < d; ++j) {
    std::vector<Dual<Scalar>> x(d);
    for (size_t k = 0; k < d; ++k) x[k] = Dual<Scalar>(point[k], Scalar(k == j ? 1 : 0));
    std::vector<Dual<Scalar>> y = map(x);
    if (y.size() != d) throw Error(ErrorKind::DomainViolation, "jacobian of non-square map");
    if (j == 0)
      for (auto& yi : y) value.push_back(yi.v);
    for (size_t i = 0; i < d; ++i) jac(static_cast<int>(i), static_cast<int>(j)) = y[i].d;
  }
  Scalar det = determinant(jac);
  for (size_t k = 0; k < d; ++k) det = det * point[k] / value[k];
  return det.sign() < 0 ? -det : det;
}

}  // namespace whittaker
