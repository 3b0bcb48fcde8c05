#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "whittaker/errors.hpp"

namespace whittaker {

using Rational = mpq_class;

// An element a + b*sqrt(2) of Q(sqrt 2).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Scalar sqrt2() { return Scalar(Rational(0), Rational(1)); }
  static Scalar ratio(long num, long den);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;

  Scalar inv() const;
  Scalar conj() const { return Scalar(a_, -b_); }
  // a^2 - 2 b^2
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }

  double to_double() const;
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend Scalar operator-(const Scalar& x) { return Scalar(-x.a_, -x.b_); }
  friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& x);

Scalar pow(const Scalar& x, int e);

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  static Matrix identity(int n);
  static Matrix unit(int n, int i, int j, const Scalar& v = Scalar(1));  // 1-based indices

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  Matrix inverse() const;
  bool is_identity() const;
  bool is_zero() const;
  std::string str() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& c);
  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(Matrix x, const Scalar& c) { return x *= c; }
  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend bool operator==(const Matrix& x, const Matrix& y);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix commutator(const Matrix& x, const Matrix& y);
// exp of a nilpotent matrix; throws DomainViolation if x is not nilpotent.
Matrix exp_nilpotent(const Matrix& x);

struct GaussDecomposition {
  Matrix lower;  // unit lower triangular
  Matrix diag;
  Matrix upper;  // unit upper triangular
};

// m = L * D * U; throws SingularLeadingMinor when some leading principal minor vanishes.
GaussDecomposition lu_gauss_decompose(const Matrix& m);
Scalar determinant(const Matrix& m);

// Ratios of integers drawn uniformly from [lo, hi].
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, long lo = 1, long hi = 100) : rng_(seed), dist_(lo, hi) {}
  Rational positive() {
    long p = dist_(rng_);
    long q = dist_(rng_);
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<long> dist_;
};

}  // namespace whittaker
