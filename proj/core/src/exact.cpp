#include "whittaker/exact.hpp"

#include <gmpxx.h>

#include <ostream>
#include <sstream>

namespace whittaker {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SingularLeadingMinor: return "SingularLeadingMinor";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::ZeroBaseNegativeExponent: return "ZeroBaseNegativeExponent";
    case ErrorKind::NotInChartDomain: return "NotInChartDomain";
    case ErrorKind::ReconstructionMismatch: return "ReconstructionMismatch";
    case ErrorKind::OutsideBigCell: return "OutsideBigCell";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotConverged: return "NotConverged";
  }
  return "Unknown";
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(r);
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt2 have opposite signs; the larger square wins.
  int c = cmp(a_ * a_, 2 * b_ * b_);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (sgn(b_) == 0) return Scalar(Rational(1) / a_);
  Rational n = norm();
  return Scalar(a_ / n, -b_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + 2 * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

double Scalar::to_double() const {
  if (sgn(b_) == 0) return a_.get_d();
  mpf_class a(a_, 256), b(b_, 256), r(2, 256);
  r = sqrt(r);
  mpf_class v = a + b * r;
  return v.get_d();
}

std::string Scalar::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  return "(" + a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + Rational(abs(b_)).get_str() + "*sqrt2)";
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

Scalar pow(const Scalar& x, int e) {
  if (e < 0) return pow(x.inv(), -e);
  Scalar r(1), base = x;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::unit(int n, int i, int j, const Scalar& v) {
  Matrix m(n, n);
  m(i - 1, j - 1) = v;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::DomainViolation, "inverse of non-square matrix");
  int n = rows_;
  Matrix a = *this;
  Matrix r = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw Error(ErrorKind::DivisionByZero, "singular matrix");
    if (p != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(a(p, k), a(c, k));
        std::swap(r(p, k), r(c, k));
      }
    }
    Scalar iv = a(c, c).inv();
    for (int k = 0; k < n; ++k) {
      if (!a(c, k).is_zero()) a(c, k) *= iv;
      if (!r(c, k).is_zero()) r(c, k) *= iv;
    }
    for (int row = 0; row < n; ++row) {
      if (row == c || a(row, c).is_zero()) continue;
      Scalar f = a(row, c);
      for (int k = 0; k < n; ++k) {
        if (!a(c, k).is_zero()) a(row, k) -= f * a(c, k);
        if (!r(c, k).is_zero()) r(row, k) -= f * r(c, k);
      }
    }
  }
  return r;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!((*this)(i, j) == Scalar(i == j ? 1 : 0))) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols_ != y.rows_) throw Error(ErrorKind::DomainViolation, "shape mismatch in product");
  Matrix r(x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i)
    for (int k = 0; k < x.cols_; ++k) {
      const Scalar& a = x(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < y.cols_; ++j) {
        const Scalar& b = y(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

bool operator==(const Matrix& x, const Matrix& y) {
  return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

Matrix exp_nilpotent(const Matrix& x) {
  int n = x.rows();
  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    term = term * x;
    term *= Scalar::ratio(1, k);
    if (term.is_zero()) return result;
    result += term;
  }
  throw Error(ErrorKind::DomainViolation, "exp_nilpotent: matrix is not nilpotent");
}

GaussDecomposition lu_gauss_decompose(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DomainViolation, "Gauss decomposition of non-square matrix");
  int n = m.rows();
  Matrix a = m;
  GaussDecomposition g{Matrix::identity(n), Matrix(n, n), Matrix::identity(n)};
  for (int k = 0; k < n; ++k) {
    if (a(k, k).is_zero()) throw SingularLeadingMinor(k + 1);
    Scalar piv = a(k, k);
    Scalar ipiv = piv.inv();
    g.diag(k, k) = piv;
    for (int r = k + 1; r < n; ++r) {
      if (a(r, k).is_zero()) continue;
      Scalar f = a(r, k) * ipiv;
      g.lower(r, k) = f;
      for (int c = k; c < n; ++c)
        if (!a(k, c).is_zero()) a(r, c) -= f * a(k, c);
    }
    for (int c = k + 1; c < n; ++c)
      if (!a(k, c).is_zero()) g.upper(k, c) = a(k, c) * ipiv;
  }
  return g;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DomainViolation, "determinant of non-square matrix");
  int n = m.rows();
  Matrix a = m;
  Scalar det(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    Scalar iv = a(c, c).inv();
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      Scalar f = a(r, c) * iv;
      for (int k = c; k < n; ++k)
        if (!a(c, k).is_zero()) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

}  // namespace whittaker
