#pragma once

#include <complex>
#include <string>
#include <vector>

#include "whittaker/lusztig.hpp"

namespace whittaker {

// A factor of a closed-form monomial: a chart coordinate, or the sum t_{i,j} + s_{i,j}.
struct Atom {
  enum Kind { Coord, Sum } kind;
  int a;       // coordinate index (Coord) or index of t_{i,j} (Sum)
  int b = -1;  // index of s_{i,j} (Sum)
  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Monomial {
  std::vector<std::pair<Atom, int>> factors;
  void mul(const Atom& atom, int e);
};

struct BZFormula {
  std::vector<Monomial> image;  // aligned with positive_roots
  std::vector<Monomial> twist;  // T_1..T_n
};

// Closed forms of the BZ map and Cartan twist; a tamper index >= 0 perturbs that image coordinate.
BZFormula bz_formula(const RootSystem& rs, int tamper = -1);

template <class T>
T eval_atom(const Atom& atom, const std::vector<T>& x) {
  if (atom.kind == Atom::Coord) return x[atom.a];
  return x[atom.a] + x[atom.b];
}

template <class T>
T eval_monomial(const Monomial& m, const std::vector<T>& x) {
  T num(1), den(1);
  for (const auto& [atom, e] : m.factors) {
    T v = eval_atom(atom, x);
    for (int k = 0; k < (e > 0 ? e : -e); ++k) (e > 0 ? num : den) = (e > 0 ? num : den) * v;
  }
  return num / den;
}

template <class T>
std::vector<T> eval_monomials(const std::vector<Monomial>& ms, const std::vector<T>& x) {
  std::vector<T> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(eval_monomial(m, x));
  return out;
}

struct BZResult {
  LusztigChart image;
  std::vector<Scalar> twist;  // T_1..T_n
};

// Full diagonal of the twist matrix from its independent entries.
std::vector<Scalar> twist_diagonal(const RootSystem& rs, const std::vector<Scalar>& twist);

BZResult bz_oracle(const LusztigChart& chart);
BZResult bz_gl(const LusztigChart& chart);
BZResult bz_so_even(const LusztigChart& chart);
BZResult bz_so_odd(const LusztigChart& chart);
BZResult bz_sp(const LusztigChart& chart);
BZResult bz_closed_form(const LusztigChart& chart, int tamper = -1);
LusztigChart bz_inverse(const LusztigChart& image);
Scalar bz_log_jacobian(const LusztigChart& chart);

struct UMatrixReport {
  Matrix u;
  int checked_entries = 0;
};
// Throws StructureViolation naming the offending entry.
UMatrixReport u_matrix_check(const LusztigChart& chart);

// nu over the e-basis; uses the closed-form image.
std::complex<double> left_whittaker_value(const LusztigChart& chart, const std::vector<std::complex<double>>& nu);
std::complex<double> left_whittaker_value_dual(const LusztigChart& chart, const std::vector<std::complex<double>>& nu);
double right_whittaker_value(const LusztigChart& chart);

}  // namespace whittaker
