#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "whittaker/exact.hpp"
#include "whittaker/rootlie.hpp"

namespace whittaker {

// eval(g) = sum coeffs[v] g_v + i sum lambda_coeffs[k] lambda_k + constant
struct AffineForm {
  std::map<int, Rational> coeffs;
  std::map<int, Rational> lambda_coeffs;
  Rational constant;

  static AffineForm variable(int id, const Rational& c = 1);
  static AffineForm lambda(int k, const Rational& c = 1);

  bool is_zero() const;
  Rational coeff(int id) const;
  Rational lambda_coeff(int k) const;

  AffineForm& operator+=(const AffineForm& o);
  AffineForm& operator-=(const AffineForm& o);
  AffineForm& operator*=(const Rational& c);
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(const Rational& c, AffineForm a) { return a *= c; }
  friend AffineForm operator-(AffineForm a) { return a *= Rational(-1); }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  friend bool operator<(const AffineForm& a, const AffineForm& b);

  // Real part at a real point (lambda terms are imaginary).
  Rational real_at(const std::vector<Rational>& point) const;
  std::complex<double> eval(const std::vector<std::complex<double>>& g, const std::vector<double>& lambda) const;
  // Replaces variable id by a form.
  AffineForm substitute(int id, const AffineForm& by) const;
  // Renames variables through map old id -> new id; unmapped ids are an error.
  AffineForm relabel(const std::map<int, int>& ids) const;
  std::string str(const std::vector<std::string>& names) const;
};

using ConstraintSet = std::vector<AffineForm>;

struct GammaFactors {
  std::vector<AffineForm> num;
  std::vector<AffineForm> den;
};

// Cancels equal forms between numerator and denominator, keeping the first-seen order.
GammaFactors cancel_common(const GammaFactors& f);
// Multiset equality of two factor lists.
bool same_factors(const std::vector<AffineForm>& a, const std::vector<AffineForm>& b);

// Integrand exp(sum lgamma(num) - sum lgamma(den) + sum_v g_v (exponent[v].x)) over Re g = const,
// times scale * exp(-i sum_{k,j} lambda_k phase[k][j] x_j) / (2 pi i)^d.
struct MBIntegrand {
  Family family;
  int rank = 0;
  int dimension = 0;
  std::vector<std::string> variables;
  std::vector<AffineForm> num;
  std::vector<AffineForm> den;
  std::vector<std::vector<Rational>> exponent;  // dimension x rank
  std::vector<std::vector<Rational>> phase;     // rank x rank
  Rational scale = 1;

  // Real parts of all numerator arguments must stay positive; duplicates dropped.
  ConstraintSet constraints() const;
};

// Variable names of the chart-coordinate Mellin variables, aligned with positive_roots.
std::vector<std::string> mellin_variable_names(const RootSystem& rs, bool tilde);

std::vector<AffineForm> right_vector_mellin(Family family, int n);

struct LeftVectorMellin {
  GammaFactors raw;      // one Gamma per single atom, Beta-type triple per sum atom
  GammaFactors reduced;  // after cancellation
};
// Unitary parametrization: argument of t_k is -(g_k + i(lambda, coroot_k)).
LeftVectorMellin left_vector_mellin(Family family, int n);

// exponent[v] over x_1..x_n: -simple root of the generator carrying coordinate v.
std::vector<std::vector<Rational>> cartan_exponent(Family family, int n);

// Right and left vector transforms combined with the Cartan exponent, in chart variables.
MBIntegrand derived_integrand(Family family, int n);

// g_v = sum_w M[v][w] gt_w
std::vector<std::vector<Rational>> tilde_map(Family family, int n);
// Applies a linear change of variables g = M gt to an integrand.
MBIntegrand change_variables(const MBIntegrand& f, const std::vector<std::vector<Rational>>& m,
                             std::vector<std::string> names);

// Assembled integrand in telescoped variables.
MBIntegrand assemble_mb_integrand(Family family, int n);

struct MellinSplit {
  MBIntegrand integrand;  // variables 0..outer-1 are s, the rest inner
  int outer = 0;
  std::vector<Weight> beta;              // z_k = exp(beta_k . x)
  std::vector<AffineForm> s_definition;  // s_k in telescoped variables
  std::vector<int> pivots;               // telescoped variables eliminated by s
  std::vector<Rational> central;         // psi = exp(-i (sum_k central_k lambda_k) sum_j x_j) * (...)
};
MellinSplit mellin_of_whittaker(Family family, int n);

// Simple-root coordinates used for the outer Mellin variables.
std::vector<Weight> mellin_beta(Family family, int n);

std::complex<double> bump_gl3(const std::vector<double>& lambda, std::complex<double> s1, std::complex<double> s2);
std::complex<double> int_identity(std::complex<double> a, std::complex<double> b, std::complex<double> c);

}  // namespace whittaker
