#include "whittaker/mellin.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "whittaker/bz.hpp"
#include "whittaker/special.hpp"

namespace whittaker {

namespace {

void add_into(std::map<int, Rational>& m, int id, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = m.try_emplace(id, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) m.erase(it);
  }
}

Rational lookup(const std::map<int, Rational>& m, int id) {
  auto it = m.find(id);
  return it == m.end() ? Rational(0) : it->second;
}

void term(std::ostringstream& os, bool& first, const Rational& c, const std::string& name) {
  Rational a = abs(c);
  if (first)
    os << (sgn(c) < 0 ? "-" : "");
  else
    os << (sgn(c) < 0 ? " - " : " + ");
  first = false;
  if (a != 1 || name.empty()) os << a.get_str() << (name.empty() ? "" : "*");
  os << name;
}

}  // namespace

AffineForm AffineForm::variable(int id, const Rational& c) {
  AffineForm f;
  add_into(f.coeffs, id, c);
  return f;
}

AffineForm AffineForm::lambda(int k, const Rational& c) {
  AffineForm f;
  add_into(f.lambda_coeffs, k, c);
  return f;
}

bool AffineForm::is_zero() const { return coeffs.empty() && lambda_coeffs.empty() && sgn(constant) == 0; }
Rational AffineForm::coeff(int id) const { return lookup(coeffs, id); }
Rational AffineForm::lambda_coeff(int k) const { return lookup(lambda_coeffs, k); }

AffineForm& AffineForm::operator+=(const AffineForm& o) {
  for (const auto& [k, c] : o.coeffs) add_into(coeffs, k, c);
  for (const auto& [k, c] : o.lambda_coeffs) add_into(lambda_coeffs, k, c);
  constant += o.constant;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) {
  AffineForm neg = o;
  return *this += (neg *= Rational(-1));
}

AffineForm& AffineForm::operator*=(const Rational& c) {
  if (sgn(c) == 0) return *this = AffineForm{};
  for (auto& [k, v] : coeffs) v *= c;
  for (auto& [k, v] : lambda_coeffs) v *= c;
  constant *= c;
  return *this;
}

bool operator<(const AffineForm& a, const AffineForm& b) {
  return std::tie(a.coeffs, a.lambda_coeffs, a.constant) < std::tie(b.coeffs, b.lambda_coeffs, b.constant);
}

Rational AffineForm::real_at(const std::vector<Rational>& point) const {
  Rational r = constant;
  for (const auto& [k, c] : coeffs) r += c * point.at(k);
  return r;
}

std::complex<double> AffineForm::eval(const std::vector<std::complex<double>>& g,
                                      const std::vector<double>& lambda) const {
  std::complex<double> r = constant.get_d();
  for (const auto& [k, c] : coeffs) r += c.get_d() * g.at(k);
  double im = 0;
  for (const auto& [k, c] : lambda_coeffs) im += c.get_d() * lambda.at(k);
  return r + std::complex<double>(0, im);
}

AffineForm AffineForm::substitute(int id, const AffineForm& by) const {
  Rational c = coeff(id);
  if (sgn(c) == 0) return *this;
  AffineForm r = *this;
  r.coeffs.erase(id);
  return r += c * by;
}

AffineForm AffineForm::relabel(const std::map<int, int>& ids) const {
  AffineForm r;
  for (const auto& [k, c] : coeffs) add_into(r.coeffs, ids.at(k), c);
  r.lambda_coeffs = lambda_coeffs;
  r.constant = constant;
  return r;
}

std::string AffineForm::str(const std::vector<std::string>& names) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coeffs) term(os, first, c, k < int(names.size()) ? names[k] : "v" + std::to_string(k));
  if (!lambda_coeffs.empty()) {
    os << (first ? "" : " + ") << "i(";
    bool inner = true;
    for (const auto& [k, c] : lambda_coeffs) term(os, inner, c, "lambda_" + std::to_string(k + 1));
    os << ")";
    first = false;
  }
  if (sgn(constant) != 0 || first) term(os, first, constant, "");
  return os.str();
}

GammaFactors cancel_common(const GammaFactors& f) {
  GammaFactors r;
  std::vector<bool> used(f.num.size(), false);
  for (const auto& d : f.den) {
    bool hit = false;
    for (size_t k = 0; k < f.num.size(); ++k)
      if (!used[k] && f.num[k] == d) {
        used[k] = hit = true;
        break;
      }
    if (!hit) r.den.push_back(d);
  }
  for (size_t k = 0; k < f.num.size(); ++k)
    if (!used[k]) r.num.push_back(f.num[k]);
  return r;
}

bool same_factors(const std::vector<AffineForm>& a, const std::vector<AffineForm>& b) {
  if (a.size() != b.size()) return false;
  auto x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

ConstraintSet MBIntegrand::constraints() const {
  ConstraintSet c;
  for (const auto& f : num) {
    AffineForm g = f;
    g.lambda_coeffs.clear();
    if (std::find(c.begin(), c.end(), g) == c.end()) c.push_back(g);
  }
  return c;
}

std::vector<std::string> mellin_variable_names(const RootSystem& rs, bool tilde) {
  std::vector<std::string> out;
  std::string p = tilde ? "t" : "";
  for (const Root& r : rs.positive_roots) {
    switch (r.kind) {
      case RootKind::Minus:
        out.push_back(p + "gamma_" + std::to_string(r.i) + "_" + std::to_string(r.j));
        break;
      case RootKind::Plus:
        out.push_back(p + "delta_" + std::to_string(r.i) + "_" + std::to_string(r.j));
        break;
      case RootKind::Single:
        out.push_back(p + "gamma_" + std::to_string(r.i));
        break;
    }
  }
  return out;
}

std::vector<AffineForm> right_vector_mellin(Family family, int n) {
  auto rs = root_system(family, n);
  std::vector<AffineForm> out;
  for (int k = 0; k < rs->dimension(); ++k) out.push_back(AffineForm::variable(k));
  return out;
}

namespace {

AffineForm coordinate_argument(const RootSystem& rs, int k) {
  AffineForm a = AffineForm::variable(k);
  Weight cor = rs.coroot(rs.positive_roots[k]);
  for (int j = 0; j < rs.n; ++j) a += AffineForm::lambda(j, cor[j]);
  return a;
}

std::vector<std::vector<Rational>> identity_matrix(int n) {
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (int k = 0; k < n; ++k) m[k][k] = 1;
  return m;
}

}  // namespace

LeftVectorMellin left_vector_mellin(Family family, int n) {
  auto rs = root_system(family, n);
  BZFormula bz = bz_formula(*rs);
  std::map<Atom, AffineForm> expo;
  for (int k = 0; k < rs->dimension(); ++k) {
    AffineForm a = coordinate_argument(*rs, k);
    for (const auto& [atom, e] : bz.image[k].factors) expo[atom] -= Rational(e) * a;
  }
  LeftVectorMellin out;
  for (const auto& [atom, e] : expo)
    if (atom.kind == Atom::Sum) {
      expo.try_emplace(Atom{Atom::Coord, atom.a});
      expo.try_emplace(Atom{Atom::Coord, atom.b});
    }
  for (const auto& [atom, e] : expo)
    if (atom.kind == Atom::Coord) out.raw.num.push_back(e);
  for (const auto& [atom, e] : expo) {
    if (atom.kind != Atom::Sum) continue;
    AffineForm pq = expo.at(Atom{Atom::Coord, atom.a}) + expo.at(Atom{Atom::Coord, atom.b});
    out.raw.num.push_back(pq + e);
    out.raw.den.push_back(pq);
  }
  out.reduced = cancel_common(out.raw);
  return out;
}

std::vector<std::vector<Rational>> cartan_exponent(Family family, int n) {
  auto rs = root_system(family, n);
  std::vector<std::vector<Rational>> h;
  for (int k = 0; k < rs->dimension(); ++k) {
    std::vector<Rational> row;
    for (const auto& c : rs->simple_roots[rs->word_w0[k]]) row.push_back(-c);
    h.push_back(row);
  }
  return h;
}

MBIntegrand derived_integrand(Family family, int n) {
  auto rs = root_system(family, n);
  MBIntegrand f;
  f.family = family;
  f.rank = n;
  f.dimension = rs->dimension();
  f.variables = mellin_variable_names(*rs, false);
  f.num = right_vector_mellin(family, n);
  LeftVectorMellin left = left_vector_mellin(family, n);
  f.num.insert(f.num.end(), left.raw.num.begin(), left.raw.num.end());
  f.den = left.raw.den;
  f.exponent = cartan_exponent(family, n);
  f.phase = identity_matrix(n);
  return f;
}

std::vector<std::vector<Rational>> tilde_map(Family family, int n) {
  auto rs = root_system(family, n);
  const int d = rs->dimension();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  for (int v = 0; v < d; ++v) {
    const Root& r = rs->positive_roots[v];
    if (family == Family::A) {
      m[v][v] = 1;
      if (r.j + 1 <= n) m[v][rs->index_of(RootKind::Minus, r.i + 1, r.j + 1)] = -1;
      continue;
    }
    if (r.kind == RootKind::Single) {
      m[v][v] = 1;
      if (r.i + 1 <= n) m[v][rs->index_of(RootKind::Single, r.i + 1)] = -1;
      continue;
    }
    RootKind src = r.kind;
    if (family == Family::D && r.j == n && (n - r.i) % 2 == 0)
      src = r.kind == RootKind::Minus ? RootKind::Plus : RootKind::Minus;
    m[v][rs->index_of(src, r.i, r.j)] = 1;
    if (r.i + 1 < r.j) m[v][rs->index_of(src, r.i + 1, r.j)] = -1;
  }
  return m;
}

MBIntegrand change_variables(const MBIntegrand& f, const std::vector<std::vector<Rational>>& m,
                             std::vector<std::string> names) {
  const int d = f.dimension;
  std::vector<AffineForm> repl(d);
  for (int v = 0; v < d; ++v)
    for (int w = 0; w < d; ++w)
      if (sgn(m[v][w]) != 0) repl[v] += AffineForm::variable(w, m[v][w]);
  auto map_form = [&](const AffineForm& a) {
    AffineForm r;
    r.lambda_coeffs = a.lambda_coeffs;
    r.constant = a.constant;
    for (const auto& [v, c] : a.coeffs) r += c * repl[v];
    return r;
  };
  MBIntegrand g = f;
  g.variables = std::move(names);
  g.num.clear();
  g.den.clear();
  for (const auto& a : f.num) g.num.push_back(map_form(a));
  for (const auto& a : f.den) g.den.push_back(map_form(a));
  for (int w = 0; w < d; ++w) {
    std::vector<Rational> row(f.rank);
    for (int v = 0; v < d; ++v)
      for (int j = 0; j < f.rank; ++j) row[j] += m[v][w] * f.exponent[v][j];
    g.exponent[w] = row;
  }
  return g;
}

MBIntegrand assemble_mb_integrand(Family family, int n) {
  auto rs = root_system(family, n);
  MBIntegrand f;
  f.family = family;
  f.rank = n;
  f.dimension = rs->dimension();
  f.variables = mellin_variable_names(*rs, true);
  f.exponent.assign(f.dimension, std::vector<Rational>(n));
  f.phase = identity_matrix(n);

  auto G = [&](int i, int j) {
    return (1 <= i && i < j && j <= n) ? AffineForm::variable(rs->index_of(RootKind::Minus, i, j)) : AffineForm{};
  };
  auto Dl = [&](int i, int j) {
    return (1 <= i && i < j && j <= n) ? AffineForm::variable(rs->index_of(RootKind::Plus, i, j)) : AffineForm{};
  };
  auto g = [&](int k) {
    return (1 <= k && k <= n) ? AffineForm::variable(rs->index_of(RootKind::Single, k)) : AffineForm{};
  };
  auto lam = [](int k, const Rational& c) { return AffineForm::lambda(k - 1, c); };
  auto add_h = [&](int var, int k, const Rational& c) { f.exponent[var][k - 1] += c; };

  if (family == Family::A) {
    for (int k = 1; k < n; ++k)
      for (int l = k + 1; l <= n; ++l) {
        f.num.push_back(G(k, l) - G(k + 1, l) + lam(k, 1) + lam(n + k - l + 1, -1));
        f.num.push_back(G(k, l) - G(k + 1, l + 1));
      }
    for (int k = 1; k <= n; ++k) {
      if (int j = n + 2 - k; 1 < j && j <= n) add_h(rs->index_of(RootKind::Minus, 1, j), k, 1);
      if (int j = n + 1 - k; 1 < j && j <= n) add_h(rs->index_of(RootKind::Minus, 1, j), k, -1);
    }
    return f;
  }

  const int last = family == Family::D ? n - 2 : n - 1;
  for (int k = 1; k <= last; ++k) {
    f.num.push_back(G(k, k + 1) + Dl(k, k + 1) + lam(k, 2));
    if (family == Family::D) f.den.push_back(G(k, n) + Dl(k, n) - G(k + 1, n) - Dl(k + 1, n) + lam(k, 2));
    if (family == Family::C) f.den.push_back(Rational(2) * g(k) - Rational(2) * g(k + 1) + lam(k, 2));
  }
  const Rational c = family == Family::C ? 2 : 1;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l) {
      AffineForm xi, eta;
      if (l < n) {
        xi = G(k + 1, l) + Dl(k, l) - G(k + 1, l + 1) - Dl(k + 1, l + 1);
        eta = G(k, l + 1) + Dl(k, l + 1) - G(k + 1, l) - Dl(k, l);
      } else if (family == Family::D) {
        xi = G(k, n) - Dl(k + 1, n);
        eta = Dl(k, n) - G(k + 1, n);
      } else {
        xi = G(k + 1, n) + Dl(k, n) - c * g(k + 1);
        eta = c * g(k) - G(k + 1, n) - Dl(k, n);
      }
      f.num.push_back(xi + lam(k, 1) + lam(l, -1));
      f.num.push_back(eta + lam(k, 1) + lam(l, 1));
      f.num.push_back(G(k, l) - G(k + 1, l));
      f.num.push_back(Dl(k, l) - Dl(k + 1, l));
    }
  if (family == Family::B) {
    f.num.push_back(g(n) + lam(n, 2));
    for (int k = 1; k <= n; ++k) f.num.push_back(g(k) - g(k + 1));
  }
  if (family == Family::C)
    for (int k = 1; k <= n; ++k) {
      f.num.push_back(g(k) - g(k + 1) + lam(k, 1));
      f.num.push_back(g(k) - g(k + 1));
    }

  for (int j = 2; j <= n; ++j) {
    int t = rs->index_of(RootKind::Minus, 1, j), s = rs->index_of(RootKind::Plus, 1, j);
    add_h(t, j, 1);
    add_h(t, j - 1, -1);
    if (family == Family::D && j == n) {
      add_h(s, n - 1, -1);
      add_h(s, n, -1);
    } else {
      add_h(s, j, 1);
      add_h(s, j - 1, -1);
    }
  }
  if (family != Family::D) add_h(rs->index_of(RootKind::Single, 1), n, family == Family::B ? -1 : -2);
  return f;
}

std::vector<Weight> mellin_beta(Family family, int n) {
  std::vector<Weight> beta;
  auto root = [n](int i, int si, int j, int sj) {
    Weight w(n);
    if (i) w[i - 1] += si;
    if (j) w[j - 1] += sj;
    return w;
  };
  for (int k = 1; k < n; ++k) beta.push_back(root(k, 1, k + 1, -1));
  if (family == Family::D) beta.push_back(root(n - 1, 1, n, 1));
  if (family == Family::B || family == Family::C) beta.push_back(root(n, 1, 0, 0));
  return beta;
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// Inverse of a square rational matrix; empty when singular.
RMatrix invert(RMatrix a) {
  const int m = static_cast<int>(a.size());
  RMatrix inv(m, std::vector<Rational>(m));
  for (int k = 0; k < m; ++k) inv[k][k] = 1;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    while (piv < m && sgn(a[piv][col]) == 0) ++piv;
    if (piv == m) return {};
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational p = a[col][col];
    for (int j = 0; j < m; ++j) a[col][j] /= p, inv[col][j] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col];
      for (int j = 0; j < m; ++j) a[r][j] -= f * a[col][j], inv[r][j] -= f * inv[col][j];
    }
  }
  return inv;
}

Rational det(RMatrix a) {
  const int m = static_cast<int>(a.size());
  Rational d = 1;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    while (piv < m && sgn(a[piv][col]) == 0) ++piv;
    if (piv == m) return 0;
    if (piv != col) std::swap(a[piv], a[col]), d = -d;
    d *= a[col][col];
    for (int r = col + 1; r < m; ++r) {
      Rational f = a[r][col] / a[col][col];
      for (int j = col; j < m; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return d;
}

}  // namespace

MellinSplit mellin_of_whittaker(Family family, int n) {
  MBIntegrand t = assemble_mb_integrand(family, n);
  const int d = t.dimension;
  MellinSplit out;
  out.beta = mellin_beta(family, n);
  const int m = static_cast<int>(out.beta.size());
  out.outer = m;

  // Least squares through the Gram matrix; exact because every exponent row lies in the span.
  RMatrix gram(m, std::vector<Rational>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) gram[a][b] = pairing(out.beta[a], out.beta[b]);
  RMatrix ginv = invert(gram);
  auto project = [&](const std::vector<Rational>& v) {
    std::vector<Rational> bv(m), c(m);
    for (int a = 0; a < m; ++a) bv[a] = pairing(out.beta[a], v);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) c[a] += ginv[a][b] * bv[b];
    return c;
  };

  RMatrix sigma(m, std::vector<Rational>(d));
  for (int v = 0; v < d; ++v) {
    std::vector<Rational> c = project(t.exponent[v]);
    Weight back(n);
    for (int a = 0; a < m; ++a)
      for (int j = 0; j < n; ++j) back[j] += c[a] * out.beta[a][j];
    if (back != t.exponent[v])
      throw Error(ErrorKind::StructureViolation, "exponent of " + t.variables[v] + " leaves the root span");
    for (int a = 0; a < m; ++a) sigma[a][v] = -c[a];
  }
  RMatrix lam_coeff(m, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j) {
    Weight e(n);
    e[j] = 1;
    std::vector<Rational> c = project(e);
    for (int a = 0; a < m; ++a) lam_coeff[a][j] = c[a];
  }
  out.central.assign(n, family == Family::A ? Rational(1, n) : Rational(0));

  for (int a = 0; a < m; ++a) {
    AffineForm s;
    for (int v = 0; v < d; ++v) s += AffineForm::variable(v, sigma[a][v]);
    for (int j = 0; j < n; ++j) s += AffineForm::lambda(j, lam_coeff[a][j]);
    out.s_definition.push_back(s);
  }

  // Pivot columns: first independent set in variable order.
  RMatrix ech = sigma;
  int rank = 0;
  for (int col = 0; col < d && rank < m; ++col) {
    int piv = rank;
    while (piv < m && sgn(ech[piv][col]) == 0) ++piv;
    if (piv == m) continue;
    std::swap(ech[piv], ech[rank]);
    for (int r = rank + 1; r < m; ++r) {
      Rational f = ech[r][col] / ech[rank][col];
      for (int j = col; j < d; ++j) ech[r][j] -= f * ech[rank][j];
    }
    out.pivots.push_back(col);
    ++rank;
  }
  if (rank != m) throw Error(ErrorKind::StructureViolation, "outer Mellin variables are dependent");

  RMatrix block(m, std::vector<Rational>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) block[a][b] = sigma[a][out.pivots[b]];
  RMatrix binv = invert(block);

  std::map<int, int> ids;
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) names.push_back("s_" + std::to_string(a + 1));
  for (int v = 0; v < d; ++v)
    if (std::find(out.pivots.begin(), out.pivots.end(), v) == out.pivots.end()) {
      ids[v] = static_cast<int>(names.size());
      names.push_back(t.variables[v]);
    }
  // pivot_b = sum_a binv[b][a] (s_a - i c_a - sum_rest sigma[a][r] g_r)
  std::vector<AffineForm> pivot_value(m);
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      AffineForm rhs = AffineForm::variable(a);
      for (int j = 0; j < n; ++j) rhs -= AffineForm::lambda(j, lam_coeff[a][j]);
      for (const auto& [v, id] : ids) rhs -= AffineForm::variable(id, sigma[a][v]);
      pivot_value[b] += binv[b][a] * rhs;
    }
  auto map_form = [&](const AffineForm& f) {
    AffineForm r;
    r.lambda_coeffs = f.lambda_coeffs;
    r.constant = f.constant;
    for (const auto& [v, c] : f.coeffs) {
      auto it = std::find(out.pivots.begin(), out.pivots.end(), v);
      if (it != out.pivots.end())
        r += c * pivot_value[it - out.pivots.begin()];
      else
        r += AffineForm::variable(ids.at(v), c);
    }
    return r;
  };

  MBIntegrand& g = out.integrand;
  g.family = family;
  g.rank = n;
  g.dimension = d;
  g.variables = names;
  for (const auto& f : t.num) g.num.push_back(map_form(f));
  for (const auto& f : t.den) g.den.push_back(map_form(f));
  g.exponent.assign(d, std::vector<Rational>(n));
  g.phase.assign(n, std::vector<Rational>(n));
  g.scale = abs(1 / det(block));
  return out;
}

std::complex<double> bump_gl3(const std::vector<double>& lambda, std::complex<double> s1, std::complex<double> s2) {
  if (lambda.size() != 3) throw Error(ErrorKind::DomainViolation, "bump_gl3 needs three spectral parameters");
  const std::complex<double> i(0, 1);
  double sum = lambda[0] + lambda[1] + lambda[2];
  std::complex<double> lg = -log_gamma_complex(s1 + s2);
  for (int j = 0; j < 3; ++j) {
    double big = (3 * lambda[j] - sum) / 3;
    lg += log_gamma_complex(s1 - i * big) + log_gamma_complex(s2 + i * big);
  }
  return std::exp(lg);
}

std::complex<double> int_identity(std::complex<double> a, std::complex<double> b, std::complex<double> c) {
  if (!(a.real() > 0 && b.real() > 0 && (a + b + c).real() > 0))
    throw Error(ErrorKind::DomainViolation, "int_identity needs Re a, Re b, Re(a+b+c) > 0");
  return std::exp(log_gamma_complex(a) + log_gamma_complex(b) + log_gamma_complex(a + b + c) -
                  log_gamma_complex(a + b));
}

}  // namespace whittaker
