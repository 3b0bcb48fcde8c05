#include "whittaker/bz.hpp"

#include <cmath>
#include <optional>

namespace whittaker {

void Monomial::mul(const Atom& atom, int e) {
  if (e == 0) return;
  for (auto it = factors.begin(); it != factors.end(); ++it) {
    if (it->first == atom) {
      it->second += e;
      if (it->second == 0) factors.erase(it);
      return;
    }
  }
  factors.emplace_back(atom, e);
}

namespace {

struct Builder {
  const RootSystem& rs;
  std::optional<Atom> t(int i, int j) const {
    if (i == j) return std::nullopt;
    return Atom{Atom::Coord, rs.index_of(RootKind::Minus, i, j)};
  }
  std::optional<Atom> s(int i, int j) const {
    if (i == j) return std::nullopt;
    return Atom{Atom::Coord, rs.index_of(RootKind::Plus, i, j)};
  }
  std::optional<Atom> single(int i) const { return Atom{Atom::Coord, rs.index_of(RootKind::Single, i)}; }
  std::optional<Atom> u(int i, int j) const {
    if (i == j) return std::nullopt;
    if (rs.family == Family::D && j == rs.n) return (rs.n - i) % 2 == 1 ? t(i, j) : s(i, j);
    return Atom{Atom::Sum, rs.index_of(RootKind::Minus, i, j), rs.index_of(RootKind::Plus, i, j)};
  }
  static void mul(Monomial& m, const std::optional<Atom>& a, int e) {
    if (a) m.mul(*a, e);
  }
};

}  // namespace

BZFormula bz_formula(const RootSystem& rs, int tamper) {
  const int n = rs.n;
  Builder b{rs};
  BZFormula f;
  f.image.resize(rs.dimension());
  auto slot = [&](RootKind kind, int i, int j) -> Monomial& { return f.image[rs.index_of(kind, i, j)]; };

  if (rs.family == Family::A) {
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Monomial& m = slot(RootKind::Minus, i, j);
        Builder::mul(m, b.t(i, n + 1 + i - j), -1);
        for (int k = 1; k < i; ++k) {
          Builder::mul(m, b.t(k, n + i - j), 1);
          Builder::mul(m, b.t(k, n + i - j + 1), -1);
        }
      }
    for (int i = 1; i <= n; ++i) {
      Monomial m;
      for (int j = i + 1; j <= n; ++j) Builder::mul(m, b.t(i, j), 1);
      for (int j = 1; j < i; ++j) Builder::mul(m, b.t(j, i), -1);
      f.twist.push_back(m);
    }
  } else {
    const int e = rs.family == Family::C ? 2 : 1;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        Monomial r;
        Builder::mul(r, b.u(i, j - 1), 1);
        Builder::mul(r, b.u(i, j), -1);
        Builder::mul(r, b.s(i, j - 1), -1);
        for (int k = 1; k < i; ++k) {
          Builder::mul(r, b.t(k, j - 1), 1);
          Builder::mul(r, b.s(k, j - 1), -1);
        }
        Monomial p = r, q = r;
        if (rs.family == Family::D && j == n) {
          int ep = (n - i) % 2 == 0 ? 1 : -1;
          for (int k = 1; k < i; ++k) {
            Builder::mul(p, b.t(k, n), ep);
            Builder::mul(p, b.s(k, n), -ep);
          }
          for (int k = 1; k <= i; ++k) {
            Builder::mul(q, b.s(k, n), ep);
            Builder::mul(q, b.t(k, n), -ep);
          }
        } else {
          for (int k = 1; k < i; ++k) {
            Builder::mul(p, b.s(k, j), 1);
            Builder::mul(p, b.t(k, j), -1);
          }
          for (int k = 1; k <= i; ++k) {
            Builder::mul(q, b.s(k, j), 1);
            Builder::mul(q, b.t(k, j), -1);
          }
        }
        slot(RootKind::Minus, i, j) = p;
        slot(RootKind::Plus, i, j) = q;
      }
      if (rs.family != Family::D) {
        Monomial& m = f.image[rs.index_of(RootKind::Single, i)];
        Builder::mul(m, b.u(i, n), e);
        Builder::mul(m, b.single(i), -1);
        Builder::mul(m, b.s(i, n), -e);
        for (int k = 1; k < i; ++k) {
          Builder::mul(m, b.t(k, n), e);
          Builder::mul(m, b.s(k, n), -e);
        }
      }
    }
    for (int k = 1; k <= n; ++k) {
      Monomial m;
      for (int j = 1; j < k; ++j) {
        Builder::mul(m, b.s(j, k), 1);
        Builder::mul(m, b.t(j, k), -1);
      }
      for (int j = k + 1; j <= n; ++j) {
        Builder::mul(m, b.s(k, j), 1);
        Builder::mul(m, b.t(k, j), 1);
      }
      if (rs.family == Family::B) Builder::mul(m, b.single(k), 2);
      if (rs.family == Family::C) Builder::mul(m, b.single(k), 1);
      f.twist.push_back(m);
    }
  }
  if (tamper >= 0 && tamper < rs.dimension()) f.image[tamper].mul(Atom{Atom::Coord, 0}, 1);
  return f;
}

std::vector<Scalar> twist_diagonal(const RootSystem& rs, const std::vector<Scalar>& twist) {
  if (rs.family == Family::A) return twist;
  const int N = rs.matrix_size();
  std::vector<Scalar> d(N, Scalar(1));
  for (int k = 0; k < rs.n; ++k) {
    d[k] = twist[k];
    d[N - 1 - k] = twist[k].inv();
  }
  return d;
}

BZResult bz_oracle(const LusztigChart& chart) {
  const RootSystem& rs = *chart.system;
  auto g = group(rs.family, rs.n);
  Matrix m = chart_to_matrix(*g, chart.coords, -1) * w0_lift(*g);
  GaussDecomposition gd = [&] {
    try {
      return lu_gauss_decompose(m);
    } catch (const SingularLeadingMinor& e) {
      throw Error(ErrorKind::OutsideBigCell, e.what());
    }
  }();
  BZResult r{extract_coordinates(gd.upper, chart.system), {}};
  for (int k = 0; k < rs.n; ++k) r.twist.push_back(gd.diag(k, k));
  return r;
}

BZResult bz_closed_form(const LusztigChart& chart, int tamper) {
  BZFormula f = bz_formula(*chart.system, tamper);
  try {
    return BZResult{LusztigChart{chart.system, eval_monomials(f.image, chart.coords)},
                    eval_monomials(f.twist, chart.coords)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivisionByZero) throw Error(ErrorKind::NotInChartDomain, e.what());
    throw;
  }
}

namespace {
BZResult closed_for(const LusztigChart& chart, Family expected) {
  if (chart.system->family != expected)
    throw Error(ErrorKind::DomainViolation, "chart belongs to " + family_name(chart.system->family));
  return bz_closed_form(chart);
}
}  // namespace

BZResult bz_gl(const LusztigChart& chart) { return closed_for(chart, Family::A); }
BZResult bz_so_even(const LusztigChart& chart) { return closed_for(chart, Family::D); }
BZResult bz_so_odd(const LusztigChart& chart) { return closed_for(chart, Family::B); }
BZResult bz_sp(const LusztigChart& chart) { return closed_for(chart, Family::C); }

LusztigChart bz_inverse(const LusztigChart& image) {
  BZFormula f = bz_formula(*image.system);
  return LusztigChart{image.system, eval_monomials(f.image, image.coords)};
}

Scalar bz_log_jacobian(const LusztigChart& chart) {
  BZFormula f = bz_formula(*chart.system);
  return log_jacobian_det([&](const std::vector<Dual<Scalar>>& x) { return eval_monomials(f.image, x); },
                          chart.coords);
}

UMatrixReport u_matrix_check(const LusztigChart& chart) {
  const RootSystem& rs = *chart.system;
  auto g = group(rs.family, rs.n);
  const int N = g->real.size;
  const int n = rs.n;
  BZResult bz = bz_closed_form(chart);

  std::vector<int> sub_word;
  std::vector<int> block;
  for (int k = 0; k < rs.dimension(); ++k)
    (rs.positive_roots[k].i == 1 ? block : sub_word).push_back(k);
  std::vector<int> sub_gens;
  for (int k : sub_word) sub_gens.push_back(rs.word_w0[k]);
  Matrix w_sub = weyl_lift(sub_gens, g->real);

  auto string_matrix = [&](const std::vector<Scalar>& coords, int sign) {
    Matrix m = Matrix::identity(N);
    for (int k : block)
      right_multiply_exp(m, g->real.e_sparse[rs.word_w0[k]], g->real.e2_sparse[rs.word_w0[k]],
                         sign > 0 ? coords[k] : -coords[k]);
    return m;
  };
  Matrix u = w_sub.inverse() * string_matrix(chart.coords, -1) * w0_lift(*g) *
             string_matrix(bz.image.coords, 1).inverse();

  UMatrixReport rep{u, 0};
  auto fail = [&](int i, int j, const std::string& why) {
    throw Error(ErrorKind::StructureViolation,
                "U(" + std::to_string(i) + "," + std::to_string(j) + ") = " + u(i - 1, j - 1).str() + ": " + why);
  };
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j || j == 1) continue;
      if (rs.family != Family::A && i == N) continue;
      ++rep.checked_entries;
      if (!u(i - 1, j - 1).is_zero()) fail(i, j, "expected zero");
    }
  auto t = [&](int j) { return chart[Root{RootKind::Minus, 1, j}]; };
  auto s = [&](int j) { return chart[Root{RootKind::Plus, 1, j}]; };
  auto expect = [&](int i, const Scalar& v) {
    ++rep.checked_entries;
    if (!(u(i - 1, i - 1) == v)) fail(i, i, "expected " + v.str());
  };
  Scalar u11(1);
  if (rs.family == Family::A) {
    for (int j = 2; j <= n; ++j) u11 *= t(j);
    expect(1, u11);
    for (int i = 2; i <= n; ++i) expect(i, t(i).inv());
  } else {
    for (int j = 2; j <= n; ++j) u11 *= t(j) * s(j);
    if (rs.family == Family::B) u11 *= pow(chart[Root{RootKind::Single, 1, 0}], 2);
    if (rs.family == Family::C) u11 *= chart[Root{RootKind::Single, 1, 0}];
    expect(1, u11);
    for (int k = 2; k <= n; ++k) {
      expect(k, s(k) / t(k));
      expect(N + 1 - k, t(k) / s(k));
    }
    if (rs.family == Family::B) expect(n + 1, Scalar(1));
  }
  return rep;
}

namespace {
std::vector<std::complex<double>> negate(std::vector<std::complex<double>> v) {
  for (auto& x : v) x = -x;
  return v;
}
}  // namespace

std::complex<double> left_whittaker_value(const LusztigChart& chart, const std::vector<std::complex<double>>& nu) {
  std::vector<double> t = chart.to_double();
  std::vector<double> p = eval_monomials(bz_formula(*chart.system).image, t);
  double sum = 0;
  for (double v : p) sum += v;
  return monomial_weight(*chart.system, t, nu) * std::exp(-sum);
}

std::complex<double> left_whittaker_value_dual(const LusztigChart& chart, const std::vector<std::complex<double>>& nu) {
  std::vector<double> t = chart.to_double();
  std::vector<double> p = eval_monomials(bz_formula(*chart.system).image, t);
  double sum = 0;
  for (double v : p) sum += v;
  return monomial_weight(*chart.system, p, negate(nu)) * std::exp(-sum);
}

double right_whittaker_value(const LusztigChart& chart) {
  double sum = 0;
  for (const auto& c : chart.coords) sum += c.to_double();
  return std::exp(-sum);
}

}  // namespace whittaker
