#include "whittaker/lusztig.hpp"

#include <cmath>
#include <set>

namespace whittaker {

const Scalar& LusztigChart::operator[](const Root& r) const {
  int k = system->index_of(r);
  if (k < 0) throw Error(ErrorKind::DomainViolation, "root " + r.label() + " not in chart");
  return coords[k];
}

Scalar& LusztigChart::operator[](const Root& r) {
  int k = system->index_of(r);
  if (k < 0) throw Error(ErrorKind::DomainViolation, "root " + r.label() + " not in chart");
  return coords[k];
}

bool LusztigChart::positive() const {
  for (const auto& c : coords)
    if (c.sign() <= 0) return false;
  return true;
}

std::vector<double> LusztigChart::to_double() const {
  std::vector<double> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(c.to_double());
  return out;
}

LusztigChart random_chart(Family family, int n, RationalSampler& rng) {
  LusztigChart c{root_system(family, n), {}};
  for (int k = 0; k < c.system->dimension(); ++k) c.coords.emplace_back(rng.positive());
  return c;
}

LusztigChart constant_chart(Family family, int n, const Scalar& value) {
  auto rs = root_system(family, n);
  return LusztigChart{rs, std::vector<Scalar>(rs->dimension(), value)};
}

Matrix chart_to_matrix(const Group& g, const std::vector<Scalar>& coords, int sign) {
  Matrix m = Matrix::identity(g.real.size);
  for (size_t k = 0; k < coords.size(); ++k) {
    int gen = g.roots.word_w0[k];
    right_multiply_exp(m, g.real.e_sparse[gen], g.real.e2_sparse[gen], sign > 0 ? coords[k] : -coords[k]);
  }
  return m;
}

Matrix chart_to_matrix(const LusztigChart& chart) {
  auto g = group(chart.system->family, chart.system->n);
  return chart_to_matrix(*g, chart.coords, 1);
}

namespace {

std::vector<Scalar> row_times(const std::vector<Scalar>& row, const SparseMatrix& e) {
  std::vector<Scalar> out(row.size());
  for (const auto& en : e.entries)
    if (!row[en.r].is_zero()) out[en.c] += row[en.r] * en.v;
  return out;
}

}  // namespace

// Peels one string of factors at a time from the right. The string attached to
// block index i acts on row i; inside a string the factor coefficients are read
// off the row at a position outside the support reachable by the earlier factors.
LusztigChart extract_coordinates(const Matrix& x_bar, std::shared_ptr<const RootSystem> rs) {
  auto g = group(rs->family, rs->n);
  const int N = g->real.size;
  if (x_bar.rows() != N || x_bar.cols() != N)
    throw Error(ErrorKind::DomainViolation, "matrix size does not match the realization");
  for (int i = 0; i < N; ++i)
    for (int j = 0; j <= i; ++j)
      if (!(x_bar(i, j) == Scalar(i == j ? 1 : 0)))
        throw Error(ErrorKind::NotInChartDomain, "matrix is not unit upper triangular");

  LusztigChart chart{rs, std::vector<Scalar>(rs->dimension())};
  int max_block = 0;
  for (const auto& r : rs->positive_roots) max_block = std::max(max_block, r.i);

  Matrix x = x_bar;
  for (int block = 1; block <= max_block; ++block) {
    std::vector<int> letters;
    for (int k = 0; k < rs->dimension(); ++k)
      if (rs->positive_roots[k].i == block) letters.push_back(k);
    if (letters.empty()) continue;
    const int m = static_cast<int>(letters.size());

    std::vector<std::set<int>> supp(m + 1);
    supp[0] = {block - 1};
    for (int k = 0; k < m; ++k) {
      std::set<int> s = supp[k];
      const auto& e = g->real.e_sparse[rs->word_w0[letters[k]]];
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& en : e.entries)
          if (s.count(en.r) && !s.count(en.c)) {
            s.insert(en.c);
            grew = true;
          }
      }
      supp[k + 1] = std::move(s);
    }

    std::vector<Scalar> row(N);
    for (int j = 0; j < N; ++j) row[j] = x(block - 1, j);

    for (int k = m - 1; k >= 0; --k) {
      int gen = rs->word_w0[letters[k]];
      const auto& e = g->real.e_sparse[gen];
      const auto& e2 = g->real.e2_sparse[gen];
      std::vector<Scalar> re = row_times(row, e);
      std::vector<Scalar> re2 = row_times(row, e2);
      bool found = false;
      Scalar c;
      for (int j = 0; j < N; ++j) {
        if (supp[k].count(j) || re[j].is_zero() || !re2[j].is_zero()) continue;
        c = row[j] / re[j];
        found = true;
        break;
      }
      if (!found) {
        for (int j = 0; j < N; ++j)
          if (!supp[k].count(j) && !row[j].is_zero())
            throw Error(ErrorKind::NotInChartDomain, "cannot read coordinate " + rs->positive_roots[letters[k]].label());
      }
      chart.coords[letters[k]] = c;
      Matrix r(1, N);
      for (int j = 0; j < N; ++j) r(0, j) = row[j];
      right_multiply_exp(r, e, e2, -c);
      for (int j = 0; j < N; ++j) {
        row[j] = r(0, j);
        if (!supp[k].count(j) && !row[j].is_zero())
          throw Error(ErrorKind::NotInChartDomain, "row not generated by the string at " + rs->positive_roots[letters[k]].label());
      }
    }
    for (int k = m - 1; k >= 0; --k) {
      int gen = rs->word_w0[letters[k]];
      right_multiply_exp(x, g->real.e_sparse[gen], g->real.e2_sparse[gen], -chart.coords[letters[k]]);
    }
  }
  if (!x.is_identity() || !(chart_to_matrix(*g, chart.coords) == x_bar))
    throw Error(ErrorKind::ReconstructionMismatch, "extracted chart does not reproduce the matrix");
  return chart;
}

const std::vector<std::array<int, 2>>& rank2_monomial_exponents(Rank2 pattern) {
  static const std::vector<std::array<int, 2>> a2 = {{1, 0}, {1, 1}, {0, 1}};
  static const std::vector<std::array<int, 2>> b2 = {{1, 0}, {2, 1}, {1, 1}, {0, 1}};
  static const std::vector<std::array<int, 2>> g2 = {{1, 0}, {3, 1}, {2, 1}, {3, 2}, {1, 1}, {0, 1}};
  switch (pattern) {
    case Rank2::A2: return a2;
    case Rank2::B2: return b2;
    case Rank2::G2: return g2;
  }
  return a2;
}

std::vector<std::vector<int>> rank2_invariant_sums(Rank2 pattern) {
  switch (pattern) {
    case Rank2::A2: return {{0, 1, 2}};
    case Rank2::B2: return {{0, 2}, {1, 3}};
    case Rank2::G2: return {{0, 2, 4}, {1, 3, 5}};
  }
  return {};
}

Scalar rank2_monomial(Rank2 pattern, const std::vector<Scalar>& tuple, int which) {
  const auto& ex = rank2_monomial_exponents(pattern);
  if (tuple.size() != ex.size()) throw Error(ErrorKind::DomainViolation, "rank-2 tuple has wrong length");
  Scalar r(1);
  for (size_t k = 0; k < ex.size(); ++k) r *= pow(tuple[k], ex[k][which]);
  return r;
}

Scalar monomial_weight(const LusztigChart& chart, const Weight& mu) {
  const RootSystem& rs = *chart.system;
  Scalar r(1);
  for (int k = 0; k < rs.dimension(); ++k) {
    Rational e = coroot_pairing(rs, mu, rs.positive_roots[k]);
    if (e.get_den() != 1) throw Error(ErrorKind::DomainViolation, "non-integral exponent in t^mu");
    long ei = e.get_num().get_si();
    if (ei == 0) continue;
    if (chart.coords[k].is_zero()) {
      if (ei < 0) throw Error(ErrorKind::ZeroBaseNegativeExponent, rs.positive_roots[k].label());
      return Scalar(0);
    }
    r *= pow(chart.coords[k], static_cast<int>(ei));
  }
  return r;
}

std::complex<double> monomial_weight(const RootSystem& rs, const std::vector<double>& coords,
                                     const std::vector<std::complex<double>>& mu) {
  std::complex<double> acc = 0;
  for (int k = 0; k < rs.dimension(); ++k) {
    Weight cor = rs.coroot(rs.positive_roots[k]);
    std::complex<double> e = 0;
    for (int m = 0; m < rs.n; ++m) e += mu[m] * cor[m].get_d();
    acc += e * std::log(coords[k]);
  }
  return std::exp(acc);
}

}  // namespace whittaker
