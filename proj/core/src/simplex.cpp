#include "whittaker/simplex.hpp"

#include <algorithm>

namespace whittaker {

CenteredPoint centered_feasible_point(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                      const Rational& upper) {
  const int rows = static_cast<int>(a.size());
  const int d = rows ? static_cast<int>(a[0].size()) : 0;
  if (rows == 0) return {std::vector<Rational>(d), upper / 2};

  // t = w - shift with w >= 0 keeps the origin feasible; y = yp - ym.
  Rational shift = 0;
  for (int r = 0; r < rows; ++r) shift = std::max({shift, Rational(-b[r]), Rational(b[r] - upper)});

  const int m = 2 * rows;
  const int nstruct = 2 * d + 1;
  const int ncols = nstruct + m;
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(ncols + 1));
  for (int r = 0; r < rows; ++r) {
    auto& lo = tab[2 * r];  // w - a.y <= b + shift
    auto& hi = tab[2 * r + 1];  // w + a.y <= upper - b + shift
    for (int j = 0; j < d; ++j) {
      lo[j] = -a[r][j];
      lo[d + j] = a[r][j];
      hi[j] = a[r][j];
      hi[d + j] = -a[r][j];
    }
    lo[2 * d] = hi[2 * d] = 1;
    lo[nstruct + 2 * r] = 1;
    hi[nstruct + 2 * r + 1] = 1;
    lo[ncols] = b[r] + shift;
    hi[ncols] = upper - b[r] + shift;
  }
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = nstruct + r;
  // Reduced costs for maximizing w.
  std::vector<Rational> cost(ncols + 1);
  cost[2 * d] = -1;

  while (true) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int r = 0; r < m; ++r) {
      if (sgn(tab[r][enter]) <= 0) continue;
      Rational ratio = tab[r][ncols] / tab[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) throw Error(ErrorKind::Infeasible, "slack maximization is unbounded");
    Rational p = tab[leave][enter];
    for (auto& v : tab[leave]) v /= p;
    for (int r = 0; r < m; ++r) {
      if (r == leave || sgn(tab[r][enter]) == 0) continue;
      Rational f = tab[r][enter];
      for (int j = 0; j <= ncols; ++j) tab[r][j] -= f * tab[leave][j];
    }
    Rational f = cost[enter];
    for (int j = 0; j <= ncols; ++j) cost[j] -= f * tab[leave][j];
    basis[leave] = enter;
  }

  std::vector<Rational> value(nstruct);
  for (int r = 0; r < m; ++r)
    if (basis[r] < nstruct) value[basis[r]] = tab[r][ncols];
  CenteredPoint out;
  for (int j = 0; j < d; ++j) out.point.push_back(value[j] - value[d + j]);
  out.slack = value[2 * d] - shift;
  return out;
}

}  // namespace whittaker
