#include "whittaker/quad.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "whittaker/bz.hpp"
#include "whittaker/simplex.hpp"
#include "whittaker/special.hpp"

namespace whittaker {

namespace {

using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

template <class T>
T pairwise_sum(const T* v, size_t n) {
  if (n <= 16) {
    T s{};
    for (size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

struct GridSums {
  cd all;
  cd even;  // nodes with every index even: the grid of twice the step
  double shell = 0;  // sum of |f| over the outermost layer
  long long nodes = 0;
};

// Sums exp(log_value(k)) over |k_j| <= half[j]. Slices along axis 0 are reduced independently and
// then combined pairwise in index order, so the result does not depend on the thread count.
template <class LogFn>
GridSums tensor_sum(const std::vector<int>& half, const LogFn& log_value) {
  const int d = static_cast<int>(half.size());
  GridSums out;
  if (d == 0) {
    out.all = out.even = std::exp(log_value(nullptr));
    out.nodes = 1;
    return out;
  }
  const int n0 = 2 * half[0] + 1;
  size_t inner = 1;
  for (int j = 1; j < d; ++j) inner *= static_cast<size_t>(2 * half[j] + 1);
  std::vector<cd> slice_all(n0), slice_even(n0);
  std::vector<double> slice_shell(n0);
  std::atomic<int> next{0};

  auto worker = [&] {
    std::vector<cd> buf(inner), ebuf;
    ebuf.reserve(inner);
    std::vector<int> k(d);
    for (int i; (i = next.fetch_add(1)) < n0;) {
      k[0] = i - half[0];
      for (int j = 1; j < d; ++j) k[j] = -half[j];
      const bool even0 = k[0] % 2 == 0, shell0 = std::abs(k[0]) == half[0];
      ebuf.clear();
      double shell = 0;
      for (size_t idx = 0; idx < inner; ++idx) {
        cd v = std::exp(log_value(k.data()));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) v = 0;
        buf[idx] = v;
        bool even = even0, sh = shell0;
        for (int j = 1; j < d; ++j) {
          even = even && k[j] % 2 == 0;
          sh = sh || std::abs(k[j]) == half[j];
        }
        if (even) ebuf.push_back(v);
        if (sh) shell += std::abs(v);
        for (int j = d - 1; j >= 1; --j) {
          if (++k[j] <= half[j]) break;
          k[j] = -half[j];
        }
      }
      slice_all[i] = pairwise_sum(buf);
      slice_even[i] = even0 ? pairwise_sum(ebuf) : cd{};
      slice_shell[i] = shell;
    }
  };
  int threads = std::min(worker_threads(), n0);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<cd> evens;
  for (int i = 0; i < n0; ++i)
    if ((i - half[0]) % 2 == 0) evens.push_back(slice_even[i]);
  out.all = pairwise_sum(slice_all);
  out.even = pairwise_sum(evens);
  out.shell = pairwise_sum(slice_shell);
  out.nodes = static_cast<long long>(n0) * static_cast<long long>(inner);
  return out;
}

// For an integrand analytic in a strip of half-width a the trapezoid error is about C exp(-2 pi a/h),
// so the error at step h is the discrepancy against step 2h times exp(-pi a/h), summed over axes.
double trapezoid_estimate(const GridSums& g, cd scale, double vol, const std::vector<double>& strip,
                          const std::vector<double>& step, double tail) {
  cd fine = scale * vol * g.all;
  double e2 = std::abs(fine - scale * vol * std::pow(2.0, double(step.size())) * g.even);
  double q = 0;
  for (size_t j = 0; j < step.size(); ++j) q += std::exp(-kPi * strip[j] / step[j]);
  return e2 * q + tail;
}

std::vector<int> halves(const std::vector<double>& extent, const std::vector<double>& step) {
  std::vector<int> half;
  for (size_t j = 0; j < extent.size(); ++j) {
    int k = static_cast<int>(std::ceil(extent[j] / step[j]));
    half.push_back(std::max(2, k + (k % 2)));
  }
  return half;
}

long long node_count(const std::vector<int>& half) {
  long long n = 1;
  for (int k : half) n *= 2LL * k + 1;
  return n;
}

// Coarsens the first grid until it fits the evaluation budget (or reaches the minimum size).
void fit_budget(const std::vector<double>& extent, std::vector<double>& step, long long budget) {
  for (;;) {
    std::vector<int> half = halves(extent, step);
    if (node_count(half) <= budget || std::all_of(half.begin(), half.end(), [](int k) { return k <= 2; })) return;
    for (double& h : step) h *= 2;
  }
}

QuadResult finish(QuadResult r, Clock::time_point start, double tol, bool throw_on_failure, const char* what) {
  r.wall_time = Clock::now() - start;
  r.converged = r.est_error <= tol * std::abs(r.value);
  if (!r.converged && throw_on_failure) throw NotConverged(what, r.value, r.est_error);
  return r;
}

// ---- Mellin-Barnes kernel ------------------------------------------------------------------

struct MBRow {
  std::vector<double> a;  // coefficients over integrated axes
  cd offset;              // value at the base point
  int sign;               // +1 numerator, -1 denominator
  std::vector<int> support;
};

struct MBKernel {
  int d = 0;
  std::vector<double> base;
  std::vector<MBRow> rows;
  std::vector<double> expo;  // x-pairing of each integrated variable
  cd log_prefactor;
};

std::vector<Rational> fixed_real_offsets(const MBIntegrand& f, const std::vector<cd>& fixed,
                                         std::vector<std::vector<Rational>>& a) {
  const int nf = static_cast<int>(fixed.size());
  const int d = f.dimension - nf;
  std::vector<Rational> b;
  for (const auto& form : f.num) {
    std::vector<Rational> row(d);
    Rational off = form.constant;
    for (const auto& [v, c] : form.coeffs) {
      if (v < nf)
        off += c * Rational(fixed[v].real());
      else
        row[v - nf] = c;
    }
    a.push_back(row);
    b.push_back(off);
  }
  return b;
}

std::vector<Rational> inner_base_point(const MBIntegrand& f, const std::vector<cd>& fixed,
                                       const BasePointOptions& opt) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b = fixed_real_offsets(f, fixed, a);
  const int d = f.dimension - static_cast<int>(fixed.size());
  if (a.empty()) return std::vector<Rational>(d);
  CenteredPoint p = centered_feasible_point(a, b, opt.upper);
  if (p.slack < opt.margin)
    throw Error(ErrorKind::Infeasible, "best contour slack " + p.slack.get_str() + " is below the margin");
  return p.point;
}

MBKernel make_kernel(const MBIntegrand& f, const std::vector<double>& x, const std::vector<double>& lambda,
                     const std::vector<cd>& fixed, const std::vector<Rational>& base) {
  const int nf = static_cast<int>(fixed.size());
  MBKernel k;
  k.d = f.dimension - nf;
  for (const auto& r : base) k.base.push_back(r.get_d());
  auto add_rows = [&](const std::vector<AffineForm>& forms, int sign) {
    for (const auto& form : forms) {
      MBRow row{std::vector<double>(k.d), form.constant.get_d(), sign, {}};
      double im = 0;
      for (const auto& [j, c] : form.lambda_coeffs) im += c.get_d() * lambda.at(j);
      row.offset += cd(0, im);
      for (const auto& [v, c] : form.coeffs) {
        if (v < nf) {
          row.offset += c.get_d() * fixed[v];
        } else {
          row.a[v - nf] = c.get_d();
          row.offset += c.get_d() * k.base[v - nf];
          row.support.push_back(v - nf);
        }
      }
      k.rows.push_back(std::move(row));
    }
  };
  add_rows(f.num, 1);
  add_rows(f.den, -1);

  cd lp = std::log(f.scale.get_d()) - double(k.d) * std::log(2 * kPi);
  double phase = 0;
  for (int a = 0; a < f.rank && !f.phase.empty(); ++a)
    for (int j = 0; j < f.rank; ++j) phase += lambda.at(a) * f.phase[a][j].get_d() * x.at(j);
  lp += cd(0, -phase);
  for (int v = 0; v < f.dimension; ++v) {
    double c = 0;
    if (!f.exponent.empty())
      for (int j = 0; j < f.rank; ++j) c += f.exponent[v][j].get_d() * x.at(j);
    if (v < nf)
      lp += c * fixed[v];
    else {
      k.expo.push_back(c);
      lp += c * k.base[v - nf];
    }
  }
  k.log_prefactor = lp;
  return k;
}

// Distance to the nearest numerator pole along each axis.
std::vector<double> strip_widths(const MBKernel& k) {
  std::vector<double> w(k.d, std::numeric_limits<double>::infinity());
  for (const auto& r : k.rows) {
    if (r.sign < 0) continue;
    for (int j : r.support) w[j] = std::min(w[j], r.offset.real() / std::abs(r.a[j]));
  }
  for (int j = 0; j < k.d; ++j)
    if (!std::isfinite(w[j]) || w[j] <= 0)
      throw Error(ErrorKind::StructureViolation, "contour axis " + std::to_string(j) + " has no decaying factor");
  return w;
}

double row_log_abs(const MBRow& r, int axis, double y) {
  return r.sign * log_gamma_wrapped(r.offset + cd(0, r.a[axis] * y)).real();
}

// Per-axis truncation from the Gamma envelope with the other axes at the base point.
std::vector<double> truncations(const MBKernel& k, const std::vector<double>& step, double tol, double safety) {
  std::vector<std::vector<std::pair<double, double>>> scans(k.d);
  double peak = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < k.d; ++j) {
    auto value = [&](double y) {
      double s = 0;
      for (const auto& r : k.rows)
        if (std::find(r.support.begin(), r.support.end(), j) != r.support.end()) s += row_log_abs(r, j, y);
      return s;
    };
    for (int dir : {1, -1}) {
      double local = -std::numeric_limits<double>::infinity();
      int below = 0;
      for (int m = (dir > 0 ? 0 : 1); m < 20000 && below < 8; ++m) {
        double y = dir * m * step[j];
        double v = value(y);
        scans[j].emplace_back(y, v);
        local = std::max(local, v);
        below = v < local + std::log(tol) - 12 ? below + 1 : 0;
      }
      peak = std::max(peak, local);
    }
  }
  std::vector<double> t(k.d);
  for (int j = 0; j < k.d; ++j) {
    double ext = 2 * step[j];
    double local = -std::numeric_limits<double>::infinity();
    for (const auto& [y, v] : scans[j]) local = std::max(local, v);
    for (const auto& [y, v] : scans[j])
      if (v >= local + std::log(tol / 10)) ext = std::max(ext, std::abs(y));
    t[j] = safety * ext;
  }
  return t;
}

struct MBPlan {
  MBKernel kernel;
  std::vector<double> strip;
  std::vector<double> step;
  std::vector<double> trunc;
};

MBPlan plan(const MBIntegrand& f, const std::vector<double>& x, const std::vector<double>& lambda,
            const std::vector<cd>& fixed, const MBOptions& opt, double tol) {
  std::vector<Rational> base = opt.base_point ? *opt.base_point : inner_base_point(f, fixed, opt.contour);
  if (static_cast<int>(base.size()) != f.dimension - static_cast<int>(fixed.size()))
    throw Error(ErrorKind::DomainViolation, "base point has the wrong length");
  MBPlan p{make_kernel(f, x, lambda, fixed, base), {}, {}, {}};
  p.strip = strip_widths(p.kernel);
  for (double a : p.strip) p.step.push_back(std::min(1.0, 2 * kPi * a / (std::log(1 / tol) + 4)));
  p.trunc = truncations(p.kernel, p.step, tol, opt.truncation_safety);
  return p;
}

QuadResult integrate_plan(const MBPlan& p, double tol, const MBOptions& opt, Clock::time_point start) {
  const MBKernel& k = p.kernel;
  QuadResult r;
  std::vector<double> step = p.step;
  fit_budget(p.trunc, step, opt.max_evaluations);
  for (int level = 0; level <= opt.max_refinements; ++level) {
    std::vector<int> half = halves(p.trunc, step);
    if (level > 0 && r.evaluations + node_count(half) > opt.max_evaluations) break;

    // Rows touching at most two axes are tabulated; the rest are evaluated per node.
    std::vector<std::vector<cd>> axis_table(k.d);
    for (int j = 0; j < k.d; ++j) {
      axis_table[j].assign(2 * half[j] + 1, cd{});
      for (int m = -half[j]; m <= half[j]; ++m) axis_table[j][m + half[j]] = cd(0, k.expo[j] * m * step[j]);
    }
    struct PairTable {
      int a, b, width;
      std::vector<cd> v;
    };
    std::vector<PairTable> pairs;
    std::vector<const MBRow*> direct;
    for (const auto& row : k.rows) {
      if (row.support.empty()) {
        continue;
      } else if (row.support.size() == 1) {
        int j = row.support[0];
        for (int m = -half[j]; m <= half[j]; ++m)
          axis_table[j][m + half[j]] += double(row.sign) * log_gamma_wrapped(row.offset + cd(0, row.a[j] * m * step[j]));
      } else if (row.support.size() == 2) {
        int a = row.support[0], b = row.support[1];
        auto it = std::find_if(pairs.begin(), pairs.end(), [&](const PairTable& t) { return t.a == a && t.b == b; });
        if (it == pairs.end()) {
          pairs.push_back({a, b, 2 * half[b] + 1,
                           std::vector<cd>(size_t(2 * half[a] + 1) * size_t(2 * half[b] + 1))});
          it = pairs.end() - 1;
        }
        for (int ma = -half[a]; ma <= half[a]; ++ma)
          for (int mb = -half[b]; mb <= half[b]; ++mb)
            it->v[size_t(ma + half[a]) * it->width + (mb + half[b])] += double(row.sign) *
                log_gamma_wrapped(row.offset + cd(0, row.a[a] * ma * step[a] + row.a[b] * mb * step[b]));
      } else {
        direct.push_back(&row);
      }
    }
    cd constant_rows = 0;
    for (const auto& row : k.rows)
      if (row.support.empty()) constant_rows += double(row.sign) * log_gamma_wrapped(row.offset);

    auto logf = [&](const int* idx) {
      cd s = constant_rows;
      for (int j = 0; j < k.d; ++j) s += axis_table[j][idx[j] + half[j]];
      for (const auto& t : pairs) s += t.v[size_t(idx[t.a] + half[t.a]) * t.width + (idx[t.b] + half[t.b])];
      for (const MBRow* row : direct) {
        double im = 0;
        for (int j : row->support) im += row->a[j] * idx[j] * step[j];
        s += double(row->sign) * log_gamma_wrapped(row->offset + cd(0, im));
      }
      return s;
    };
    GridSums g = tensor_sum(half, logf);
    double vol = 1;
    for (double h : step) vol *= h;
    cd pref = std::exp(k.log_prefactor);
    r.value = pref * vol * g.all;
    r.evaluations += g.nodes;
    r.est_error = k.d == 0 ? 0.0 : trapezoid_estimate(g, pref, vol, p.strip, step, 3 * std::abs(pref) * vol * g.shell);
    if (r.est_error <= tol * std::abs(r.value)) break;
    for (double& h : step) h /= 2;
  }
  return finish(r, start, tol, opt.throw_on_failure, "Mellin-Barnes quadrature did not reach the tolerance");
}

// ---- cone kernel ----------------------------------------------------------------------------

struct ConeKernel {
  int d = 0;
  std::vector<double> omega;   // (lambda, coroot_k)
  std::vector<double> weight;  // exp(alpha_gen(k)(x))
  std::vector<std::pair<int, int>> sums;
  std::vector<std::vector<std::pair<int, int>>> image;  // (atom id, exponent); ids >= d index sums
  cd log_prefactor;

  // log of the integrand in u = log t; log_t holds u.
  cd log_value(const double* u, double* scratch) const {
    double re = 0, im = 0;
    for (int k = 0; k < d; ++k) {
      scratch[k] = u[k];
      re -= std::exp(u[k]) * weight[k];
      im -= omega[k] * u[k];
    }
    for (size_t s = 0; s < sums.size(); ++s) {
      double a = u[sums[s].first], b = u[sums[s].second];
      double m = std::max(a, b);
      scratch[d + s] = m + std::log1p(std::exp(-std::abs(a - b)));
    }
    for (const auto& mono : image) {
      double e = 0;
      for (const auto& [id, p] : mono) e += p * scratch[id];
      re -= std::exp(e);
    }
    return {re, im};
  }
};

ConeKernel make_cone(Family family, int n, const std::vector<double>& lambda, const std::vector<double>& x) {
  auto rs = root_system(family, n);
  if (static_cast<int>(lambda.size()) != n || static_cast<int>(x.size()) != n)
    throw Error(ErrorKind::DomainViolation, "lambda and x must have length " + std::to_string(n));
  ConeKernel k;
  k.d = rs->dimension();
  BZFormula f = bz_formula(*rs);
  for (int c = 0; c < k.d; ++c) {
    Weight cor = rs->coroot(rs->positive_roots[c]);
    const Weight& alpha = rs->simple_roots[rs->word_w0[c]];
    double om = 0, ax = 0;
    for (int j = 0; j < n; ++j) {
      om += cor[j].get_d() * lambda[j];
      ax += alpha[j].get_d() * x[j];
    }
    k.omega.push_back(om);
    k.weight.push_back(std::exp(ax));
  }
  for (const auto& mono : f.image) {
    std::vector<std::pair<int, int>> m;
    for (const auto& [atom, e] : mono.factors) {
      if (atom.kind == Atom::Coord) {
        m.emplace_back(atom.a, e);
        continue;
      }
      auto key = std::make_pair(atom.a, atom.b);
      auto it = std::find(k.sums.begin(), k.sums.end(), key);
      if (it == k.sums.end()) it = k.sums.insert(k.sums.end(), key);
      m.emplace_back(k.d + int(it - k.sums.begin()), e);
    }
    k.image.push_back(m);
  }
  double phase = 0;
  for (int j = 0; j < n; ++j) phase += lambda[j] * x[j];
  k.log_prefactor = cd(0, -phase);
  return k;
}

struct Box {
  std::vector<double> lo, hi;
};

// Region where the integrand modulus exceeds tol relative to its peak, from a unit-step scan.
Box cone_box(const ConeKernel& k, double tol) {
  const int d = k.d;
  for (int L = 16;; L *= 2) {
    std::vector<int> idx(d, -L);
    std::vector<double> u(d), scratch(d + k.sums.size());
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> values;
    long long total = node_count(std::vector<int>(d, L));
    values.reserve(total);
    for (long long c = 0; c < total; ++c) {
      for (int j = 0; j < d; ++j) u[j] = idx[j];
      double v = k.log_value(u.data(), scratch.data()).real();
      values.push_back(v);
      peak = std::max(peak, v);
      for (int j = d - 1; j >= 0; --j) {
        if (++idx[j] <= L) break;
        idx[j] = -L;
      }
    }
    Box b{std::vector<double>(d, L), std::vector<double>(d, -L)};
    std::fill(idx.begin(), idx.end(), -L);
    double cut = peak + std::log(tol) - 8;
    for (long long c = 0; c < total; ++c) {
      if (values[c] >= cut)
        for (int j = 0; j < d; ++j) {
          b.lo[j] = std::min(b.lo[j], double(idx[j]));
          b.hi[j] = std::max(b.hi[j], double(idx[j]));
        }
      for (int j = d - 1; j >= 0; --j) {
        if (++idx[j] <= L) break;
        idx[j] = -L;
      }
    }
    bool inside = true;
    for (int j = 0; j < d; ++j) {
      inside = inside && b.lo[j] > -L && b.hi[j] < L;
      b.lo[j] -= 1.5;
      b.hi[j] += 1.5;
    }
    if (inside || L >= 32) return b;
  }
}

// Mode by coordinate sweeps, then per-axis extents through the mode.
Box cone_box_by_scans(const ConeKernel& k, double tol) {
  const int d = k.d;
  std::vector<double> u(d, 0.0), scratch(d + k.sums.size());
  auto val = [&] { return k.log_value(u.data(), scratch.data()).real(); };
  for (int sweep = 0; sweep < 30; ++sweep)
    for (int j = 0; j < d; ++j) {
      double best = val(), arg = u[j];
      for (double y = -30; y <= 30; y += 0.125) {
        u[j] = y;
        double v = val();
        if (v > best) best = v, arg = y;
      }
      u[j] = arg;
    }
  double peak = val();
  Box b{u, u};
  for (int j = 0; j < d; ++j) {
    double c = u[j];
    for (int dir : {-1, 1}) {
      double y = c;
      for (; std::abs(y - c) < 60; y += dir * 0.125) {
        u[j] = y;
        if (val() < peak + std::log(tol) - 12) break;
      }
      (dir < 0 ? b.lo[j] : b.hi[j]) = y + dir * 0.5 * std::abs(y - c);
    }
    u[j] = c;
  }
  return b;
}

double radical_inverse(std::uint64_t i, int base) {
  double r = 0, f = 1.0 / base;
  for (; i; i /= base, f /= base) r += f * double(i % base);
  return r;
}

}  // namespace

// ---- public API -------------------------------------------------------------------------------

std::vector<Rational> contour_base_point(const ConstraintSet& constraints, int dimension,
                                         const BasePointOptions& options) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& f : constraints) {
    std::vector<Rational> row(dimension);
    for (const auto& [v, c] : f.coeffs) row.at(v) = c;
    a.push_back(row);
    b.push_back(f.constant);
  }
  if (a.empty()) return std::vector<Rational>(dimension);
  CenteredPoint p = centered_feasible_point(a, b, options.upper);
  if (p.slack < options.margin)
    throw Error(ErrorKind::Infeasible, "best contour slack " + p.slack.get_str() + " is below the margin");
  return p.point;
}

Rational min_slack(const ConstraintSet& constraints, const std::vector<Rational>& point) {
  Rational m = 0;
  bool first = true;
  for (const auto& f : constraints) {
    Rational v = f.real_at(point);
    if (first || v < m) m = v;
    first = false;
  }
  return m;
}

double default_tolerance(int dimension) {
  if (dimension <= 2) return 1e-6;
  if (dimension == 3) return 1e-5;
  return 1e-3;
}

int worker_threads() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("WHITTAKER_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) hw = std::min(hw, cap);
  }
  return hw;
}

ContourSpec plan_contour(const MBIntegrand& f, const std::vector<double>& x, const std::vector<double>& lambda,
                         const MBOptions& options) {
  double tol = options.tol > 0 ? options.tol : default_tolerance(f.dimension);
  MBPlan p = plan(f, x, lambda, {}, options, tol);
  ContourSpec c{p.kernel.base, p.trunc, p.step, {}};
  for (int h : halves(p.trunc, p.step)) c.panels.push_back(2 * h + 1);
  return c;
}

QuadResult eval_mb(const MBIntegrand& f, const std::vector<double>& x, const std::vector<double>& lambda,
                   const MBOptions& options) {
  auto start = Clock::now();
  if (f.dimension > options.max_dimension)
    throw Error(ErrorKind::DimensionTooLarge, "Mellin-Barnes dimension " + std::to_string(f.dimension));
  if (static_cast<int>(x.size()) != f.rank || static_cast<int>(lambda.size()) != f.rank)
    throw Error(ErrorKind::DomainViolation, "lambda and x must have length " + std::to_string(f.rank));
  double tol = options.tol > 0 ? options.tol : default_tolerance(f.dimension);
  return integrate_plan(plan(f, x, lambda, {}, options, tol), tol, options, start);
}

QuadResult eval_mellin(const MellinSplit& split, const std::vector<cd>& s, const std::vector<double>& lambda,
                       const MBOptions& options) {
  auto start = Clock::now();
  const MBIntegrand& f = split.integrand;
  if (static_cast<int>(s.size()) != split.outer)
    throw Error(ErrorKind::DomainViolation, "expected " + std::to_string(split.outer) + " outer variables");
  if (static_cast<int>(lambda.size()) != f.rank)
    throw Error(ErrorKind::DomainViolation, "lambda must have length " + std::to_string(f.rank));
  const int inner = f.dimension - split.outer;
  if (inner > options.max_dimension)
    throw Error(ErrorKind::DimensionTooLarge, "inner Mellin dimension " + std::to_string(inner));
  double tol = options.tol > 0 ? options.tol : default_tolerance(inner);
  std::vector<double> x(f.rank, 0.0);
  return integrate_plan(plan(f, x, lambda, s, options, tol), tol, options, start);
}

QuadResult eval_cone(Family family, int n, const std::vector<double>& lambda, const std::vector<double>& x,
                     const ConeOptions& options) {
  auto start = Clock::now();
  ConeKernel k = make_cone(family, n, lambda, x);
  const int d = k.d;
  double tol = options.tol > 0 ? options.tol : default_tolerance(d);
  QuadResult r;
  cd pref = std::exp(k.log_prefactor);

  if (d <= options.tensor_max_dimension) {
    Box box = cone_box(k, tol);
    // exp(-t) stays bounded for |Im u| < pi/2; half of that is used as the strip.
    std::vector<double> center(d), width(d), step(d, 0.5), strip(d, kPi / 4);
    for (int j = 0; j < d; ++j) {
      center[j] = (box.lo[j] + box.hi[j]) / 2;
      width[j] = (box.hi[j] - box.lo[j]) / 2;
    }
    fit_budget(width, step, options.max_evaluations);
    for (int level = 0; level <= options.max_refinements; ++level) {
      std::vector<int> half = halves(width, step);
      if (level > 0 && r.evaluations + node_count(half) > options.max_evaluations) break;
      std::vector<std::vector<double>> grid(d);
      for (int j = 0; j < d; ++j)
        for (int m = -half[j]; m <= half[j]; ++m) grid[j].push_back(center[j] + m * step[j]);
      auto logf = [&](const int* idx) {
        double u[16], scratch[64];
        for (int j = 0; j < d; ++j) u[j] = grid[j][idx[j] + half[j]];
        return k.log_value(u, scratch);
      };
      GridSums g = tensor_sum(half, logf);
      double vol = 1;
      for (double h : step) vol *= h;
      r.value = pref * vol * g.all;
      r.evaluations += g.nodes;
      r.est_error = trapezoid_estimate(g, pref, vol, strip, step, 3 * vol * g.shell);
      if (r.est_error <= tol * std::abs(r.value)) break;
      for (double& h : step) h /= 2;
    }
    return finish(r, start, tol, options.throw_on_failure, "cone quadrature did not reach the tolerance");
  }

  // Randomly shifted Halton points; the spread over shifts gives the error estimate.
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (d > 16) throw Error(ErrorKind::DimensionTooLarge, "cone dimension " + std::to_string(d));
  Box box = cone_box_by_scans(k, tol);
  double vol = 1;
  for (int j = 0; j < d; ++j) vol *= box.hi[j] - box.lo[j];
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cd> estimates;
  for (int s = 0; s < options.qmc_shifts; ++s) {
    std::vector<double> shift(d);
    for (auto& v : shift) v = unif(rng);
    const int points = options.qmc_points;
    const int chunk = 4096;
    const int chunks = (points + chunk - 1) / chunk;
    std::vector<cd> partial(chunks);
    std::atomic<int> next{0};
    auto worker = [&] {
      double u[16], scratch[64];
      std::vector<cd> buf;
      for (int c; (c = next.fetch_add(1)) < chunks;) {
        buf.clear();
        for (int i = c * chunk; i < std::min(points, (c + 1) * chunk); ++i) {
          for (int j = 0; j < d; ++j) {
            double q = radical_inverse(std::uint64_t(i) + 1, kPrimes[j]) + shift[j];
            q -= std::floor(q);
            u[j] = box.lo[j] + q * (box.hi[j] - box.lo[j]);
          }
          cd v = std::exp(k.log_value(u, scratch));
          buf.push_back(std::isfinite(v.real()) ? v : cd{});
        }
        partial[c] = pairwise_sum(buf);
      }
    };
    int threads = std::min(worker_threads(), chunks);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    estimates.push_back(pref * vol * pairwise_sum(partial) / double(points));
    r.evaluations += points;
  }
  cd mean = pairwise_sum(estimates) / double(estimates.size());
  double var = 0;
  for (const auto& e : estimates) var += std::norm(e - mean);
  var /= std::max<size_t>(1, estimates.size() - 1);
  r.value = mean;
  r.est_error = std::sqrt(var / double(estimates.size()));
  return finish(r, start, tol, options.throw_on_failure, "quasi-Monte Carlo cone estimate did not reach the tolerance");
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, tol);
}

double integrate_half_line(const std::function<double(double)>& f, double tol) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate(f, tol);
}

double integrate_quadrant(const std::function<double(double, double)>& f, double tol) {
  boost::math::quadrature::exp_sinh<double> outer, inner;
  return outer.integrate(
      [&](double x) { return inner.integrate([&](double y) { return f(x, y); }, tol); }, tol);
}

}  // namespace whittaker
