// One line per acceptance criterion; exit status 1 when any criterion fails.
#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "whittaker/mellin.hpp"
#include "whittaker/quad.hpp"
#include "whittaker/special.hpp"
#include "whittaker/verify.hpp"

using namespace whittaker;
using cd = std::complex<double>;

namespace {

// Pinned tolerances and sample sizes.
constexpr int kOracleCharts = 100;
constexpr int kInvolutionCharts = 200;
constexpr int kMutationTuples = 500;
constexpr int kJacobianPoints = 20;
constexpr double kJacobianTol = 1e-10;
constexpr int kUMatrixCharts = 50;
constexpr double kIntTol = 1e-7;
constexpr double kBesselTol = 1e-6;
constexpr double kBumpTol = 1e-6;
constexpr double kBarnesTol = 1e-8;
constexpr double kRouteTol = 1e-4;
constexpr double kRouteTolD4 = 1e-3;
constexpr int kRoutePoints = 5;
constexpr double kShiftTol = 1e-6;
constexpr double kSymmetryTol = 1e-5;
constexpr double kOracleSeconds = 60;
constexpr double kBesselSeconds = 10;
constexpr double kRouteSeconds = 600;

struct Group {
  Family f;
  int n;
};

std::vector<Group> exact_groups() {
  std::vector<Group> g;
  for (int n = 2; n <= 6; ++n) g.push_back({Family::A, n});
  for (int n = 2; n <= 4; ++n) g.push_back({Family::D, n});
  for (int n = 1; n <= 4; ++n) g.push_back({Family::B, n});
  for (int n = 1; n <= 4; ++n) g.push_back({Family::C, n});
  return g;
}

std::string label(Family f, int n) { return family_name(f) + std::to_string(n); }

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("criterion {:2d} {} {} | {}\n", id, pass ? "PASS" : "FAIL", what, detail);
  std::fflush(stdout);
}

// Aggregates exact check results; keeps the first counterexample.
struct Tally {
  long long trials = 0, passed = 0;
  std::string first_failure;
  void add(const std::string& where, const CheckResult& r) {
    trials += r.trials;
    passed += r.passed;
    if (!r.ok() && first_failure.empty()) first_failure = where + " " + r.name + ": " + r.counterexample.value_or("");
  }
  bool ok() const { return trials > 0 && passed == trials; }
  std::string str() const {
    std::string s = fmt::format("{}/{} passed", passed, trials);
    if (!first_failure.empty()) s += "; first failure " + first_failure;
    return s;
  }
};

void criterion1() {
  Clock clock;
  Tally t;
  std::uint64_t seed = 101;
  for (auto [f, n] : exact_groups()) t.add(label(f, n), check_bz_oracle(f, n, kOracleCharts, seed++));
  double s = clock.seconds();
  report(1, t.ok() && s < kOracleSeconds, "BZ closed form equals the Gauss-decomposition oracle",
         fmt::format("{} charts per group, {}, {:.1f}s (limit {:.0f}s)", kOracleCharts, t.str(), s, kOracleSeconds));
}

void criterion2() {
  Clock clock;
  Tally t;
  std::uint64_t seed = 201;
  for (auto [f, n] : exact_groups()) {
    t.add(label(f, n), check_involution(f, n, kInvolutionCharts, seed));
    t.add(label(f, n), check_inverse(f, n, kInvolutionCharts, seed));
    ++seed;
  }
  report(2, t.ok(), "involution and inverse formulas",
         fmt::format("{} charts per group, {}, {:.1f}s", kInvolutionCharts, t.str(), clock.seconds()));
}

void criterion3() {
  Clock clock;
  Tally t;
  std::uint64_t seed = 301;
  for (Rank2 p : {Rank2::A2, Rank2::B2, Rank2::G2}) t.add(rank2_name(p), check_mutation(p, kMutationTuples, seed++));
  report(3, t.ok(), "rank-2 mutations: involutive, positive, invariant monomials and sums",
         fmt::format("{} tuples per pattern (a2, b2, g2), {}, {:.1f}s", kMutationTuples, t.str(), clock.seconds()));
}

void criterion4() {
  Clock clock;
  Tally t;
  std::uint64_t seed = 401;
  for (auto [f, n] : exact_groups())
    t.add(label(f, n), check_bz_jacobian(f, n, kJacobianPoints, seed++, kJacobianTol));
  for (Rank2 p : {Rank2::A2, Rank2::B2, Rank2::G2})
    t.add(rank2_name(p), check_mutation_jacobian(p, kJacobianPoints, seed++, kJacobianTol));
  report(4, t.ok(), "log-coordinate Jacobian |det| = 1",
         fmt::format("{} points per group and mutation, tol {:.0e}, {}, {:.1f}s", kJacobianPoints, kJacobianTol, t.str(),
                     clock.seconds()));
}

void criterion5() {
  Clock clock;
  Tally t;
  std::uint64_t seed = 501;
  for (auto [f, n] : exact_groups()) t.add(label(f, n), check_u_matrix(f, n, kUMatrixCharts, seed++));
  report(5, t.ok(), "U-matrix structure",
         fmt::format("{} charts per group, {}, {:.1f}s", kUMatrixCharts, t.str(), clock.seconds()));
}

void criterion6() {
  Clock clock;
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> ab(0.5, 3.0), cc(-1.0, 2.0);
  double worst = 0;
  int points = 0;
  while (points < 10) {
    double a = ab(rng), b = ab(rng), c = cc(rng);
    if (a + b + c < 0.5) continue;
    double q = integrate_quadrant([&](double x, double y) {
      return std::exp((a - 1) * std::log(x) + (b - 1) * std::log(y) + c * std::log(x + y) - x - y);
    });
    worst = std::max(worst, rel(q, int_identity(a, b, c)));
    ++points;
  }
  report(6, worst <= kIntTol, "two-dimensional quadrature of the three-Gamma integral",
         fmt::format("10 points, max rel {:.2e} (tol {:.0e}), {:.1f}s", worst, kIntTol, clock.seconds()));
}

std::vector<double> uniform_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(u(rng));
  return v;
}

void criterion7() {
  Clock clock;
  MBIntegrand f = assemble_mb_integrand(Family::A, 2);
  std::mt19937_64 rng(701);
  auto oracle = [](const std::vector<double>& lambda, const std::vector<double>& x) {
    double nu = lambda[0] - lambda[1];
    double u = std::exp(x[0] - x[1]);
    cd phase = std::exp(cd(0, -(lambda[0] * x[0] + lambda[1] * x[1])));
    return phase * std::exp(cd(0, nu / 2 * std::log(u))) * bessel_k_imag_order(nu, 2 * std::sqrt(u));
  };
  MBOptions opts;
  opts.tol = 1e-8;
  std::vector<double> l0 = uniform_vector(rng, 2, -2, 2), x0 = uniform_vector(rng, 2, -1, 1);
  cd c = eval_mb(f, x0, l0, opts).value / oracle(l0, x0);
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    std::vector<double> lambda = uniform_vector(rng, 2, -2, 2), x = uniform_vector(rng, 2, -1, 1);
    worst = std::max(worst, rel(eval_mb(f, x, lambda, opts).value, c * oracle(lambda, x)));
  }
  double s = clock.seconds();
  report(7, worst <= kBesselTol && s < kBesselSeconds, "GL(2) Barnes integral against the Bessel-K oracle",
         fmt::format("c = {:.12f}{:+.1e}i, 10 points, max rel {:.2e} (tol {:.0e}), {:.1f}s (limit {:.0f}s)", c.real(),
                     c.imag(), worst, kBesselTol, s, kBesselSeconds));
}

void criterion8() {
  Clock clock;
  MellinSplit split = mellin_of_whittaker(Family::A, 3);
  std::mt19937_64 rng(801);
  std::vector<double> lambda = uniform_vector(rng, 3, -2, 2);
  MBOptions opts;
  opts.tol = 1e-8;
  double worst = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      std::vector<cd> s{cd(0.5 + 0.25 * i, -1.0 + 0.5 * j), cd(0.6 + 0.2 * j, 0.8 - 0.4 * i)};
      worst = std::max(worst, rel(eval_mellin(split, s, lambda, opts).value, bump_gl3(lambda, s[0], s[1])));
    }
  // First Barnes lemma as a one-variable Barnes integral.
  MBIntegrand b;
  b.family = Family::A;
  b.rank = 1;
  b.dimension = 1;
  b.variables = {"s"};
  const Rational pa(2, 5), pb(3, 4), pc(1, 3), pd(11, 10);
  auto form = [](int sign, const Rational& k) {
    AffineForm v = AffineForm::variable(0, sign);
    v.constant = k;
    return v;
  };
  b.num = {form(1, pa), form(1, pb), form(-1, pc), form(-1, pd)};
  b.exponent = {{Rational(0)}};
  b.phase = {{Rational(0)}};
  MBOptions bo;
  bo.tol = 1e-11;
  auto G = [](const Rational& v) { return std::tgamma(v.get_d()); };
  double expect = G(pa + pc) * G(pa + pd) * G(pb + pc) * G(pb + pd) / G(pa + pb + pc + pd);
  double barnes = rel(eval_mb(b, {0}, {0}, bo).value, expect);
  report(8, worst <= kBumpTol && barnes <= kBarnesTol, "GL(3) inner Barnes integral against the Bump product",
         fmt::format("5x5 grid max rel {:.2e} (tol {:.0e}); first Barnes lemma rel {:.2e} (tol {:.0e}); {:.1f}s", worst,
                     kBumpTol, barnes, kBarnesTol, clock.seconds()));
}

void criterion9() {
  Clock clock;
  std::mt19937_64 rng(901);
  struct Case {
    Family f;
    int n;
    double tol;
  };
  std::vector<Case> cases{{Family::A, 2, kRouteTol}, {Family::A, 3, kRouteTol}, {Family::B, 1, kRouteTol},
                          {Family::D, 2, kRouteTol}, {Family::C, 1, kRouteTol}, {Family::C, 2, kRouteTolD4}};
  std::string detail;
  bool pass = true;
  for (const auto& c : cases) {
    MBIntegrand f = assemble_mb_integrand(c.f, c.n);
    MBOptions mo;
    mo.tol = f.dimension <= 3 ? 1e-6 : 1e-4;
    ConeOptions co;
    co.tol = f.dimension <= 3 ? 1e-8 : 1e-6;
    double worst = 0;
    for (int k = 0; k < kRoutePoints; ++k) {
      std::vector<double> lambda = uniform_vector(rng, c.n, -2, 2), x = uniform_vector(rng, c.n, -1, 1);
      cd cone = eval_cone(c.f, c.n, lambda, x, co).value;
      worst = std::max(worst, rel(eval_mb(f, x, lambda, mo).value, cone));
    }
    pass = pass && worst <= c.tol;
    detail += fmt::format("{} {:.1e}{} ", label(c.f, c.n), worst, worst <= c.tol ? "" : "!");
  }
  double s = clock.seconds();
  report(9, pass && s < kRouteSeconds, "Barnes route against the cone integral",
         fmt::format("{} points each, max rel: {}(tol {:.0e}, sp2 {:.0e}), {:.1f}s (limit {:.0f}s)", kRoutePoints, detail,
                     kRouteTol, kRouteTolD4, s, kRouteSeconds));
}

// Random feasible base points: the centered point moved along random directions, keeping slack >= 1/8.
std::vector<std::vector<Rational>> shifted_points(const MBIntegrand& f, std::mt19937_64& rng, int count) {
  ConstraintSet cs = f.constraints();
  std::vector<Rational> base = contour_base_point(cs, f.dimension);
  std::uniform_int_distribution<int> dir(-4, 4);
  std::vector<std::vector<Rational>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Rational> step(f.dimension);
    bool nonzero = false;
    for (auto& v : step) {
      v = Rational(dir(rng), 8);
      nonzero = nonzero || v != 0;
    }
    if (!nonzero) continue;
    std::vector<Rational> p = base;
    for (int k = 0; k < f.dimension; ++k) p[k] += step[k];
    if (min_slack(cs, p) >= Rational(1, 8)) out.push_back(p);
  }
  return out;
}

void criterion10() {
  Clock clock;
  std::mt19937_64 rng(1001);
  std::string detail;
  bool pass = true;
  for (auto [f, n] : std::vector<Group>{{Family::A, 2}, {Family::A, 3}, {Family::B, 1}, {Family::D, 2}, {Family::C, 1}}) {
    MBIntegrand g = assemble_mb_integrand(f, n);
    std::vector<double> lambda = uniform_vector(rng, n, -2, 2), x = uniform_vector(rng, n, -1, 1);
    MBOptions opts;
    opts.tol = 1e-9;
    cd ref = eval_mb(g, x, lambda, opts).value;
    double worst = 0;
    for (const auto& p : shifted_points(g, rng, 3)) {
      opts.base_point = p;
      worst = std::max(worst, rel(eval_mb(g, x, lambda, opts).value, ref));
    }
    pass = pass && worst <= kShiftTol;
    detail += fmt::format("{} {:.1e} ", label(f, n), worst);
  }
  report(10, pass, "contour-shift independence",
         fmt::format("3 shifts per case, max rel: {}(tol {:.0e}), {:.1f}s", detail, kShiftTol, clock.seconds()));
}

void criterion11() {
  Clock clock;
  std::mt19937_64 rng(1101);
  double worst = 0;
  for (int n : {2, 3}) {
    MBIntegrand g = assemble_mb_integrand(Family::A, n);
    MBOptions opts;
    opts.tol = 1e-7;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> lambda = uniform_vector(rng, n, -2, 2), x = uniform_vector(rng, n, -1, 1);
      cd ref = eval_mb(g, x, lambda, opts).value;
      std::vector<double> perm = lambda;
      std::sort(perm.begin(), perm.end());
      do {
        worst = std::max(worst, rel(eval_mb(g, x, perm, opts).value, ref));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  report(11, worst <= kSymmetryTol, "GL lambda-permutation symmetry",
         fmt::format("GL(2) and GL(3), all permutations at 3 points each, max rel {:.2e} (tol {:.0e}), {:.1f}s", worst,
                     kSymmetryTol, clock.seconds()));
}

void guarded(int id, const std::function<void()>& run) {
  try {
    run();
  } catch (const std::exception& e) {
    report(id, false, "raised an exception", e.what());
  }
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                    criterion5, criterion6, criterion7,  criterion8,
                                                    criterion9, criterion10, criterion11};
  for (size_t k = 0; k < criteria.size(); ++k) guarded(static_cast<int>(k + 1), criteria[k]);
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
