#include "whittaker/verify.hpp"

#include <cmath>
#include <functional>

#include "whittaker/bz.hpp"

namespace whittaker {

namespace {

CheckResult run_charts(const std::string& name, Family family, int n, int trials, std::uint64_t seed,
                       const std::function<bool(const LusztigChart&)>& pass) {
  CheckResult r{name, trials, 0, std::nullopt};
  RationalSampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    LusztigChart c = random_chart(family, n, rng);
    bool good = false;
    try {
      good = pass(c);
    } catch (const Error&) {
      good = false;
    }
    if (good)
      ++r.passed;
    else if (!r.counterexample)
      r.counterexample = describe_chart(c);
  }
  return r;
}

bool unit_jacobian(const Scalar& det, double tol) { return det == Scalar(1) && std::abs(det.to_double() - 1) <= tol; }

template <size_t N, class Map>
std::vector<Dual<Scalar>> apply_dual(Map map, const std::vector<Dual<Scalar>>& x) {
  std::array<Dual<Scalar>, N> a;
  for (size_t k = 0; k < N; ++k) a[k] = x[k];
  auto y = map(a);
  return {y.begin(), y.end()};
}

size_t tuple_size(Rank2 p) { return p == Rank2::A2 ? 3 : p == Rank2::B2 ? 4 : 6; }

std::vector<Scalar> mutate(Rank2 p, const std::vector<Scalar>& x) {
  switch (p) {
    case Rank2::A2: {
      auto y = mutate_a2<Scalar>({x[0], x[1], x[2]});
      return {y.begin(), y.end()};
    }
    case Rank2::B2: {
      auto y = mutate_b2<Scalar>({x[0], x[1], x[2], x[3]});
      return {y.begin(), y.end()};
    }
    case Rank2::G2: {
      auto y = mutate_g2<Scalar>({x[0], x[1], x[2], x[3], x[4], x[5]});
      return {y.begin(), y.end()};
    }
  }
  return {};
}

std::string describe_tuple(const std::vector<Scalar>& x) {
  std::string s = "(";
  for (size_t k = 0; k < x.size(); ++k) s += (k ? ", " : "") + x[k].str();
  return s + ")";
}

CheckResult run_tuples(const std::string& name, Rank2 p, int trials, std::uint64_t seed,
                       const std::function<bool(const std::vector<Scalar>&)>& pass) {
  CheckResult r{name, trials, 0, std::nullopt};
  RationalSampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Scalar> x;
    for (size_t k = 0; k < tuple_size(p); ++k) x.emplace_back(rng.positive());
    bool good = false;
    try {
      good = pass(x);
    } catch (const Error&) {
      good = false;
    }
    if (good)
      ++r.passed;
    else if (!r.counterexample)
      r.counterexample = describe_tuple(x);
  }
  return r;
}

}  // namespace

std::string describe_chart(const LusztigChart& chart) {
  std::string s;
  for (int k = 0; k < chart.system->dimension(); ++k)
    s += (k ? ", " : "") + chart.system->positive_roots[k].label() + "=" + chart.coords[k].str();
  return s;
}

std::string rank2_name(Rank2 pattern) {
  switch (pattern) {
    case Rank2::A2: return "a2";
    case Rank2::B2: return "b2";
    case Rank2::G2: return "g2";
  }
  return "";
}

CheckResult check_bz_oracle(Family family, int n, int trials, std::uint64_t seed, int tamper) {
  return run_charts("bz_oracle", family, n, trials, seed, [&](const LusztigChart& c) {
    BZResult o = bz_oracle(c);
    BZResult k = bz_closed_form(c, tamper);
    return o.image.coords == k.image.coords && o.twist == k.twist;
  });
}

CheckResult check_involution(Family family, int n, int trials, std::uint64_t seed) {
  return run_charts("involution", family, n, trials, seed, [](const LusztigChart& c) {
    return bz_closed_form(bz_closed_form(c).image).image.coords == c.coords;
  });
}

CheckResult check_inverse(Family family, int n, int trials, std::uint64_t seed) {
  return run_charts("inverse", family, n, trials, seed,
                    [](const LusztigChart& c) { return bz_inverse(bz_closed_form(c).image).coords == c.coords; });
}

CheckResult check_u_matrix(Family family, int n, int trials, std::uint64_t seed) {
  return run_charts("u_matrix", family, n, trials, seed, [](const LusztigChart& c) {
    u_matrix_check(c);
    return true;
  });
}

CheckResult check_bz_jacobian(Family family, int n, int trials, std::uint64_t seed, double tol) {
  return run_charts("jacobian", family, n, trials, seed,
                    [&](const LusztigChart& c) { return unit_jacobian(bz_log_jacobian(c), tol); });
}

CheckResult check_mutation(Rank2 p, int trials, std::uint64_t seed) {
  return run_tuples("mutation_" + rank2_name(p), p, trials, seed, [p](const std::vector<Scalar>& x) {
    std::vector<Scalar> y = mutate(p, x);
    if (mutate(p, y) != x) return false;
    for (const auto& v : y)
      if (v.sign() <= 0) return false;
    for (int which : {0, 1})
      if (rank2_monomial(p, x, which) != rank2_monomial(p, y, which)) return false;
    for (const auto& idx : rank2_invariant_sums(p)) {
      Scalar sx(0), sy(0);
      for (int k : idx) {
        sx += x[k];
        sy += y[k];
      }
      if (sx != sy) return false;
    }
    Scalar tx(0), ty(0);
    for (size_t k = 0; k < x.size(); ++k) {
      tx += x[k];
      ty += y[k];
    }
    return tx == ty;
  });
}

CheckResult check_mutation_jacobian(Rank2 p, int trials, std::uint64_t seed, double tol) {
  return run_tuples("mutation_jacobian_" + rank2_name(p), p, trials, seed, [p, tol](const std::vector<Scalar>& x) {
    auto map = [p](const std::vector<Dual<Scalar>>& v) {
      switch (p) {
        case Rank2::A2: return apply_dual<3>([](const auto& a) { return mutate_a2(a); }, v);
        case Rank2::B2: return apply_dual<4>([](const auto& a) { return mutate_b2(a); }, v);
        case Rank2::G2: return apply_dual<6>([](const auto& a) { return mutate_g2(a); }, v);
      }
      return v;
    };
    return unit_jacobian(log_jacobian_det(map, x), tol);
  });
}

std::vector<CheckResult> verify_group(Family family, int n, const VerifyOptions& o) {
  return {check_bz_oracle(family, n, o.trials, o.seed, o.tamper), check_involution(family, n, o.trials, o.seed),
          check_inverse(family, n, o.trials, o.seed), check_u_matrix(family, n, o.trials, o.seed),
          check_bz_jacobian(family, n, o.jacobian_trials, o.seed)};
}

std::vector<CheckResult> verify_mutations(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  for (Rank2 p : {Rank2::A2, Rank2::B2, Rank2::G2}) {
    out.push_back(check_mutation(p, o.trials, o.seed));
    out.push_back(check_mutation_jacobian(p, o.jacobian_trials, o.seed));
  }
  return out;
}

}  // namespace whittaker
