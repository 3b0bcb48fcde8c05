#include "doctest.h"
#include "whittaker/rootlie.hpp"

using namespace whittaker;

namespace {

struct Case {
  Family f;
  int n;
};

std::vector<Case> all_cases(int max_rank) {
  std::vector<Case> out;
  for (int n = 2; n <= max_rank; ++n) out.push_back({Family::A, n});
  for (int n = 2; n <= max_rank; ++n) out.push_back({Family::D, n});
  for (int n = 1; n <= max_rank; ++n) out.push_back({Family::B, n});
  for (int n = 1; n <= max_rank; ++n) out.push_back({Family::C, n});
  return out;
}

Weight w(std::initializer_list<long> v) {
  Weight out;
  for (long x : v) out.emplace_back(x);
  return out;
}

Weight apply_w0(const RootSystem& rs, Weight v) {
  for (size_t m = rs.word_w0.size(); m-- > 0;) {
    const Weight& a = rs.simple_roots[rs.word_w0[m]];
    Rational c = 2 * pairing(v, a) / pairing(a, a);
    for (int k = 0; k < rs.n; ++k) v[k] -= c * a[k];
  }
  return v;
}

}  // namespace

TEST_CASE("orderings quoted for small ranks") {
  RootSystem a3 = build_root_system(Family::A, 3);
  REQUIRE(a3.dimension() == 3);
  CHECK(a3.root_vector(a3.positive_roots[0]) == w({0, 1, -1}));
  CHECK(a3.root_vector(a3.positive_roots[1]) == w({1, 0, -1}));
  CHECK(a3.root_vector(a3.positive_roots[2]) == w({1, -1, 0}));

  RootSystem d2 = build_root_system(Family::D, 2);
  REQUIRE(d2.dimension() == 2);
  CHECK(d2.root_vector(d2.positive_roots[0]) == w({1, 1}));
  CHECK(d2.root_vector(d2.positive_roots[1]) == w({1, -1}));

  RootSystem b1 = build_root_system(Family::B, 1);
  REQUIRE(b1.dimension() == 1);
  CHECK(b1.root_vector(b1.positive_roots[0]) == w({1}));
}

TEST_CASE("positive root counts") {
  for (auto [f, n] : all_cases(7)) {
    RootSystem rs = build_root_system(f, n);
    int expected = f == Family::A ? n * (n - 1) / 2 : f == Family::D ? n * (n - 1) : n * n;
    CHECK(rs.dimension() == expected);
    CHECK(static_cast<int>(rs.word_w0.size()) == expected);
  }
}

TEST_CASE("rank bounds") {
  CHECK_THROWS_AS(build_root_system(Family::A, 1), Error);
  CHECK_THROWS_AS(build_root_system(Family::D, 1), Error);
  CHECK_THROWS_AS(build_root_system(Family::C, 9), Error);
  CHECK_NOTHROW(build_root_system(Family::C, 9, 10));
  try {
    build_root_system(Family::B, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedRank);
  }
}

TEST_CASE("orderings are normal and generated by the word") {
  for (auto [f, n] : all_cases(6)) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    RootSystem rs = build_root_system(f, n);
    CHECK(is_normal_ordering(rs));
    std::vector<Weight> gen = roots_from_word(rs);
    for (int k = 0; k < rs.dimension(); ++k) CHECK(gen[k] == rs.root_vector(rs.positive_roots[k]));
  }
}

TEST_CASE("sl2 triples, nilpotency and invariant forms") {
  for (auto [f, n] : all_cases(5)) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    auto g = group(f, n);
    const auto& r = g->real;
    for (int k = 0; k < g->roots.num_generators(); ++k) {
      CHECK(commutator(r.h[k], r.e[k]) == r.e[k] * Scalar(2));
      CHECK(commutator(r.h[k], r.f[k]) == r.f[k] * Scalar(-2));
      CHECK(commutator(r.e[k], r.f[k]) == r.h[k]);
      CHECK((r.e[k] * r.e[k] * r.e[k]).is_zero());
      if (f != Family::A) {
        CHECK(preserves_form(r.e[k], r.form));
        CHECK(preserves_form(r.f[k], r.form));
        CHECK(preserves_form(r.h[k], r.form));
      }
    }
    if (f != Family::A) {
      Matrix jt = r.form.transpose();
      CHECK(jt == (f == Family::C ? r.form * Scalar(-1) : r.form));
    }
  }
}

TEST_CASE("Weyl lifts") {
  auto gl2 = group(Family::A, 2);
  Matrix m = weyl_lift({0}, gl2->real);
  CHECK(m == Matrix::unit(2, 1, 2) - Matrix::unit(2, 2, 1));

  auto gl3 = group(Family::A, 3);
  CHECK(w0_lift(*gl3) == Matrix::unit(3, 1, 3) - Matrix::unit(3, 2, 2) + Matrix::unit(3, 3, 1));

  for (int n = 2; n <= 6; ++n) {
    auto g = group(Family::A, n);
    Matrix expected(n, n);
    for (int k = 1; k <= n; ++k) expected(k - 1, n - k) = Scalar(k % 2 == 1 ? 1 : -1);
    CHECK(w0_lift(*g) == expected);
  }
  for (int n = 2; n <= 6; n += 2) {
    auto g = group(Family::D, n);
    int N = 2 * n;
    Matrix expected(N, N);
    for (int k = 1; k <= N; ++k) expected(k - 1, N - k) = Scalar(-1);
    CHECK(w0_lift(*g) == expected);
  }
}

TEST_CASE("odd SO(n,n) longest element") {
  for (int n = 3; n <= 7; n += 2) {
    auto g = group(Family::D, n);
    int N = 2 * n;
    Matrix shape(N, N);
    for (int k = 1; k <= N; ++k)
      if (k != n && k != n + 1) shape(k - 1, N - k) = Scalar(1);
    shape(n - 1, n - 1) = Scalar(1);
    shape(n, n) = Scalar(1);
    Matrix w0 = w0_lift(*g);
    CHECK(w0 == shape);
  }
}

TEST_CASE("lift independent of braid-equivalent words") {
  auto gl3 = group(Family::A, 3);
  CHECK(weyl_lift({0, 1, 0}, gl3->real) == weyl_lift({1, 0, 1}, gl3->real));
  auto b2 = group(Family::B, 2);
  CHECK(weyl_lift({0, 1, 0, 1}, b2->real) == weyl_lift({1, 0, 1, 0}, b2->real));
  auto c3 = group(Family::C, 3);
  CHECK(weyl_lift({1, 2, 1, 2}, c3->real) == weyl_lift({2, 1, 2, 1}, c3->real));
  CHECK(weyl_lift({0, 2}, c3->real) == weyl_lift({2, 0}, c3->real));
  auto d4 = group(Family::D, 4);
  CHECK(weyl_lift({2, 3}, d4->real) == weyl_lift({3, 2}, d4->real));
  CHECK(weyl_lift({1, 2, 1}, d4->real) == weyl_lift({2, 1, 2}, d4->real));
  CHECK(weyl_lift({1, 3, 1}, d4->real) == weyl_lift({3, 1, 3}, d4->real));
}

TEST_CASE("square of the longest element") {
  for (auto [f, n] : all_cases(6)) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    auto g = group(f, n);
    Matrix w0 = w0_lift(*g);
    Matrix sq = w0 * w0;
    int sign = 1;
    if (f == Family::A) sign = (n + 1) % 2 == 0 ? 1 : -1;
    if (f == Family::C) sign = -1;
    CHECK(sq == Matrix::identity(g->real.size) * Scalar(sign));
  }
}

TEST_CASE("conjugation by the longest element") {
  for (auto [f, n] : all_cases(5)) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    auto g = group(f, n);
    Matrix w0 = w0_lift(*g);
    Matrix w0i = w0.inverse();
    for (int k = 0; k < g->roots.num_generators(); ++k) {
      Weight image = apply_w0(g->roots, g->roots.simple_roots[k]);
      for (auto& x : image) x = -x;
      int kk = g->roots.generator_of(image);
      REQUIRE(kk >= 0);
      CHECK(w0 * g->real.e[k] * w0i == g->real.f[kk] * Scalar(-1));
    }
  }
}

TEST_CASE("rho pairings") {
  for (int n = 2; n <= 6; ++n) {
    RootSystem d = build_root_system(Family::D, n);
    for (const Root& r : d.positive_roots) {
      Rational p = coroot_pairing(d, d.rho, r);
      if (r.kind == RootKind::Minus) CHECK(p == r.j - r.i);
      if (r.kind == RootKind::Plus) CHECK(p == 2 * n - r.i - r.j);
    }
  }
  RootSystem b = build_root_system(Family::B, 3);
  CHECK(b.rho[0] == Rational(5, 2));
  CHECK(b.rho[2] == Rational(1, 2));
  for (const Root& r : b.positive_roots) CHECK(coroot_pairing(b, b.rho, r).get_den() == 1);
  RootSystem c = build_root_system(Family::C, 3);
  CHECK(c.rho == w({3, 2, 1}));
  RootSystem a = build_root_system(Family::A, 4);
  for (const Root& r : a.positive_roots) CHECK(coroot_pairing(a, a.rho, r) == r.j - r.i);

  Weight mu = w({1, -2, 3}), nu = w({2, 5, -1});
  Weight sum = w({3, 3, 2});
  for (const Root& r : c.positive_roots)
    CHECK(coroot_pairing(c, sum, r) == coroot_pairing(c, mu, r) + coroot_pairing(c, nu, r));
}
