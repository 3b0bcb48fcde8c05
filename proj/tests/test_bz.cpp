#include <cmath>

#include "doctest.h"
#include "whittaker/bz.hpp"

using namespace whittaker;

namespace {

struct Case {
  Family f;
  int n;
};

std::vector<Case> cases() {
  return {{Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::A, 5}, {Family::D, 2}, {Family::D, 3},
          {Family::D, 4}, {Family::B, 1}, {Family::B, 2}, {Family::B, 3}, {Family::C, 1}, {Family::C, 2},
          {Family::C, 3}};
}

Scalar t1(const LusztigChart& c, int i, int j) { return c[Root{RootKind::Minus, i, j}]; }

}  // namespace

TEST_CASE("GL(3) at the unit chart") {
  LusztigChart ones = constant_chart(Family::A, 3, Scalar(1));
  BZResult o = bz_oracle(ones);
  for (const auto& v : o.image.coords) CHECK(v == Scalar(1));
  for (const auto& v : o.twist) CHECK(v == Scalar(1));
  BZResult c = bz_gl(ones);
  CHECK(c.image.coords == o.image.coords);
  CHECK(std::abs(left_whittaker_value(ones, {0, 0, 0}) - std::exp(-3.0)) < 1e-15);
  CHECK(right_whittaker_value(ones) == doctest::Approx(std::exp(-3.0)));
}

TEST_CASE("closed forms agree with the oracle") {
  RationalSampler rng(2718);
  for (auto [f, n] : cases()) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    for (int trial = 0; trial < 8; ++trial) {
      LusztigChart c = random_chart(f, n, rng);
      BZResult o = bz_oracle(c);
      BZResult k = bz_closed_form(c);
      CHECK(o.image.coords == k.image.coords);
      CHECK(o.twist == k.twist);
      CHECK(k.image.positive());
      for (const auto& t : k.twist) CHECK_FALSE(t.is_zero());
    }
  }
}

TEST_CASE("GL first string and twist entries") {
  RationalSampler rng(4);
  for (int n = 2; n <= 6; ++n) {
    LusztigChart c = random_chart(Family::A, n, rng);
    BZResult o = bz_oracle(c);
    for (int j = 2; j <= n; ++j) CHECK(t1(o.image, 1, j) == t1(c, 1, n + 2 - j).inv());
    Scalar first(1), last(1);
    for (int j = 2; j <= n; ++j) first *= t1(c, 1, j);
    for (int i = 1; i < n; ++i) last *= t1(c, i, n);
    CHECK(o.twist.front() == first);
    CHECK(o.twist.back() == last.inv());
  }
}

TEST_CASE("first-string values for the orthogonal and symplectic families") {
  RationalSampler rng(6);
  for (Family f : {Family::D, Family::B, Family::C}) {
    for (int n = 2; n <= 4; ++n) {
      LusztigChart c = random_chart(f, n, rng);
      BZResult o = bz_oracle(c);
      auto t = [&](int j) { return c[Root{RootKind::Minus, 1, j}]; };
      auto s = [&](int j) { return c[Root{RootKind::Plus, 1, j}]; };
      auto u = [&](int j) {
        if (j == 1) return Scalar(1);
        if (f == Family::D && j == n) return (n - 1) % 2 == 1 ? t(j) : s(j);
        return t(j) + s(j);
      };
      auto sm = [&](int j) { return j == 1 ? Scalar(1) : s(j); };
      for (int j = 2; j <= n; ++j) {
        if (f == Family::D && j == n) continue;
        CHECK(o.image[Root{RootKind::Minus, 1, j}] == u(j - 1) / (u(j) * sm(j - 1)));
        CHECK(o.image[Root{RootKind::Plus, 1, j}] == u(j - 1) * s(j) / (u(j) * sm(j - 1) * t(j)));
      }
      if (f != Family::D) {
        Scalar t1v = c[Root{RootKind::Single, 1, 0}];
        Scalar p1 = f == Family::B ? u(n) / (t1v * s(n)) : u(n) * u(n) / (t1v * s(n) * s(n));
        CHECK(o.image[Root{RootKind::Single, 1, 0}] == p1);
      }
    }
  }
}

TEST_CASE("involution, inverse and twist duality") {
  RationalSampler rng(77);
  for (auto [f, n] : cases()) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    for (int trial = 0; trial < 6; ++trial) {
      LusztigChart c = random_chart(f, n, rng);
      BZResult r = bz_closed_form(c);
      CHECK(bz_closed_form(r.image).image.coords == c.coords);
      CHECK(bz_inverse(r.image).coords == c.coords);
      CHECK(bz_oracle(r.image).image.coords == c.coords);
      LusztigChart recip = r.image;
      for (auto& v : recip.coords) v = v.inv();
      CHECK(eval_monomials(bz_formula(*c.system).twist, recip.coords) == r.twist);
    }
  }
  for (Family f : {Family::A, Family::D, Family::B, Family::C}) {
    LusztigChart ones = constant_chart(f, 3, Scalar(1));
    BZResult o = bz_oracle(ones);
    CHECK(bz_inverse(ones).coords == o.image.coords);
    CHECK(bz_oracle(o.image).image.coords == ones.coords);
    if (f == Family::A)
      for (const auto& v : o.image.coords) CHECK(v == Scalar(1));
  }
  // Outside GL the unit chart is not a fixed point; the oracle gives these values.
  auto image = [](Family f, int n) { return bz_oracle(constant_chart(f, n, Scalar(1))).image.coords; };
  CHECK(image(Family::D, 2) == std::vector<Scalar>{Scalar(1), Scalar(1)});
  CHECK(image(Family::C, 2) == std::vector<Scalar>{Scalar(1), Scalar::ratio(1, 2), Scalar(4), Scalar::ratio(1, 2)});
  CHECK(image(Family::B, 2) == std::vector<Scalar>{Scalar(1), Scalar::ratio(1, 2), Scalar(2), Scalar::ratio(1, 2)});
}

TEST_CASE("measure preservation") {
  RationalSampler rng(13);
  for (auto [f, n] : cases()) {
    LusztigChart c = random_chart(f, n, rng);
    CHECK(bz_log_jacobian(c) == Scalar(1));
  }
}

TEST_CASE("U-matrix structure") {
  RationalSampler rng(19);
  for (auto [f, n] : cases()) {
    CAPTURE(family_name(f));
    CAPTURE(n);
    for (int trial = 0; trial < 4; ++trial) {
      LusztigChart c = random_chart(f, n, rng);
      UMatrixReport rep;
      CHECK_NOTHROW(rep = u_matrix_check(c));
      if (f != Family::A) {
        int N = c.system->matrix_size();
        for (int k = 2; k <= n; ++k) CHECK(rep.u(k - 1, k - 1) * rep.u(N - k, N - k) == Scalar(1));
      }
    }
  }
  LusztigChart ones = constant_chart(Family::A, 3, Scalar(1));
  UMatrixReport rep = u_matrix_check(ones);
  for (int i = 0; i < 3; ++i) CHECK(rep.u(i, i) == Scalar(1));
}

TEST_CASE("left Whittaker vector: both displayed forms agree") {
  RationalSampler rng(23);
  for (auto [f, n] : cases()) {
    LusztigChart c = random_chart(f, n, rng);
    std::vector<std::complex<double>> nu;
    for (int k = 0; k < n; ++k) nu.emplace_back(0.3 * k - 0.5, 0.7 - 0.2 * k);
    std::complex<double> a = left_whittaker_value(c, nu);
    std::complex<double> b = left_whittaker_value_dual(c, nu);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    std::vector<std::complex<double>> zero(n, 0.0);
    double sum = 0;
    for (const auto& v : bz_closed_form(c).image.coords) sum += v.to_double();
    CHECK(std::abs(left_whittaker_value(c, zero) - std::exp(-sum)) <= 1e-14);
  }
}

TEST_CASE("right Whittaker vector") {
  CHECK(right_whittaker_value(constant_chart(Family::C, 2, Scalar(0))) == 1.0);
  RationalSampler rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Scalar, 3> a{Scalar(rng.positive()), Scalar(rng.positive()), Scalar(rng.positive())};
    auto b = mutate_a2(a);
    LusztigChart x = constant_chart(Family::A, 3, Scalar(0)), y = x;
    x.coords.assign(a.begin(), a.end());
    y.coords.assign(b.begin(), b.end());
    CHECK(right_whittaker_value(x) == doctest::Approx(right_whittaker_value(y)).epsilon(1e-15));
  }
}

TEST_CASE("tampered closed form is detected") {
  RationalSampler rng(3);
  LusztigChart c = random_chart(Family::A, 3, rng);
  CHECK_FALSE(bz_closed_form(c, 1).image.coords == bz_oracle(c).image.coords);
}
