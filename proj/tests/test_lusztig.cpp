#include <algorithm>

#include "doctest.h"
#include "whittaker/lusztig.hpp"

using namespace whittaker;

namespace {

template <size_t N>
std::array<Scalar, N> random_tuple(RationalSampler& rng) {
  std::array<Scalar, N> a;
  for (auto& x : a) x = Scalar(rng.positive());
  return a;
}

template <size_t N>
std::vector<Scalar> as_vec(const std::array<Scalar, N>& a) {
  return std::vector<Scalar>(a.begin(), a.end());
}

// X along an arbitrary word of the realization.
Matrix word_matrix(const Group& g, const std::vector<int>& word, const std::vector<Scalar>& c) {
  Matrix m = Matrix::identity(g.real.size);
  for (size_t k = 0; k < word.size(); ++k) right_multiply_exp(m, g.real.e_sparse[word[k]], g.real.e2_sparse[word[k]], c[k]);
  return m;
}

int cartan(const RootSystem& rs, int a, int b) {
  const Weight& x = rs.simple_roots[a];
  const Weight& y = rs.simple_roots[b];
  Rational v = 2 * pairing(x, y) / pairing(y, y);
  return static_cast<int>(v.get_num().get_si());
}

// One random braid move on (word, coords); returns false when none applies at the chosen spot.
bool braid_move(const RootSystem& rs, std::vector<int>& word, std::vector<Scalar>& c, size_t at) {
  if (at + 1 >= word.size()) return false;
  int a = word[at], b = word[at + 1];
  if (a == b) return false;
  int ab = cartan(rs, a, b), ba = cartan(rs, b, a);
  if (ab == 0) {
    std::swap(word[at], word[at + 1]);
    std::swap(c[at], c[at + 1]);
    return true;
  }
  if (ab * ba == 1) {
    if (at + 2 >= word.size() || word[at + 2] != a) return false;
    auto m = mutate_a2<Scalar>({c[at], c[at + 1], c[at + 2]});
    word[at] = b;
    word[at + 1] = a;
    word[at + 2] = b;
    c[at] = m[2];
    c[at + 1] = m[1];
    c[at + 2] = m[0];
    return true;
  }
  if (ab * ba == 2) {
    if (at + 3 >= word.size() || word[at + 2] != a || word[at + 3] != b) return false;
    bool a_long = pairing(rs.simple_roots[a], rs.simple_roots[a]) > pairing(rs.simple_roots[b], rs.simple_roots[b]);
    std::array<Scalar, 4> pos{c[at], c[at + 1], c[at + 2], c[at + 3]};
    std::array<Scalar, 4> out;
    if (a_long) {
      auto m = mutate_b2(pos);
      out = {m[3], m[2], m[1], m[0]};
    } else {
      out = mutate_b2<Scalar>({pos[3], pos[2], pos[1], pos[0]});
    }
    for (int k = 0; k < 4; ++k) {
      word[at + k] = k % 2 == 0 ? b : a;
      c[at + k] = out[k];
    }
    return true;
  }
  return false;
}

Scalar total(const std::vector<Scalar>& c) {
  Scalar s(0);
  for (const auto& x : c) s += x;
  return s;
}

}  // namespace

TEST_CASE("chart to matrix") {
  LusztigChart ones = constant_chart(Family::A, 3, Scalar(1));
  Matrix expected = Matrix::identity(3) + Matrix::unit(3, 1, 2) + Matrix::unit(3, 2, 3, Scalar(2)) + Matrix::unit(3, 1, 3);
  CHECK(chart_to_matrix(ones) == expected);

  for (Family f : {Family::A, Family::D, Family::B, Family::C}) {
    LusztigChart zero = constant_chart(f, 3, Scalar(0));
    CHECK(chart_to_matrix(zero).is_identity());
  }
  LusztigChart gl2 = constant_chart(Family::A, 2, Scalar::ratio(7, 3));
  CHECK(chart_to_matrix(gl2) == Matrix::identity(2) + Matrix::unit(2, 1, 2, Scalar::ratio(7, 3)));

  // SO(2,1): the short-root factor is a genuine three-term exponential.
  LusztigChart b1 = constant_chart(Family::B, 1, Scalar(3));
  Matrix x = chart_to_matrix(b1);
  CHECK(x(0, 1) == Scalar(3) * Scalar::sqrt2());
  CHECK(x(0, 2) == Scalar(-9));
  CHECK(x(1, 2) == Scalar(-3) * Scalar::sqrt2());
}

TEST_CASE("rank-2 mutation examples") {
  auto a2 = mutate_a2<Scalar>({Scalar(2), Scalar(3), Scalar(4)});
  CHECK(a2[0] == Scalar(1));
  CHECK(a2[1] == Scalar(6));
  CHECK(a2[2] == Scalar(2));
  auto b2 = mutate_b2<Scalar>({Scalar(1), Scalar(1), Scalar(1), Scalar(1)});
  CHECK(b2[0] == Scalar::ratio(1, 5));
  CHECK(b2[1] == Scalar::ratio(5, 3));
  CHECK(b2[2] == Scalar::ratio(9, 5));
  CHECK(b2[3] == Scalar::ratio(1, 3));
  try {
    mutate_a2<Scalar>({Scalar(1), Scalar(5), Scalar(-1)});
    FAIL("expected DegenerateDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateDenominator);
  }
}

TEST_CASE("mutations: involutive, positive, invariant monomials and sums") {
  RationalSampler rng(17);
  auto check = [&](Rank2 pattern, const std::vector<Scalar>& x, const std::vector<Scalar>& y, const std::vector<Scalar>& z) {
    CHECK(z == x);
    for (const auto& v : y) CHECK(v.sign() > 0);
    CHECK(rank2_monomial(pattern, x, 0) == rank2_monomial(pattern, y, 0));
    CHECK(rank2_monomial(pattern, x, 1) == rank2_monomial(pattern, y, 1));
    for (const auto& idx : rank2_invariant_sums(pattern)) {
      Scalar sx(0), sy(0);
      for (int k : idx) {
        sx += x[k];
        sy += y[k];
      }
      CHECK(sx == sy);
    }
    CHECK(total(x) == total(y));
  };
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_tuple<3>(rng);
    auto ya = mutate_a2(a);
    check(Rank2::A2, as_vec(a), as_vec(ya), as_vec(mutate_a2(ya)));
    auto b = random_tuple<4>(rng);
    auto yb = mutate_b2(b);
    check(Rank2::B2, as_vec(b), as_vec(yb), as_vec(mutate_b2(yb)));
    if (trial % 5 == 0) {
      auto g = random_tuple<6>(rng);
      auto yg = mutate_g2(g);
      check(Rank2::G2, as_vec(g), as_vec(yg), as_vec(mutate_g2(yg)));
    }
  }
}

TEST_CASE("monomials of rank-2 sub-charts") {
  std::vector<Scalar> a2{Scalar(2), Scalar(3), Scalar(5)};
  CHECK(rank2_monomial(Rank2::A2, a2, 0) == Scalar(6));
  CHECK(rank2_monomial(Rank2::A2, a2, 1) == Scalar(15));
  std::vector<Scalar> b2{Scalar(2), Scalar(3), Scalar(5), Scalar(7)};
  CHECK(rank2_monomial(Rank2::B2, b2, 0) == Scalar(2 * 9 * 5));
  CHECK(rank2_monomial(Rank2::B2, b2, 1) == Scalar(7 * 5 * 3));
  LusztigChart c = constant_chart(Family::C, 2, Scalar(3));
  CHECK(monomial_weight(c, Weight(2, Rational(0))) == Scalar(1));
  LusztigChart z = constant_chart(Family::A, 3, Scalar(0));
  try {
    monomial_weight(z, Weight{Rational(0), Rational(0), Rational(1)});
    FAIL("expected ZeroBaseNegativeExponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroBaseNegativeExponent);
  }
}

TEST_CASE("braid moves realize the mutations") {
  RationalSampler rng(99);
  std::mt19937_64 pick(5);
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::A, 4}, {Family::A, 5}, {Family::C, 2}, {Family::B, 2}, {Family::C, 3}, {Family::D, 4}}) {
    CAPTURE(family_name(f));
    auto g = group(f, n);
    LusztigChart chart = random_chart(f, n, rng);
    std::vector<int> word = g->roots.word_w0;
    std::vector<Scalar> c = chart.coords;
    Matrix x = chart_to_matrix(chart);
    Scalar s0 = total(c);
    int moves = 0;
    for (int step = 0; step < 60; ++step) {
      size_t at = pick() % word.size();
      if (!braid_move(g->roots, word, c, at)) continue;
      ++moves;
      REQUIRE(word_matrix(*g, word, c) == x);
      CHECK(total(c) == s0);
      for (const auto& v : c) CHECK(v.sign() > 0);
    }
    CHECK(moves > 5);
  }
}

TEST_CASE("extraction round trip") {
  RationalSampler rng(31);
  for (Family f : {Family::A, Family::D, Family::B, Family::C}) {
    for (int n = (f == Family::A || f == Family::D) ? 2 : 1; n <= 4; ++n) {
      CAPTURE(family_name(f));
      CAPTURE(n);
      for (int trial = 0; trial < 10; ++trial) {
        LusztigChart c = random_chart(f, n, rng);
        LusztigChart back = extract_coordinates(chart_to_matrix(c), c.system);
        CHECK(back.coords == c.coords);
        CHECK(back.positive());
      }
      LusztigChart id = extract_coordinates(Matrix::identity(root_system(f, n)->matrix_size()), root_system(f, n));
      for (const auto& v : id.coords) CHECK(v.is_zero());
      CHECK_FALSE(id.positive());
    }
  }
  Matrix m = Matrix::identity(3) + Matrix::unit(3, 1, 2) + Matrix::unit(3, 1, 3) + Matrix::unit(3, 2, 3, Scalar(2));
  LusztigChart ones = extract_coordinates(m, root_system(Family::A, 3));
  for (const auto& v : ones.coords) CHECK(v == Scalar(1));
  Matrix bad = Matrix::identity(3) + Matrix::unit(3, 2, 1);
  CHECK_THROWS_AS(extract_coordinates(bad, root_system(Family::A, 3)), Error);
}

TEST_CASE("log-coordinate Jacobians of mutations") {
  auto a2 = [](const std::vector<Dual<Scalar>>& x) {
    auto y = mutate_a2<Dual<Scalar>>({x[0], x[1], x[2]});
    return std::vector<Dual<Scalar>>(y.begin(), y.end());
  };
  CHECK(log_jacobian_det(a2, {Scalar(2), Scalar(3), Scalar(4)}) == Scalar(1));
  auto id = [](const std::vector<Dual<Scalar>>& x) { return x; };
  CHECK(log_jacobian_det(id, {Scalar(2), Scalar(5)}) == Scalar(1));
  RationalSampler rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    auto b = random_tuple<4>(rng);
    auto b2 = [](const std::vector<Dual<Scalar>>& x) {
      auto y = mutate_b2<Dual<Scalar>>({x[0], x[1], x[2], x[3]});
      return std::vector<Dual<Scalar>>(y.begin(), y.end());
    };
    CHECK(log_jacobian_det(b2, as_vec(b)) == Scalar(1));
    auto gg = random_tuple<6>(rng);
    auto g2 = [](const std::vector<Dual<Scalar>>& x) {
      auto y = mutate_g2<Dual<Scalar>>({x[0], x[1], x[2], x[3], x[4], x[5]});
      return std::vector<Dual<Scalar>>(y.begin(), y.end());
    };
    CHECK(log_jacobian_det(g2, as_vec(gg)) == Scalar(1));
  }
}
