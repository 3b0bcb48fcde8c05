#include "whittaker/rootlie.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace whittaker {

Family parse_family(const std::string& name) {
  if (name == "gl" || name == "A" || name == "a") return Family::A;
  if (name == "so-even" || name == "D" || name == "d") return Family::D;
  if (name == "so-odd" || name == "B" || name == "b") return Family::B;
  if (name == "sp" || name == "C" || name == "c") return Family::C;
  throw Error(ErrorKind::DomainViolation, "unknown group family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "gl";
    case Family::D: return "so-even";
    case Family::B: return "so-odd";
    case Family::C: return "sp";
  }
  return "?";
}

std::string family_group_name(Family f, int n) {
  std::string k = std::to_string(n);
  switch (f) {
    case Family::A: return "GL(" + k + ")";
    case Family::D: return "SO(" + k + "," + k + ")";
    case Family::B: return "SO(" + std::to_string(n + 1) + "," + k + ")";
    case Family::C: return "Sp(" + std::to_string(2 * n) + ")";
  }
  return "?";
}

std::string Root::label() const {
  switch (kind) {
    case RootKind::Minus: return "t_" + std::to_string(i) + "_" + std::to_string(j);
    case RootKind::Plus: return "s_" + std::to_string(i) + "_" + std::to_string(j);
    case RootKind::Single: return "t_" + std::to_string(i);
  }
  return "?";
}

Rational pairing(const Weight& x, const Weight& y) {
  Rational s = 0;
  for (size_t k = 0; k < x.size() && k < y.size(); ++k) s += x[k] * y[k];
  return s;
}

int RootSystem::matrix_size() const {
  switch (family) {
    case Family::A: return n;
    case Family::D: return 2 * n;
    case Family::B: return 2 * n + 1;
    case Family::C: return 2 * n;
  }
  return 0;
}

int RootSystem::index_of(const Root& r) const {
  for (size_t k = 0; k < positive_roots.size(); ++k) {
    const Root& q = positive_roots[k];
    if (q.kind == r.kind && q.i == r.i && (r.kind == RootKind::Single || q.j == r.j)) return static_cast<int>(k);
  }
  return -1;
}

Weight RootSystem::root_vector(const Root& r) const {
  Weight v(n, Rational(0));
  switch (r.kind) {
    case RootKind::Minus: v[r.i - 1] += 1; v[r.j - 1] -= 1; break;
    case RootKind::Plus: v[r.i - 1] += 1; v[r.j - 1] += 1; break;
    case RootKind::Single: v[r.i - 1] += (family == Family::C ? 2 : 1); break;
  }
  return v;
}

Weight RootSystem::coroot(const Root& r) const {
  Weight v = root_vector(r);
  Rational len = pairing(v, v);
  for (auto& x : v) x = 2 * x / len;
  return v;
}

std::string RootSystem::generator_label(int g) const {
  if (family == Family::D && g == n - 2) return "e+";
  if (family == Family::D && g == n - 1) return "e-";
  return "e" + std::to_string(g + 1);
}

int RootSystem::generator_of(const Weight& simple) const {
  for (int g = 0; g < num_generators(); ++g)
    if (simple_roots[g] == simple) return g;
  return -1;
}

Weight rho_of(Family family, int n) {
  Weight r(n);
  for (int k = 1; k <= n; ++k) {
    switch (family) {
      case Family::A: r[k - 1] = -k; break;
      case Family::D: r[k - 1] = n - k; break;
      case Family::B: r[k - 1] = Rational(2 * n + 1 - 2 * k, 2); break;
      case Family::C: r[k - 1] = n + 1 - k; break;
    }
  }
  return r;
}

Rational coroot_pairing(const RootSystem& rs, const Weight& mu, const Root& gamma) {
  return pairing(mu, rs.coroot(gamma));
}

RootSystem build_root_system(Family family, int n, int max_rank) {
  int min_rank = (family == Family::A || family == Family::D) ? 2 : 1;
  if (n < min_rank || n > max_rank)
    throw Error(ErrorKind::UnsupportedRank, family_name(family) + " rank " + std::to_string(n));
  RootSystem rs;
  rs.family = family;
  rs.n = n;
  rs.rho = rho_of(family, n);
  auto push = [&](RootKind kind, int i, int j, int gen) {
    rs.positive_roots.push_back(Root{kind, i, j});
    rs.word_w0.push_back(gen);
  };
  auto unit = [&](int i, int j, int ci, int cj) {
    Weight v(n, Rational(0));
    v[i - 1] += ci;
    if (j > 0) v[j - 1] += cj;
    return v;
  };
  switch (family) {
    case Family::A:
      for (int g = 1; g < n; ++g) rs.simple_roots.push_back(unit(g, g + 1, 1, -1));
      for (int i = n - 1; i >= 1; --i)
        for (int j = n; j > i; --j) push(RootKind::Minus, i, j, n - j + i - 1);
      break;
    case Family::D: {
      for (int g = 1; g <= n - 2; ++g) rs.simple_roots.push_back(unit(g, g + 1, 1, -1));
      rs.simple_roots.push_back(unit(n - 1, n, 1, -1));
      rs.simple_roots.push_back(unit(n - 1, n, 1, 1));
      // e^{eps(k)} with eps(k) = (-1)^k: '+' for even k.
      auto split = [&](int k) { return k % 2 == 0 ? n - 2 : n - 1; };
      for (int i = n - 1; i >= 1; --i) {
        for (int j = i + 1; j <= n - 1; ++j) push(RootKind::Plus, i, j, j - 2);
        push(RootKind::Plus, i, n, split(n - i));
        push(RootKind::Minus, i, n, split(n - i + 1));
        for (int j = n - 1; j > i; --j) push(RootKind::Minus, i, j, j - 2);
      }
      break;
    }
    case Family::B:
    case Family::C:
      for (int g = 1; g <= n - 1; ++g) rs.simple_roots.push_back(unit(g, g + 1, 1, -1));
      rs.simple_roots.push_back(unit(n, 0, family == Family::C ? 2 : 1, 0));
      for (int i = n; i >= 1; --i) {
        for (int j = i + 1; j <= n; ++j) push(RootKind::Plus, i, j, j - 2);
        push(RootKind::Single, i, 0, n - 1);
        for (int j = n; j > i; --j) push(RootKind::Minus, i, j, j - 2);
      }
      break;
  }
  return rs;
}

namespace {

template <class T>
std::shared_ptr<const T> cached(Family family, int n, std::map<std::pair<int, int>, std::shared_ptr<const T>>& cache,
                                std::mutex& mu, T (*make)(Family, int)) {
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(family), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const T>(make(family, n));
  cache.emplace(key, p);
  return p;
}

RootSystem make_rs(Family f, int n) { return build_root_system(f, n); }
Group make_group(Family f, int n) {
  RootSystem rs = build_root_system(f, n);
  ChevalleyRealization real = build_realization(rs);
  return Group{std::move(rs), std::move(real)};
}

}  // namespace

std::shared_ptr<const RootSystem> root_system(Family family, int n) {
  static std::map<std::pair<int, int>, std::shared_ptr<const RootSystem>> cache;
  static std::mutex mu;
  return cached<RootSystem>(family, n, cache, mu, &make_rs);
}

std::shared_ptr<const Group> group(Family family, int n) {
  static std::map<std::pair<int, int>, std::shared_ptr<const Group>> cache;
  static std::mutex mu;
  return cached<Group>(family, n, cache, mu, &make_group);
}

bool is_normal_ordering(const RootSystem& rs) {
  int d = rs.dimension();
  std::vector<Weight> v(d);
  for (int k = 0; k < d; ++k) v[k] = rs.root_vector(rs.positive_roots[k]);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      Weight s(rs.n);
      for (int k = 0; k < rs.n; ++k) s[k] = v[a][k] + v[b][k];
      for (int c = 0; c < d; ++c)
        if (v[c] == s && !(a < c && c < b)) return false;
    }
  return true;
}

std::vector<Weight> roots_from_word(const RootSystem& rs) {
  std::vector<Weight> out;
  auto reflect = [&](const Weight& alpha, Weight v) {
    Rational c = 2 * pairing(v, alpha) / pairing(alpha, alpha);
    for (int k = 0; k < rs.n; ++k) v[k] -= c * alpha[k];
    return v;
  };
  for (size_t k = 0; k < rs.word_w0.size(); ++k) {
    Weight v = rs.simple_roots[rs.word_w0[k]];
    for (size_t m = k; m-- > 0;) v = reflect(rs.simple_roots[rs.word_w0[m]], v);
    out.push_back(v);
  }
  return out;
}

Matrix SparseMatrix::dense() const {
  Matrix m(size, size);
  for (const auto& e : entries) m(e.r, e.c) += e.v;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix s;
  s.size = m.rows();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) s.entries.push_back({i, j, m(i, j)});
  return s;
}

ChevalleyRealization build_realization(const RootSystem& rs) {
  ChevalleyRealization cr;
  const int n = rs.n;
  const int N = rs.matrix_size();
  cr.size = N;
  auto E = [&](int i, int j, const Scalar& v = Scalar(1)) { return Matrix::unit(N, i, j, v); };
  auto hat = [&](int i) { return N + 1 - i; };
  auto regular = [&](int k) { return E(k, k + 1) - E(hat(k + 1), hat(k)); };
  switch (rs.family) {
    case Family::A:
      for (int g = 1; g < n; ++g) cr.e.push_back(E(g, g + 1));
      break;
    case Family::D:
      for (int k = 1; k <= n - 2; ++k) cr.e.push_back(regular(k));
      cr.e.push_back(E(n - 1, n) - E(n + 1, n + 2));
      cr.e.push_back(E(n - 1, n + 1) - E(n, n + 2));
      break;
    case Family::B:
      for (int k = 1; k <= n - 1; ++k) cr.e.push_back(regular(k));
      cr.e.push_back((E(n, n + 1) - E(n + 1, n + 2)) * Scalar::sqrt2());
      break;
    case Family::C:
      for (int k = 1; k <= n - 1; ++k) cr.e.push_back(regular(k));
      cr.e.push_back(E(n, n + 1));
      break;
  }
  for (const auto& e : cr.e) {
    cr.f.push_back(e.transpose());
    cr.h.push_back(commutator(e, cr.f.back()));
    cr.e_sparse.push_back(SparseMatrix::from_dense(e));
    cr.e2_sparse.push_back(SparseMatrix::from_dense(e * e));
  }
  if (rs.family != Family::A) {
    cr.form = Matrix(N, N);
    for (int i = 1; i <= N; ++i) {
      int sign = (rs.family == Family::C && i > n) ? -1 : 1;
      cr.form(i - 1, hat(i) - 1) = Scalar(sign);
    }
  }
  return cr;
}

bool preserves_form(const Matrix& x, const Matrix& form) {
  return (x.transpose() * form + form * x).is_zero();
}

void right_multiply_exp(Matrix& m, const SparseMatrix& e, const SparseMatrix& e2, const Scalar& c) {
  if (c.is_zero()) return;
  const int R = m.rows();
  Matrix delta(R, m.cols());
  for (const auto& en : e.entries) {
    Scalar w = c * en.v;
    for (int r = 0; r < R; ++r)
      if (!m(r, en.r).is_zero()) delta(r, en.c) += m(r, en.r) * w;
  }
  if (!e2.entries.empty()) {
    Scalar c2 = c * c * Scalar::ratio(1, 2);
    for (const auto& en : e2.entries) {
      Scalar w = c2 * en.v;
      for (int r = 0; r < R; ++r)
        if (!m(r, en.r).is_zero()) delta(r, en.c) += m(r, en.r) * w;
    }
  }
  m += delta;
}

Matrix weyl_lift(const std::vector<int>& word, const ChevalleyRealization& real) {
  Matrix m = Matrix::identity(real.size);
  for (int g : word) {
    Matrix ee = exp_nilpotent(real.e[g]);
    Matrix ff = exp_nilpotent(real.f[g] * Scalar(-1));
    m = m * ee * ff * ee;
  }
  return m;
}

Matrix w0_lift(const Group& g) { return weyl_lift(g.roots.word_w0, g.real); }

}  // namespace whittaker
