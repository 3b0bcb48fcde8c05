#pragma once

#include <memory>
#include <string>
#include <vector>

#include "whittaker/exact.hpp"

namespace whittaker {

// A: GL(n), D: SO(n,n), B: SO(n+1,n), C: Sp(2n).
enum class Family { A, D, B, C };

Family parse_family(const std::string& name);
std::string family_name(Family f);       // gl, so-even, so-odd, sp
std::string family_group_name(Family f, int n);

// Minus: e_i - e_j (coordinate t_{i,j}); Plus: e_i + e_j (s_{i,j});
// Single: e_i for B, 2e_i for C (t_i, j unused).
enum class RootKind { Minus, Plus, Single };

struct Root {
  RootKind kind;
  int i;
  int j;
  std::string label() const;
  friend bool operator==(const Root&, const Root&) = default;
};

// Coefficients in the basis e_1..e_n.
using Weight = std::vector<Rational>;

Rational pairing(const Weight& x, const Weight& y);

struct RootSystem {
  Family family;
  int n;
  std::vector<Root> positive_roots;  // normal ordering, position k carries coordinate k
  std::vector<int> word_w0;          // generator index used at each position
  std::vector<Weight> simple_roots;  // one per generator
  Weight rho;

  int dimension() const { return static_cast<int>(positive_roots.size()); }
  int matrix_size() const;
  int num_generators() const { return static_cast<int>(simple_roots.size()); }
  // -1 when absent.
  int index_of(const Root& r) const;
  int index_of(RootKind kind, int i, int j = 0) const { return index_of(Root{kind, i, j}); }
  Weight root_vector(const Root& r) const;
  Weight coroot(const Root& r) const;
  std::string generator_label(int g) const;
  // Generator whose simple root is the given weight; -1 when none.
  int generator_of(const Weight& simple) const;
};

constexpr int kDefaultMaxRank = 8;

RootSystem build_root_system(Family family, int n, int max_rank = kDefaultMaxRank);
std::shared_ptr<const RootSystem> root_system(Family family, int n);

Weight rho_of(Family family, int n);
Rational coroot_pairing(const RootSystem& rs, const Weight& mu, const Root& gamma);

// Checks alpha < alpha+beta < beta (or reversed) for every decomposable positive root.
bool is_normal_ordering(const RootSystem& rs);
// gamma_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}, computed by reflections.
std::vector<Weight> roots_from_word(const RootSystem& rs);

struct SparseEntry {
  int r;
  int c;
  Scalar v;
};

struct SparseMatrix {
  int size = 0;
  std::vector<SparseEntry> entries;
  Matrix dense() const;
  static SparseMatrix from_dense(const Matrix& m);
};

struct ChevalleyRealization {
  int size = 0;
  std::vector<Matrix> e;
  std::vector<Matrix> f;
  std::vector<Matrix> h;
  std::vector<SparseMatrix> e_sparse;
  std::vector<SparseMatrix> e2_sparse;  // squares of e
  Matrix form;                          // invariant bilinear form, empty for GL
};

ChevalleyRealization build_realization(const RootSystem& rs);

struct Group {
  RootSystem roots;
  ChevalleyRealization real;
};
std::shared_ptr<const Group> group(Family family, int n);

// x^T J + J x == 0
bool preserves_form(const Matrix& x, const Matrix& form);

// m <- m * exp(c e) for a generator with e^3 = 0.
void right_multiply_exp(Matrix& m, const SparseMatrix& e, const SparseMatrix& e2, const Scalar& c);

// Product of exp(e) exp(-f) exp(e) over the word.
Matrix weyl_lift(const std::vector<int>& word, const ChevalleyRealization& real);
Matrix w0_lift(const Group& g);

}  // namespace whittaker
