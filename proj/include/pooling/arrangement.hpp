#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "pooling/instance.hpp"
#include "pooling/lp.hpp"

namespace pooling {

/// One quality bound rewritten over the input-ratio space R^(m-1):
///   sum_i a_i z_i (<=|=|>) b  with  a_i = lambda[i][k] - lambda[m-1][k]
///   and b = mu[j][k] - lambda[m-1][k].
/// Hyperplanes sharing a quality index k form a parallel class: identical
/// coefficient vectors, different offsets.
struct Hyperplane {
  std::vector<Rational> a;  // m-1 coefficients (empty when m == 1)
  Rational b;
  int output = 0;   // j, 0-based
  int quality = 0;  // k, 0-based
};

/// Side assignment eps[j][k] in {0,1} for every hyperplane: 0 is the closed
/// half-space (a.z <= b), 1 the open one (a.z > b).
class SignVector {
 public:
  SignVector() = default;
  SignVector(int n, int q) : n_(n), q_(q), bits_(static_cast<size_t>(n) * static_cast<size_t>(q), 0) {}

  std::uint8_t at(int j, int k) const { return bits_[idx(j, k)]; }
  void set(int j, int k, std::uint8_t v) { bits_[idx(j, k)] = v; }

  int outputs() const { return n_; }
  int qualities() const { return q_; }
  const std::vector<std::uint8_t>& flat() const { return bits_; }

  /// j-major bit string, e.g. "01" harbors eps[0][0]=0, eps[0][1]=1.
  std::string str() const;

  friend auto operator<=>(const SignVector&, const SignVector&) = default;

 private:
  size_t idx(int j, int k) const { return static_cast<size_t>(j) * static_cast<size_t>(q_) + static_cast<size_t>(k); }

  int n_ = 0, q_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// A nonempty region of the arrangement: its sign vector, an explicit point
/// certifying nonemptiness, and the outputs reachable everywhere inside it
/// (those with eps[j][k] = 0 for all k).
struct Cell {
  SignVector eps;
  std::vector<Rational> witness;  // in R^(m-1); empty when m == 1
  std::vector<int> reachable;     // 0-based output indices, ascending
};

/// Builds the n*q quality hyperplanes of a preprocessed instance, ordered
/// output-major: (j=0,k=0), (j=0,k=1), ...
std::vector<Hyperplane> build_hyperplanes(const PoolingInstance& inst);

/// Exact side evaluation of a point against every hyperplane. Points on a
/// hyperplane belong to the closed side (eps = 0).
SignVector classify_point(std::span<const Rational> z,
                          const std::vector<Hyperplane>& hps, int n, int q);

/// Outputs j with eps[j][k] = 0 for every k.
std::vector<int> reachable_outputs(const SignVector& eps);

struct EnumerationOptions {
  /// Enumerate only cells meeting the standard simplex (the solver's view)
  /// or all cells of R^(m-1) (used for bound/tightness checks).
  bool restrict_to_simplex = true;
};

/// Incremental cell enumeration: hyperplanes are inserted one parallel class
/// at a time and every existing cell is tested for splitting with an exact
/// strict-feasibility program. Returns every sign vector whose cell meets
/// the domain, each with a witness, sorted lexicographically; duplicated
/// hyperplanes (identical a and b) share one geometric insertion and their
/// sign entries are tied together.
std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hps, int m,
                                  int n, int q, EnumerationOptions opts = {});

/// Upper bound on the number of nonempty cells for q parallel classes of n
/// hyperplanes in R^(m-1): sum_{i=0}^{m-1} C(q,i) n^i.
mpz_class cell_bound(int m, int n, int q);

/// The generic-arrangement bound ignoring parallelism:
/// sum_{i=0}^{m-1} C(nq,i). Always >= cell_bound.
mpz_class buck_bound(int m, int n, int q);

/// Exact general-position test: every m of the hyperplanes have empty common
/// intersection, and every t <= m-1 hyperplanes taken from t distinct
/// parallel classes intersect in an affine subspace of dimension m-1-t.
/// Decided by rational rank computations.
bool is_general_position(const std::vector<Hyperplane>& hps, int m);

}  // namespace pooling
