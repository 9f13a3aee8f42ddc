#include "pooling/arrangement.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <utility>

namespace pooling {

namespace {

bool is_zero_vector(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c.is_zero(); });
}

Rational dot(const std::vector<Rational>& a, std::span<const Rational> z) {
  Rational s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * z[i];
  return s;
}

// Exact row rank of a dense rational matrix (Gaussian elimination).
int rank(std::vector<std::vector<Rational>> mat) {
  const int rows = static_cast<int>(mat.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(mat[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!mat[static_cast<size_t>(i)][static_cast<size_t>(c)].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(mat[static_cast<size_t>(r)], mat[static_cast<size_t>(piv)]);
    const Rational inv = Rational(1) / mat[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (int j = c; j < cols; ++j) mat[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rational f = mat[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = c; j < cols; ++j) {
        mat[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * mat[static_cast<size_t>(r)][static_cast<size_t>(j)];
      }
    }
    ++r;
  }
  return r;
}

// Visits every size-k index combination of {0,...,n-1}.
template <class F>
void for_each_combination(int n, int k, F&& visit) {
  if (k > n) return;
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  for (;;) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace

std::string SignVector::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<Hyperplane> build_hyperplanes(const PoolingInstance& inst) {
  std::vector<Hyperplane> hps;
  hps.reserve(static_cast<size_t>(inst.n) * static_cast<size_t>(inst.q));
  const int ref = inst.m - 1;  // reference input subtracted out in the ratio space
  for (int j = 0; j < inst.n; ++j) {
    for (int k = 0; k < inst.q; ++k) {
      Hyperplane h;
      h.a.reserve(static_cast<size_t>(inst.m - 1));
      for (int i = 0; i + 1 < inst.m; ++i) {
        h.a.push_back(inst.lambda[static_cast<size_t>(i)][static_cast<size_t>(k)] -
                      inst.lambda[static_cast<size_t>(ref)][static_cast<size_t>(k)]);
      }
      h.b = inst.mu[static_cast<size_t>(j)][static_cast<size_t>(k)] -
            inst.lambda[static_cast<size_t>(ref)][static_cast<size_t>(k)];
      h.output = j;
      h.quality = k;
      hps.push_back(std::move(h));
    }
  }
  return hps;
}

SignVector classify_point(std::span<const Rational> z,
                          const std::vector<Hyperplane>& hps, int n, int q) {
  SignVector eps(n, q);
  for (const auto& h : hps) {
    eps.set(h.output, h.quality, dot(h.a, z) <= h.b ? 0 : 1);
  }
  return eps;
}

std::vector<int> reachable_outputs(const SignVector& eps) {
  std::vector<int> out;
  for (int j = 0; j < eps.outputs(); ++j) {
    bool all_zero = true;
    for (int k = 0; k < eps.qualities(); ++k) {
      if (eps.at(j, k) != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) out.push_back(j);
  }
  return out;
}

std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hps, int m,
                                  int n, int q, EnumerationOptions opts) {
  const int dim = m - 1;

  // Group genuinely geometric hyperplanes by (a, b); degenerate ones with
  // a = 0 never subdivide anything and their side is forced by sign(b).
  struct Geom {
    std::vector<Rational> a;
    Rational b;
    std::vector<std::pair<int, int>> members;  // tied (j, k) entries
  };
  std::vector<Geom> geoms;
  std::map<std::pair<std::vector<Rational>, Rational>, size_t> geom_index;
  std::vector<std::pair<std::pair<int, int>, std::uint8_t>> forced;

  std::vector<const Hyperplane*> by_jk(static_cast<size_t>(n) * static_cast<size_t>(q), nullptr);
  for (const auto& h : hps) {
    by_jk[static_cast<size_t>(h.output) * static_cast<size_t>(q) + static_cast<size_t>(h.quality)] = &h;
  }

  // Insertion follows the parallel-class structure: one class (fixed k) at a
  // time, planes within a class in output order.
  for (int k = 0; k < q; ++k) {
    for (int j = 0; j < n; ++j) {
      const Hyperplane* h = by_jk[static_cast<size_t>(j) * static_cast<size_t>(q) + static_cast<size_t>(k)];
      assert(h != nullptr);
      if (dim == 0 || is_zero_vector(h->a)) {
        forced.push_back({{j, k}, static_cast<std::uint8_t>(h->b.sign() >= 0 ? 0 : 1)});
        continue;
      }
      auto key = std::make_pair(h->a, h->b);
      auto it = geom_index.find(key);
      if (it == geom_index.end()) {
        geom_index.emplace(std::move(key), geoms.size());
        geoms.push_back({h->a, h->b, {{j, k}}});
      } else {
        geoms[it->second].members.push_back({j, k});
      }
    }
  }

  struct PartialCell {
    std::vector<std::uint8_t> signs;  // one per geom inserted so far
    std::vector<Rational> witness;
  };

  std::vector<Rational> start(static_cast<size_t>(dim));
  if (dim > 0) {
    // Interior simplex point; in the unrestricted case any point does.
    const Rational v = opts.restrict_to_simplex ? Rational(1, 2 * dim) : Rational(0);
    std::fill(start.begin(), start.end(), v);
  }
  std::vector<PartialCell> cells{{{}, std::move(start)}};

  const SlackDomain domain =
      opts.restrict_to_simplex ? SlackDomain::Simplex : SlackDomain::Free;

  for (size_t g = 0; g < geoms.size(); ++g) {
    std::vector<PartialCell> next;
    next.reserve(cells.size() * 2);
    for (auto& cell : cells) {
      const std::uint8_t side =
          dot(geoms[g].a, cell.witness) <= geoms[g].b ? 0 : 1;

      // The witness already certifies one side; only the other needs an
      // exact strict-feasibility decision.
      std::vector<SlackRow> rows;
      rows.reserve(g + 1);
      for (size_t i = 0; i < g; ++i) {
        rows.push_back({geoms[i].a, geoms[i].b, cell.signs[i] == 1});
      }
      const std::uint8_t other = side ^ 1;
      rows.push_back({geoms[g].a, geoms[g].b, other == 1});
      const SlackResult split = solve_max_min_slack(dim, rows, domain);

      PartialCell kept;
      kept.signs = cell.signs;
      kept.signs.push_back(side);
      kept.witness = std::move(cell.witness);
      next.push_back(std::move(kept));

      if (split.nonempty()) {
        PartialCell born;
        born.signs = cell.signs;
        born.signs.push_back(other);
        born.witness = split.witness;
        next.push_back(std::move(born));
      }
    }
    cells = std::move(next);
  }

  std::vector<Cell> out;
  out.reserve(cells.size());
  for (auto& pc : cells) {
    Cell c;
    c.eps = SignVector(n, q);
    for (size_t g = 0; g < geoms.size(); ++g) {
      for (auto [j, k] : geoms[g].members) c.eps.set(j, k, pc.signs[g]);
    }
    for (auto& [jk, s] : forced) c.eps.set(jk.first, jk.second, s);
    c.witness = std::move(pc.witness);
    c.reachable = reachable_outputs(c.eps);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const Cell& a, const Cell& b) { return a.eps < b.eps; });
  return out;
}

mpz_class cell_bound(int m, int n, int q) {
  mpz_class total = 0;
  for (int i = 0; i < m; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(q),
                 static_cast<unsigned long>(i));
    mpz_class npow;
    mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(i));
    total += binom * npow;
  }
  return total;
}

mpz_class buck_bound(int m, int n, int q) {
  const unsigned long nq = static_cast<unsigned long>(n) * static_cast<unsigned long>(q);
  mpz_class total = 0;
  for (int i = 0; i < m; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), nq, static_cast<unsigned long>(i));
    total += binom;
  }
  return total;
}

bool is_general_position(const std::vector<Hyperplane>& hps, int m) {
  const int dim = m - 1;
  const int total = static_cast<int>(hps.size());

  if (dim == 0) {
    // Hyperplanes in R^0 are the empty set iff their offset is nonzero.
    return std::all_of(hps.begin(), hps.end(),
                       [](const Hyperplane& h) { return !h.b.is_zero(); });
  }

  // Every m hyperplanes must have empty common intersection: the stacked
  // system must be inconsistent.
  bool ok = true;
  for_each_combination(total, m, [&](const std::vector<int>& idx) {
    if (!ok) return;
    std::vector<std::vector<Rational>> a_mat, ab_mat;
    for (int i : idx) {
      a_mat.push_back(hps[static_cast<size_t>(i)].a);
      auto row = hps[static_cast<size_t>(i)].a;
      row.push_back(hps[static_cast<size_t>(i)].b);
      ab_mat.push_back(std::move(row));
    }
    if (rank(a_mat) == rank(ab_mat)) ok = false;  // consistent => nonempty
  });
  if (!ok) return false;

  // Every t hyperplanes from t distinct parallel classes must meet in an
  // (m-1-t)-dimensional affine subspace, i.e. the stacked coefficient rows
  // have full row rank t (full row rank also implies consistency).
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < total; ++i) by_class[hps[static_cast<size_t>(i)].quality].push_back(i);
  std::vector<std::vector<int>> classes;
  for (auto& [k, v] : by_class) classes.push_back(v);
  const int qn = static_cast<int>(classes.size());

  for (int t = 1; t <= dim && ok; ++t) {
    for_each_combination(qn, t, [&](const std::vector<int>& which) {
      if (!ok) return;
      // One representative per chosen class, all combinations.
      std::vector<size_t> pick(static_cast<size_t>(t), 0);
      for (;;) {
        std::vector<std::vector<Rational>> a_mat;
        for (int i = 0; i < t; ++i) {
          const int hp = classes[static_cast<size_t>(which[static_cast<size_t>(i)])]
                                [pick[static_cast<size_t>(i)]];
          a_mat.push_back(hps[static_cast<size_t>(hp)].a);
        }
        if (rank(a_mat) != t) {
          ok = false;
          return;
        }
        int i = t - 1;
        while (i >= 0 &&
               pick[static_cast<size_t>(i)] + 1 >=
                   classes[static_cast<size_t>(which[static_cast<size_t>(i)])].size()) {
          --i;
        }
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < t; ++j) pick[static_cast<size_t>(j)] = 0;
      }
    });
  }
  return ok;
}

}  // namespace pooling
