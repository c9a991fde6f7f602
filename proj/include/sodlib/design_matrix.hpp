#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sodlib/group_ring.hpp"
#include "sodlib/parallel.hpp"

namespace sod {

/// A nonzero design entry: coefficient times the variable `var` (1-based).
struct Entry {
  SignedPerm coeff;
  int var = 1;
  friend bool operator==(const Entry&, const Entry&) = default;
};

using Cell = std::optional<Entry>;

/// Type SOD(order; weights...), weight l belonging to variable l+1.
struct SodType {
  std::size_t order = 0;
  std::vector<std::uint64_t> weights;

  std::uint64_t total_weight() const { return std::accumulate(weights.begin(), weights.end(), std::uint64_t{0}); }
  bool full() const { return total_weight() == order; }
  friend bool operator==(const SodType&, const SodType&) = default;
};

namespace detail {

inline void check_cell(const Cell& c, std::size_t nvars, std::size_t degree) {
  if (!c) return;
  if (c->var < 1 || static_cast<std::size_t>(c->var) > nvars) {
    throw Error(ErrorKind::InvalidArgument, "entry variable " + std::to_string(c->var) + " out of range");
  }
  if (c->coeff.degree() != degree) {
    throw Error(ErrorKind::DegreeMismatch, "entry coefficient degree " + std::to_string(c->coeff.degree()) +
                                               " differs from group degree " + std::to_string(degree));
  }
}

inline Cell conj_cell(const Cell& c) {
  if (!c) return std::nullopt;
  return Entry{c->coeff.transpose(), c->var};
}

}  // namespace detail

/// A square matrix with entries 0 or (signed perm) * variable.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(std::size_t order, std::size_t nvars, std::size_t degree)
      : order_(order), nvars_(nvars), degree_(degree), cells_(order * order) {}

  std::size_t order() const noexcept { return order_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t group_degree() const noexcept { return degree_; }

  const Cell& at(std::size_t i, std::size_t j) const { return cells_[i * order_ + j]; }
  void set(std::size_t i, std::size_t j, Cell c) {
    detail::check_cell(c, nvars_, degree_);
    cells_[i * order_ + j] = std::move(c);
  }

  bool is_full() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.has_value(); });
  }

  friend bool operator==(const DesignMatrix&, const DesignMatrix&) = default;

 private:
  std::size_t order_ = 0, nvars_ = 0, degree_ = 0;
  std::vector<Cell> cells_;
};

/// A circulant design, stored by its first row: entry (i, j) is row[(j - i) mod n].
class CirculantDesign {
 public:
  CirculantDesign() = default;
  CirculantDesign(std::size_t order, std::size_t nvars, std::size_t degree)
      : nvars_(nvars), degree_(degree), row_(order) {}
  CirculantDesign(std::vector<Cell> first_row, std::size_t nvars, std::size_t degree)
      : nvars_(nvars), degree_(degree), row_(std::move(first_row)) {
    for (const auto& c : row_) detail::check_cell(c, nvars_, degree_);
  }

  std::size_t order() const noexcept { return row_.size(); }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t group_degree() const noexcept { return degree_; }
  const std::vector<Cell>& first_row() const noexcept { return row_; }

  const Cell& operator[](std::size_t j) const { return row_[j]; }
  const Cell& at(std::size_t i, std::size_t j) const { return row_[(j + order() - i % order()) % order()]; }
  void set(std::size_t j, Cell c) {
    detail::check_cell(c, nvars_, degree_);
    row_[j] = std::move(c);
  }

  bool is_full() const {
    return std::all_of(row_.begin(), row_.end(), [](const Cell& c) { return c.has_value(); });
  }

  DesignMatrix expand() const {
    DesignMatrix m(order(), nvars_, degree_);
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = 0; j < order(); ++j) m.set(i, j, at(i, j));
    return m;
  }

  friend bool operator==(const CirculantDesign&, const CirculantDesign&) = default;

 private:
  std::size_t nvars_ = 0, degree_ = 0;
  std::vector<Cell> row_;
};

using PolyMatrix = std::vector<RingPoly>;  // row-major, order x order

// ---------------------------------------------------------------------------
// Adjoint, abs, support, quasisymmetry

inline DesignMatrix adjoint(const DesignMatrix& m) {
  DesignMatrix out(m.order(), m.nvars(), m.group_degree());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) out.set(i, j, detail::conj_cell(m.at(j, i)));
  return out;
}

/// circ(a1, ..., an)^* = circ(conj a1, conj an, ..., conj a2).
inline CirculantDesign adjoint(const CirculantDesign& c) {
  const std::size_t n = c.order();
  std::vector<Cell> row(n);
  for (std::size_t j = 0; j < n; ++j) row[j] = detail::conj_cell(c[(n - j) % n]);
  return CirculantDesign(std::move(row), c.nvars(), c.group_degree());
}

/// Componentwise magnitude: the variable index at each position, 0 where empty.
inline std::vector<int> abs_matrix(const DesignMatrix& m) {
  std::vector<int> out(m.order() * m.order(), 0);
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (const auto& c = m.at(i, j)) out[i * m.order() + j] = c->var;
  return out;
}

inline std::set<std::pair<std::size_t, std::size_t>> support(const DesignMatrix& m) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (m.at(i, j)) s.emplace(i, j);
  return s;
}

/// First-row support of a circulant.
inline std::set<std::size_t> support(const CirculantDesign& c) {
  std::set<std::size_t> s;
  for (std::size_t j = 0; j < c.order(); ++j)
    if (c[j]) s.insert(j);
  return s;
}

inline bool is_quasisymmetric(const DesignMatrix& m) {
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = i + 1; j < m.order(); ++j) {
      const auto& x = m.at(i, j);
      const auto& y = m.at(j, i);
      if (x.has_value() != y.has_value()) return false;
      if (x && x->var != y->var) return false;
    }
  }
  return true;
}

inline bool is_quasisymmetric(const CirculantDesign& c) {
  const std::size_t n = c.order();
  for (std::size_t j = 1; j < n; ++j) {
    const auto& x = c[j];
    const auto& y = c[n - j];
    if (x.has_value() != y.has_value()) return false;
    if (x && x->var != y->var) return false;
  }
  return true;
}

template <class M>
bool are_disjoint(const M& a, const M& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::InvalidArgument, "disjointness of different orders");
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j)
      if (a.at(i, j) && b.at(i, j)) return false;
  return true;
}

inline bool are_disjoint(const CirculantDesign& a, const CirculantDesign& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::InvalidArgument, "disjointness of different orders");
  for (std::size_t j = 0; j < a.order(); ++j)
    if (a[j] && b[j]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Products with the adjoint

/// X Y^*, dense, every entry exact.
inline PolyMatrix mul_adjoint(const DesignMatrix& x, const DesignMatrix& y) {
  const std::size_t n = x.order();
  if (y.order() != n) throw Error(ErrorKind::InvalidArgument, "product of different orders");
  PolyMatrix out(n * n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingPoly acc;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& a = x.at(i, k);
        const auto& b = y.at(j, k);
        if (!a || !b) continue;
        acc.add(Monomial::of(a->var, b->var), a->coeff * b->coeff.transpose(), 1);
      }
      out[i * n + j] = std::move(acc);
    }
  });
  return out;
}

/// First row of X Y^* for circulants: sum_k x_k conj(y_{k-j}).
inline std::vector<RingPoly> mul_adjoint(const CirculantDesign& x, const CirculantDesign& y) {
  const std::size_t n = x.order();
  if (y.order() != n) throw Error(ErrorKind::InvalidArgument, "product of different orders");
  std::vector<std::size_t> xs, ys;
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k]) xs.push_back(k);
    if (y[k]) ys.push_back(k);
  }
  std::vector<std::vector<SignedPerm>> conj_y(1);
  std::vector<SignedPerm> yt(n);
  for (std::size_t k : ys) yt[k] = y[k]->coeff.transpose();
  std::vector<RingPoly> out(n);
  parallel_for(n, [&](std::size_t j) {
    RingPoly acc;
    for (std::size_t k : xs) {
      const std::size_t m = (k + n - j) % n;
      const auto& b = y[m];
      if (!b) continue;
      const auto& a = *x[k];
      acc.add(Monomial::of(a.var, b->var), a.coeff * yt[m], 1);
    }
    out[j] = std::move(acc);
  });
  return out;
}

inline PolyMatrix gram(const DesignMatrix& m) { return mul_adjoint(m, m); }
inline std::vector<RingPoly> gram(const CirculantDesign& c) { return mul_adjoint(c, c); }

namespace detail {

using IntPoly = std::map<Monomial, std::int64_t>;

inline int real_sign(const SignedPerm& s) { return s.sign(0); }

/// X Y^t for degree-1 (real) designs with integer accumulators.
inline std::vector<IntPoly> real_mul_adjoint(const DesignMatrix& x, const DesignMatrix& y) {
  const std::size_t n = x.order();
  std::vector<IntPoly> out(n * n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntPoly acc;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& a = x.at(i, k);
        const auto& b = y.at(j, k);
        if (!a || !b) continue;
        acc[Monomial::of(a->var, b->var)] += real_sign(a->coeff) * real_sign(b->coeff);
      }
      std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
      out[i * n + j] = std::move(acc);
    }
  });
  return out;
}

inline RingPoly expected_diagonal(const SodType& t, std::size_t degree) {
  RingPoly p;
  for (std::size_t l = 0; l < t.weights.size(); ++l) {
    const int v = static_cast<int>(l + 1);
    p.add(Monomial::of(v, v), SignedPerm::identity(degree), static_cast<std::int64_t>(t.weights[l]));
  }
  return p;
}

inline bool same_images(const std::vector<RingPoly>& x, const std::vector<RingPoly>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!same_image(x[k], y[k])) return false;
  return true;
}

inline IntPoly expected_diagonal_int(const SodType& t) {
  IntPoly p;
  for (std::size_t l = 0; l < t.weights.size(); ++l) {
    const int v = static_cast<int>(l + 1);
    if (t.weights[l]) p[Monomial::of(v, v)] = static_cast<std::int64_t>(t.weights[l]);
  }
  return p;
}

/**
 * First (row-major) entry of M M^T that differs from (sum w_l x_l^2) I, for a
 * real design; (n, n) when none. Rows are flattened to sign and variable
 * arrays and each gram entry is accumulated into a K x K table of monomial
 * coefficients, so the inner loop is branch-free integer work.
 */
inline std::pair<std::size_t, std::size_t> first_real_gram_failure(const DesignMatrix& m, const SodType& t) {
  const std::size_t n = m.order();
  const std::size_t K = m.nvars() + 1;
  std::vector<std::int8_t> sgn(n * n, 0);
  std::vector<std::uint16_t> var(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (const auto& e = m.at(i, k)) {
        sgn[i * n + k] = static_cast<std::int8_t>(real_sign(e->coeff));
        var[i * n + k] = static_cast<std::uint16_t>(e->var);
      }
  std::vector<std::int64_t> want(K, 0);
  for (std::size_t l = 0; l < t.weights.size(); ++l) want[l + 1] = static_cast<std::int64_t>(t.weights[l]);

  std::vector<std::size_t> fail_col(n, n);
  parallel_for(n, [&](std::size_t i) {
    // four interleaved tables: consecutive k often hit the same slot
    const std::size_t KK = K * K;
    std::vector<std::int32_t> tab(4 * KK);
    std::vector<std::int64_t> acc(KK);
    const std::int8_t* si = &sgn[i * n];
    const std::uint16_t* vi = &var[i * n];
    for (std::size_t j = i; j < n; ++j) {
      std::fill(tab.begin(), tab.end(), 0);
      const std::int8_t* sj = &sgn[j * n];
      const std::uint16_t* vj = &var[j * n];
      std::size_t k = 0;
      for (; k + 4 <= n; k += 4) {
        tab[vi[k] * K + vj[k]] += si[k] * sj[k];
        tab[KK + vi[k + 1] * K + vj[k + 1]] += si[k + 1] * sj[k + 1];
        tab[2 * KK + vi[k + 2] * K + vj[k + 2]] += si[k + 2] * sj[k + 2];
        tab[3 * KK + vi[k + 3] * K + vj[k + 3]] += si[k + 3] * sj[k + 3];
      }
      for (; k < n; ++k) tab[vi[k] * K + vj[k]] += si[k] * sj[k];
      for (std::size_t x = 0; x < KK; ++x) acc[x] = std::int64_t{tab[x]} + tab[KK + x] + tab[2 * KK + x] + tab[3 * KK + x];
      bool ok = true;
      for (std::size_t a = 1; a < K && ok; ++a) {
        ok = acc[a * K + a] == (i == j ? want[a] : 0);
        for (std::size_t b = a + 1; b < K && ok; ++b) ok = acc[a * K + b] + acc[b * K + a] == 0;
      }
      if (!ok) {
        fail_col[i] = j;
        return;
      }
    }
  });
  // A failure at (i, j) with j < i shows up earlier as (j, i), so the scan above is enough.
  for (std::size_t i = 0; i < n; ++i)
    if (fail_col[i] < n) return {i, fail_col[i]};
  return {n, n};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SOD verification

struct SodReport {
  bool ok = true;
  std::string reason;
  std::size_t row = 0, col = 0;  // first failing gram entry when !ok
};

inline SodReport verify_sod_report(const DesignMatrix& m, const SodType& t) {
  if (m.order() != t.order) return {false, "order differs from type", 0, 0};
  if (t.weights.size() > m.nvars()) return {false, "type has more weights than variables", 0, 0};
  const std::size_t n = m.order();
  if (m.group_degree() == 1) {
    const auto [i, j] = detail::first_real_gram_failure(m, t);
    if (i < n) return {false, "gram entry mismatch", i, j};
    return {};
  }
  const PolyMatrix g = gram(m);
  const RingPoly diag = detail::expected_diagonal(t, m.group_degree());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = g[i * n + j];
      if (i == j ? !same_image(e, diag) : !e.image_zero()) return {false, "gram entry mismatch: " + e.to_string(), i, j};
    }
  return {};
}

/// Circulant fast path: only the first row of X X^* is needed.
inline SodReport verify_sod_report(const CirculantDesign& c, const SodType& t) {
  if (c.order() != t.order) return {false, "order differs from type", 0, 0};
  if (t.weights.size() > c.nvars()) return {false, "type has more weights than variables", 0, 0};
  const auto g = gram(c);
  const RingPoly diag = detail::expected_diagonal(t, c.group_degree());
  for (std::size_t j = 0; j < c.order(); ++j) {
    if (j == 0 ? !same_image(g[0], diag) : !g[j].image_zero()) return {false, "gram entry mismatch: " + g[j].to_string(), 0, j};
  }
  return {};
}

template <class M>
bool verify_sod(const M& m, const SodType& t) {
  return verify_sod_report(m, t).ok;
}

/// Type read off the first row: weight of variable l = its count in row 0.
template <class M>
SodType infer_type(const M& m) {
  SodType t{m.order(), std::vector<std::uint64_t>(m.nvars(), 0)};
  for (std::size_t j = 0; j < m.order(); ++j)
    if (const auto& c = m.at(0, j)) ++t.weights[c->var - 1];
  return t;
}

// ---------------------------------------------------------------------------
// Normality

inline bool is_normal(const DesignMatrix& m) {
  const DesignMatrix adj = adjoint(m);
  if (m.group_degree() == 1) return detail::real_mul_adjoint(m, m) == detail::real_mul_adjoint(adj, adj);
  return detail::same_images(gram(m), gram(adj));
}

inline bool is_normal(const CirculantDesign& c) {
  const CirculantDesign adj = adjoint(c);
  return detail::same_images(gram(c), gram(adj));
}

// ---------------------------------------------------------------------------
// Decomposition into coefficient matrices

/// A_m collects the coefficients of x_m (stored with variable index 1).
inline std::vector<DesignMatrix> decompose(const DesignMatrix& m) {
  std::vector<DesignMatrix> parts(m.nvars(), DesignMatrix(m.order(), 1, m.group_degree()));
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (const auto& c = m.at(i, j)) parts[c->var - 1].set(i, j, Entry{c->coeff, 1});
  return parts;
}

inline std::vector<CirculantDesign> decompose(const CirculantDesign& m) {
  std::vector<CirculantDesign> parts(m.nvars(), CirculantDesign(m.order(), 1, m.group_degree()));
  for (std::size_t j = 0; j < m.order(); ++j)
    if (const auto& c = m[j]) parts[c->var - 1].set(j, Entry{c->coeff, 1});
  return parts;
}

namespace detail {

inline bool identity_pattern(const std::vector<RingPoly>& row_or_matrix, std::size_t n, bool circulant,
                             std::uint64_t weight, std::size_t degree) {
  RingPoly diag;
  diag.add(Monomial::of(1, 1), SignedPerm::identity(degree), static_cast<std::int64_t>(weight));
  if (circulant) {
    for (std::size_t j = 0; j < n; ++j)
      if (j == 0 ? !same_image(row_or_matrix[0], diag) : !row_or_matrix[j].image_zero()) return false;
    return true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = row_or_matrix[i * n + j];
      if (i == j ? !same_image(e, diag) : !e.image_zero()) return false;
    }
  return true;
}

template <class M>
bool anti_amicable(const M& a, const M& b) {
  const auto ab = mul_adjoint(a, b);
  const auto ba = mul_adjoint(b, a);
  for (std::size_t k = 0; k < ab.size(); ++k)
    if (!(ab[k] + ba[k]).image_zero()) return false;
  return true;
}

inline bool real_check_decomposition(const std::vector<DesignMatrix>& parts, const SodType& t) {
  const std::size_t n = t.order;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    const auto g = real_mul_adjoint(parts[a], parts[a]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& e = g[i * n + j];
        const std::int64_t want = i == j ? static_cast<std::int64_t>(t.weights[a]) : 0;
        const std::int64_t have = e.empty() ? 0 : e.begin()->second;
        if (have != want) return false;
      }
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      const auto ab = real_mul_adjoint(parts[a], parts[b]);
      const auto ba = real_mul_adjoint(parts[b], parts[a]);
      for (std::size_t k = 0; k < ab.size(); ++k) {
        const std::int64_t x = ab[k].empty() ? 0 : ab[k].begin()->second;
        const std::int64_t y = ba[k].empty() ? 0 : ba[k].begin()->second;
        if (x + y != 0) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/**
 * Checks pairwise disjointness, A_i A_i^* = u_i I and A_i A_j^* = -A_j A_i^*.
 * Together these are equivalent to M M^T = sum s_i^2 A_i.
 */
template <class M>
bool check_decomposition(const std::vector<M>& parts, const SodType& t) {
  if (parts.size() != t.weights.size()) return false;
  for (const auto& p : parts)
    if (p.order() != t.order) return false;
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      if (!are_disjoint(parts[a], parts[b])) return false;
  constexpr bool circulant = std::is_same_v<M, CirculantDesign>;
  if constexpr (!circulant) {
    if (!parts.empty() && parts[0].group_degree() == 1) return detail::real_check_decomposition(parts, t);
  }
  for (std::size_t a = 0; a < parts.size(); ++a) {
    if (!detail::identity_pattern(mul_adjoint(parts[a], parts[a]), t.order, circulant, t.weights[a],
                                  parts[a].group_degree()))
      return false;
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      if (!detail::anti_amicable(parts[a], parts[b])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Substitution x_l -> 1

inline DesignMatrix substitute_ones(const DesignMatrix& m) {
  DesignMatrix out(m.order(), 1, m.group_degree());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (const auto& c = m.at(i, j)) out.set(i, j, Entry{c->coeff, 1});
  return out;
}

inline CirculantDesign substitute_ones(const CirculantDesign& m) {
  std::vector<Cell> row(m.order());
  for (std::size_t j = 0; j < m.order(); ++j)
    if (const auto& c = m[j]) row[j] = Entry{c->coeff, 1};
  return CirculantDesign(std::move(row), 1, m.group_degree());
}

/// SW(n, w): every row has w nonzeros and W W^* = w I.
template <class M>
bool is_signed_weighing(const M& m, std::uint64_t w) {
  const auto one = substitute_ones(m);
  for (std::size_t i = 0; i < m.order(); ++i) {
    std::uint64_t count = 0;
    for (std::size_t j = 0; j < m.order(); ++j)
      if (one.at(i, j)) ++count;
    if (count != w) return false;
  }
  return verify_sod(one, SodType{m.order(), {w}});
}

template <class M>
bool is_signed_hadamard(const M& m) {
  return m.is_full() && is_signed_weighing(m, m.order());
}

// ---------------------------------------------------------------------------
// Structural guard: no full SOD of odd order > 1 exists.

enum class OddFullCheck { NotApplicable, Passes, MustEven };

inline std::string_view to_string(OddFullCheck c) {
  switch (c) {
    case OddFullCheck::NotApplicable: return "not-applicable";
    case OddFullCheck::Passes: return "passes";
    case OddFullCheck::MustEven: return "MustEven";
  }
  return "";
}

template <class M>
OddFullCheck reject_odd_full(const M& m) {
  if (!m.is_full()) return OddFullCheck::NotApplicable;
  if (m.order() > 1 && m.order() % 2 == 1) return OddFullCheck::MustEven;
  return OddFullCheck::Passes;
}

}  // namespace sod
