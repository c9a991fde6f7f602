#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sodlib/design_matrix.hpp"

namespace sod {

enum class ChainBase { Real, Complex, Quaternion };

inline std::string to_string(ChainBase b) {
  switch (b) {
    case ChainBase::Real: return "real";
    case ChainBase::Complex: return "complex";
    case ChainBase::Quaternion: return "quaternion";
  }
  return "";
}

/**
 * Relations among a level's generator images. square[g] is +1 or -1 when
 * g^2 = +-I and 0 otherwise; commutation[a][b] is +1 (commute),
 * -1 (anticommute) or 0.
 */
struct Relations {
  std::vector<int> square;
  std::vector<std::vector<int>> commutation;
  friend bool operator==(const Relations&, const Relations&) = default;
};

inline Relations compute_relations(const std::vector<SignedPerm>& gens) {
  Relations r;
  r.square.reserve(gens.size());
  for (const auto& g : gens) {
    const SignedPerm sq = g * g;
    r.square.push_back(sq.is_identity() ? 1 : sq.is_negated_identity() ? -1 : 0);
  }
  r.commutation.assign(gens.size(), std::vector<int>(gens.size(), 1));
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const SignedPerm ab = gens[a] * gens[b];
      const SignedPerm ba = gens[b] * gens[a];
      const int c = ab == ba ? 1 : ab == -ba ? -1 : 0;
      r.commutation[a][b] = r.commutation[b][a] = c;
    }
  }
  return r;
}

/// The 2x2 block form a generator came from: [[upper,0],[0,lower]] or [[0,upper],[lower,0]].
struct BlockImage {
  SignedPerm upper;
  SignedPerm lower;
  bool antidiagonal = false;

  SignedPerm image() const {
    return antidiagonal ? block_antidiagonal(upper, lower) : block_diagonal(upper, lower);
  }
  friend bool operator==(const BlockImage&, const BlockImage&) = default;
};

struct ChainLevel {
  std::size_t degree = 1;
  std::vector<SignedPerm> generators;
  std::vector<BlockImage> blocks;  // parallel to generators; empty at the base
  Relations relations;
  friend bool operator==(const ChainLevel&, const ChainLevel&) = default;
};

/**
 * The tower S_0 <= S_1 <= ... of signed groups built by repeated doubling,
 * each level stored through its faithful monomial image. Level r+1 embeds
 * level r by s -> I_2 (x) s.
 */
class RemrepChain {
 public:
  RemrepChain() = default;

  /// S_R = {+-1}, degree 1.
  static RemrepChain real() { return RemrepChain(ChainBase::Real, ChainLevel{1, {}, {}, {}}); }

  /// S_C = {+-1, +-i} with i -> R.
  static RemrepChain complex() {
    std::vector<SignedPerm> g{mats::R()};
    return RemrepChain(ChainBase::Complex, ChainLevel{2, g, {}, compute_relations(g)});
  }

  /// S_Q with j -> R (x) I_2 and k -> P (x) R.
  static RemrepChain quaternion() {
    std::vector<SignedPerm> g{sp_tensor(mats::R(), mats::I(2)), sp_tensor(mats::P(), mats::R())};
    return RemrepChain(ChainBase::Quaternion, ChainLevel{4, g, {}, compute_relations(g)});
  }

  static RemrepChain from_levels(ChainBase base, std::vector<ChainLevel> levels) {
    if (levels.empty()) throw Error(ErrorKind::InvalidArgument, "chain needs at least a base level");
    RemrepChain c;
    c.base_ = base;
    c.levels_ = std::move(levels);
    return c;
  }

  ChainBase base() const noexcept { return base_; }
  const std::vector<ChainLevel>& levels() const noexcept { return levels_; }
  const ChainLevel& top() const { return levels_.back(); }
  std::size_t top_degree() const { return levels_.back().degree; }
  std::size_t doublings() const noexcept { return levels_.size() - 1; }

  void push(ChainLevel level) { levels_.push_back(std::move(level)); }

  friend bool operator==(const RemrepChain&, const RemrepChain&) = default;

 private:
  RemrepChain(ChainBase base, ChainLevel level) : base_(base), levels_{std::move(level)} {}

  ChainBase base_ = ChainBase::Real;
  std::vector<ChainLevel> levels_;
};

/// log2 of a power-of-two degree.
inline int degree_exponent(std::size_t degree) {
  int e = 0;
  while ((std::size_t{1} << e) < degree) ++e;
  if ((std::size_t{1} << e) != degree) throw Error(ErrorKind::InvalidArgument, "degree is not a power of two");
  return e;
}

struct DoublingStep {
  CirculantDesign a;
  CirculantDesign b;  // coefficients already embedded at a's degree
  CirculantDesign d;
  std::vector<SignedPerm> generators;
  std::vector<BlockImage> blocks;
};

/// Re-embeds every coefficient at a higher degree by I_{degree/d} (x) c.
inline CirculantDesign embed_circulant(const CirculantDesign& c, std::size_t degree) {
  if (c.group_degree() == degree) return c;
  if (c.group_degree() == 0 || degree % c.group_degree() != 0) {
    throw Error(ErrorKind::DegreeMismatch, "cannot embed degree " + std::to_string(c.group_degree()) + " into " +
                                               std::to_string(degree));
  }
  const SignedPerm pad = mats::I(degree / c.group_degree());
  std::vector<Cell> row(c.order());
  for (std::size_t j = 0; j < c.order(); ++j)
    if (const auto& e = c[j]) row[j] = Entry{sp_tensor(pad, e->coeff), e->var};
  return CirculantDesign(std::move(row), c.nvars(), degree);
}

/**
 * Appends the level produced by `step` and spot-checks it: every generator
 * must equal its recorded block image, and the lifted images of the previous
 * level must satisfy the previous level's relations.
 */
inline RemrepChain extend_remrep(const RemrepChain& chain, const DoublingStep& step) {
  const std::size_t m = chain.top_degree();
  if (step.a.group_degree() != m || step.d.group_degree() != 2 * m) {
    throw Error(ErrorKind::DegreeMismatch, "doubling step does not sit on top of the chain");
  }
  if (step.generators.size() != step.blocks.size()) {
    throw Error(ErrorKind::InvalidArgument, "generator and block lists differ in size");
  }
  for (std::size_t g = 0; g < step.generators.size(); ++g) {
    if (!(step.blocks[g].image() == step.generators[g]) || step.generators[g].degree() != 2 * m) {
      throw Error(ErrorKind::RelationViolation, "generator " + std::to_string(g) + " differs from its block image");
    }
  }
  std::vector<SignedPerm> lifted;
  for (const auto& g : chain.top().generators) lifted.push_back(sp_tensor(mats::I(2), g));
  if (!(compute_relations(lifted) == chain.top().relations)) {
    throw Error(ErrorKind::RelationViolation, "embedding of the previous level breaks its relations");
  }
  if (mats::I(2 * m) == -mats::I(2 * m)) throw Error(ErrorKind::RelationViolation, "-1 maps to the identity");
  RemrepChain out = chain;
  out.push(ChainLevel{2 * m, step.generators, step.blocks, compute_relations(step.generators)});
  return out;
}

struct DoublingResult {
  CirculantDesign d;
  RemrepChain chain;
  DoublingStep step;
};

namespace detail {

inline std::vector<SignedPerm> distinct_coefficients(const CirculantDesign& c) {
  std::set<SignedPerm> s;
  for (const auto& e : c.first_row())
    if (e) s.insert(e->coeff.canonical());
  return {s.begin(), s.end()};
}

}  // namespace detail

/**
 * Merges disjoint quasisymmetric circulants A (over the chain's top level)
 * and B (central coefficients) into one circulant D over the next level with
 * D D^* = A A^* + B B^*.
 *
 * Position j of D's first row:
 *   j in supp(A):  [[a_j, 0], [0, conj(a_{-j})]]
 *   j in supp(B):  [[0, b_j], [-conj(b_{-j}), 0]]
 * which is the block pattern left after reordering
 * [[A+B, A-B], [A^*-B^*, -A^*-B^*]] into 2x2 blocks and multiplying by
 * (1/2) I (x) [[1,1],[1,-1]].
 */
inline DoublingResult zs_double(const CirculantDesign& a, const CirculantDesign& b_in, const RemrepChain& chain) {
  const std::size_t n = a.order();
  const std::size_t m = a.group_degree();
  if (b_in.order() != n) throw Error(ErrorKind::InvalidArgument, "zs_double inputs differ in order");
  if (m != chain.top_degree()) {
    throw Error(ErrorKind::DegreeMismatch, "A has degree " + std::to_string(m) + " but the chain top is " +
                                               std::to_string(chain.top_degree()));
  }
  const CirculantDesign b = embed_circulant(b_in, m);
  if (!are_disjoint(a, b)) throw Error(ErrorKind::NotDisjoint, "zs_double inputs share support");
  if (!is_quasisymmetric(a) || !is_quasisymmetric(b)) {
    throw Error(ErrorKind::NotQuasisymmetric, "zs_double needs quasisymmetric inputs");
  }
  const auto ca = detail::distinct_coefficients(a);
  for (const auto& y : detail::distinct_coefficients(b))
    for (const auto& x : ca)
      if (!commutes(x, y)) throw Error(ErrorKind::NotCentral, "a coefficient of B does not commute with A");
  if (!is_normal(a)) throw Error(ErrorKind::NotNormal, "zs_double needs A to be normal");
  if (!is_normal(b)) throw Error(ErrorKind::NotNormal, "zs_double needs B to be normal");

  const std::size_t nvars = std::max(a.nvars(), b.nvars());
  std::vector<Cell> row(n);
  DoublingStep step;
  std::set<SignedPerm> seen;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t mj = (n - j) % n;
    BlockImage blk;
    int var = 0;
    if (const auto& x = a[j]) {
      blk = BlockImage{x->coeff, a[mj]->coeff.transpose(), false};
      var = x->var;
    } else if (const auto& y = b[j]) {
      blk = BlockImage{y->coeff, -b[mj]->coeff.transpose(), true};
      var = y->var;
    } else {
      continue;
    }
    const SignedPerm img = blk.image();
    row[j] = Entry{img, var};
    if (img.is_identity() || img.is_negated_identity()) continue;
    // Both signs of a coset count as one generator; keep the first seen.
    if (seen.insert(img.canonical()).second) {
      const bool flip = !img.is_canonical();
      step.generators.push_back(flip ? -img : img);
      step.blocks.push_back(flip ? BlockImage{-blk.upper, -blk.lower, blk.antidiagonal} : blk);
    }
  }
  CirculantDesign d(std::move(row), nvars, 2 * m);

  const auto ga = gram(a);
  const auto gb = gram(b);
  const auto gd = gram(d);
  for (std::size_t j = 0; j < n; ++j) {
    if (!same_image(gd[j], (ga[j] + gb[j]).lifted())) {
      throw Error(ErrorKind::GramMismatch, "gram(D) differs from gram(A) + gram(B) at offset " + std::to_string(j));
    }
  }
  if (!is_quasisymmetric(d)) throw Error(ErrorKind::GramMismatch, "doubled circulant lost quasisymmetry");

  step.a = a;
  step.b = b;
  step.d = d;
  RemrepChain next = extend_remrep(chain, step);
  return DoublingResult{std::move(d), std::move(next), std::move(step)};
}

struct FoldResult {
  CirculantDesign sod;
  RemrepChain chain;
};

namespace detail {

inline FoldResult fold(std::vector<CirculantDesign> bs, const SodType& t, RemrepChain chain) {
  if (bs.empty()) throw Error(ErrorKind::InvalidArgument, "fold needs at least one circulant");
  const std::size_t base = chain.top_degree();
  for (auto& b : bs) b = embed_circulant(b, base);
  CirculantDesign acc = bs.front();
  for (std::size_t k = 1; k < bs.size(); ++k) {
    auto r = zs_double(acc, bs[k], chain);
    acc = std::move(r.d);
    chain = std::move(r.chain);
  }
  const auto rep = verify_sod_report(acc, t);
  if (!rep.ok) throw Error(ErrorKind::FinalVerificationFailure, "folded design fails the SOD check: " + rep.reason);
  return {std::move(acc), std::move(chain)};
}

}  // namespace detail

/// Folds circulants over S_C; n inputs give a remrep of degree 2^n.
inline FoldResult fold_complex(const std::vector<CirculantDesign>& bs, const SodType& t) {
  for (const auto& b : bs)
    if (b.group_degree() > 2) throw Error(ErrorKind::DegreeMismatch, "fold_complex inputs must be over S_C");
  return detail::fold(bs, t, RemrepChain::complex());
}

/// Folds circulants over S_R; n inputs give a remrep of degree 2^(n-1).
inline FoldResult fold_real(const std::vector<CirculantDesign>& bs, const SodType& t) {
  for (const auto& b : bs) {
    if (b.group_degree() != 1) throw Error(ErrorKind::DegreeMismatch, "fold_real inputs must be over S_R");
  }
  return detail::fold(bs, t, RemrepChain::real());
}

}  // namespace sod
