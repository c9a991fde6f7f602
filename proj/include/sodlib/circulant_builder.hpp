#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sodlib/design_matrix.hpp"
#include "sodlib/sequences.hpp"
#include "sodlib/tuple.hpp"

namespace sod {

namespace detail {

inline Cell seq_to_cell(const SeqCell& c, std::size_t degree, int var) {
  if (!c) return std::nullopt;
  return Entry{c->unit.embed(degree), var};
}

/// Variable remapping for sequences: old index k -> vars[k - 1].
inline GolaySeq remap_vars(const GolaySeq& s, const std::vector<int>& vars) {
  std::vector<SeqCell> cells = s.entries();
  for (auto& c : cells) {
    if (!c) continue;
    if (c->var < 1 || static_cast<std::size_t>(c->var) > vars.size()) {
      throw Error(ErrorKind::InvalidArgument, "sequence uses an unmapped variable");
    }
    c->var = vars[c->var - 1];
  }
  return GolaySeq(std::move(cells), s.alphabet());
}

}  // namespace detail

/**
 * circ(0_(a+1), A, 0_(2b+1), B, 0_(a)) of order 2a + 2b + 2len + 2, with
 * coefficients embedded at `degree` (0 picks 1 for real input, else 2).
 */
inline CirculantDesign pair_circulant(const GolaySeq& a, const GolaySeq& b, std::size_t pad_a, std::size_t pad_b,
                                      std::size_t nvars = 0, std::size_t degree = 0) {
  if (a.length() != b.length()) throw Error(ErrorKind::InvalidArgument, "pair_circulant sequences differ in length");
  if (!quasireverse_check(a, b)) throw Error(ErrorKind::NotQuasisymmetric, "A is not quasireverse to B");
  if (degree == 0) degree = common_degree({a, b});
  if (nvars == 0) nvars = static_cast<std::size_t>(std::max({1, a.max_var(), b.max_var()}));
  const std::size_t len = a.length();
  const std::size_t order = 2 * pad_a + 2 * pad_b + 2 * len + 2;
  std::vector<Cell> row(order);
  const std::size_t a_start = pad_a + 1;
  const std::size_t b_start = a_start + len + 2 * pad_b + 1;
  for (std::size_t k = 0; k < len; ++k) {
    if (a[k]) row[a_start + k] = detail::seq_to_cell(a[k], degree, a[k]->var);
    if (b[k]) row[b_start + k] = detail::seq_to_cell(b[k], degree, b[k]->var);
  }
  return CirculantDesign(std::move(row), nvars, degree);
}

/// Where a family member sits: its kind, slot, and first-row offset/length.
struct MemberLayout {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct CirculantFamily {
  std::size_t order = 0;
  std::size_t nvars = 0;
  std::vector<CirculantDesign> members;
  std::vector<MemberLayout> layout;
  SodType type;  // type of the SOD the family folds into
};

namespace detail {

struct FamilyBuilder {
  std::size_t u;  // order is 4u
  std::size_t nvars;
  CirculantFamily fam;

  FamilyBuilder(std::size_t u_, std::size_t nvars_) : u(u_), nvars(nvars_) {
    fam.order = 4 * u;
    fam.nvars = nvars;
  }

  void add(CirculantDesign c, MemberLayout l) {
    fam.members.push_back(std::move(c));
    fam.layout.push_back(std::move(l));
  }

  void add_m(int x) {
    const std::size_t n = 4 * u;
    const SignedPerm one = mats::I(2);
    std::vector<Cell> m1(n), m2(n);
    m1[0] = Entry{one, x};
    m1[2 * u] = Entry{one, x};
    m2[u] = Entry{-one, x};
    m2[3 * u] = Entry{one, x};
    add(CirculantDesign(std::move(m1), nvars, 2), {"M1", 0, 1});
    add(CirculantDesign(std::move(m2), nvars, 2), {"M2", 0, 1});
  }

  /// X = circ(0_(o+1), A, 0_(4u-2(o+L)-1), B, 0_(o)),
  /// Y = circ(0_(2u-o-L), -B, 0_(2o+1), A, 0_(2u-o-L-1)).
  void add_xy(const GolaySeq& a, const GolaySeq& b, std::size_t o, const std::string& tag, const char* xn,
              const char* yn) {
    const std::size_t len = a.length();
    if (o + len > 2 * u - 1) throw Error(ErrorKind::OffsetCollision, "slot " + tag + " runs past the layout budget");
    add(pair_circulant(a, b, o, 2 * u - o - len - 1, nvars, 2), {std::string(xn) + tag, o, len});
    add(pair_circulant(b.negated(), a, 2 * u - o - len - 1, o, nvars, 2), {std::string(yn) + tag, o, len});
  }

  void finish(const SodType& type) {
    fam.type = type;
    const auto& ms = fam.members;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!is_quasisymmetric(ms[i]))
        throw Error(ErrorKind::NotQuasisymmetric, "member " + fam.layout[i].name + " is not quasisymmetric");
      for (std::size_t k = i + 1; k < ms.size(); ++k)
        if (!are_disjoint(ms[i], ms[k]))
          throw Error(ErrorKind::OffsetCollision,
                      "members " + fam.layout[i].name + " and " + fam.layout[k].name + " overlap");
    }
    std::vector<RingPoly> total(fam.order);
    std::vector<std::vector<RingPoly>> grams(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) { grams[i] = gram(ms[i]); });
    for (const auto& g : grams)
      for (std::size_t j = 0; j < fam.order; ++j) total[j] += g[j];
    const RingPoly diag = detail::expected_diagonal(type, 2);
    for (std::size_t j = 0; j < fam.order; ++j) {
      if (j == 0 ? !same_image(total[0], diag) : !total[j].image_zero()) {
        throw Error(ErrorKind::ComplementarityFailure,
                    "family gram sum is wrong at offset " + std::to_string(j) + ": " + total[j].to_string());
      }
    }
  }
};

}  // namespace detail

/**
 * The circulant family of order 4u for a canonical tuple.
 *
 * v_pairs[beta]: one-variable complex Golay pairs with lengths summing to v_beta.
 * w_pairs[delta]: two-variable pairs with lengths summing to 2 w_delta.
 * Members come out as M1, M2, then X/Y per v-slot pair, then Z/T per w-slot
 * pair, all over S_C (degree 2).
 */
inline CirculantFamily build_family(const TupleCanonicalization& c, const std::vector<std::vector<GolayPair>>& v_pairs,
                                    const std::vector<std::vector<GolayPair>>& w_pairs) {
  if (v_pairs.size() != c.q() || w_pairs.size() != c.t()) {
    throw Error(ErrorKind::InvalidArgument, "one decomposition per slot is required");
  }
  const std::size_t u = c.u();
  detail::FamilyBuilder fb(u, c.nvars());
  fb.add_m(c.x_var());

  std::size_t offset = 0;  // S[alpha, beta]
  for (std::size_t b = 0; b < c.q(); ++b) {
    std::size_t total = 0;
    for (std::size_t a = 0; a < v_pairs[b].size(); ++a) {
      const auto& p = v_pairs[b][a];
      if (!p.verified || p.variables != 1) {
        throw Error(ErrorKind::InvalidArgument, "v-slot pairs must be verified one-variable pairs");
      }
      const std::vector<int> vars{c.v_var(b)};
      const std::string tag = "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
      fb.add_xy(detail::remap_vars(p.first, vars), detail::remap_vars(p.second, vars), offset, tag, "X", "Y");
      offset += p.length();
      total += p.length();
    }
    if (total != c.v[b]) throw Error(ErrorKind::InvalidArgument, "v-slot pair lengths do not sum to v");
  }

  // Z/T offsets: v + S'[gamma, delta]
  for (std::size_t d = 0; d < c.t(); ++d) {
    std::size_t total = 0;
    for (std::size_t g = 0; g < w_pairs[d].size(); ++g) {
      const auto& p = w_pairs[d][g];
      if (!p.verified || p.variables != 2) {
        throw Error(ErrorKind::InvalidArgument, "w-slot pairs must be verified two-variable pairs");
      }
      const std::vector<int> vars{c.y_var(d), c.z_var(d)};
      const std::string tag = "[" + std::to_string(g + 1) + "," + std::to_string(d + 1) + "]";
      fb.add_xy(detail::remap_vars(p.first, vars), detail::remap_vars(p.second, vars), offset, tag, "Z", "T");
      offset += p.length();
      total += p.length();
    }
    if (total != 2 * c.w[d]) throw Error(ErrorKind::InvalidArgument, "w-slot pair lengths do not sum to 2w");
  }

  fb.finish(SodType{4 * u, c.weights()});
  return std::move(fb.fam);
}

/// One slot of the generic construction: same-length (A, B) rows whose
/// union is a complementary set of weight 2 * weight.
struct SequenceSlot {
  std::uint64_t weight = 0;
  std::vector<std::pair<GolaySeq, GolaySeq>> rows;
};

/**
 * M1/M2/X/Y family of order 4v, v = 1 + sum of slot weights, from externally
 * supplied complementary sets. Slots are laid out back to back. Sets that
 * fail the autocorrelation check are rejected.
 */
inline CirculantFamily build_generic(const std::vector<SequenceSlot>& slots) {
  std::size_t v = 1;
  for (const auto& s : slots) v += s.weight;
  const std::size_t nvars = 1 + slots.size();
  detail::FamilyBuilder fb(v, nvars);
  fb.add_m(1);
  std::size_t offset = 0;
  std::vector<std::uint64_t> weights{4};
  for (std::size_t b = 0; b < slots.size(); ++b) {
    const auto& slot = slots[b];
    std::vector<GolaySeq> all;
    std::uint64_t mass = 0;
    for (const auto& [a, bb] : slot.rows) {
      if (a.length() != bb.length()) throw Error(ErrorKind::InvalidArgument, "slot rows must have equal lengths");
      if (a.max_var() > 1 || bb.max_var() > 1) throw Error(ErrorKind::InvalidArgument, "slot rows must be one-variable");
      all.push_back(a);
      all.push_back(bb);
      for (const auto* s : {&a, &bb})
        for (const auto& e : s->entries())
          if (e) ++mass;
    }
    if (mass != 2 * slot.weight || !is_complementary(all)) {
      throw Error(ErrorKind::VerificationFailure, "slot " + std::to_string(b + 1) + " is not a complementary set of weight 2u");
    }
    const std::vector<int> vars{static_cast<int>(b + 2)};
    for (std::size_t a = 0; a < slot.rows.size(); ++a) {
      const auto& [x, y] = slot.rows[a];
      const std::string tag = "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
      fb.add_xy(detail::remap_vars(x, vars), detail::remap_vars(y, vars), offset, tag, "X", "Y");
      offset += x.length();
    }
    weights.push_back(4 * slot.weight);
  }
  fb.finish(SodType{4 * v, weights});
  return std::move(fb.fam);
}

}  // namespace sod
