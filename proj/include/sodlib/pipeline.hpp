#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sodlib/circulant_builder.hpp"
#include "sodlib/golay_database.hpp"
#include "sodlib/zs_doubling.hpp"

namespace sod {

struct ConstructOptions {
  /// Accept decompositions longer than the optimum when an optimal one needs
  /// lengths the database cannot reach.
  bool allow_fallback = false;
};

struct ConstructResult {
  TupleCanonicalization canon;
  std::vector<Decomposition> v_parts;  // per v-slot, over pair lengths
  std::vector<Decomposition> w_parts;  // per w-slot, over one-variable lengths (lifted to 2x)
  CirculantFamily family;
  FoldResult fold;
  int exponent = 0;           // remrep degree is 2^exponent
  std::uint64_t optimal = 0;  // 2 + 2 sum lc(v) + 2 sum lcp(2w)
  bool fallback_used = false;
};

namespace detail {

inline Decomposition reachable_decomposition(std::uint64_t target, GolayDatabase& db, bool allow_fallback,
                                             bool& fallback_used) {
  const int best = lc(target);
  const MinPartsTable table(target, db.reachable_members(target));
  const int have = table.count(target);
  if (have == MinPartsTable::kUnreachable) {
    throw Error(ErrorKind::NotReachable, "no decomposition of " + std::to_string(target) + " into reachable lengths");
  }
  if (have != best) {
    if (!allow_fallback) {
      throw Error(ErrorKind::NotReachable,
                  "an optimal decomposition of " + std::to_string(target) + " (" + std::to_string(best) +
                      " parts) needs Golay lengths the database cannot reach; " + std::to_string(have) +
                      " parts are available (load data files or allow fallback)");
    }
    fallback_used = true;
  }
  return table.witness(target);
}

}  // namespace detail

/// Full pipeline for a tuple: canonical form, family of circulants, fold, verification.
inline ConstructResult construct(const std::vector<std::uint64_t>& tuple, GolayDatabase& db,
                                 const ConstructOptions& opts = {}) {
  ConstructResult r;
  r.canon = canonicalize_tuple(tuple);
  r.optimal = family_exponent(r.canon);

  std::vector<std::vector<GolayPair>> v_pairs, w_pairs;
  for (auto v : r.canon.v) {
    auto d = detail::reachable_decomposition(v, db, opts.allow_fallback, r.fallback_used);
    std::vector<GolayPair> ps;
    for (auto part : d.parts) ps.push_back(db.pair_for_length(part));
    v_pairs.push_back(std::move(ps));
    r.v_parts.push_back(std::move(d));
  }
  for (auto w : r.canon.w) {
    auto d = detail::reachable_decomposition(w, db, opts.allow_fallback, r.fallback_used);
    std::vector<GolayPair> ps;
    for (auto part : d.parts) ps.push_back(two_variable_lift(db.pair_for_length(part)));
    w_pairs.push_back(std::move(ps));
    r.w_parts.push_back(std::move(d));
  }
  r.family = build_family(r.canon, v_pairs, w_pairs);
  r.fold = fold_complex(r.family.members, r.family.type);
  r.exponent = degree_exponent(r.fold.chain.top_degree());
  return r;
}

}  // namespace sod
