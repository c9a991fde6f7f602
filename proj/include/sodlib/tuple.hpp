#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "sodlib/golay_numbers.hpp"

namespace sod {

/**
 * A k-tuple rewritten as (1, v_1..v_q, w_1,w_1, .., w_t,w_t).
 *
 * Variable numbering (1-based): 1 is x, 2..q+1 are the x_beta of the
 * v-slots, then each w-slot contributes the pair (y_delta, z_delta).
 */
struct TupleCanonicalization {
  std::vector<std::uint64_t> input;
  std::size_t lead = 0;  // input position that donated the leading 1
  std::vector<std::uint64_t> v;
  std::vector<std::uint64_t> w;
  std::vector<std::vector<int>> input_vars;  // variables whose weights sum to 4 * input[i]

  std::uint64_t u() const {
    std::uint64_t s = 1;
    for (auto x : v) s += x;
    for (auto x : w) s += 2 * x;
    return s;
  }
  std::size_t q() const noexcept { return v.size(); }
  std::size_t t() const noexcept { return w.size(); }
  std::size_t nvars() const noexcept { return 1 + v.size() + 2 * w.size(); }

  int x_var() const noexcept { return 1; }
  int v_var(std::size_t beta) const noexcept { return static_cast<int>(2 + beta); }
  int y_var(std::size_t delta) const noexcept { return static_cast<int>(2 + v.size() + 2 * delta); }
  int z_var(std::size_t delta) const noexcept { return y_var(delta) + 1; }

  /// (1, v.., w, w, ..) in variable order.
  std::vector<std::uint64_t> canonical_tuple() const {
    std::vector<std::uint64_t> out{1};
    out.insert(out.end(), v.begin(), v.end());
    for (auto x : w) {
      out.push_back(x);
      out.push_back(x);
    }
    return out;
  }

  /// Weights of the SOD(4u; ...) the family yields, per variable.
  std::vector<std::uint64_t> weights() const {
    auto c = canonical_tuple();
    for (auto& x : c) x *= 4;
    return c;
  }
};

inline TupleCanonicalization canonicalize_tuple(const std::vector<std::uint64_t>& tuple) {
  if (tuple.empty()) throw Error(ErrorKind::InvalidArgument, "empty tuple");
  for (auto x : tuple)
    if (x == 0) throw Error(ErrorKind::InvalidArgument, "tuple entries must be positive");

  TupleCanonicalization c;
  c.input = tuple;
  c.lead = pick_leading_index(tuple);

  // value -> input positions carrying it (the lead contributes u1 - 1)
  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const std::uint64_t val = i == c.lead ? tuple[i] - 1 : tuple[i];
    if (val > 0) groups[val].push_back(i);
  }
  std::vector<std::pair<std::uint64_t, std::size_t>> singles;
  std::vector<std::pair<std::uint64_t, std::pair<std::size_t, std::size_t>>> pairs;
  for (const auto& [val, pos] : groups) {
    std::size_t k = 0;
    for (; k + 1 < pos.size(); k += 2) pairs.push_back({val, {pos[k], pos[k + 1]}});
    if (k < pos.size()) singles.push_back({val, pos[k]});
  }
  for (const auto& s : singles) c.v.push_back(s.first);
  for (const auto& p : pairs) c.w.push_back(p.first);

  c.input_vars.assign(tuple.size(), {});
  c.input_vars[c.lead].push_back(c.x_var());
  for (std::size_t b = 0; b < singles.size(); ++b) c.input_vars[singles[b].second].push_back(c.v_var(b));
  for (std::size_t d = 0; d < pairs.size(); ++d) {
    c.input_vars[pairs[d].second.first].push_back(c.y_var(d));
    c.input_vars[pairs[d].second.second].push_back(c.z_var(d));
  }
  for (auto& vars : c.input_vars) std::sort(vars.begin(), vars.end());
  return c;
}

/// 2 + (3/13) sum log v + (3/13) sum log w + 8(q + t) over the canonical form.
inline BoundValue bound_secondbound(const std::vector<std::uint64_t>& tuple) {
  const auto c = canonicalize_tuple(tuple);
  double s = 2.0;
  for (auto x : c.v) s += 3.0 / 13.0 * log2_or_zero(x);
  for (auto x : c.w) s += 3.0 / 13.0 * log2_or_zero(x);
  s += 8.0 * static_cast<double>(c.q() + c.t());
  return make_bound(s);
}

/// Exponent n = 2 + 2 sum lc(v) + 2 sum lcp(2w) of the family construction.
inline std::uint64_t family_exponent(const TupleCanonicalization& c) {
  std::uint64_t n = 2;
  for (auto x : c.v) n += 2 * static_cast<std::uint64_t>(lc(x));
  for (auto x : c.w) n += 2 * static_cast<std::uint64_t>(lcp(2 * x));
  return n;
}

/// The statement's looser count 2 + 2 sum lc(v) + 2 sum lc(w).
inline std::uint64_t family_exponent_statement(const TupleCanonicalization& c) {
  std::uint64_t n = 2;
  for (auto x : c.v) n += 2 * static_cast<std::uint64_t>(lc(x));
  for (auto x : c.w) n += 2 * static_cast<std::uint64_t>(lc(x));
  return n;
}

}  // namespace sod
