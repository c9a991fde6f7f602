#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "sodlib/errors.hpp"

namespace sod {

/**
 * Membership in the family m = 2^(a+u) 3^b 5^c 11^d 13^e with
 * b+c+d+e <= a+2u+1 and u <= c+e. For fixed m the 2-exponent t = a+u is
 * known, and the constraint is easiest to meet with u as large as allowed,
 * so u = min(t, c+e) decides membership.
 */
inline bool is_cgn(std::uint64_t m) {
  if (m == 0) return false;
  int t = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++t;
  }
  int b = 0, c = 0, d = 0, e = 0;
  for (auto [p, cnt] : {std::pair<int, int*>{3, &b}, {5, &c}, {11, &d}, {13, &e}}) {
    while (m % p == 0) {
      m /= p;
      ++*cnt;
    }
  }
  if (m != 1) return false;
  const int u = std::min(t, c + e);
  const int a = t - u;
  return b + c + d + e <= a + 2 * u + 1;
}

/// All members of the family up to `limit`, sorted.
class GolayNumberSet {
 public:
  explicit GolayNumberSet(std::uint64_t limit) : limit_(limit) {
    for (std::uint64_t m = 1; m <= limit; ++m)
      if (is_cgn(m)) members_.push_back(m);
  }
  std::uint64_t limit() const noexcept { return limit_; }
  const std::vector<std::uint64_t>& members() const noexcept { return members_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> members_;
};

struct Decomposition {
  std::uint64_t target = 0;
  std::vector<std::uint64_t> parts;  // descending
  std::size_t cardinality() const noexcept { return parts.size(); }
};

/**
 * Coin-change table: least number of parts from `universe` summing to each
 * value up to `limit`. Witnesses pick the largest feasible part first, which
 * yields the lexicographically largest descending decomposition.
 */
class MinPartsTable {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  MinPartsTable(std::uint64_t limit, std::vector<std::uint64_t> universe)
      : universe_(std::move(universe)), best_(limit + 1, kUnreachable) {
    std::sort(universe_.begin(), universe_.end());
    best_[0] = 0;
    for (std::uint64_t v = 1; v <= limit; ++v) {
      int b = kUnreachable;
      for (std::uint64_t m : universe_) {
        if (m > v) break;
        const int prev = best_[v - m];
        if (prev != kUnreachable && prev + 1 < b) b = prev + 1;
      }
      best_[v] = b;
    }
  }

  std::uint64_t limit() const noexcept { return best_.size() - 1; }
  int count(std::uint64_t v) const {
    if (v > limit()) throw Error(ErrorKind::InvalidArgument, "value beyond table limit");
    return best_[v];
  }

  Decomposition witness(std::uint64_t v) const {
    if (count(v) == kUnreachable) throw Error(ErrorKind::NotReachable, "no decomposition of " + std::to_string(v));
    Decomposition d{v, {}};
    std::uint64_t rest = v;
    while (rest > 0) {
      const int need = best_[rest] - 1;
      for (auto it = universe_.rbegin(); it != universe_.rend(); ++it) {
        if (*it <= rest && best_[rest - *it] == need) {
          d.parts.push_back(*it);
          rest -= *it;
          break;
        }
      }
    }
    return d;
  }

 private:
  std::vector<std::uint64_t> universe_;
  std::vector<int> best_;
};

/// Table of the least number of complex Golay numbers summing to u.
inline MinPartsTable lc_table(std::uint64_t limit) {
  return MinPartsTable(limit, GolayNumberSet(limit).members());
}

/// Table over two-variable pair lengths: doubled members of the family.
inline MinPartsTable lcp_table(std::uint64_t limit) {
  std::vector<std::uint64_t> doubled;
  const GolayNumberSet set(limit / 2);
  for (std::uint64_t m : set.members()) doubled.push_back(2 * m);
  return MinPartsTable(limit, std::move(doubled));
}

inline int lc(std::uint64_t u) { return lc_table(u).count(u); }
inline Decomposition lc_decomposition(std::uint64_t u) { return lc_table(u).witness(u); }

inline int lcp(std::uint64_t u) {
  if (u % 2 != 0) throw Error(ErrorKind::OddTarget, "two-variable decomposition target " + std::to_string(u) + " is odd");
  return lcp_table(u).count(u);
}
inline Decomposition lcp_decomposition(std::uint64_t u) {
  if (u % 2 != 0) throw Error(ErrorKind::OddTarget, "two-variable decomposition target " + std::to_string(u) + " is odd");
  return lcp_table(u).witness(u);
}

// ---------------------------------------------------------------------------
// Bound calculators. Logs are base 2 with log(0) = 0.

inline double log2_or_zero(std::uint64_t x) { return x == 0 ? 0.0 : std::log2(static_cast<double>(x)); }

/// 3 * floor(log2(u) / 26) + 4.
inline int bound_lc_livinskyi(std::uint64_t u) {
  if (u == 0) throw Error(ErrorKind::InvalidArgument, "bound_lc_livinskyi needs u >= 1");
  const int floor_log = static_cast<int>(std::bit_width(u)) - 1;
  return 3 * (floor_log / 26) + 4;
}

/// A bound's exact real value and the integer exponent it implies.
struct BoundValue {
  double value = 0;
  long ceiling = 0;
};

inline BoundValue make_bound(double v) {
  // Guard against representations like 12.000000000001 of an integer value.
  const double r = std::round(v);
  const long c = std::abs(v - r) < 1e-9 ? static_cast<long>(r) : static_cast<long>(std::ceil(v));
  return {v, c};
}

/**
 * Index of the element whose lc(u) - lc(u-1) is largest; ties go to the
 * smallest value, then to the earliest position.
 */
inline std::size_t pick_leading_index(const std::vector<std::uint64_t>& tuple) {
  if (tuple.empty()) throw Error(ErrorKind::InvalidArgument, "empty tuple");
  std::uint64_t top = *std::max_element(tuple.begin(), tuple.end());
  const MinPartsTable table = lc_table(top);
  std::size_t best = 0;
  int best_diff = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] == 0) throw Error(ErrorKind::InvalidArgument, "tuple entries must be positive");
    const int diff = table.count(tuple[i]) - table.count(tuple[i] - 1);
    if (diff > best_diff || (diff == best_diff && tuple[i] < tuple[best])) {
      best = i;
      best_diff = diff;
    }
  }
  return best;
}

namespace detail {

inline BoundValue leading_log_bound(const std::vector<std::uint64_t>& tuple, double coef, double per_entry,
                                    double constant) {
  const std::size_t lead = pick_leading_index(tuple);
  double v = coef * log2_or_zero(tuple[lead] - 1);
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (i != lead) v += coef * log2_or_zero(tuple[i]);
  v += per_entry * static_cast<double>(tuple.size()) + constant;
  return make_bound(v);
}

}  // namespace detail

/// (3/13) log(u1 - 1) + (3/13) sum log(u_i) + 8k + 4.
inline BoundValue bound_thirdbound(const std::vector<std::uint64_t>& tuple) {
  return detail::leading_log_bound(tuple, 3.0 / 13.0, 8.0, 4.0);
}

/// (1/5) log(v1 - 1) + (1/5) sum log(v_i) + 10k + 4.
inline BoundValue bound_lastbound(const std::vector<std::uint64_t>& tuple) {
  return detail::leading_log_bound(tuple, 1.0 / 5.0, 10.0, 4.0);
}

/// (1/10) log(u) + 5.
inline BoundValue bound_30(std::uint64_t u) {
  if (u == 0) throw Error(ErrorKind::InvalidArgument, "bound_30 needs u >= 1");
  return make_bound(0.1 * log2_or_zero(u) + 5.0);
}

}  // namespace sod
