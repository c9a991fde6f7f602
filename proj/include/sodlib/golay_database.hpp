#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sodlib/golay_numbers.hpp"
#include "sodlib/golay_search.hpp"
#include "sodlib/json_io.hpp"

namespace sod {

/**
 * Source of verified complex Golay pairs by length.
 *
 * Primitives come from exhaustive search (complex 1, 2, 3, 5 and real 2, 4,
 * 8, 10) plus any pairs loaded from data files. Other lengths are reached by
 * concatenation doubling and by composing a splittable left factor (a real
 * pair or a doubled pair) with a reachable right factor.
 */
class GolayDatabase {
 public:
  static constexpr std::size_t kComplexPrimitives[] = {1, 2, 3, 5};
  static constexpr std::size_t kRealPrimitives[] = {2, 4, 8, 10};

  GolayDatabase() {
    for (auto n : kComplexPrimitives) complex_lengths_.insert(n);
    for (auto n : kRealPrimitives) real_lengths_.insert(n);
  }

  /// Adds a verified pair. Unverified or multi-variable pairs are refused.
  void add_primitive(const GolayPair& p) {
    if (!p.verified || !verify_pair(p)) throw Error(ErrorKind::VerificationFailure, "refusing an unverified pair");
    if (p.variables != 1) throw Error(ErrorKind::InvalidArgument, "primitives must be one-variable pairs");
    std::lock_guard lock(mu_);
    const std::size_t n = p.length();
    if (p.alphabet() == Alphabet::Real) {
      real_lengths_.insert(n);
      real_.emplace(n, p);
    } else {
      complex_lengths_.insert(n);
      complex_.emplace(n, p);
    }
    plans_.clear();
    built_.clear();
  }

  /// Loads a pair file (single object or array of objects); each pair is
  /// re-verified and rejected on failure. Returns the number loaded.
  std::size_t load_file(const std::string& path) {
    const auto j = io::read_json_file(path);
    std::size_t count = 0;
    auto take = [&](const io::json& o) {
      add_primitive(io::pair_from_json(o));
      ++count;
    };
    if (j.is_array()) {
      for (const auto& o : j) take(o);
    } else {
      take(j);
    }
    return count;
  }

  bool is_primitive(std::size_t n) const { return complex_lengths_.count(n) || real_lengths_.count(n); }

  /// How a length is reached: primitive, doubling of n/2, or a product left * right.
  struct Plan {
    enum Kind { Primitive, Double, Compose } kind = Primitive;
    std::size_t left = 0;   // Compose: splittable left length
    std::size_t right = 0;  // Compose: right length
  };

  std::optional<Plan> plan(std::size_t n) {
    std::lock_guard lock(mu_);
    return plan_locked(n);
  }

  bool reachable(std::size_t n) { return plan(n).has_value(); }

  /// A verified pair of length n; NotGolay when n is outside the family,
  /// NotReachable when no pair is derivable from the available primitives.
  GolayPair pair_for_length(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "pair length must be positive");
    if (!is_cgn(n)) throw Error(ErrorKind::NotGolay, std::to_string(n) + " is not a complex Golay number of the family");
    std::lock_guard lock(mu_);
    if (!plan_locked(n)) {
      throw Error(ErrorKind::NotReachable, "no pair of length " + std::to_string(n) + " derivable from the loaded primitives");
    }
    return build_locked(n);
  }

  /// Real pair of a primitive real length.
  GolayPair real_pair(std::size_t n) {
    std::lock_guard lock(mu_);
    if (!real_lengths_.count(n)) throw Error(ErrorKind::NotReachable, "no real primitive of length " + std::to_string(n));
    return real_primitive_locked(n);
  }

  /// Members of the family up to `limit` that this database can reach.
  std::vector<std::uint64_t> reachable_members(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    const GolayNumberSet set(limit);
    for (auto m : set.members())
      if (reachable(m)) out.push_back(m);
    return out;
  }

 private:
  GolayPair real_primitive_locked(std::size_t n) {
    auto it = real_.find(n);
    if (it != real_.end()) return it->second;
    auto found = search_pairs(n, Alphabet::Real);
    if (found.empty()) throw Error(ErrorKind::NotReachable, "search found no real pair of length " + std::to_string(n));
    return real_.emplace(n, found.front()).first->second;
  }

  GolayPair complex_primitive_locked(std::size_t n) {
    auto it = complex_.find(n);
    if (it != complex_.end()) return it->second;
    auto found = search_pairs(n, Alphabet::Complex);
    if (found.empty()) throw Error(ErrorKind::NotReachable, "search found no pair of length " + std::to_string(n));
    return complex_.emplace(n, found.front()).first->second;
  }

  // Left factor of a product: real primitive, or a doubled reachable pair.
  bool splittable_locked(std::size_t n) {
    if (real_lengths_.count(n)) return true;
    return n % 2 == 0 && plan_locked(n / 2).has_value();
  }

  std::optional<Plan> plan_locked(std::size_t n) {
    if (n == 0 || !is_cgn(n)) return std::nullopt;
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    std::optional<Plan> p;
    if (complex_lengths_.count(n) || real_lengths_.count(n)) {
      p = Plan{Plan::Primitive, 0, 0};
    } else if (n % 2 == 0 && plan_locked(n / 2)) {
      p = Plan{Plan::Double, 0, 0};
    } else {
      for (std::size_t left = 2; left < n && !p; ++left) {
        if (n % left != 0) continue;
        const std::size_t right = n / left;
        if (splittable_locked(left) && plan_locked(right)) p = Plan{Plan::Compose, left, right};
      }
    }
    plans_[n] = p;
    return p;
  }

  GolayPair splittable_pair_locked(std::size_t n) {
    if (real_lengths_.count(n)) return real_primitive_locked(n);
    return double_pair(build_locked(n / 2));
  }

  GolayPair build_locked(std::size_t n) {
    if (auto it = built_.find(n); it != built_.end()) return it->second;
    const Plan p = *plan_locked(n);
    GolayPair out;
    switch (p.kind) {
      case Plan::Primitive:
        out = complex_lengths_.count(n) ? complex_primitive_locked(n) : real_primitive_locked(n);
        break;
      case Plan::Double:
        out = double_pair(build_locked(n / 2));
        break;
      case Plan::Compose:
        out = compose_pairs(splittable_pair_locked(p.left), build_locked(p.right));
        break;
    }
    return built_.emplace(n, std::move(out)).first->second;
  }

  std::recursive_mutex mu_;
  std::set<std::size_t> complex_lengths_, real_lengths_;
  std::map<std::size_t, GolayPair> complex_, real_;
  std::map<std::size_t, std::optional<Plan>> plans_;
  std::map<std::size_t, GolayPair> built_;
};

}  // namespace sod
