#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

#include "sodlib/sequences.hpp"

namespace sod {

struct SearchOptions {
  /// Maximum number of search-tree nodes visited before giving up.
  std::uint64_t node_budget = 4'000'000'000ull;
  unsigned threads = 1;
  /// Stop once this many pairs are found (0: enumerate all).
  std::size_t max_results = 0;
};

namespace detail {

// i^p as a Gaussian integer.
constexpr int kRe[4] = {1, 0, -1, 0};
constexpr int kIm[4] = {0, 1, 0, -1};

/**
 * Exhaustive search for complementary pairs with a[0] = b[0] = +1, filling
 * positions from both ends inward. After level k the outermost shift
 * n-1-k is fully determined, so its autocorrelation sum is checked at once.
 */
class PairSearcher {
 public:
  PairSearcher(std::size_t n, Alphabet alphabet, std::uint64_t budget, std::atomic<std::uint64_t>& nodes,
               std::atomic<std::size_t>* found = nullptr, std::size_t max_results = 0)
      : n_(n), budget_(budget), nodes_(nodes), found_(found), max_results_(max_results), a_(n, 0), b_(n, 0) {
    if (alphabet == Alphabet::Real) {
      units_ = {0, 2};
    } else {
      units_ = {0, 1, 2, 3};
    }
  }

  /// Searches the subtree where the last entries are fixed to (a_last, b_last).
  void run(int a_last, int b_last, std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
    out_ = &out;
    if (n_ == 1) {
      out_->emplace_back(a_, b_);
      return;
    }
    a_[n_ - 1] = a_last;
    b_[n_ - 1] = b_last;
    if (!shift_vanishes(n_ - 1)) return;
    descend(1);
  }

  std::vector<std::pair<int, int>> first_level() const {
    std::vector<std::pair<int, int>> v;
    if (n_ == 1) {
      v.emplace_back(0, 0);
      return v;
    }
    for (int x : units_)
      for (int y : units_) v.emplace_back(x, y);
    return v;
  }

 private:
  bool shift_vanishes(std::size_t s) const {
    long re = 0, im = 0;
    for (std::size_t i = 0; i + s < n_; ++i) {
      const int pa = (a_[i + s] - a_[i] + 4) & 3;
      const int pb = (b_[i + s] - b_[i] + 4) & 3;
      re += kRe[pa] + kRe[pb];
      im += kIm[pa] + kIm[pb];
    }
    return re == 0 && im == 0;
  }

  bool done() const { return max_results_ && found_ && found_->load(std::memory_order_relaxed) >= max_results_; }

  void tick() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
      throw Error(ErrorKind::BudgetExceeded, "pair search exceeded node budget");
    }
  }

  void descend(std::size_t k) {
    if (done()) return;
    const std::size_t lo = k, hi = n_ - 1 - k;
    if (lo > hi) {
      finish();
      return;
    }
    if (lo == hi) {
      for (int x : units_) {
        for (int y : units_) {
          tick();
          a_[lo] = x;
          b_[lo] = y;
          if (shift_vanishes(n_ - 1 - k)) finish();
        }
      }
      return;
    }
    for (int a0 : units_)
      for (int a1 : units_)
        for (int b0 : units_)
          for (int b1 : units_) {
            tick();
            a_[lo] = a0;
            a_[hi] = a1;
            b_[lo] = b0;
            b_[hi] = b1;
            if (shift_vanishes(n_ - 1 - k)) descend(k + 1);
          }
  }

  void finish() {
    const std::size_t upto = n_ - 1 - (n_ - 1) / 2;  // shifts >= upto already checked
    for (std::size_t s = 1; s < upto; ++s)
      if (!shift_vanishes(s)) return;
    if (found_) {
      if (max_results_ && found_->fetch_add(1) >= max_results_) return;
    }
    out_->emplace_back(a_, b_);
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<std::size_t>* found_;
  std::size_t max_results_;
  std::vector<int> units_;
  std::vector<int> a_, b_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>>* out_ = nullptr;
};

}  // namespace detail

/**
 * All complementary pairs of the given length over {+-1} (Real) or
 * {+-1, +-i} (Complex), normalised so both sequences start with +1.
 * Results are sorted and each one has passed the NPAF oracle.
 */
inline std::vector<GolayPair> search_pairs(std::size_t length, Alphabet alphabet, const SearchOptions& opts = {}) {
  if (length == 0) throw Error(ErrorKind::InvalidArgument, "search length must be positive");
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> found{0};
  std::vector<std::pair<std::vector<int>, std::vector<int>>> raw;

  detail::PairSearcher probe(length, alphabet, opts.node_budget, nodes);
  const auto roots = probe.first_level();
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(roots.size())));

  std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> buckets(roots.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&] {
    detail::PairSearcher searcher(length, alphabet, opts.node_budget, nodes, &found, opts.max_results);
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= roots.size()) return;
      if (opts.max_results && found.load() >= opts.max_results) return;
      try {
        searcher.run(roots[r].first, roots[r].second, buckets[r]);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
        next = roots.size();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  for (auto& b : buckets) raw.insert(raw.end(), b.begin(), b.end());
  std::sort(raw.begin(), raw.end());
  if (opts.max_results && raw.size() > opts.max_results) raw.resize(opts.max_results);

  std::vector<GolayPair> out;
  out.reserve(raw.size());
  auto to_seq = [&](const std::vector<int>& powers) {
    std::vector<Unit> u;
    u.reserve(powers.size());
    for (int p : powers) u.push_back(Unit::from_power(p));
    return GolaySeq::of_units(u, alphabet);
  };
  for (const auto& [a, b] : raw) out.push_back(make_verified_pair(to_seq(a), to_seq(b)));
  return out;
}

}  // namespace sod
