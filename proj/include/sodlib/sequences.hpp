#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sodlib/group_ring.hpp"

namespace sod {

/// A power of the complex unit i: value i^power, power in 0..3.
class Unit {
 public:
  constexpr Unit() = default;
  static constexpr Unit from_power(int p) { return Unit(static_cast<std::uint8_t>(((p % 4) + 4) % 4)); }
  static constexpr Unit one() { return Unit(0); }
  static constexpr Unit i() { return Unit(1); }
  static constexpr Unit minus_one() { return Unit(2); }
  static constexpr Unit minus_i() { return Unit(3); }

  constexpr int power() const noexcept { return power_; }
  constexpr bool is_real() const noexcept { return power_ % 2 == 0; }
  constexpr int re() const noexcept { return power_ == 0 ? 1 : power_ == 2 ? -1 : 0; }
  constexpr int im() const noexcept { return power_ == 1 ? 1 : power_ == 3 ? -1 : 0; }

  constexpr Unit conj() const { return from_power(-power_); }
  constexpr Unit operator-() const { return from_power(power_ + 2); }
  friend constexpr Unit operator*(Unit a, Unit b) { return from_power(a.power_ + b.power_); }
  friend constexpr auto operator<=>(Unit, Unit) = default;

  /// Image in the faithful remrep: degree 1 for {+1,-1}, degree 2 (i -> R) otherwise.
  SignedPerm embed(std::size_t degree) const {
    if (degree == 1) {
      if (!is_real()) throw Error(ErrorKind::InvalidArgument, "imaginary unit has no degree-1 image");
      return power_ == 0 ? mats::I(1) : -mats::I(1);
    }
    if (degree % 2 != 0) throw Error(ErrorKind::InvalidArgument, "unit embedding needs even degree");
    const SignedPerm ri = embed_central_i(degree);
    switch (power_) {
      case 0: return mats::I(degree);
      case 1: return ri;
      case 2: return -mats::I(degree);
      default: return -ri;
    }
  }

  std::string to_string() const {
    switch (power_) {
      case 0: return "+1";
      case 1: return "+i";
      case 2: return "-1";
      default: return "-i";
    }
  }

 private:
  constexpr explicit Unit(std::uint8_t p) : power_(p) {}
  std::uint8_t power_ = 0;
};

enum class Alphabet { Real, Complex };

inline std::string to_string(Alphabet a) { return a == Alphabet::Real ? "real" : "complex"; }

/// A nonzero sequence entry: unit times the variable `var` (1-based).
struct SeqEntry {
  Unit unit;
  int var = 1;
  friend auto operator<=>(const SeqEntry&, const SeqEntry&) = default;
};

using SeqCell = std::optional<SeqEntry>;

/**
 * A sequence over {0, +-x_l, +-i x_l}. Real-alphabet sequences only use
 * +-1 units and embed into degree 1; complex ones embed i -> R in degree 2.
 */
class GolaySeq {
 public:
  GolaySeq() = default;
  GolaySeq(std::vector<SeqCell> entries, Alphabet alphabet) : entries_(std::move(entries)), alphabet_(alphabet) {
    if (alphabet_ == Alphabet::Real) {
      for (const auto& e : entries_)
        if (e && !e->unit.is_real()) throw Error(ErrorKind::InvalidArgument, "real sequence holds an imaginary unit");
    }
  }

  /// One-variable sequence from units, all nonzero.
  static GolaySeq of_units(const std::vector<Unit>& units, Alphabet alphabet, int var = 1) {
    std::vector<SeqCell> cells;
    cells.reserve(units.size());
    for (Unit u : units) cells.push_back(SeqEntry{u, var});
    return GolaySeq(std::move(cells), alphabet);
  }

  std::size_t length() const noexcept { return entries_.size(); }
  Alphabet alphabet() const noexcept { return alphabet_; }
  const std::vector<SeqCell>& entries() const noexcept { return entries_; }
  const SeqCell& operator[](std::size_t k) const { return entries_[k]; }
  std::size_t embed_degree() const { return alphabet_ == Alphabet::Real ? 1 : 2; }

  /// Conjugated and reversed sequence.
  GolaySeq conj_reversed() const {
    std::vector<SeqCell> out(entries_.rbegin(), entries_.rend());
    for (auto& e : out)
      if (e) e->unit = e->unit.conj();
    return GolaySeq(std::move(out), alphabet_);
  }

  GolaySeq negated() const {
    std::vector<SeqCell> out = entries_;
    for (auto& e : out)
      if (e) e->unit = -e->unit;
    return GolaySeq(std::move(out), alphabet_);
  }

  GolaySeq with_var(int var) const {
    std::vector<SeqCell> out = entries_;
    for (auto& e : out)
      if (e) e->var = var;
    return GolaySeq(std::move(out), alphabet_);
  }

  GolaySeq as_complex() const { return GolaySeq(entries_, Alphabet::Complex); }

  friend GolaySeq concat(const GolaySeq& a, const GolaySeq& b) {
    std::vector<SeqCell> out = a.entries_;
    out.insert(out.end(), b.entries_.begin(), b.entries_.end());
    const Alphabet al = (a.alphabet_ == Alphabet::Complex || b.alphabet_ == Alphabet::Complex)
                            ? Alphabet::Complex
                            : Alphabet::Real;
    return GolaySeq(std::move(out), al);
  }

  /// Largest variable index used (0 for the all-zero sequence).
  int max_var() const {
    int v = 0;
    for (const auto& e : entries_)
      if (e) v = std::max(v, e->var);
    return v;
  }

  friend bool operator==(const GolaySeq& a, const GolaySeq& b) { return a.entries_ == b.entries_; }
  friend auto operator<=>(const GolaySeq& a, const GolaySeq& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<SeqCell> entries_;
  Alphabet alphabet_ = Alphabet::Complex;
};

/// Exact non-periodic autocorrelation at shift j, embedded at `degree`.
inline RingPoly npaf(const GolaySeq& seq, std::size_t j, std::size_t degree) {
  RingPoly out;
  const std::size_t n = seq.length();
  if (j >= n) return out;
  for (std::size_t i = 0; i + j < n; ++i) {
    const auto& hi = seq[i + j];
    const auto& lo = seq[i];
    if (!hi || !lo) continue;
    const SignedPerm prod = hi->unit.embed(degree) * lo->unit.embed(degree).transpose();
    out.add(Monomial::of(hi->var, lo->var), prod, 1);
  }
  return out;
}

inline RingPoly npaf(const GolaySeq& seq, std::size_t j) { return npaf(seq, j, seq.embed_degree()); }

inline std::size_t common_degree(const std::vector<GolaySeq>& seqs) {
  for (const auto& s : seqs)
    if (s.alphabet() == Alphabet::Complex) return 2;
  return 1;
}

/// Zero autocorrelation: the NPAF sums vanish for every shift j > 0.
inline bool is_complementary(const std::vector<GolaySeq>& seqs) {
  const std::size_t degree = common_degree(seqs);
  std::size_t longest = 0;
  for (const auto& s : seqs) longest = std::max(longest, s.length());
  for (std::size_t j = 1; j < longest; ++j) {
    RingPoly sum;
    for (const auto& s : seqs) sum += npaf(s, j, degree);
    if (!sum.is_zero()) return false;
  }
  return true;
}

/// abs(A reversed and conjugated) == abs(B).
inline bool quasireverse_check(const GolaySeq& a, const GolaySeq& b) {
  if (a.length() != b.length()) throw Error(ErrorKind::InvalidArgument, "quasireverse_check length mismatch");
  const std::size_t n = a.length();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = a[n - 1 - k];
    const auto& y = b[k];
    if (x.has_value() != y.has_value()) return false;
    if (x && x->var != y->var) return false;
  }
  return true;
}

/**
 * A complementary pair of equal-length sequences. `verified` is only ever
 * set by make_verified_pair, which runs the NPAF oracle.
 */
struct GolayPair {
  GolaySeq first;
  GolaySeq second;
  bool verified = false;
  int variables = 1;

  std::size_t length() const { return first.length(); }
  Alphabet alphabet() const {
    return (first.alphabet() == Alphabet::Real && second.alphabet() == Alphabet::Real) ? Alphabet::Real
                                                                                       : Alphabet::Complex;
  }
  friend bool operator==(const GolayPair& a, const GolayPair& b) {
    return a.first == b.first && a.second == b.second;
  }
};

/// Runs the NPAF oracle; returns the pair marked verified or throws.
inline GolayPair make_verified_pair(GolaySeq first, GolaySeq second, ErrorKind on_failure = ErrorKind::VerificationFailure) {
  if (first.length() != second.length()) throw Error(on_failure, "pair sequences differ in length");
  if (!is_complementary({first, second})) {
    throw Error(on_failure, "pair of length " + std::to_string(first.length()) + " is not complementary");
  }
  GolayPair p;
  p.variables = std::max(first.max_var(), second.max_var());
  p.first = std::move(first);
  p.second = std::move(second);
  p.verified = true;
  return p;
}

inline bool verify_pair(const GolayPair& p) {
  return p.first.length() == p.second.length() && is_complementary({p.first, p.second});
}

/// ((xA, yB); (yA, -xB)): a two-variable pair of twice the length.
inline GolayPair two_variable_lift(const GolayPair& p) {
  if (!p.verified || p.variables != 1) {
    throw Error(ErrorKind::InvalidArgument, "two_variable_lift needs a verified one-variable pair");
  }
  const GolaySeq a = p.first.as_complex().with_var(1);
  const GolaySeq b = p.second.as_complex().with_var(1);
  GolaySeq first = concat(a, b.with_var(2));
  GolaySeq second = concat(a.with_var(2), b.negated());
  return make_verified_pair(std::move(first), std::move(second));
}

/// ((A, B); (A, -B)): concatenation doubling.
inline GolayPair double_pair(const GolayPair& p) {
  if (!p.verified) throw Error(ErrorKind::InvalidArgument, "double_pair needs a verified pair");
  return make_verified_pair(concat(p.first, p.second), concat(p.first, p.second.negated()));
}

namespace detail {

/// Half-sum and half-difference (P+Q)/2, (P-Q)/2 of a pair whose entries
/// at every position are equal or opposite; empty if the pair is not of
/// that shape.
inline std::optional<std::pair<GolaySeq, GolaySeq>> split_halves(const GolayPair& p) {
  const std::size_t n = p.length();
  std::vector<SeqCell> plus(n), minus(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = p.first[k];
    const auto& y = p.second[k];
    if (!x || !y || x->var != y->var) return std::nullopt;
    if (x->unit == y->unit) {
      plus[k] = *x;
    } else if (x->unit == -y->unit) {
      minus[k] = *x;
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(GolaySeq(std::move(plus), Alphabet::Complex), GolaySeq(std::move(minus), Alphabet::Complex));
}

}  // namespace detail

/**
 * Turyn-style product of a "splittable" pair p of length L (every real
 * Golay pair, and every concatenation-doubled pair, qualifies) with a
 * one-variable complex pair q = (A; B) of length m:
 *
 *   E = A (x) X + B~ (x) Y,   F = B (x) X - A~ (x) Y
 *
 * with X = (P+Q)/2, Y = (P-Q)/2 and ~ the conjugate reversal. The result has
 * length L*m and is accepted only after the NPAF oracle passes.
 */
inline GolayPair compose_pairs(const GolayPair& p, const GolayPair& q) {
  if (!p.verified || !q.verified) throw Error(ErrorKind::InvalidArgument, "compose_pairs needs verified pairs");
  if (p.variables != 1 || q.variables != 1) {
    throw Error(ErrorKind::CompositionUnsupported, "compose_pairs works on one-variable pairs");
  }
  auto halves = detail::split_halves(p);
  if (!halves) {
    throw Error(ErrorKind::CompositionUnsupported,
                "left factor of length " + std::to_string(p.length()) + " does not split into half-sum/difference");
  }
  const auto& [X, Y] = *halves;
  const std::size_t L = p.length();
  const std::size_t m = q.length();
  const GolaySeq at = q.first.conj_reversed();
  const GolaySeq bt = q.second.conj_reversed();
  std::vector<SeqCell> e(L * m), f(L * m);
  auto times = [](const SeqCell& a, const SeqCell& b) -> SeqCell {
    if (!a || !b) return std::nullopt;
    return SeqEntry{a->unit * b->unit, 1};
  };
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < L; ++r) {
      const std::size_t pos = k * L + r;
      SeqCell ex = X[r] ? times(q.first[k], X[r]) : times(bt[k], Y[r]);
      SeqCell fx;
      if (X[r]) {
        fx = times(q.second[k], X[r]);
      } else {
        fx = times(at[k], Y[r]);
        if (fx) fx->unit = -fx->unit;
      }
      e[pos] = ex;
      f[pos] = fx;
    }
  }
  const Alphabet al =
      (p.alphabet() == Alphabet::Real && q.alphabet() == Alphabet::Real) ? Alphabet::Real : Alphabet::Complex;
  return make_verified_pair(GolaySeq(std::move(e), al), GolaySeq(std::move(f), al), ErrorKind::CompositionUnsupported);
}

}  // namespace sod
