#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sodlib/signed_perm.hpp"

namespace sod {

/**
 * An element of the signed group ring Z[S], with S realised by signed
 * permutations of a fixed degree.
 *
 * Terms are keyed by canonical coset representatives; a term on -s is
 * stored as the negated coefficient on s. The zero element has no terms.
 */
class GroupRingElem {
 public:
  explicit GroupRingElem(std::size_t degree = 0) : degree_(degree) {}

  static GroupRingElem of(const SignedPerm& s, std::int64_t coeff = 1) {
    GroupRingElem x(s.degree());
    x.add_term(s, coeff);
    return x;
  }

  std::size_t degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<SignedPerm, std::int64_t>& terms() const noexcept { return terms_; }

  /// Coefficient of s, read through canonicalisation.
  std::int64_t coefficient(const SignedPerm& s) const {
    const bool flip = !s.is_canonical();
    auto it = terms_.find(flip ? -s : s);
    if (it == terms_.end()) return 0;
    return flip ? -it->second : it->second;
  }

  void add_term(const SignedPerm& s, std::int64_t coeff) {
    if (coeff == 0) return;
    adopt_degree(s.degree());
    if (s.is_canonical()) {
      bump(s, coeff);
    } else {
      bump(-s, -coeff);
    }
  }

  GroupRingElem& operator+=(const GroupRingElem& y) {
    if (y.is_zero()) return *this;
    adopt_degree(y.degree_);
    for (const auto& [s, c] : y.terms_) bump(s, c);
    return *this;
  }
  GroupRingElem& operator-=(const GroupRingElem& y) {
    if (y.is_zero()) return *this;
    adopt_degree(y.degree_);
    for (const auto& [s, c] : y.terms_) bump(s, -c);
    return *this;
  }
  friend GroupRingElem operator+(GroupRingElem x, const GroupRingElem& y) { return x += y; }
  friend GroupRingElem operator-(GroupRingElem x, const GroupRingElem& y) { return x -= y; }
  GroupRingElem operator-() const {
    GroupRingElem x = *this;
    for (auto& [s, c] : x.terms_) c = -c;
    return x;
  }

  friend GroupRingElem operator*(const GroupRingElem& x, const GroupRingElem& y) {
    GroupRingElem out(x.degree_ ? x.degree_ : y.degree_);
    if (x.is_zero() || y.is_zero()) return out;
    if (x.degree_ != y.degree_) throw Error(ErrorKind::DegreeMismatch, "group ring product");
    for (const auto& [s, c] : x.terms_)
      for (const auto& [t, d] : y.terms_) out.add_term(s * t, c * d);
    return out;
  }

  /// Conjugation s -> s^{-1}, extended linearly.
  GroupRingElem conj() const {
    GroupRingElem out(degree_);
    for (const auto& [s, c] : terms_) out.add_term(s.transpose(), c);
    return out;
  }

  /// Image under the embedding s -> I_2 (x) s used when a level doubles.
  GroupRingElem lifted() const {
    GroupRingElem out(degree_ * 2);
    const SignedPerm i2 = mats::I(2);
    for (const auto& [s, c] : terms_) out.add_term(sp_tensor(i2, s), c);
    return out;
  }

  friend bool operator==(const GroupRingElem& x, const GroupRingElem& y) {
    if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
    return x.degree_ == y.degree_ && x.terms_ == y.terms_;
  }

  /// Matrix image: sum of c * s as a dense degree x degree integer matrix.
  std::vector<std::int64_t> dense() const {
    std::vector<std::int64_t> m(degree_ * degree_, 0);
    for (const auto& [s, c] : terms_)
      for (std::size_t k = 0; k < degree_; ++k) m[s.image(k) * degree_ + k] += c * s.sign(k);
    return m;
  }

  /// Equality of matrix images. Distinct formal sums can evaluate to the
  /// same matrix once the degree exceeds 2.
  friend bool same_image(const GroupRingElem& x, const GroupRingElem& y) {
    if (x == y) return true;
    return (x - y).image_is_zero();
  }

  /// Does the matrix image vanish? Sparse: one (position, value) per term and column.
  bool image_is_zero() const {
    if (terms_.empty()) return true;
    std::vector<std::pair<std::size_t, std::int64_t>> cells;
    cells.reserve(terms_.size() * degree_);
    for (const auto& [s, c] : terms_)
      for (std::size_t k = 0; k < degree_; ++k) cells.emplace_back(s.image(k) * degree_ + k, c * s.sign(k));
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < cells.size();) {
      std::int64_t sum = 0;
      std::size_t k = i;
      for (; k < cells.size() && cells[k].first == cells[i].first; ++k) sum += cells[k].second;
      if (sum != 0) return false;
      i = k;
    }
    return true;
  }

  /// Is this r * identity for an integer r (including r = 0)?
  bool is_scalar(std::int64_t r) const {
    if (r == 0) return is_zero();
    if (terms_.size() != 1) return false;
    const auto& [s, c] = *terms_.begin();
    return s.is_identity() && c == r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c << "*";
      if (s.is_identity()) {
        os << "I";
      } else {
        os << "[";
        for (std::size_t k = 0; k < s.degree(); ++k) os << (k ? "," : "") << (s.sign(k) < 0 ? "-" : "") << s.image(k);
        os << "]";
      }
    }
    return os.str();
  }

 private:
  void adopt_degree(std::size_t d) {
    if (degree_ == 0) {
      degree_ = d;
    } else if (d != 0 && d != degree_) {
      throw Error(ErrorKind::DegreeMismatch,
                  "group ring degrees " + std::to_string(degree_) + " and " + std::to_string(d));
    }
  }
  void bump(const SignedPerm& canonical, std::int64_t c) {
    auto [it, inserted] = terms_.try_emplace(canonical, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t degree_;
  std::map<SignedPerm, std::int64_t> terms_;
};

inline GroupRingElem gre_add(const GroupRingElem& x, const GroupRingElem& y) {
  if (!x.is_zero() && !y.is_zero() && x.degree() != y.degree())
    throw Error(ErrorKind::DegreeMismatch, "gre_add");
  return x + y;
}
inline GroupRingElem gre_mul(const GroupRingElem& x, const GroupRingElem& y) { return x * y; }
inline GroupRingElem gre_conj(const GroupRingElem& x) { return x.conj(); }

/// Unordered pair of variable indices (commuting real indeterminates).
struct Monomial {
  int a = 0;
  int b = 0;
  static Monomial of(int u, int v) { return u <= v ? Monomial{u, v} : Monomial{v, u}; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/**
 * A quadratic form in commuting variables with group-ring coefficients.
 * This is the value type of entries of X X^* and of autocorrelations of
 * variable sequences.
 */
class RingPoly {
 public:
  void add(Monomial m, const GroupRingElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(Monomial m, const SignedPerm& s, std::int64_t coeff = 1) {
    if (coeff == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, GroupRingElem::of(s, coeff));
      return;
    }
    it->second.add_term(s, coeff);
    if (it->second.is_zero()) terms_.erase(it);
  }

  RingPoly& operator+=(const RingPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  friend RingPoly operator+(RingPoly x, const RingPoly& y) { return x += y; }

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Monomial, GroupRingElem>& terms() const noexcept { return terms_; }

  GroupRingElem coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GroupRingElem() : it->second;
  }

  RingPoly conj() const {
    RingPoly out;
    for (const auto& [m, c] : terms_) out.add(m, c.conj());
    return out;
  }
  RingPoly lifted() const {
    RingPoly out;
    for (const auto& [m, c] : terms_) out.add(m, c.lifted());
    return out;
  }

  friend bool operator==(const RingPoly& x, const RingPoly& y) { return x.terms_ == y.terms_; }

  /// Equality after evaluating every coefficient to its matrix image.
  friend bool same_image(const RingPoly& x, const RingPoly& y) {
    if (x == y) return true;
    RingPoly d = x;
    for (const auto& [m, c] : y.terms_) d.add(m, -c);
    for (const auto& [m, c] : d.terms_)
      if (!c.image_is_zero()) return false;
    return true;
  }
  bool image_zero() const { return same_image(*this, RingPoly{}); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.to_string() << ")*x" << m.a << "*x" << m.b;
    }
    return os.str();
  }

 private:
  std::map<Monomial, GroupRingElem> terms_;
};

}  // namespace sod
