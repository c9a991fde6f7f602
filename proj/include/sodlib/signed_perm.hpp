#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "sodlib/errors.hpp"

namespace sod {

/**
 * A monomial {0, +1, -1} matrix of order `degree`.
 *
 * Column c holds its single nonzero entry in row image(c) with value sign(c),
 * i.e. M[image(c), c] = sign(c). Every signed-group element handled by the
 * library is stored this way, as its image under a faithful remrep, so that
 * equality, inverses and centrality tests are exact and cheap.
 *
 * Internally each column is packed as (row | sign-bit << 31). The derived
 * ordering is lexicographic over that packing; it is the fixed total order
 * used to pick canonical coset representatives of {s, -s}.
 */
class SignedPerm {
 public:
  SignedPerm() = default;

  static SignedPerm identity(std::size_t degree) {
    SignedPerm s;
    s.cols_.reserve(degree);
    for (std::size_t c = 0; c < degree; ++c) s.cols_.push_back(static_cast<std::uint32_t>(c));
    return s;
  }

  static SignedPerm from_arrays(std::span<const std::uint32_t> perm, std::span<const int> sign) {
    if (perm.size() != sign.size() || perm.empty()) {
      throw Error(ErrorKind::InvalidArgument, "signed perm needs equal, nonempty perm/sign arrays");
    }
    SignedPerm s;
    s.cols_.resize(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t c = 0; c < perm.size(); ++c) {
      if (perm[c] >= perm.size() || seen[perm[c]]) {
        throw Error(ErrorKind::InvalidArgument, "perm is not a permutation of 0..degree-1");
      }
      if (sign[c] != 1 && sign[c] != -1) {
        throw Error(ErrorKind::InvalidArgument, "sign entries must be +1 or -1");
      }
      seen[perm[c]] = true;
      s.cols_[c] = perm[c] | (sign[c] < 0 ? kSignBit : 0u);
    }
    return s;
  }

  /// Builds from a dense monomial matrix given row-major.
  static SignedPerm from_dense(const std::vector<std::vector<int>>& m) {
    const std::size_t n = m.size();
    std::vector<std::uint32_t> perm(n, 0);
    std::vector<int> sign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      int found = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (m[r].size() != n) throw Error(ErrorKind::InvalidArgument, "dense matrix not square");
        if (m[r][c] != 0) {
          ++found;
          perm[c] = static_cast<std::uint32_t>(r);
          sign[c] = m[r][c];
        }
      }
      if (found != 1) throw Error(ErrorKind::InvalidArgument, "column is not monomial");
    }
    return from_arrays(perm, sign);
  }

  std::size_t degree() const noexcept { return cols_.size(); }
  std::uint32_t image(std::size_t c) const noexcept { return cols_[c] & ~kSignBit; }
  int sign(std::size_t c) const noexcept { return (cols_[c] & kSignBit) ? -1 : 1; }

  std::vector<std::uint32_t> perm_array() const {
    std::vector<std::uint32_t> p(degree());
    for (std::size_t c = 0; c < degree(); ++c) p[c] = image(c);
    return p;
  }
  std::vector<int> sign_array() const {
    std::vector<int> s(degree());
    for (std::size_t c = 0; c < degree(); ++c) s[c] = sign(c);
    return s;
  }

  std::vector<std::vector<int>> dense() const {
    std::vector<std::vector<int>> m(degree(), std::vector<int>(degree(), 0));
    for (std::size_t c = 0; c < degree(); ++c) m[image(c)][c] = sign(c);
    return m;
  }

  SignedPerm operator-() const {
    SignedPerm s = *this;
    for (auto& v : s.cols_) v ^= kSignBit;
    return s;
  }

  /// Matrix product a * b.
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
    if (a.degree() != b.degree()) {
      throw Error(ErrorKind::DegreeMismatch,
                  "signed perm product of degrees " + std::to_string(a.degree()) + " and " +
                      std::to_string(b.degree()));
    }
    SignedPerm s;
    s.cols_.resize(a.degree());
    for (std::size_t c = 0; c < a.degree(); ++c) {
      const std::uint32_t bc = b.cols_[c];
      const std::uint32_t ac = a.cols_[bc & ~kSignBit];
      s.cols_[c] = ac ^ (bc & kSignBit);
    }
    return s;
  }

  /// Transpose, which is also the inverse.
  SignedPerm transpose() const {
    SignedPerm s;
    s.cols_.resize(degree());
    for (std::size_t c = 0; c < degree(); ++c) {
      s.cols_[image(c)] = static_cast<std::uint32_t>(c) | (cols_[c] & kSignBit);
    }
    return s;
  }

  bool is_identity() const noexcept {
    for (std::size_t c = 0; c < degree(); ++c)
      if (cols_[c] != c) return false;
    return !cols_.empty();
  }
  bool is_negated_identity() const noexcept {
    for (std::size_t c = 0; c < degree(); ++c)
      if (cols_[c] != (c | kSignBit)) return false;
    return !cols_.empty();
  }

  /// True when this is the representative chosen for the coset {s, -s}.
  bool is_canonical() const noexcept { return cols_.empty() || (cols_[0] & kSignBit) == 0; }
  SignedPerm canonical() const { return is_canonical() ? *this : -*this; }

  friend std::strong_ordering operator<=>(const SignedPerm& a, const SignedPerm& b) {
    return std::lexicographical_compare_three_way(a.cols_.begin(), a.cols_.end(), b.cols_.begin(), b.cols_.end());
  }
  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return std::equal(a.cols_.begin(), a.cols_.end(), b.cols_.begin(), b.cols_.end());
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : cols_) h = (h ^ v) * 1099511628211ull;
    return h;
  }

 private:
  static constexpr std::uint32_t kSignBit = 0x80000000u;
  // Degrees 1 and 2 stay inline: dense real ODs hold millions of these.
  boost::container::small_vector<std::uint32_t, 2> cols_;
};

inline SignedPerm sp_mul(const SignedPerm& a, const SignedPerm& b) { return a * b; }
inline SignedPerm sp_conj(const SignedPerm& a) { return a.transpose(); }

/// Kronecker product a (x) b; a indexes the outer blocks.
inline SignedPerm sp_tensor(const SignedPerm& a, const SignedPerm& b) {
  const std::size_t na = a.degree(), nb = b.degree();
  std::vector<std::uint32_t> perm(na * nb);
  std::vector<int> sign(na * nb);
  for (std::size_t ca = 0; ca < na; ++ca) {
    for (std::size_t cb = 0; cb < nb; ++cb) {
      perm[ca * nb + cb] = static_cast<std::uint32_t>(a.image(ca) * nb + b.image(cb));
      sign[ca * nb + cb] = a.sign(ca) * b.sign(cb);
    }
  }
  return SignedPerm::from_arrays(perm, sign);
}

/// The 2x2 block matrix [[upper, 0], [0, lower]].
inline SignedPerm block_diagonal(const SignedPerm& upper, const SignedPerm& lower) {
  if (upper.degree() != lower.degree()) throw Error(ErrorKind::DegreeMismatch, "block_diagonal");
  const std::size_t m = upper.degree();
  std::vector<std::uint32_t> perm(2 * m);
  std::vector<int> sign(2 * m);
  for (std::size_t c = 0; c < m; ++c) {
    perm[c] = upper.image(c);
    sign[c] = upper.sign(c);
    perm[m + c] = static_cast<std::uint32_t>(m + lower.image(c));
    sign[m + c] = lower.sign(c);
  }
  return SignedPerm::from_arrays(perm, sign);
}

/// The 2x2 block matrix [[0, upper], [lower, 0]].
inline SignedPerm block_antidiagonal(const SignedPerm& upper, const SignedPerm& lower) {
  if (upper.degree() != lower.degree()) throw Error(ErrorKind::DegreeMismatch, "block_antidiagonal");
  const std::size_t m = upper.degree();
  std::vector<std::uint32_t> perm(2 * m);
  std::vector<int> sign(2 * m);
  for (std::size_t c = 0; c < m; ++c) {
    perm[c] = static_cast<std::uint32_t>(m + lower.image(c));
    sign[c] = lower.sign(c);
    perm[m + c] = upper.image(c);
    sign[m + c] = upper.sign(c);
  }
  return SignedPerm::from_arrays(perm, sign);
}

inline bool commutes(const SignedPerm& a, const SignedPerm& b) { return a * b == b * a; }

// The fixed 2x2 matrices used throughout.
namespace mats {

inline SignedPerm I(std::size_t d) { return SignedPerm::identity(d); }
inline SignedPerm P() { return SignedPerm::from_dense({{0, 1}, {1, 0}}); }
inline SignedPerm Q() { return SignedPerm::from_dense({{1, 0}, {0, -1}}); }
inline SignedPerm R() { return SignedPerm::from_dense({{0, 1}, {-1, 0}}); }

}  // namespace mats

/// Image of the complex unit i at a level of even degree: I_{d/2} (x) R.
inline SignedPerm embed_central_i(std::size_t level_degree) {
  if (level_degree < 2 || level_degree % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "embed_central_i needs an even degree, got " + std::to_string(level_degree));
  }
  return sp_tensor(mats::I(level_degree / 2), mats::R());
}

}  // namespace sod

template <>
struct std::hash<sod::SignedPerm> {
  std::size_t operator()(const sod::SignedPerm& s) const noexcept { return s.hash(); }
};
