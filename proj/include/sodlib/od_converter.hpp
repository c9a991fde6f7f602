#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "sodlib/design_matrix.hpp"
#include "sodlib/zs_doubling.hpp"

namespace sod {

/// A +-1 matrix with H H^t = order * I.
class HadamardMatrix {
 public:
  HadamardMatrix() = default;
  HadamardMatrix(std::size_t order, std::vector<std::int8_t> entries, std::string descriptor = "custom")
      : order_(order), entries_(std::move(entries)), descriptor_(std::move(descriptor)) {
    if (entries_.size() != order_ * order_) throw Error(ErrorKind::InvalidArgument, "Hadamard entry count mismatch");
    for (auto e : entries_)
      if (e != 1 && e != -1) throw Error(ErrorKind::InvalidArgument, "Hadamard entries must be +-1");
  }

  std::size_t order() const noexcept { return order_; }
  int at(std::size_t r, std::size_t c) const { return entries_[r * order_ + c]; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  bool is_valid() const {
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b) {
        long dot = 0;
        for (std::size_t k = 0; k < order_; ++k) dot += at(a, k) * at(b, k);
        if (dot != (a == b ? static_cast<long>(order_) : 0)) return false;
      }
    return true;
  }

  /// Same matrix with rows permuted by `perm` (row r of the result is row perm[r]).
  HadamardMatrix row_permuted(const std::vector<std::size_t>& perm) const {
    std::vector<std::int8_t> e(entries_.size());
    for (std::size_t r = 0; r < order_; ++r)
      for (std::size_t c = 0; c < order_; ++c) e[r * order_ + c] = entries_[perm.at(r) * order_ + c];
    return HadamardMatrix(order_, std::move(e), descriptor_ + "-row-permuted");
  }

 private:
  std::size_t order_ = 0;
  std::vector<std::int8_t> entries_;
  std::string descriptor_;
};

/// Order-2^k Sylvester matrix [[H, H], [H, -H]].
inline HadamardMatrix sylvester(unsigned k) {
  if (k > 15) throw Error(ErrorKind::DenseCapExceeded, "sylvester order 2^" + std::to_string(k) + " is too large");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::int8_t> e(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) e[r * n + c] = (std::popcount(r & c) % 2) ? -1 : 1;
  return HadamardMatrix(n, std::move(e), "sylvester(" + std::to_string(k) + ")");
}

inline constexpr std::size_t kDefaultDenseCap = 4096;

/**
 * Real OD of order m*n: block (i, j) is x_l * pi(a_ij) H, where pi is the
 * stored monomial image. Weights scale by m; the result is re-verified.
 */
template <class M>
DesignMatrix sod_to_od(const M& sod, const RemrepChain& chain, const HadamardMatrix& h,
                       std::size_t max_order = kDefaultDenseCap) {
  const std::size_t m = h.order();
  const std::size_t n = sod.order();
  if (sod.group_degree() != chain.top_degree()) {
    throw Error(ErrorKind::DegreeMismatch, "design degree " + std::to_string(sod.group_degree()) +
                                               " differs from the chain's top degree " + std::to_string(chain.top_degree()));
  }
  if (m != chain.top_degree()) {
    throw Error(ErrorKind::DegreeMismatch, "Hadamard order " + std::to_string(m) + " differs from remrep degree " +
                                               std::to_string(chain.top_degree()));
  }
  if (m * n > max_order) {
    throw Error(ErrorKind::DenseCapExceeded, "OD order " + std::to_string(m * n) + " exceeds cap " + std::to_string(max_order));
  }
  const SodType t = infer_type(sod);
  const SignedPerm one = mats::I(1);
  DesignMatrix od(m * n, sod.nvars(), 1);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = sod.at(i, j);
      if (!e) continue;
      const SignedPerm& p = e->coeff;
      // (pi H)[r, c] = sign(k) H[k, c] where image(k) = r
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t r = p.image(k);
        for (std::size_t c = 0; c < m; ++c) {
          const int s = p.sign(k) * h.at(k, c);
          od.set(i * m + r, j * m + c, Entry{s > 0 ? one : -one, e->var});
        }
      }
    }
  });
  SodType target{m * n, {}};
  for (auto w : t.weights) target.weights.push_back(m * w);
  const auto rep = verify_sod_report(od, target);
  if (!rep.ok) {
    throw Error(ErrorKind::VerificationFailure, "converted OD fails at (" + std::to_string(rep.row) + "," +
                                                    std::to_string(rep.col) + "): " + rep.reason);
  }
  return od;
}

/// Complex design -> OD(2n; 2u...) with i -> R and sylvester(1).
template <class M>
DesignMatrix cod_to_od(const M& cod, std::size_t max_order = kDefaultDenseCap) {
  if (cod.group_degree() != 2) throw Error(ErrorKind::DegreeMismatch, "cod_to_od needs coefficients embedded at degree 2");
  const auto r = mats::R();
  for (std::size_t j = 0; j < cod.order(); ++j)
    for (std::size_t i = 0; i < cod.order(); ++i)
      if (const auto& e = cod.at(i, j)) {
        const auto& c = e->coeff;
        if (!(c.is_identity() || c.is_negated_identity() || c == r || c == -r))
          throw Error(ErrorKind::InvalidArgument, "coefficient outside the embedded complex units");
      }
  return sod_to_od(cod, RemrepChain::complex(), sylvester(1), max_order);
}

/// Quaternion design -> OD(4n; 4u...) with j -> R (x) I_2, k -> P (x) R and sylvester(2).
template <class M>
DesignMatrix qod_to_od(const M& qod, std::size_t max_order = kDefaultDenseCap) {
  if (qod.group_degree() != 4) throw Error(ErrorKind::DegreeMismatch, "qod_to_od needs coefficients embedded at degree 4");
  const auto chain = RemrepChain::quaternion();
  const auto& g = chain.top().generators;
  const SignedPerm units[] = {mats::I(4), g[0], g[1], g[0] * g[1]};
  for (std::size_t i = 0; i < qod.order(); ++i)
    for (std::size_t j = 0; j < qod.order(); ++j)
      if (const auto& e = qod.at(i, j)) {
        bool ok = false;
        for (const auto& u : units) ok = ok || e->coeff == u || e->coeff == -u;
        if (!ok) throw Error(ErrorKind::InvalidArgument, "coefficient outside the embedded quaternion units");
      }
  return sod_to_od(qod, chain, sylvester(2), max_order);
}

/// Replaces each coefficient by its monomial image: an OD(nm; u...) without the Hadamard step.
template <class M>
DesignMatrix blow_up(const M& sod, std::size_t max_order = kDefaultDenseCap) {
  const std::size_t m = sod.group_degree();
  const std::size_t n = sod.order();
  if (m * n > max_order) throw Error(ErrorKind::DenseCapExceeded, "blow-up order exceeds cap");
  const SignedPerm one = mats::I(1);
  DesignMatrix out(m * n, sod.nvars(), 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (const auto& e = sod.at(i, j))
        for (std::size_t k = 0; k < m; ++k)
          out.set(i * m + e->coeff.image(k), j * m + k, Entry{e->coeff.sign(k) > 0 ? one : -one, e->var});
  return out;
}

/// Record of an OD whose existence is certified but which is not materialised.
struct CertifiedOd {
  SodType sod_type;
  std::size_t remrep_degree = 0;
  std::string hadamard;
  std::size_t od_order = 0;
  std::vector<std::uint64_t> od_weights;
  bool sod_verified = false;
  bool chain_checked = false;
};

template <class M>
CertifiedOd certify_od(const M& sod, const RemrepChain& chain) {
  if (sod.group_degree() != chain.top_degree()) throw Error(ErrorKind::DegreeMismatch, "design and chain degrees differ");
  CertifiedOd c;
  c.sod_type = infer_type(sod);
  c.sod_verified = verify_sod(sod, c.sod_type);
  if (!c.sod_verified) throw Error(ErrorKind::VerificationFailure, "design does not verify; nothing to certify");
  c.remrep_degree = chain.top_degree();
  c.hadamard = "sylvester(" + std::to_string(degree_exponent(c.remrep_degree)) + ")";
  c.od_order = c.remrep_degree * sod.order();
  for (auto w : c.sod_type.weights) c.od_weights.push_back(c.remrep_degree * w);
  for (const auto& lv : chain.levels())
    if (!(compute_relations(lv.generators) == lv.relations))
      throw Error(ErrorKind::RelationViolation, "chain relations fail");
  c.chain_checked = true;
  return c;
}

}  // namespace sod
