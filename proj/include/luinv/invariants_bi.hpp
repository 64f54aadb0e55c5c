#pragma once

#include <Eigen/LU>

#include <optional>
#include <utility>

#include "luinv/bloch.hpp"
#include "luinv/gaugesvd.hpp"

namespace luinv {

/// Bordered feature matrix [[1, local2^t], [local1, corr]], size N^2 x N^2.
template <typename Scalar>
RealMatrix<Scalar> feature_matrix(const BlochBipartite<Scalar>& b) {
  const int side = b.dim * b.dim - 1;
  if (b.local1.size() != side || b.local2.size() != side || b.corr.rows() != side ||
      b.corr.cols() != side)
    throw InvalidShapeError("feature_matrix: coefficient shapes do not match dim " +
                            std::to_string(b.dim));
  RealMatrix<Scalar> m(side + 1, side + 1);
  m(0, 0) = Scalar(1);
  m.row(0).tail(side) = b.local2.transpose();
  m.col(0).tail(side) = b.local1;
  m.bottomRightCorner(side, side) = b.corr;
  return m;
}

/// The complete gauge-free invariant set of a bipartite state: singular
/// values of the correlation matrix, the two determinants, and the
/// block-resolved norms and inner products of the rotated local vectors.
template <typename Scalar = double>
struct InvariantFingerprint {
  int dim = 0;
  double eps_deg = kEpsDeg;
  double eps_zero = kEpsZero;
  RealVector<Scalar> sigma;
  Scalar det_corr = Scalar(0);
  Scalar det_feature = Scalar(0);
  BlockSpectrum<Scalar> blocks;
  std::vector<Scalar> local1_norms;  // ||pi_m(P^t local1)||, all blocks
  std::vector<Scalar> local2_norms;  // ||pi_m(Q^t local2)||, all blocks
  std::vector<Scalar> inner;         // pi_m(Q^t local2)^t pi_m(P^t local1), nonzero blocks only
};

enum class Outcome { NotEquivalent, Inconclusive };

struct Witness {
  std::string invariant;
  double value1 = 0;
  double value2 = 0;
  double abs_delta = 0;
};

/// Outcome of a fingerprint comparison. The invariants are necessary
/// conditions only, so equality never certifies equivalence: witnesses are
/// genuine mismatches and are nonempty iff the outcome is NotEquivalent.
/// Warnings flag threshold instability (block structures that disagree even
/// though the sorted singular values match).
struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::vector<Witness> witnesses;
  std::vector<std::string> warnings;
};

/// Invariants from an explicitly supplied factorization of b.corr. Split out
/// so tests can re-gauge degenerate SVD factors and verify that every
/// reported quantity is unchanged.
template <typename Scalar>
InvariantFingerprint<Scalar> fingerprint_from_factors(const BlochBipartite<Scalar>& b,
                                                      const OrderedSvd<Scalar>& svd,
                                                      double eps_deg = kEpsDeg,
                                                      double eps_zero = kEpsZero) {
  InvariantFingerprint<Scalar> f;
  f.dim = b.dim;
  f.eps_deg = eps_deg;
  f.eps_zero = eps_zero;
  f.sigma = svd.sigma;
  f.det_corr = b.corr.partialPivLu().determinant();
  f.det_feature = feature_matrix(b).partialPivLu().determinant();
  f.blocks = partition_blocks(svd.sigma, eps_deg, eps_zero);

  const RealVector<Scalar> r = svd.P.transpose() * b.local1;
  const RealVector<Scalar> s = svd.Q.transpose() * b.local2;
  const auto pr = project_blocks(r, f.blocks);
  const auto ps = project_blocks(s, f.blocks);
  for (int m = 0; m < f.blocks.n_blocks; ++m) {
    f.local1_norms.push_back(pr.parts[m].norm());
    f.local2_norms.push_back(ps.parts[m].norm());
    if (m < f.blocks.n_prime) f.inner.push_back(ps.parts[m].dot(pr.parts[m]));
  }
  return f;
}

template <typename Scalar>
InvariantFingerprint<Scalar> bipartite_fingerprint(const BlochBipartite<Scalar>& b,
                                                   double eps_deg = kEpsDeg,
                                                   double eps_zero = kEpsZero) {
  return fingerprint_from_factors(b, ordered_svd<Scalar>(b.corr), eps_deg, eps_zero);
}

namespace detail {

template <typename Scalar>
struct MismatchCollector {
  double eps_cmp;
  std::vector<Witness>* out;

  bool close(Scalar a, Scalar b) const {
    const double x = static_cast<double>(a), y = static_cast<double>(b);
    return std::abs(x - y) <= eps_cmp * std::max({1.0, std::abs(x), std::abs(y)});
  }
  void scalar(const std::string& name, Scalar a, Scalar b) {
    if (!close(a, b))
      out->push_back({name, static_cast<double>(a), static_cast<double>(b),
                      std::abs(static_cast<double>(a) - static_cast<double>(b))});
  }
  void vector(const std::string& name, const RealVector<Scalar>& a, const RealVector<Scalar>& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      scalar(name + "[" + std::to_string(i) + "]", a(i), b(i));
  }
  void list(const std::string& name, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      scalar(name + "[" + std::to_string(i) + "]", a[i], b[i]);
  }
};

template <typename Scalar>
bool same_block_structure(const BlockSpectrum<Scalar>& a, const BlockSpectrum<Scalar>& b) {
  return a.multiplicities == b.multiplicities && a.has_zero_block == b.has_zero_block;
}

}  // namespace detail

/// Compares two fingerprints built with identical thresholds. Any genuine
/// mismatch yields NotEquivalent; equality of everything comparable yields
/// Inconclusive (the conditions are necessary, never sufficient).
template <typename Scalar>
Verdict compare_fingerprints(const InvariantFingerprint<Scalar>& f1,
                             const InvariantFingerprint<Scalar>& f2, double eps_cmp = kEpsCmp) {
  if (f1.dim != f2.dim)
    throw IncomparableFingerprintsError("fingerprints have different dimensions " +
                                        std::to_string(f1.dim) + " and " + std::to_string(f2.dim));
  if (f1.eps_deg != f2.eps_deg || f1.eps_zero != f2.eps_zero)
    throw IncomparableFingerprintsError(
        "fingerprints were built with different degeneracy/zero thresholds");

  Verdict v;
  detail::MismatchCollector<Scalar> cmp{eps_cmp, &v.witnesses};
  cmp.vector("sigma", f1.sigma, f2.sigma);
  cmp.scalar("det_corr", f1.det_corr, f2.det_corr);
  cmp.scalar("det_feature", f1.det_feature, f2.det_feature);
  if (detail::same_block_structure(f1.blocks, f2.blocks)) {
    cmp.list("local1_norm", f1.local1_norms, f2.local1_norms);
    cmp.list("local2_norm", f1.local2_norms, f2.local2_norms);
    cmp.list("inner", f1.inner, f2.inner);
  } else {
    v.warnings.push_back(
        "block structures disagree at identical thresholds; block-resolved invariants were not "
        "compared (threshold instability)");
  }
  v.outcome = v.witnesses.empty() ? Outcome::Inconclusive : Outcome::NotEquivalent;
  return v;
}

}  // namespace luinv
