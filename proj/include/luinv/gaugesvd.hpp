#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>

#include "luinv/types.hpp"

namespace luinv {

/// SVD m = P * diag(sigma) * Q^t with sigma nonincreasing. P and Q are full
/// square orthogonal factors even for rectangular input.
template <typename Scalar = double>
struct OrderedSvd {
  RealMatrix<Scalar> P;
  RealVector<Scalar> sigma;
  RealMatrix<Scalar> Q;
};

/// Partition of an ordered singular-value list into degeneracy blocks.
/// n_prime counts the blocks that carry a nonzero singular value; only those
/// admit a gauge-free inner-product invariant.
template <typename Scalar = double>
struct BlockSpectrum {
  std::vector<Scalar> distinct_values;  // strictly decreasing block representatives
  std::vector<int> multiplicities;
  bool has_zero_block = false;
  int n_blocks = 0;
  int n_prime = 0;
};

template <typename Scalar = double>
struct BlockProjection {
  std::vector<RealVector<Scalar>> parts;
};

template <typename Scalar>
OrderedSvd<Scalar> ordered_svd(const RealMatrix<Scalar>& m) {
  if (!m.allFinite()) throw InvalidInputError("ordered_svd: input has non-finite entries");
  Eigen::JacobiSVD<RealMatrix<Scalar>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  OrderedSvd<Scalar> out{svd.matrixU(), svd.singularValues(), svd.matrixV()};

  // Eigen already returns nonincreasing values; re-sort stably anyway so the
  // ordering contract does not depend on the backend.
  const Eigen::Index k = out.sigma.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return out.sigma(a) > out.sigma(b); });
  if (!std::is_sorted(order.begin(), order.end())) {
    RealVector<Scalar> sigma(k);
    RealMatrix<Scalar> p = out.P, q = out.Q;
    for (Eigen::Index i = 0; i < k; ++i) {
      sigma(i) = out.sigma(order[i]);
      p.col(i) = out.P.col(order[i]);
      q.col(i) = out.Q.col(order[i]);
    }
    out.sigma = std::move(sigma);
    out.P = std::move(p);
    out.Q = std::move(q);
  }
  return out;
}

/// Groups consecutive singular values into degeneracy blocks. Two neighbours
/// share a block iff their gap is at most eps_deg * max(sigma_0, 1); grouping
/// is chained, so blocks stay contiguous. The trailing block is the zero
/// block iff its representative value is at most eps_zero * max(sigma_0, 1).
template <typename Scalar>
BlockSpectrum<Scalar> partition_blocks(const RealVector<Scalar>& sigma, double eps_deg = kEpsDeg,
                                       double eps_zero = kEpsZero) {
  BlockSpectrum<Scalar> bs;
  if (sigma.size() == 0) return bs;
  if (!sigma.allFinite() || sigma.minCoeff() < Scalar(0))
    throw InvalidInputError("partition_blocks: singular values must be finite and nonnegative");
  for (Eigen::Index i = 0; i + 1 < sigma.size(); ++i)
    if (sigma(i) < sigma(i + 1))
      throw InvalidInputError("partition_blocks: singular values must be nonincreasing");

  const Scalar scale = std::max<Scalar>(sigma(0), Scalar(1));
  const Scalar gap_tol = Scalar(eps_deg) * scale;
  const Scalar zero_tol = Scalar(eps_zero) * scale;

  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= sigma.size(); ++i) {
    if (i == sigma.size() || sigma(i - 1) - sigma(i) > gap_tol) {
      const Eigen::Index len = i - start;
      bs.distinct_values.push_back(sigma.segment(start, len).mean());
      bs.multiplicities.push_back(static_cast<int>(len));
      start = i;
    }
  }
  bs.n_blocks = static_cast<int>(bs.distinct_values.size());
  bs.has_zero_block = bs.distinct_values.back() <= zero_tol;
  bs.n_prime = bs.n_blocks - (bs.has_zero_block ? 1 : 0);
  return bs;
}

/// Splits v contiguously by the block multiplicities, in block order.
template <typename Scalar>
BlockProjection<Scalar> project_blocks(const RealVector<Scalar>& v,
                                       const BlockSpectrum<Scalar>& bs) {
  Eigen::Index total = 0;
  for (int m : bs.multiplicities) total += m;
  if (v.size() != total)
    throw InvalidShapeError("project_blocks: vector length " + std::to_string(v.size()) +
                            " does not match block total " + std::to_string(total));
  BlockProjection<Scalar> proj;
  proj.parts.reserve(bs.multiplicities.size());
  Eigen::Index offset = 0;
  for (int m : bs.multiplicities) {
    proj.parts.push_back(v.segment(offset, m));
    offset += m;
  }
  return proj;
}

}  // namespace luinv
