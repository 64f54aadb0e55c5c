#pragma once

#include <unsupported/Eigen/CXX11/Tensor>

#include "luinv/gellmann.hpp"
#include "luinv/types.hpp"

namespace luinv {

/// Coefficients of the generator expansion of a two-qudit density matrix:
/// rho = I(x)I/N^2 + sum_i local1_i g_i(x)I + sum_j local2_j I(x)g_j
///     + sum_ij corr_ij g_i(x)g_j.
template <typename Scalar = double>
struct BlochBipartite {
  int dim = 0;                  // single-party dimension N
  RealVector<Scalar> local1;    // length N^2-1
  RealVector<Scalar> local2;    // length N^2-1
  RealMatrix<Scalar> corr;      // (N^2-1) x (N^2-1)
};

/// Coefficients of the three-party expansion: one vector per party, one
/// matrix per party pair, and the order-3 tensor for the triple term.
template <typename Scalar = double>
struct BlochTripartite {
  int dim = 0;
  RealVector<Scalar> local1, local2, local3;
  RealMatrix<Scalar> pair12, pair13, pair23;
  Eigen::Tensor<Scalar, 3> triple;  // indexed (i, j, k), side N^2-1
};

namespace detail {

// Trace of rho * op; the imaginary residue must stay below eps or the state
// is rejected as non-Hermitian garbage.
template <typename Scalar>
Scalar real_coefficient(const ComplexMatrix<Scalar>& rho, const ComplexMatrix<Scalar>& op,
                        double eps = kEpsImag) {
  const std::complex<Scalar> tr = rho.cwiseProduct(op.transpose()).sum();
  if (std::abs(tr.imag()) > eps)
    throw InvalidStateError("coefficient trace has imaginary residue " +
                            std::to_string(static_cast<double>(std::abs(tr.imag()))) +
                            " above " + std::to_string(eps));
  return tr.real();
}

template <typename Scalar>
void require_equal_party_dims(const DensityMatrix<Scalar>& state, std::size_t parties) {
  if (state.dims.size() != parties)
    throw UnsupportedShapeError("expected " + std::to_string(parties) +
                                " parties, got " + std::to_string(state.dims.size()));
  for (int d : state.dims)
    if (d != state.dims.front())
      throw UnsupportedShapeError("party dimensions must all be equal");
}

}  // namespace detail

template <typename Scalar>
BlochBipartite<Scalar> decompose_bipartite(const DensityMatrix<Scalar>& state) {
  detail::require_equal_party_dims(state, 2);
  validate_density(state);
  const int n = state.dims[0];
  const int side = n * n - 1;
  const auto& basis = su_generators<Scalar>(n).generators;
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(n, n);
  const auto& rho = state.matrix;

  BlochBipartite<Scalar> b;
  b.dim = n;
  b.local1.resize(side);
  b.local2.resize(side);
  b.corr.resize(side, side);
  const Scalar local_scale = Scalar(1) / Scalar(2 * n);
  for (int i = 0; i < side; ++i) {
    b.local1(i) = detail::real_coefficient(rho, ComplexMatrix<Scalar>(kron(basis[i], id))) * local_scale;
    b.local2(i) = detail::real_coefficient(rho, ComplexMatrix<Scalar>(kron(id, basis[i]))) * local_scale;
    for (int j = 0; j < side; ++j)
      b.corr(i, j) =
          detail::real_coefficient(rho, ComplexMatrix<Scalar>(kron(basis[i], basis[j]))) / Scalar(4);
  }
  return b;
}

/// Rebuilds the density matrix from bipartite coefficients. Hermitian by
/// construction; positivity is NOT checked, since arbitrary coefficients may
/// encode no physical state.
template <typename Scalar>
DensityMatrix<Scalar> reconstruct_bipartite(const BlochBipartite<Scalar>& b) {
  const int n = b.dim;
  const int side = n * n - 1;
  if (b.local1.size() != side || b.local2.size() != side || b.corr.rows() != side ||
      b.corr.cols() != side)
    throw InvalidShapeError("bipartite coefficient shapes do not match dim " + std::to_string(n));
  const auto& basis = su_generators<Scalar>(n).generators;
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(n, n);

  ComplexMatrix<Scalar> rho = ComplexMatrix<Scalar>::Identity(n * n, n * n) / Scalar(n * n);
  for (int i = 0; i < side; ++i) {
    if (b.local1(i) != Scalar(0)) rho += b.local1(i) * kron(basis[i], id);
    if (b.local2(i) != Scalar(0)) rho += b.local2(i) * kron(id, basis[i]);
    for (int j = 0; j < side; ++j)
      if (b.corr(i, j) != Scalar(0)) rho += b.corr(i, j) * kron(basis[i], basis[j]);
  }
  return DensityMatrix<Scalar>{{n, n}, std::move(rho)};
}

template <typename Scalar>
BlochTripartite<Scalar> decompose_tripartite(const DensityMatrix<Scalar>& state) {
  detail::require_equal_party_dims(state, 3);
  validate_density(state);
  const int n = state.dims[0];
  const int side = n * n - 1;
  const auto& basis = su_generators<Scalar>(n).generators;
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(n, n);
  const auto& rho = state.matrix;

  BlochTripartite<Scalar> b;
  b.dim = n;
  b.local1.resize(side);
  b.local2.resize(side);
  b.local3.resize(side);
  b.pair12.resize(side, side);
  b.pair13.resize(side, side);
  b.pair23.resize(side, side);
  b.triple.resize(side, side, side);

  const Scalar local_scale = Scalar(1) / Scalar(2 * n * n);
  const Scalar pair_scale = Scalar(1) / Scalar(4 * n);
  auto coeff = [&](const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& bb,
                   const ComplexMatrix<Scalar>& c) {
    return detail::real_coefficient(rho, ComplexMatrix<Scalar>(kron(kron(a, bb), c)));
  };
  for (int i = 0; i < side; ++i) {
    b.local1(i) = coeff(basis[i], id, id) * local_scale;
    b.local2(i) = coeff(id, basis[i], id) * local_scale;
    b.local3(i) = coeff(id, id, basis[i]) * local_scale;
    for (int j = 0; j < side; ++j) {
      b.pair12(i, j) = coeff(basis[i], basis[j], id) * pair_scale;
      b.pair13(i, j) = coeff(basis[i], id, basis[j]) * pair_scale;
      b.pair23(i, j) = coeff(id, basis[i], basis[j]) * pair_scale;
      for (int k = 0; k < side; ++k)
        b.triple(i, j, k) = coeff(basis[i], basis[j], basis[k]) / Scalar(8);
    }
  }
  return b;
}

template <typename Scalar>
DensityMatrix<Scalar> reconstruct_tripartite(const BlochTripartite<Scalar>& b) {
  const int n = b.dim;
  const int side = n * n - 1;
  if (b.local1.size() != side || b.local2.size() != side || b.local3.size() != side ||
      b.pair12.rows() != side || b.pair13.rows() != side || b.pair23.rows() != side ||
      b.triple.dimension(0) != side || b.triple.dimension(1) != side ||
      b.triple.dimension(2) != side)
    throw InvalidShapeError("tripartite coefficient shapes do not match dim " + std::to_string(n));
  const auto& basis = su_generators<Scalar>(n).generators;
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(n, n);
  const int d3 = n * n * n;

  ComplexMatrix<Scalar> rho = ComplexMatrix<Scalar>::Identity(d3, d3) / Scalar(d3);
  for (int i = 0; i < side; ++i) {
    if (b.local1(i) != Scalar(0)) rho += b.local1(i) * kron(kron(basis[i], id), id);
    if (b.local2(i) != Scalar(0)) rho += b.local2(i) * kron(kron(id, basis[i]), id);
    if (b.local3(i) != Scalar(0)) rho += b.local3(i) * kron(kron(id, id), basis[i]);
    for (int j = 0; j < side; ++j) {
      if (b.pair12(i, j) != Scalar(0)) rho += b.pair12(i, j) * kron(kron(basis[i], basis[j]), id);
      if (b.pair13(i, j) != Scalar(0)) rho += b.pair13(i, j) * kron(kron(basis[i], id), basis[j]);
      if (b.pair23(i, j) != Scalar(0)) rho += b.pair23(i, j) * kron(kron(id, basis[i]), basis[j]);
      for (int k = 0; k < side; ++k)
        if (b.triple(i, j, k) != Scalar(0))
          rho += b.triple(i, j, k) * kron(kron(basis[i], basis[j]), basis[k]);
    }
  }
  return DensityMatrix<Scalar>{{n, n, n}, std::move(rho)};
}

/// Matricizes a cubic order-3 tensor with the chosen mode's subscript as the
/// row index. Columns run over the remaining two subscripts in party order,
/// the later party's subscript varying fastest.
template <typename Scalar>
RealMatrix<Scalar> flatten_mode(const Eigen::Tensor<Scalar, 3>& t, int mode) {
  const Eigen::Index side = t.dimension(0);
  if (t.dimension(1) != side || t.dimension(2) != side)
    throw InvalidShapeError("flatten_mode requires a cubic tensor");
  if (mode < 1 || mode > 3) throw InvalidInputError("flatten mode must be 1, 2 or 3");
  RealMatrix<Scalar> out(side, side * side);
  for (Eigen::Index i = 0; i < side; ++i)
    for (Eigen::Index j = 0; j < side; ++j)
      for (Eigen::Index k = 0; k < side; ++k) {
        if (mode == 1)
          out(i, j * side + k) = t(i, j, k);
        else if (mode == 2)
          out(j, i * side + k) = t(i, j, k);
        else
          out(k, i * side + j) = t(i, j, k);
      }
  return out;
}

/// Row-major matrix vectorization: rows concatenated in order. Under this
/// convention vec(A^t X B) = (A^t (x) B^t) vec(X).
template <typename Scalar>
RealVector<Scalar> vec_row_major(const RealMatrix<Scalar>& m) {
  RealVector<Scalar> v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

}  // namespace luinv
