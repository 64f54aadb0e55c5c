#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace luinv {

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

// Default tolerances. Comparison is only meaningful when both states use
// identical thresholds, so these are echoed into every serialized report.
inline constexpr double kEpsHerm = 1e-10;  // hermiticity / trace residual
inline constexpr double kEpsPsd = 1e-9;    // most negative admissible eigenvalue
inline constexpr double kEpsImag = 1e-10;  // imaginary residue allowed in coefficient traces
inline constexpr double kEpsDeg = 1e-8;    // singular-value degeneracy grouping, relative
inline constexpr double kEpsZero = 1e-10;  // zero singular-value cutoff, relative
inline constexpr double kEpsCmp = 1e-9;    // fingerprint comparison
inline constexpr double kEpsPure = 1e-8;   // purity gate for concurrence

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDimensionError : Error { using Error::Error; };
struct InvalidShapeError : Error { using Error::Error; };
struct UnsupportedShapeError : Error { using Error::Error; };
struct InvalidStateError : Error { using Error::Error; };
struct InvalidInputError : Error { using Error::Error; };
struct NotPureError : Error { using Error::Error; };
struct IncomparableFingerprintsError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

/// A density matrix together with its tensor-factor structure. `dims` lists
/// the party dimensions; entries are indexed over the computational product
/// basis with the last party's index varying fastest.
template <typename Scalar = double>
struct DensityMatrix {
  std::vector<int> dims;
  ComplexMatrix<Scalar> matrix;

  int total_dim() const {
    int d = 1;
    for (int n : dims) d *= n;
    return d;
  }
};

template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Result =
      Eigen::Matrix<typename Eigen::ScalarBinaryOpTraits<typename A::Scalar,
                                                         typename B::Scalar>::ReturnType,
                    Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Checks hermiticity, unit trace and positivity; throws InvalidStateError
/// naming the violated invariant and the measured residual.
template <typename Scalar>
void validate_density(const DensityMatrix<Scalar>& state, double eps_herm = kEpsHerm,
                      double eps_psd = kEpsPsd) {
  const auto& rho = state.matrix;
  if (rho.rows() != rho.cols() || rho.rows() != state.total_dim())
    throw InvalidShapeError("density matrix size " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()) +
                            " does not match the product of party dimensions " +
                            std::to_string(state.total_dim()));
  for (int n : state.dims)
    if (n < 2) throw InvalidDimensionError("party dimension must be at least 2");
  if (!rho.allFinite()) throw InvalidStateError("density matrix has non-finite entries");

  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > eps_herm)
    throw InvalidStateError("density matrix is not Hermitian: residual " + std::to_string(herm) +
                            " exceeds " + std::to_string(eps_herm));
  const double tr_err = std::abs(rho.trace() - std::complex<Scalar>(1));
  if (tr_err > eps_herm)
    throw InvalidStateError("density matrix trace differs from 1: residual " +
                            std::to_string(tr_err) + " exceeds " + std::to_string(eps_herm));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(rho, Eigen::EigenvaluesOnly);
  const double min_eig = static_cast<double>(es.eigenvalues().minCoeff());
  if (min_eig < -eps_psd)
    throw InvalidStateError("density matrix is not positive semidefinite: smallest eigenvalue " +
                            std::to_string(min_eig) + " is below -" + std::to_string(eps_psd));
}

}  // namespace luinv
