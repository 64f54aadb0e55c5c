#pragma once

#include <map>
#include <mutex>

#include "luinv/types.hpp"

namespace luinv {

/// Ordered Hermitian generator basis of SU(N), normalized to
/// Tr(g_i g_j) = 2 delta_ij. The order is the row-major scan of matrix
/// positions (j,k) with (1,1) skipped: positions above the diagonal give the
/// symmetric generator E_jk + E_kj, positions below give the antisymmetric
/// -i(E_kj - E_jk), and the diagonal position (k,k) gives
/// sqrt(2/(k(k-1))) * diag(1,...,1,-(k-1),0,...,0). For N=2 this yields the
/// Pauli matrices in the usual order; for N=3 the Gell-Mann matrices with
/// diag(1,1,-2)/sqrt(3) last.
template <typename Scalar = double>
struct GeneratorBasis {
  int dim = 0;
  std::vector<ComplexMatrix<Scalar>> generators;
};

namespace detail {

template <typename Scalar>
GeneratorBasis<Scalar> build_generators(int dim) {
  using std::sqrt;
  GeneratorBasis<Scalar> basis;
  basis.dim = dim;
  basis.generators.reserve(dim * dim - 1);
  for (int j = 1; j <= dim; ++j) {
    for (int k = 1; k <= dim; ++k) {
      if (j == 1 && k == 1) continue;
      ComplexMatrix<Scalar> g = ComplexMatrix<Scalar>::Zero(dim, dim);
      if (j < k) {
        g(j - 1, k - 1) = Scalar(1);
        g(k - 1, j - 1) = Scalar(1);
      } else if (j > k) {
        g(k - 1, j - 1) = std::complex<Scalar>(0, -1);
        g(j - 1, k - 1) = std::complex<Scalar>(0, 1);
      } else {
        const Scalar c = sqrt(Scalar(2) / (Scalar(j) * Scalar(j - 1)));
        for (int i = 0; i < j - 1; ++i) g(i, i) = c;
        g(j - 1, j - 1) = -c * Scalar(j - 1);
      }
      basis.generators.push_back(std::move(g));
    }
  }
  return basis;
}

}  // namespace detail

/// Returns the generator basis for SU(dim). Built once per dimension and
/// cached; the returned reference stays valid for the program lifetime.
template <typename Scalar = double>
const GeneratorBasis<Scalar>& su_generators(int dim) {
  if (dim < 2)
    throw InvalidDimensionError("generator basis requires dimension >= 2, got " +
                                std::to_string(dim));
  static std::mutex mutex;
  static std::map<int, GeneratorBasis<Scalar>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, detail::build_generators<Scalar>(dim)).first;
  return it->second;
}

}  // namespace luinv
