#pragma once

#include <cstddef>
#include <vector>

#include "ncurv/basis.hpp"
#include "ncurv/generator.hpp"
#include "ncurv/matrix.hpp"

namespace ncurv {

/// Every kernel has a serial reference and an OpenMP version. Both compute
/// each output element with the same operation order, so results are
/// bit-identical in either backend.
enum class Exec { serial, parallel };

/// Phi(X) = sum_i A_i X A_i^*.
template <class S>
Matrix<S> phi_kernel(const std::vector<Matrix<S>>& mats, const Matrix<S>& x, Exec exec);

/// |P_N xi_l|^2 for every label of the basis, in basis order.
template <class S>
std::vector<RealOf<S>> orbit_norm_kernel(const std::vector<Generator<S>>& gens, const TruncatedBasis& basis, Exec exec);

/// Connected components of the nonzero pattern of a Hermitian matrix, each
/// sorted ascending, ordered by smallest index.
template <class S>
std::vector<std::vector<std::size_t>> hermitian_components(const Matrix<S>& m);

/// Sum of the ranks of the diagonal blocks given by `components`.
template <class S>
std::size_t block_rank_kernel(const Matrix<S>& m, const std::vector<std::vector<std::size_t>>& components, double tol, Exec exec);

/// Rank of the blocks of a sparse Hermitian matrix given as per-component dense blocks.
template <class S>
std::size_t blocks_rank_kernel(const std::vector<Matrix<S>>& blocks, double tol, Exec exec);

/// Rank of a Hermitian matrix, splitting it into connected blocks first.
template <class S>
std::size_t hermitian_rank_blocked(const Matrix<S>& m, double tol, Exec exec) {
    return block_rank_kernel(m, hermitian_components(m), tol, exec);
}

/// Number of OpenMP threads available (1 without OpenMP).
int kernel_threads();

}  // namespace ncurv
