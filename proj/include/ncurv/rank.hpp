#pragma once

#include <cstddef>
#include <vector>

#include "ncurv/matrix.hpp"

namespace ncurv {

/// Exact rank by fraction-free (Bareiss) elimination over the Gaussian
/// integers. Rows are first cleared of denominators; row scaling preserves rank.
/// Matrices without imaginary parts take an integer-only path.
std::size_t rank_exact(const Matrix<Exact>& m);

/// Number of eigenvalues of a Hermitian matrix above tol * max(1, lambda_max).
std::size_t rank_hermitian_float(const Matrix<Float>& m, double tol);

/// Ascending eigenvalues of a Hermitian matrix (double precision).
std::vector<double> hermitian_eigenvalues(const Matrix<Float>& m);

/// Largest eigenvalue of a Hermitian matrix (double precision); 0 for an empty matrix.
double max_eigenvalue(const Matrix<Float>& m);

/// Exact positive-semidefiniteness of a Hermitian matrix by symmetric
/// elimination on positive pivots.
bool is_psd_exact(const Matrix<Exact>& m);

/// Backend dispatch: exact rank for Exact, thresholded eigenvalue count for Float.
template <class S>
std::size_t hermitian_rank(const Matrix<S>& m, double tol) {
    if constexpr (backend_of<S>() == Backend::exact)
        return rank_exact(m);
    else
        return rank_hermitian_float(m, tol);
}

}  // namespace ncurv
