#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ncurv/operators.hpp"

namespace ncurv {

using Rng = std::mt19937_64;

/// n random d x d matrices with sum A_i A_i^* <= I.
/// Exact: small Gaussian-integer entries scaled by 1/ceil(|A|_F), so the sum is
/// bounded by its trace. Float: complex Gaussian entries scaled so that
/// lambda_max(sum A_i A_i^*) = 1, which leaves a near-null defect direction.
template <class S>
std::vector<Matrix<S>> random_contraction(int n, std::size_t d, Rng& rng);

/// Random n x n unitary. Exact: a product of rational Givens rotations
/// ((p^2 - q^2) + 2pq)/(p^2 + q^2), rational phases and transpositions.
/// Float: the Q factor of a complex Gaussian matrix.
template <class S>
Matrix<S> random_unitary(int n, Rng& rng);

/// Ring word and decay factors for a random decaying atomic representation with
/// ring length in [1, max_d]. Factors are drawn from {0, 1/2, 3/5, (3+4i)/5 ... }
/// so that |lambda_s| < 1 and |lambda_s| = 1 both occur.
template <class S>
struct AtomicParams {
    Word ring;
    std::vector<S> lambda;
};

template <class S>
AtomicParams<S> random_atomic(int n, std::size_t max_d, Rng& rng);

}  // namespace ncurv
