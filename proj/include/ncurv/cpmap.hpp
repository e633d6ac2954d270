#pragma once

#include <cstdint>
#include <vector>

#include "ncurv/kernels.hpp"
#include "ncurv/operators.hpp"

namespace ncurv {

/// Basis cap from NCURV_BASIS_CAP, else 200000.
std::uint64_t default_basis_cap();

struct ComputeOptions {
    /// Float rank threshold: eigenvalues above tol * max(1, lambda_max) count.
    /// Also the wandering and membership tolerance. Ignored by exact ranks.
    double tol = 1e-9;
    /// Largest basis any path may materialize.
    std::uint64_t cap = default_basis_cap();
    Exec exec = Exec::parallel;
};

template <class S>
struct DefectRecord {
    std::size_t k = 0;
    RealOf<S> trace{};
    std::uint64_t rank = 0;

    friend bool operator==(const DefectRecord& a, const DefectRecord& b) {
        return a.k == b.k && a.trace == b.trace && a.rank == b.rank;
    }
};

/// Levels k = 1..k_max of tr and rk of I - Phi^k(I).
template <class S>
struct DefectSequence {
    int n = 2;
    Backend backend = backend_of<S>();
    double tol = 1e-9;
    std::vector<DefectRecord<S>> records;

    const DefectRecord<S>& level(std::size_t k) const { return records.at(k - 1); }
    friend bool operator==(const DefectSequence& a, const DefectSequence& b) {
        return a.n == b.n && a.backend == b.backend && a.records == b.records;
    }
};

/// Phi(X) = sum_i A_i X A_i^*.
template <class S>
Matrix<S> phi_apply(const DenseTuple<S>& a, const Matrix<S>& x, Exec exec = Exec::parallel);

/// Dispatching computation of all levels 1..k_max:
///   dense         iterate Phi from I;
///   left regular  alpha (n^k - 1)/(n - 1);
///   atomic        diagonal entries 1 - prod r, grouped by ring position and word length;
///   compression   sum of |P_S xi_w|^2 and the rank of the Gram matrix, block by block;
///   direct sum    level-wise sums; unitary mix  dense truncation of the base, then mixing.
/// Throws ResourceError when a path would materialize more than opt.cap basis vectors.
template <class S>
DefectSequence<S> defect_sequence(const RowContraction<S>& a, std::size_t k_max, const ComputeOptions& opt = {});

template <class S>
RealOf<S> defect_trace(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt = {});

template <class S>
std::uint64_t defect_rank(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt = {});

/// Phi iteration on an explicit tuple.
template <class S>
DefectSequence<S> dense_defect_sequence(const DenseTuple<S>& a, int n, std::size_t k_max, const ComputeOptions& opt = {});

/// Finite co-invariant compression of a model whose level-k defect it reproduces.
/// The model lives on `padding` extra dimensions where the tuple vanishes;
/// subtract padding from traces and ranks.
template <class S>
struct DenseTruncation {
    DenseTuple<S> tuple;
    std::uint64_t padding = 0;
    std::size_t depth = 0;
};

/// Truncation depth that reproduces levels <= k:
///   left regular, atomic, graded complement: k;  graded orbit span: k + max degree.
/// Throws std::invalid_argument for models without a finite realization
/// (non-graded compressions).
template <class S>
std::size_t required_depth(const RowContraction<S>& a, std::size_t k);

template <class S>
DenseTruncation<S> dense_truncation(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt = {});

/// Defect sequence through dense_truncation and Phi iteration (the oracle path).
template <class S>
DefectSequence<S> dense_path_sequence(const RowContraction<S>& a, std::size_t k_max, const ComputeOptions& opt = {});

/// max over probe vectors x of <Phi^k(I) x, x> / |x|^2. Probes: dense coordinate
/// vectors; xi_{c,e} (left regular); ring vectors xi_{s,e} (atomic); P_S xi_{c,e}
/// (complement compression); the generators (orbit-span restriction). Direct
/// sums take the maximum over parts; a unitary mix has the probes and values of its base.
template <class S>
RealOf<S> purity_indicator(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt = {});

}  // namespace ncurv
