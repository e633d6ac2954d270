#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncurv/cpmap.hpp"

namespace ncurv {

struct EstimateOptions {
    ComputeOptions compute;
    /// A sequence has converged when consecutive normalized values differ by less than gap.
    double gap = 1e-6;
};

/// Level-k_max normalized value (n-1) q_k / n^k of a defect quantity q.
/// value <= limit <= upper_bound when an upper bound is present; lower_bound
/// is set only where the normalized sequence is known to be nondecreasing.
template <class S>
struct InvariantEstimate {
    RealOf<S> value{};
    std::optional<RealOf<S>> upper_bound;
    std::optional<RealOf<S>> lower_bound;
    std::size_t k_used = 0;
    double cauchy_gap = 0.0;
    bool converged = false;
    /// Aitken delta-squared extrapolation of the last three values; a diagnostic only.
    std::optional<double> aitken;
    /// Normalized value at every level 1..k_used.
    std::vector<RealOf<S>> levels;
};

template <class S>
struct InvariantReport {
    DefectSequence<S> sequence;
    InvariantEstimate<S> curvature;
    InvariantEstimate<S> euler;
    std::uint64_t pure_rank = 0;
    /// K <= chi <= pure rank on the estimates (exact: no slack; float: tol).
    bool hierarchy_ok = false;
    /// tr <= rk at every level.
    bool levelwise_ok = false;
};

enum class FreenessVerdict { free_consistent, not_free, inconclusive };

std::string to_string(FreenessVerdict v);

template <class S>
struct FreenessResult {
    FreenessVerdict verdict = FreenessVerdict::inconclusive;
    std::uint64_t pure_rank = 0;
    double purity = 0.0;
    /// Purity indicator above the threshold: the theorem's purity hypothesis is unmet.
    bool non_pure = false;
    InvariantEstimate<S> curvature;
    std::string reason;
};

/// Purity indicator level above which freeness_test refuses a verdict.
inline constexpr double kPurityThreshold = 0.1;

/// (n-1) q / n^k.
template <class S>
RealOf<S> normalized(const RealOf<S>& q, int n, std::size_t k);

/// rk(I - Phi(I)).
template <class S>
std::uint64_t pure_rank(const RowContraction<S>& a, const ComputeOptions& opt = {});

/// Estimate from an already computed sequence. use_rank selects chi over K.
/// upper_bound = value + pure_rank / n^k.
template <class S>
InvariantEstimate<S> estimate_from(const DefectSequence<S>& seq, std::uint64_t pure_rank, bool use_rank, double gap);

template <class S>
InvariantEstimate<S> curvature(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt = {});

template <class S>
InvariantEstimate<S> euler(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt = {});

/// (n-1) tr(P_M Q_k) / n^k for M the orbit span of the generators. The levels
/// are nondecreasing and each generator adds at most 1/n^k to the tail, so
/// lower_bound = value and upper_bound = value + m / n^k.
template <class S>
InvariantEstimate<S> tilde_curvature(int n, std::uint32_t alpha, const std::vector<Generator<S>>& gens, std::size_t k_max,
                                     const EstimateOptions& opt = {});

template <class S>
InvariantReport<S> hierarchy_report(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt = {});

/// not-free: the K upper bound is below the pure rank; free-consistent: every
/// level equals pure_rank (1 - n^-k); otherwise inconclusive. A zero pure rank or
/// a purity indicator above kPurityThreshold yields inconclusive with a reason.
template <class S>
FreenessResult<S> freeness_test(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt = {});

}  // namespace ncurv
