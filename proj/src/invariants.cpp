#include "ncurv/invariants.hpp"

#include <cmath>
#include <limits>

#include "ncurv/errors.hpp"

namespace ncurv {

namespace {

template <class S>
RealOf<S> power_of(int n, std::size_t k) {
    if constexpr (backend_of<S>() == Backend::exact) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Rational(p);
    } else {
        return std::pow(static_cast<double>(n), static_cast<double>(k));
    }
}

template <class S>
RealOf<S> from_count(std::uint64_t c) {
    if constexpr (backend_of<S>() == Backend::exact)
        return Rational(static_cast<unsigned long>(c));
    else
        return static_cast<double>(c);
}

template <class S>
bool at_most(const RealOf<S>& a, const RealOf<S>& b, double tol) {
    if constexpr (backend_of<S>() == Backend::exact)
        return a <= b;
    else
        return a <= b + tol * std::max(1.0, std::abs(b));
}

template <class S>
bool equal_within(const RealOf<S>& a, const RealOf<S>& b, double tol) {
    if constexpr (backend_of<S>() == Backend::exact)
        return a == b;
    else
        return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

template <class S>
void fill_diagnostics(InvariantEstimate<S>& est, double gap) {
    const auto& v = est.levels;
    est.k_used = v.size();
    est.value = v.back();
    if (v.size() >= 2)
        est.cauchy_gap = std::abs(to_double(v[v.size() - 1]) - to_double(v[v.size() - 2]));
    else
        est.cauchy_gap = std::numeric_limits<double>::infinity();
    est.converged = est.cauchy_gap < gap;
    if (v.size() >= 3) {
        const double x0 = to_double(v[v.size() - 3]), x1 = to_double(v[v.size() - 2]), x2 = to_double(v[v.size() - 1]);
        const double denom = (x2 - x1) - (x1 - x0);
        if (denom != 0.0 && std::isfinite(denom)) est.aitken = x2 - (x2 - x1) * (x2 - x1) / denom;
    }
}

}  // namespace

std::string to_string(FreenessVerdict v) {
    switch (v) {
        case FreenessVerdict::free_consistent: return "free-consistent";
        case FreenessVerdict::not_free: return "not-free";
        case FreenessVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

template <class S>
RealOf<S> normalized(const RealOf<S>& q, int n, std::size_t k) {
    RealOf<S> out = q * from_count<S>(static_cast<std::uint64_t>(n - 1));
    out /= power_of<S>(n, k);
    return out;
}

template <class S>
std::uint64_t pure_rank(const RowContraction<S>& a, const ComputeOptions& opt) {
    return defect_sequence(a, 1, opt).level(1).rank;
}

template <class S>
InvariantEstimate<S> estimate_from(const DefectSequence<S>& seq, std::uint64_t pr, bool use_rank, double gap) {
    if (seq.records.empty()) throw std::invalid_argument("empty defect sequence");
    InvariantEstimate<S> est;
    for (const auto& r : seq.records)
        est.levels.push_back(normalized<S>(use_rank ? from_count<S>(r.rank) : r.trace, seq.n, r.k));
    fill_diagnostics(est, gap);
    est.upper_bound = est.value + from_count<S>(pr) / power_of<S>(seq.n, est.k_used);
    return est;
}

template <class S>
InvariantEstimate<S> curvature(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt) {
    const auto seq = defect_sequence(a, k_max, opt.compute);
    return estimate_from(seq, seq.level(1).rank, false, opt.gap);
}

template <class S>
InvariantEstimate<S> euler(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt) {
    const auto seq = defect_sequence(a, k_max, opt.compute);
    return estimate_from(seq, seq.level(1).rank, true, opt.gap);
}

template <class S>
InvariantEstimate<S> tilde_curvature(int n, std::uint32_t alpha, const std::vector<Generator<S>>& gens, std::size_t k_max,
                                     const EstimateOptions& opt) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    check_wandering(gens, k_max, opt.compute.tol);
    std::uint64_t size;
    try {
        size = alpha * basis_dimension(n, k_max);
    } catch (const std::overflow_error&) {
        throw ResourceError("level " + std::to_string(k_max) + " overflows the basis count");
    }
    if (size > opt.compute.cap)
        throw ResourceError("orbit trace needs " + std::to_string(size) + " basis vectors, above the cap of " +
                            std::to_string(opt.compute.cap));
    const TruncatedBasis basis(n, k_max, alpha);
    const auto norms = orbit_norm_kernel(gens, basis, opt.compute.exec);
    // Basis order is length-lex within each copy; sum by length, then copy.
    std::vector<RealOf<S>> by_length(k_max, RealOf<S>(0));
    for (std::size_t idx = 0; idx < norms.size(); ++idx) by_length[basis.label(idx).word.size()] += norms[idx];
    InvariantEstimate<S> est;
    RealOf<S> acc(0);
    for (std::size_t k = 1; k <= k_max; ++k) {
        acc += by_length[k - 1];
        est.levels.push_back(normalized<S>(acc, n, k));
    }
    fill_diagnostics(est, opt.gap);
    est.lower_bound = est.value;
    est.upper_bound = est.value + from_count<S>(gens.size()) / power_of<S>(n, k_max);
    return est;
}

template <class S>
InvariantReport<S> hierarchy_report(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt) {
    InvariantReport<S> rep;
    rep.sequence = defect_sequence(a, k_max, opt.compute);
    rep.pure_rank = rep.sequence.level(1).rank;
    rep.curvature = estimate_from(rep.sequence, rep.pure_rank, false, opt.gap);
    rep.euler = estimate_from(rep.sequence, rep.pure_rank, true, opt.gap);
    const double tol = opt.compute.tol;
    rep.levelwise_ok = true;
    for (const auto& r : rep.sequence.records)
        if (!at_most<S>(r.trace, from_count<S>(r.rank), tol)) rep.levelwise_ok = false;
    const RealOf<S> zero(0);
    rep.hierarchy_ok = at_most<S>(zero, rep.curvature.value, tol) && at_most<S>(rep.curvature.value, rep.euler.value, tol) &&
                       at_most<S>(rep.euler.value, from_count<S>(rep.pure_rank), tol);
    return rep;
}

template <class S>
FreenessResult<S> freeness_test(const RowContraction<S>& a, std::size_t k_max, const EstimateOptions& opt) {
    FreenessResult<S> res;
    const auto seq = defect_sequence(a, k_max, opt.compute);
    res.pure_rank = seq.level(1).rank;
    res.curvature = estimate_from(seq, res.pure_rank, false, opt.gap);
    res.purity = to_double(purity_indicator(a, k_max, opt.compute));
    const double tol = opt.compute.tol;
    if (res.pure_rank == 0) {
        res.reason = "pure rank is zero; the criterion needs a non-zero pure contraction";
        return res;
    }
    if (res.purity > kPurityThreshold) {
        res.non_pure = true;
        res.reason = "purity indicator " + std::to_string(res.purity) + " at level " + std::to_string(k_max) +
                     " exceeds " + std::to_string(kPurityThreshold);
        return res;
    }
    const RealOf<S> pr = from_count<S>(res.pure_rank);
    const RealOf<S>& upper = *res.curvature.upper_bound;
    const bool below = backend_of<S>() == Backend::exact ? upper < pr : to_double(upper) < to_double(pr) - tol;
    if (below) {
        res.verdict = FreenessVerdict::not_free;
        res.reason = "curvature upper bound " + to_string(upper) + " is below the pure rank";
        return res;
    }
    bool signature = true;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const RealOf<S> expected = pr - pr / power_of<S>(seq.n, k);
        if (!equal_within<S>(res.curvature.levels[k - 1], expected, tol)) signature = false;
    }
    if (signature) {
        res.verdict = FreenessVerdict::free_consistent;
        res.reason = "every level matches the left-regular signature";
    } else {
        res.reason = "levels differ from the left-regular signature but the bound does not exclude freeness";
    }
    return res;
}

#define NCURV_INSTANTIATE(S)                                                                                             \
    template RealOf<S> normalized<S>(const RealOf<S>&, int, std::size_t);                                               \
    template std::uint64_t pure_rank(const RowContraction<S>&, const ComputeOptions&);                                  \
    template InvariantEstimate<S> estimate_from(const DefectSequence<S>&, std::uint64_t, bool, double);                 \
    template InvariantEstimate<S> curvature(const RowContraction<S>&, std::size_t, const EstimateOptions&);             \
    template InvariantEstimate<S> euler(const RowContraction<S>&, std::size_t, const EstimateOptions&);                 \
    template InvariantEstimate<S> tilde_curvature(int, std::uint32_t, const std::vector<Generator<S>>&, std::size_t,    \
                                                  const EstimateOptions&);                                              \
    template InvariantReport<S> hierarchy_report(const RowContraction<S>&, std::size_t, const EstimateOptions&);        \
    template FreenessResult<S> freeness_test(const RowContraction<S>&, std::size_t, const EstimateOptions&);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
