#include "ncurv/kernels.hpp"

#include <exception>
#include <numeric>

#include "ncurv/operators.hpp"
#include "ncurv/rank.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncurv {

namespace {

// Runs body(i) for i in [0, count); exceptions are captured and rethrown after the loop.
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
    std::exception_ptr error;
    const auto total = static_cast<long long>(count);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic, 16) if (par)
    for (long long i = 0; i < total; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(ncurv_kernel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class S>
Matrix<S> phi_kernel(const std::vector<Matrix<S>>& mats, const Matrix<S>& x, Exec exec) {
    const std::size_t d = x.rows();
    for (const auto& m : mats)
        if (m.rows() != d || m.cols() != d || x.cols() != d) throw std::invalid_argument("phi: shape mismatch");
    // Y_i = X A_i^*, then Phi(X) = sum_i A_i Y_i; one output row per task.
    std::vector<Matrix<S>> ys;
    ys.reserve(mats.size());
    for (const auto& a : mats) {
        Matrix<S> y(d, d);
        for_each_index(d, exec, [&](std::size_t r) {
            for (std::size_t k = 0; k < d; ++k) {
                const S& xrk = x(r, k);
                if (is_zero(xrk)) continue;
                for (std::size_t c = 0; c < d; ++c) {
                    const S& acK = a(c, k);
                    if (is_zero(acK)) continue;
                    y(r, c) += xrk * conj(acK);
                }
            }
        });
        ys.push_back(std::move(y));
    }
    Matrix<S> out(d, d);
    for_each_index(d, exec, [&](std::size_t r) {
        for (std::size_t i = 0; i < mats.size(); ++i) {
            const auto& a = mats[i];
            const auto& y = ys[i];
            for (std::size_t k = 0; k < d; ++k) {
                const S& ark = a(r, k);
                if (is_zero(ark)) continue;
                for (std::size_t c = 0; c < d; ++c) {
                    const S& ykc = y(k, c);
                    if (is_zero(ykc)) continue;
                    out(r, c) += ark * ykc;
                }
            }
        }
    });
    return out;
}

template <class S>
std::vector<RealOf<S>> orbit_norm_kernel(const std::vector<Generator<S>>& gens, const TruncatedBasis& basis, Exec exec) {
    std::vector<RealOf<S>> out(static_cast<std::size_t>(basis.size()));
    for_each_index(out.size(), exec, [&](std::size_t idx) { out[idx] = orbit_projection_norm2(gens, basis.label(idx)); });
    return out;
}

template <class S>
std::vector<std::vector<std::size_t>> hermitian_components(const Matrix<S>& m) {
    const std::size_t d = m.rows();
    std::vector<std::size_t> parent(d);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r + 1; c < d; ++c)
            if (!is_zero(m(r, c)) || !is_zero(m(c, r))) {
                std::size_t a = find(r), b = find(c);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> slot(d, static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < d; ++v) {
        std::size_t root = find(v);
        if (slot[root] == static_cast<std::size_t>(-1)) {
            slot[root] = comps.size();
            comps.emplace_back();
        }
        comps[slot[root]].push_back(v);
    }
    return comps;
}

template <class S>
std::size_t blocks_rank_kernel(const std::vector<Matrix<S>>& blocks, double tol, Exec exec) {
    std::vector<std::size_t> ranks(blocks.size(), 0);
    for_each_index(blocks.size(), exec, [&](std::size_t b) {
        const auto& blk = blocks[b];
        if (blk.rows() == 1)
            ranks[b] = is_zero(blk(0, 0)) ? 0 : (backend_of<S>() == Backend::exact ? 1 : hermitian_rank(blk, tol));
        else
            ranks[b] = hermitian_rank(blk, tol);
    });
    return std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
}

template <class S>
std::size_t block_rank_kernel(const Matrix<S>& m, const std::vector<std::vector<std::size_t>>& components, double tol, Exec exec) {
    std::vector<Matrix<S>> blocks;
    blocks.reserve(components.size());
    for (const auto& comp : components) {
        Matrix<S> blk(comp.size(), comp.size());
        for (std::size_t r = 0; r < comp.size(); ++r)
            for (std::size_t c = 0; c < comp.size(); ++c) blk(r, c) = m(comp[r], comp[c]);
        blocks.push_back(std::move(blk));
    }
    return blocks_rank_kernel(blocks, tol, exec);
}

#define NCURV_INSTANTIATE(S)                                                                                        \
    template Matrix<S> phi_kernel(const std::vector<Matrix<S>>&, const Matrix<S>&, Exec);                          \
    template std::vector<RealOf<S>> orbit_norm_kernel(const std::vector<Generator<S>>&, const TruncatedBasis&, Exec); \
    template std::vector<std::vector<std::size_t>> hermitian_components(const Matrix<S>&);                           \
    template std::size_t block_rank_kernel(const Matrix<S>&, const std::vector<std::vector<std::size_t>>&, double, Exec); \
    template std::size_t blocks_rank_kernel(const std::vector<Matrix<S>>&, double, Exec);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
