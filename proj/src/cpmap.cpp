#include "ncurv/cpmap.hpp"

#include <cstdlib>
#include <map>
#include <numeric>

#include "ncurv/errors.hpp"
#include "ncurv/rank.hpp"

namespace ncurv {

namespace {

constexpr std::size_t kMaxGramBlock = 4096;
constexpr std::size_t kMaxAdjointLeaves = std::size_t{1} << 20;

std::uint64_t words_below(int n, std::size_t k) {
    try {
        return basis_dimension(n, k);
    } catch (const std::overflow_error&) {
        throw ResourceError("level " + std::to_string(k) + " overflows the basis count");
    }
}

std::uint64_t words_of_length(int n, std::size_t l) {
    try {
        return checked_pow(n, l);
    } catch (const std::overflow_error&) {
        throw ResourceError("word count n^" + std::to_string(l) + " overflows");
    }
}

void check_cap(std::uint64_t size, const ComputeOptions& opt, const char* what) {
    if (size > opt.cap)
        throw ResourceError(std::string(what) + " needs " + std::to_string(size) + " basis vectors, above the cap of " +
                            std::to_string(opt.cap));
}

template <class S>
RealOf<S> real_count(std::uint64_t c) {
    if constexpr (backend_of<S>() == Backend::exact)
        return Rational(static_cast<unsigned long>(c));
    else
        return static_cast<double>(c);
}

template <class S>
bool positive_entry(const RealOf<S>& v, double tol) {
    if constexpr (backend_of<S>() == Backend::exact)
        return sgn(v) != 0;
    else
        return v > tol;
}

template <class S>
DefectSequence<S> empty_sequence(int n, const ComputeOptions& opt) {
    DefectSequence<S> seq;
    seq.n = n;
    seq.tol = opt.tol;
    return seq;
}

// Labels w' with |w'| < limit such that <P_N xi_w', xi_u> may be nonzero.
template <class S>
void orbit_neighbors(const std::vector<Generator<S>>& gens, const std::vector<std::vector<SupportTerm<S>>>& supports,
                     const Label& u, std::size_t limit, std::vector<Label>& out) {
    out.clear();
    for (std::size_t j = 0; j < gens.size(); ++j) {
        for (std::size_t l = 0; l <= u.word.size(); ++l) {
            if (is_zero(gens[j].coefficient(u.copy, u.word.substr(l)))) continue;
            const Word v = u.word.substr(0, l);
            for (const auto& t : supports[j])
                if (l + t.label.word.size() < limit) out.push_back(Label{t.label.copy, v + t.label.word});
        }
    }
}

template <class S>
std::vector<std::vector<SupportTerm<S>>> generator_supports(const std::vector<Generator<S>>& gens, std::size_t max_len) {
    std::vector<std::vector<SupportTerm<S>>> out;
    for (const auto& g : gens) out.push_back(g.support_upto(max_len));
    return out;
}

// Blocks of the Gram matrix <P_S xi_u, xi_w>, |u|, |w| < k.
template <class S>
std::vector<Matrix<S>> complement_gram_blocks(const Compression<S>& m, const TruncatedBasis& basis) {
    const std::size_t k = basis.depth();
    const auto supports = generator_supports(m.generators, k == 0 ? 0 : k - 1);
    const auto size = static_cast<std::size_t>(basis.size());
    std::vector<std::size_t> parent(size);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<Label> nbrs;
    for (std::size_t idx = 0; idx < size; ++idx) {
        orbit_neighbors(m.generators, supports, basis.label(idx), k, nbrs);
        for (const auto& l : nbrs) {
            std::size_t a = find(idx), b = find(static_cast<std::size_t>(basis.index(l)));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> slot(size, static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < size; ++v) {
        std::size_t root = find(v);
        if (slot[root] == static_cast<std::size_t>(-1)) {
            slot[root] = comps.size();
            comps.emplace_back();
        }
        comps[slot[root]].push_back(v);
    }
    std::vector<Matrix<S>> blocks;
    blocks.reserve(comps.size());
    for (const auto& comp : comps) {
        if (comp.size() > kMaxGramBlock)
            throw ResourceError("Gram block of size " + std::to_string(comp.size()) + " exceeds " + std::to_string(kMaxGramBlock));
        Matrix<S> blk(comp.size(), comp.size());
        for (std::size_t r = 0; r < comp.size(); ++r) {
            const Label lr = basis.label(comp[r]);
            for (std::size_t c = 0; c < comp.size(); ++c) {
                S v = -orbit_projection_entry(m.generators, lr, basis.label(comp[c]));
                if (r == c) v += S(1);
                blk(r, c) = v;
            }
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

template <class S>
DefectSequence<S> left_regular_sequence(int n, const LeftRegular& m, std::size_t k_max, const ComputeOptions& opt) {
    auto seq = empty_sequence<S>(n, opt);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const std::uint64_t c = m.alpha * words_below(n, k);
        seq.records.push_back({k, real_count<S>(c), c});
    }
    return seq;
}

template <class S>
DefectSequence<S> atomic_sequence(int n, const DecayingAtomic<S>& m, std::size_t k_max, const ComputeOptions& opt) {
    auto seq = empty_sequence<S>(n, opt);
    const std::size_t d = m.ring.size();
    for (std::size_t k = 1; k <= k_max; ++k) {
        RealOf<S> trace(0);
        std::uint64_t rank = 0;
        for (std::size_t s = 0; s < d; ++s) {
            // The diagonal entry at xi_{s,w}, |w| = k - t, is 1 - r_{s-1} ... r_{s-t}.
            RealOf<S> prod(1);
            for (std::size_t t = 1; t <= k; ++t) {
                prod *= m.moduli[(s + d * k - t) % d];
                const std::size_t l = k - t;
                const std::uint64_t count = l == 0 ? 1 : static_cast<std::uint64_t>(n - 1) * words_of_length(n, l - 1);
                const RealOf<S> entry = RealOf<S>(1) - prod;
                if (!positive_entry<S>(entry, opt.tol)) continue;
                trace += real_count<S>(count) * entry;
                rank += count;
            }
        }
        seq.records.push_back({k, trace, rank});
    }
    return seq;
}

template <class S>
DefectSequence<S> compression_sequence(int n, const Compression<S>& m, std::size_t k_max, const ComputeOptions& opt) {
    auto seq = empty_sequence<S>(n, opt);
    check_wandering(m.generators, k_max, opt.tol);
    if (m.orientation == Orientation::invariant) {
        // The defect is the projection onto span{L_v zeta_j : |v| < k}, an orthogonal family.
        for (std::size_t k = 1; k <= k_max; ++k) {
            const std::uint64_t c = m.generators.size() * words_below(n, k);
            check_cap(c, opt, "orbit-span defect");
            seq.records.push_back({k, real_count<S>(c), c});
        }
        return seq;
    }
    check_cap(m.alpha * words_below(n, k_max), opt, "compression defect");
    const TruncatedBasis basis(n, k_max, m.alpha);
    const auto norms = orbit_norm_kernel(m.generators, basis, opt.exec);

    // length_sums[c][l] = sum over |w| = l of |P_N xi_{c,w}|^2, reduced in basis order.
    std::vector<std::vector<RealOf<S>>> length_sums(m.alpha, std::vector<RealOf<S>>(k_max, RealOf<S>(0)));
    for (std::size_t idx = 0; idx < norms.size(); ++idx) {
        const Label l = basis.label(idx);
        length_sums[l.copy][l.word.size()] += norms[idx];
    }
    RealOf<S> projected(0);
    for (std::size_t k = 1; k <= k_max; ++k) {
        for (std::uint32_t c = 0; c < m.alpha; ++c) projected += length_sums[c][k - 1];
        const RealOf<S> trace = real_count<S>(m.alpha * words_below(n, k)) - projected;
        const TruncatedBasis level(n, k, m.alpha);
        const std::uint64_t rank = blocks_rank_kernel(complement_gram_blocks(m, level), opt.tol, opt.exec);
        seq.records.push_back({k, trace, rank});
    }
    return seq;
}

template <class S>
DefectSequence<S> sum_sequences(const DefectSequence<S>& a, const DefectSequence<S>& b) {
    DefectSequence<S> out = a;
    for (std::size_t i = 0; i < out.records.size(); ++i) {
        out.records[i].trace += b.records[i].trace;
        out.records[i].rank += b.records[i].rank;
    }
    return out;
}

template <class S>
DefectSequence<S> subtract_padding(DefectSequence<S> seq, std::uint64_t padding) {
    for (auto& r : seq.records) {
        if (r.rank < padding) throw std::logic_error("dense truncation padding exceeds the defect rank");
        r.trace -= real_count<S>(padding);
        r.rank -= padding;
    }
    return seq;
}

template <class S>
std::vector<Matrix<S>> mix_matrices(const std::vector<Matrix<S>>& mats, const Matrix<S>& u) {
    std::vector<Matrix<S>> out;
    const std::size_t n = mats.size();
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<S> m(mats[0].rows(), mats[0].cols());
        for (std::size_t i = 0; i < n; ++i)
            if (!is_zero(u(i, j))) m += u(i, j) * mats[i];
        out.push_back(std::move(m));
    }
    return out;
}

template <class S>
void assert_monotone(const DefectSequence<S>& seq) {
    for (std::size_t i = 1; i < seq.records.size(); ++i) {
        const auto& prev = seq.records[i - 1].trace;
        const auto& cur = seq.records[i].trace;
        bool ok;
        if constexpr (backend_of<S>() == Backend::exact)
            ok = cur >= prev;
        else
            ok = cur >= prev - 1e-9 * std::max(1.0, std::abs(prev));
        if (!ok) throw std::logic_error("defect traces decreased between levels " + std::to_string(i) + " and " + std::to_string(i + 1));
    }
}

// Projection matrix onto the orbit span (or its complement) on the words of length < depth.
template <class S>
Matrix<S> orbit_projection_matrix(const Compression<S>& m, const TruncatedBasis& basis, bool complement) {
    const auto size = static_cast<std::size_t>(basis.size());
    Matrix<S> p(size, size);
    const auto supports = generator_supports(m.generators, basis.depth() == 0 ? 0 : basis.depth() - 1);
    std::vector<Label> nbrs;
    for (std::size_t r = 0; r < size; ++r) {
        const Label lr = basis.label(r);
        orbit_neighbors(m.generators, supports, lr, basis.depth(), nbrs);
        for (const auto& l : nbrs) {
            const auto c = static_cast<std::size_t>(basis.index(l));
            p(r, c) = orbit_projection_entry(m.generators, lr, l);
        }
    }
    if (complement) {
        Matrix<S> out = Matrix<S>::identity(size);
        out -= p;
        return out;
    }
    return p;
}

template <class S>
DenseTuple<S> left_shift_tuple(int n, const TruncatedBasis& basis) {
    const auto size = static_cast<std::size_t>(basis.size());
    DenseTuple<S> t{size, {}};
    for (int i = 1; i <= n; ++i) {
        Matrix<S> m(size, size);
        for (std::size_t c = 0; c < size; ++c) {
            const Label l = basis.label(c);
            if (l.word.size() + 1 >= basis.depth()) continue;
            m(static_cast<std::size_t>(basis.index(Label{l.copy, single(i) + l.word})), c) = S(1);
        }
        t.mats.push_back(std::move(m));
    }
    return t;
}

template <class S>
std::size_t rank_of_projection(const Matrix<S>& p, const ComputeOptions& opt) {
    return hermitian_rank_blocked(p, opt.tol, opt.exec);
}

}  // namespace

std::uint64_t default_basis_cap() {
    if (const char* env = std::getenv("NCURV_BASIS_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 200000;
}

template <class S>
Matrix<S> phi_apply(const DenseTuple<S>& a, const Matrix<S>& x, Exec exec) {
    return phi_kernel(a.mats, x, exec);
}

template <class S>
DefectSequence<S> dense_defect_sequence(const DenseTuple<S>& a, int n, std::size_t k_max, const ComputeOptions& opt) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    check_cap(a.dim, opt, "dense defect");
    auto seq = empty_sequence<S>(n, opt);
    const Matrix<S> id = Matrix<S>::identity(a.dim);
    Matrix<S> x = id;
    for (std::size_t k = 1; k <= k_max; ++k) {
        x = phi_kernel(a.mats, x, opt.exec);
        const Matrix<S> defect = id - x;
        seq.records.push_back({k, defect.trace_real(), hermitian_rank_blocked(defect, opt.tol, opt.exec)});
    }
    return seq;
}

template <class S>
std::size_t required_depth(const RowContraction<S>& a, std::size_t k) {
    return std::visit(
        [&](const auto& m) -> std::size_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                return 0;
            } else if constexpr (std::is_same_v<T, LeftRegular> || std::is_same_v<T, DecayingAtomic<S>>) {
                return k;
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                if (!m.graded()) throw std::invalid_argument("no finite dense truncation reproduces a non-graded compression");
                return m.orientation == Orientation::complement ? k : k + m.max_degree();
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                return std::max(required_depth(*m.first, k), required_depth(*m.second, k));
            } else {
                return required_depth(*m.base, k);
            }
        },
        a.model());
}

template <class S>
DenseTruncation<S> dense_truncation(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt) {
    const int n = a.n();
    return std::visit(
        [&](const auto& m) -> DenseTruncation<S> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                return {m, 0, 0};
            } else if constexpr (std::is_same_v<T, LeftRegular>) {
                check_cap(m.alpha * words_below(n, k), opt, "dense truncation");
                return {left_shift_tuple<S>(n, TruncatedBasis(n, k, m.alpha)), 0, k};
            } else if constexpr (std::is_same_v<T, DecayingAtomic<S>>) {
                if (!m.lambda) throw std::domain_error("decay factor is irrational; dense truncation needs the float backend");
                const auto d = static_cast<std::uint32_t>(m.ring.size());
                check_cap(d * words_below(n, k), opt, "dense truncation");
                std::map<Label, std::size_t, LabelOrder> index;
                std::vector<Label> labels;
                const auto words = enumerate_words_below(n, k);
                for (std::uint32_t s = 0; s < d; ++s)
                    for (const auto& w : words)
                        if (w.empty() || letter(w, w.size() - 1) != letter(m.ring, s)) {
                            index.emplace(Label{s, w}, labels.size());
                            labels.push_back(Label{s, w});
                        }
                DenseTuple<S> t{labels.size(), {}};
                for (int i = 1; i <= n; ++i) {
                    Matrix<S> mat(labels.size(), labels.size());
                    for (std::size_t c = 0; c < labels.size(); ++c) {
                        const auto x = FockVector<S>::basis(n, d, labels[c].copy, labels[c].word);
                        const auto y = apply(a, i, x);
                        for (const auto& [l, v] : y.entries()) {
                            auto it = index.find(l);
                            if (it != index.end()) mat(it->second, c) = v;
                        }
                    }
                    t.mats.push_back(std::move(mat));
                }
                return {std::move(t), 0, k};
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                const std::size_t depth = required_depth(a, k);
                check_cap(m.alpha * words_below(n, depth), opt, "dense truncation");
                check_wandering(m.generators, depth, opt.tol);
                const TruncatedBasis basis(n, depth, m.alpha);
                const bool complement = m.orientation == Orientation::complement;
                const Matrix<S> p = orbit_projection_matrix(m, basis, complement);
                const DenseTuple<S> shift = left_shift_tuple<S>(n, basis);
                DenseTuple<S> t{p.rows(), {}};
                for (const auto& l : shift.mats) t.mats.push_back(p * (l * p));
                const std::uint64_t padding = basis.size() - rank_of_projection(p, opt);
                return {std::move(t), padding, depth};
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                auto ta = dense_truncation(*m.first, k, opt);
                auto tb = dense_truncation(*m.second, k, opt);
                auto sum = direct_sum(RowContraction<S>(n, ta.tuple), RowContraction<S>(n, tb.tuple));
                return {*sum.template as<DenseTuple<S>>(), ta.padding + tb.padding, std::max(ta.depth, tb.depth)};
            } else {
                auto tb = dense_truncation(*m.base, k, opt);
                tb.tuple.mats = mix_matrices(tb.tuple.mats, m.unitary);
                return tb;
            }
        },
        a.model());
}

template <class S>
DefectSequence<S> dense_path_sequence(const RowContraction<S>& a, std::size_t k_max, const ComputeOptions& opt) {
    auto t = dense_truncation(a, k_max, opt);
    return subtract_padding(dense_defect_sequence(t.tuple, a.n(), k_max, opt), t.padding);
}

template <class S>
DefectSequence<S> defect_sequence(const RowContraction<S>& a, std::size_t k_max, const ComputeOptions& opt) {
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    const int n = a.n();
    auto seq = std::visit(
        [&](const auto& m) -> DefectSequence<S> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                return dense_defect_sequence(m, n, k_max, opt);
            } else if constexpr (std::is_same_v<T, LeftRegular>) {
                return left_regular_sequence<S>(n, m, k_max, opt);
            } else if constexpr (std::is_same_v<T, DecayingAtomic<S>>) {
                return atomic_sequence<S>(n, m, k_max, opt);
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                return compression_sequence<S>(n, m, k_max, opt);
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                return sum_sequences(defect_sequence(*m.first, k_max, opt), defect_sequence(*m.second, k_max, opt));
            } else {
                auto t = dense_truncation(*m.base, k_max, opt);
                t.tuple.mats = mix_matrices(t.tuple.mats, m.unitary);
                return subtract_padding(dense_defect_sequence(t.tuple, n, k_max, opt), t.padding);
            }
        },
        a.model());
    assert_monotone(seq);
    return seq;
}

template <class S>
RealOf<S> defect_trace(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt) {
    return defect_sequence(a, k, opt).records.back().trace;
}

template <class S>
std::uint64_t defect_rank(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt) {
    return defect_sequence(a, k, opt).records.back().rank;
}

namespace {

// sum_{|v| = k} |A_v^* x|^2 by expanding the adjoint tree.
template <class S>
RealOf<S> adjoint_tree_value(const RowContraction<S>& a, const FockVector<S>& x, std::size_t k) {
    std::vector<FockVector<S>> level{x};
    for (std::size_t step = 0; step < k && !level.empty(); ++step) {
        std::vector<FockVector<S>> next;
        for (const auto& v : level)
            for (int i = 1; i <= a.n(); ++i) {
                auto y = apply_adjoint(a, i, v);
                if (!y.empty()) next.push_back(std::move(y));
            }
        if (next.size() > kMaxAdjointLeaves) throw ResourceError("adjoint expansion exceeds its leaf limit");
        level = std::move(next);
    }
    RealOf<S> out(0);
    for (const auto& v : level) out += norm2(v);
    return out;
}

template <class S>
RealOf<S> larger(const RealOf<S>& a, const RealOf<S>& b) {
    return a < b ? b : a;
}

}  // namespace

template <class S>
RealOf<S> purity_indicator(const RowContraction<S>& a, std::size_t k, const ComputeOptions& opt) {
    const int n = a.n();
    return std::visit(
        [&](const auto& m) -> RealOf<S> {
            using T = std::decay_t<decltype(m)>;
            RealOf<S> best(0);
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                Matrix<S> x = Matrix<S>::identity(m.dim);
                for (std::size_t step = 0; step < k; ++step) x = phi_kernel(m.mats, x, opt.exec);
                for (std::size_t i = 0; i < m.dim; ++i) best = larger<S>(best, x(i, i).re);
            } else if constexpr (std::is_same_v<T, LeftRegular>) {
                for (std::uint32_t c = 0; c < m.alpha; ++c)
                    best = larger<S>(best, adjoint_tree_value(a, FockVector<S>::basis(n, m.alpha, c, Word{}), k));
            } else if constexpr (std::is_same_v<T, DecayingAtomic<S>>) {
                const std::size_t d = m.ring.size();
                for (std::size_t s = 0; s < d; ++s) {
                    RealOf<S> prod(1);
                    for (std::size_t t = 1; t <= k; ++t) prod *= m.moduli[(s + d * k - t) % d];
                    best = larger<S>(best, prod);
                }
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                if (m.orientation == Orientation::invariant) {
                    for (const auto& g : m.generators)
                        best = larger<S>(best, adjoint_tree_value(a, g.finite(), k) / g.norm2());
                } else {
                    for (std::uint32_t c = 0; c < m.alpha; ++c) {
                        // x = P_S xi_{c,e}; <Phi^k(I) x, x> = |(I - Q_k) x|^2.
                        FockVector<S> head(n, m.alpha);
                        head.add(c, Word{}, S(1));
                        RealOf<S> total(1);
                        for (const auto& g : m.generators) {
                            const S z = g.coefficient(c, Word{});
                            if (is_zero(z)) continue;
                            total -= abs2(z) / g.norm2();
                            const S f = -conj(z) / S(g.norm2());
                            if (k == 0) continue;
                            for (const auto& t : g.support_upto(k - 1)) head.add(t.label.copy, t.label.word, f * t.value);
                        }
                        if (!positive_entry<S>(total, opt.tol)) continue;
                        best = larger<S>(best, (total - norm2(head)) / total);
                    }
                }
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                best = larger<S>(purity_indicator(*m.first, k, opt), purity_indicator(*m.second, k, opt));
            } else {
                best = purity_indicator(*m.base, k, opt);
            }
            return best;
        },
        a.model());
}

#define NCURV_INSTANTIATE(S)                                                                                            \
    template Matrix<S> phi_apply(const DenseTuple<S>&, const Matrix<S>&, Exec);                                        \
    template DefectSequence<S> defect_sequence(const RowContraction<S>&, std::size_t, const ComputeOptions&);           \
    template RealOf<S> defect_trace(const RowContraction<S>&, std::size_t, const ComputeOptions&);                     \
    template std::uint64_t defect_rank(const RowContraction<S>&, std::size_t, const ComputeOptions&);                  \
    template DefectSequence<S> dense_defect_sequence(const DenseTuple<S>&, int, std::size_t, const ComputeOptions&);   \
    template std::size_t required_depth(const RowContraction<S>&, std::size_t);                                        \
    template DenseTruncation<S> dense_truncation(const RowContraction<S>&, std::size_t, const ComputeOptions&);        \
    template DefectSequence<S> dense_path_sequence(const RowContraction<S>&, std::size_t, const ComputeOptions&);      \
    template RealOf<S> purity_indicator(const RowContraction<S>&, std::size_t, const ComputeOptions&);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
