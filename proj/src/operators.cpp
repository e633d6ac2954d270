#include "ncurv/operators.hpp"

#include <cmath>
#include <set>

#include "ncurv/errors.hpp"
#include "ncurv/rank.hpp"

namespace ncurv {

namespace {

template <class S>
bool near_zero(const S& v, double scale, double tol) {
    if constexpr (backend_of<S>() == Backend::exact)
        return is_zero(v);
    else
        return std::sqrt(abs2(v)) <= tol * std::max(1.0, scale);
}

template <class S>
FockVector<S> restrict_copies(const FockVector<S>& x, std::uint32_t begin, std::uint32_t count, int n) {
    FockVector<S> out(n, count);
    for (const auto& [k, v] : x.entries())
        if (k.copy >= begin && k.copy < begin + count) out.set(k.copy - begin, k.word, v);
    return out;
}

template <class S>
void embed_copies(FockVector<S>& out, const FockVector<S>& part, std::uint32_t offset) {
    for (const auto& [k, v] : part.entries()) out.add(k.copy + offset, k.word, v);
}

void check_letter(int i, int n) {
    if (i < 1 || i > n) throw std::out_of_range("operator index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
}

}  // namespace

template <class S>
bool Compression<S>::graded() const {
    for (const auto& g : generators)
        if (!g.homogeneous()) return false;
    return true;
}

template <class S>
std::size_t Compression<S>::max_degree() const {
    std::size_t m = 0;
    for (const auto& g : generators) {
        std::size_t d = 0;
        if (!g.homogeneous(&d)) throw std::logic_error("max_degree of a non-graded compression");
        m = std::max(m, d);
    }
    return m;
}

template <class S>
RowContraction<S>::RowContraction(int n, Model model) : n_(n), model_(std::move(model)) {
    if (n < 2) throw ValidationError("row contractions need n >= 2");
}

template <class S>
std::uint32_t RowContraction<S>::copies() const {
    return std::visit(
        [](const auto& m) -> std::uint32_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>)
                return static_cast<std::uint32_t>(m.dim);
            else if constexpr (std::is_same_v<T, LeftRegular>)
                return m.alpha;
            else if constexpr (std::is_same_v<T, DecayingAtomic<S>>)
                return static_cast<std::uint32_t>(m.ring.size());
            else if constexpr (std::is_same_v<T, Compression<S>>)
                return m.alpha;
            else if constexpr (std::is_same_v<T, DirectSum<S>>)
                return m.first->copies() + m.second->copies();
            else
                return m.base->copies();
        },
        model_);
}

template <class S>
std::string RowContraction<S>::kind() const {
    static const char* names[] = {"dense", "left_regular", "decaying_atomic", "compression", "direct_sum", "unitary_mix"};
    return names[model_.index()];
}

template <class S>
ContractionReport validate_row_contraction(const std::vector<Matrix<S>>& mats, double tol) {
    if (mats.empty()) throw ValidationError("empty tuple");
    const std::size_t d = mats.front().rows();
    Matrix<S> sum(d, d);
    for (const auto& m : mats) {
        if (m.rows() != d || m.cols() != d) throw ValidationError("tuple matrices must be square of equal shape");
        sum += m * m.adjoint();
    }
    ContractionReport rep;
    rep.max_eigenvalue = max_eigenvalue(to_float(sum));
    if constexpr (backend_of<S>() == Backend::exact)
        rep.ok = is_psd_exact(Matrix<S>::identity(d) - sum);
    else
        rep.ok = rep.max_eigenvalue <= 1.0 + tol;
    return rep;
}

template <class S>
RowContraction<S> make_dense(std::vector<Matrix<S>> mats, double tol) {
    const int n = static_cast<int>(mats.size());
    if (n < 2) throw ValidationError("dense tuples need n >= 2 matrices");
    auto rep = validate_row_contraction(mats, tol);
    if (!rep.ok)
        throw ValidationError("not a row contraction: lambda_max(sum A_i A_i^*) = " + to_string(rep.max_eigenvalue) + " > 1");
    const std::size_t d = mats.front().rows();
    return RowContraction<S>(n, DenseTuple<S>{d, std::move(mats)});
}

template <class S>
RowContraction<S> make_left_regular(int n, std::uint32_t alpha) {
    return RowContraction<S>(n, LeftRegular{alpha});
}

template <class S>
RowContraction<S> make_decaying_atomic_moduli(int n, const Word& ring, std::vector<RealOf<S>> moduli) {
    if (ring.empty()) throw ValidationError("ring word must be nonempty");
    if (!valid_word(ring, n)) throw ValidationError("ring letter outside [1, n]");
    if (moduli.size() != ring.size()) throw ValidationError("ring word and decay vector differ in length");
    for (std::size_t s = 0; s < moduli.size(); ++s)
        if (moduli[s] < RealOf<S>(0) || moduli[s] > RealOf<S>(1))
            throw ValidationError("|lambda_" + std::to_string(s + 1) + "|^2 = " + to_string(moduli[s]) + " outside [0, 1]");
    std::optional<std::vector<S>> lambda;
    if constexpr (backend_of<S>() == Backend::floating) {
        std::vector<S> l;
        for (double r : moduli) l.emplace_back(std::sqrt(r));
        lambda = std::move(l);
    } else {
        std::vector<S> l;
        bool all = true;
        for (const auto& r : moduli) {
            Rational root;
            all = all && exact_sqrt(r, root);
            l.emplace_back(root);
        }
        if (all) lambda = std::move(l);
    }
    return RowContraction<S>(n, DecayingAtomic<S>{ring, std::move(moduli), std::move(lambda)});
}

template <class S>
RowContraction<S> make_decaying_atomic(int n, const Word& ring, std::vector<S> lambda) {
    std::vector<RealOf<S>> moduli;
    for (const auto& l : lambda) moduli.push_back(abs2(l));
    auto a = make_decaying_atomic_moduli<S>(n, ring, std::move(moduli));
    auto model = *a.template as<DecayingAtomic<S>>();
    model.lambda = std::move(lambda);
    return RowContraction<S>(n, std::move(model));
}

template <class S>
RowContraction<S> make_compression(int n, std::uint32_t alpha, std::vector<Generator<S>> generators, Orientation orientation,
                                   std::size_t depth, double tol) {
    for (const auto& g : generators)
        if (g.n() != n || g.alpha() != alpha) throw ValidationError("generator does not live in the multiplicity-alpha Fock space");
    if (orientation == Orientation::invariant) {
        for (const auto& g : generators)
            if (g.ray()) throw ValidationError("restriction to an orbit span needs finitely supported generators");
    }
    check_wandering(generators, depth, tol);
    return RowContraction<S>(n, Compression<S>{alpha, std::move(generators), orientation});
}

template <class S>
RowContraction<S> direct_sum(const RowContraction<S>& a, const RowContraction<S>& b) {
    if (a.n() != b.n()) throw ValidationError("direct sum of tuples with different n");
    const auto* da = a.template as<DenseTuple<S>>();
    const auto* db = b.template as<DenseTuple<S>>();
    if (da && db) {
        const std::size_t d = da->dim + db->dim;
        std::vector<Matrix<S>> mats;
        for (int i = 0; i < a.n(); ++i) {
            Matrix<S> m(d, d);
            for (std::size_t r = 0; r < da->dim; ++r)
                for (std::size_t c = 0; c < da->dim; ++c) m(r, c) = da->mats[i](r, c);
            for (std::size_t r = 0; r < db->dim; ++r)
                for (std::size_t c = 0; c < db->dim; ++c) m(da->dim + r, da->dim + c) = db->mats[i](r, c);
            mats.push_back(std::move(m));
        }
        return RowContraction<S>(a.n(), DenseTuple<S>{d, std::move(mats)});
    }
    return RowContraction<S>(a.n(), DirectSum<S>{std::make_shared<const RowContraction<S>>(a), std::make_shared<const RowContraction<S>>(b)});
}

template <class S>
bool is_unitary(const Matrix<S>& u, double tol) {
    if (!u.square()) return false;
    Matrix<S> g = u.adjoint() * u - Matrix<S>::identity(u.rows());
    for (const auto& v : g.data())
        if (!near_zero(v, 1.0, tol)) return false;
    return true;
}

template <class S>
RowContraction<S> unitary_mix(const RowContraction<S>& a, const Matrix<S>& u, double tol) {
    const auto n = static_cast<std::size_t>(a.n());
    if (u.rows() != n || u.cols() != n) throw ValidationError("mixing matrix must be n x n");
    if (!is_unitary(u, tol)) throw ValidationError("mixing matrix is not unitary");
    if (const auto* d = a.template as<DenseTuple<S>>()) {
        std::vector<Matrix<S>> mats;
        for (std::size_t j = 0; j < n; ++j) {
            Matrix<S> m(d->dim, d->dim);
            for (std::size_t i = 0; i < n; ++i)
                if (!is_zero(u(i, j))) m += u(i, j) * d->mats[i];
            mats.push_back(std::move(m));
        }
        return RowContraction<S>(a.n(), DenseTuple<S>{d->dim, std::move(mats)});
    }
    return RowContraction<S>(a.n(), UnitaryMix<S>{std::make_shared<const RowContraction<S>>(a), u});
}

template <class S>
FockVector<S> project_onto_orbits(const std::vector<Generator<S>>& gens, const FockVector<S>& x, std::size_t max_len) {
    FockVector<S> out(x.n(), x.alpha());
    std::set<Word, LengthLex> prefixes;
    for (const auto& [k, v] : x.entries())
        for (std::size_t l = 0; l <= k.word.size(); ++l) prefixes.insert(k.word.substr(0, l));
    for (const auto& g : gens) {
        for (const Word& v : prefixes) {
            S c(0);
            for (const auto& [k, val] : x.entries()) {
                if (!is_prefix(v, k.word)) continue;
                S z = g.coefficient(k.copy, k.word.substr(v.size()));
                if (!is_zero(z)) c += val * conj(z);
            }
            if (is_zero(c)) continue;
            c /= S(g.norm2());
            if (v.size() > max_len) continue;
            for (const auto& t : g.support_upto(max_len - v.size())) out.add(t.label.copy, v + t.label.word, c * t.value);
        }
    }
    return out;
}

template <class S>
S orbit_projection_entry(const std::vector<Generator<S>>& gens, const Label& row, const Label& col) {
    S out(0);
    const std::size_t common = std::min(row.word.size(), col.word.size());
    std::size_t lcp = 0;
    while (lcp < common && row.word[lcp] == col.word[lcp]) ++lcp;
    for (const auto& g : gens) {
        S acc(0);
        for (std::size_t l = 0; l <= lcp; ++l) {
            S a = g.coefficient(row.copy, row.word.substr(l));
            if (is_zero(a)) continue;
            S b = g.coefficient(col.copy, col.word.substr(l));
            if (is_zero(b)) continue;
            acc += a * conj(b);
        }
        if (!is_zero(acc)) out += acc / S(g.norm2());
    }
    return out;
}

template <class S>
RealOf<S> orbit_projection_norm2(const std::vector<Generator<S>>& gens, const Label& w) {
    RealOf<S> out(0);
    for (const auto& g : gens) {
        RealOf<S> acc(0);
        for (std::size_t l = 0; l <= w.word.size(); ++l) {
            S a = g.coefficient(w.copy, w.word.substr(l));
            if (!is_zero(a)) acc += abs2(a);
        }
        if (!ScalarTraits<S>::is_zero_real(acc)) out += acc / g.norm2();
    }
    return out;
}

template <class S>
void check_in_model(const RowContraction<S>& a, const FockVector<S>& x, const ApplyOptions& opt) {
    if (x.n() != a.n() || x.alpha() != a.copies())
        throw ModelMismatch("vector does not belong to the " + a.kind() + " model (n or copy count differs)");
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                for (const auto& [k, v] : x.entries())
                    if (!k.word.empty()) throw ModelMismatch("dense model vectors carry only the empty word");
            } else if constexpr (std::is_same_v<T, DecayingAtomic<S>>) {
                for (const auto& [k, v] : x.entries())
                    if (!k.word.empty() && letter(k.word, k.word.size() - 1) == letter(m.ring, k.copy))
                        throw ModelMismatch("atomic label (" + std::to_string(k.copy) + ", " + word_to_string(k.word) +
                                            ") ends in the ring letter");
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                const double scale = to_double(norm2(x));
                FockVector<S> p = project_onto_orbits(m.generators, x, std::max(opt.ray_depth, x.max_length()));
                if (m.orientation == Orientation::complement) {
                    for (const auto& [k, v] : p.entries())
                        if (!near_zero(v, std::sqrt(scale), opt.tol)) throw ModelMismatch("vector is not orthogonal to the generator orbits");
                } else {
                    FockVector<S> diff = x - p;
                    for (const auto& [k, v] : diff.entries())
                        if (!near_zero(v, std::sqrt(scale), opt.tol)) throw ModelMismatch("vector is not in the generator orbit span");
                }
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                const std::uint32_t first = m.first->copies();
                check_in_model(*m.first, restrict_copies(x, 0, first, a.n()), opt);
                check_in_model(*m.second, restrict_copies(x, first, m.second->copies(), a.n()), opt);
            } else if constexpr (std::is_same_v<T, UnitaryMix<S>>) {
                check_in_model(*m.base, x, opt);
            }
        },
        a.model());
}

template <class S>
FockVector<S> apply(const RowContraction<S>& a, int i, const FockVector<S>& x, const ApplyOptions& opt) {
    check_letter(i, a.n());
    check_in_model(a, x, opt);
    FockVector<S> out(x.n(), x.alpha());
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                const auto& mat = m.mats[static_cast<std::size_t>(i - 1)];
                for (const auto& [k, v] : x.entries())
                    for (std::size_t r = 0; r < m.dim; ++r)
                        if (!is_zero(mat(r, k.copy))) out.add(static_cast<std::uint32_t>(r), Word{}, mat(r, k.copy) * v);
            } else if constexpr (std::is_same_v<T, LeftRegular>) {
                for (const auto& [k, v] : x.entries()) out.add(k.copy, single(i) + k.word, v);
            } else if constexpr (std::is_same_v<T, DecayingAtomic<S>>) {
                const auto d = static_cast<std::uint32_t>(m.ring.size());
                for (const auto& [k, v] : x.entries()) {
                    if (!k.word.empty()) {
                        out.add(k.copy, single(i) + k.word, v);
                    } else if (i != letter(m.ring, k.copy)) {
                        out.add(k.copy, single(i), v);
                    } else {
                        if (!m.lambda) throw std::domain_error("decay factor is irrational; use the float backend for operator action");
                        out.add((k.copy + 1) % d, Word{}, (*m.lambda)[k.copy] * v);
                    }
                }
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                FockVector<S> shifted(x.n(), x.alpha());
                for (const auto& [k, v] : x.entries()) shifted.add(k.copy, single(i) + k.word, v);
                if (m.orientation == Orientation::invariant) {
                    out = std::move(shifted);
                } else {
                    out = shifted - project_onto_orbits(m.generators, shifted, std::max(opt.ray_depth, shifted.max_length()));
                }
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                const std::uint32_t first = m.first->copies();
                embed_copies(out, apply(*m.first, i, restrict_copies(x, 0, first, a.n()), opt), 0);
                embed_copies(out, apply(*m.second, i, restrict_copies(x, first, m.second->copies(), a.n()), opt), first);
            } else if constexpr (std::is_same_v<T, UnitaryMix<S>>) {
                for (int l = 1; l <= a.n(); ++l) {
                    const S& c = m.unitary(static_cast<std::size_t>(l - 1), static_cast<std::size_t>(i - 1));
                    if (!is_zero(c)) out += c * apply(*m.base, l, x, opt);
                }
            }
        },
        a.model());
    return out;
}

template <class S>
FockVector<S> apply_adjoint(const RowContraction<S>& a, int i, const FockVector<S>& x, const ApplyOptions& opt) {
    check_letter(i, a.n());
    check_in_model(a, x, opt);
    FockVector<S> out(x.n(), x.alpha());
    auto strip = [&](FockVector<S>& dst, const FockVector<S>& src) {
        for (const auto& [k, v] : src.entries())
            if (!k.word.empty() && letter(k.word, 0) == i) dst.add(k.copy, k.word.substr(1), v);
    };
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DenseTuple<S>>) {
                const auto& mat = m.mats[static_cast<std::size_t>(i - 1)];
                for (const auto& [k, v] : x.entries())
                    for (std::size_t r = 0; r < m.dim; ++r)
                        if (!is_zero(mat(k.copy, r))) out.add(static_cast<std::uint32_t>(r), Word{}, conj(mat(k.copy, r)) * v);
            } else if constexpr (std::is_same_v<T, LeftRegular>) {
                strip(out, x);
            } else if constexpr (std::is_same_v<T, DecayingAtomic<S>>) {
                const auto d = static_cast<std::uint32_t>(m.ring.size());
                for (const auto& [k, v] : x.entries()) {
                    if (!k.word.empty()) {
                        if (letter(k.word, 0) == i) out.add(k.copy, k.word.substr(1), v);
                        continue;
                    }
                    const std::uint32_t prev = (k.copy + d - 1) % d;
                    if (letter(m.ring, prev) != i) continue;
                    if (!m.lambda) throw std::domain_error("decay factor is irrational; use the float backend for operator action");
                    out.add(prev, Word{}, conj((*m.lambda)[prev]) * v);
                }
            } else if constexpr (std::is_same_v<T, Compression<S>>) {
                strip(out, x);
                if (m.orientation == Orientation::invariant)
                    out = project_onto_orbits(m.generators, out, std::max(opt.ray_depth, out.max_length()));
                else
                    check_in_model(a, out, opt);
            } else if constexpr (std::is_same_v<T, DirectSum<S>>) {
                const std::uint32_t first = m.first->copies();
                embed_copies(out, apply_adjoint(*m.first, i, restrict_copies(x, 0, first, a.n()), opt), 0);
                embed_copies(out, apply_adjoint(*m.second, i, restrict_copies(x, first, m.second->copies(), a.n()), opt), first);
            } else if constexpr (std::is_same_v<T, UnitaryMix<S>>) {
                for (int l = 1; l <= a.n(); ++l) {
                    const S& c = m.unitary(static_cast<std::size_t>(l - 1), static_cast<std::size_t>(i - 1));
                    if (!is_zero(c)) out += conj(c) * apply_adjoint(*m.base, l, x, opt);
                }
            }
        },
        a.model());
    return out;
}

#define NCURV_INSTANTIATE(S)                                                                                              \
    template struct Compression<S>;                                                                                       \
    template class RowContraction<S>;                                                                                     \
    template ContractionReport validate_row_contraction(const std::vector<Matrix<S>>&, double);                          \
    template RowContraction<S> make_dense(std::vector<Matrix<S>>, double);                                               \
    template RowContraction<S> make_left_regular<S>(int, std::uint32_t);                                                 \
    template RowContraction<S> make_decaying_atomic(int, const Word&, std::vector<S>);                                   \
    template RowContraction<S> make_decaying_atomic_moduli<S>(int, const Word&, std::vector<RealOf<S>>);                 \
    template RowContraction<S> make_compression(int, std::uint32_t, std::vector<Generator<S>>, Orientation, std::size_t, \
                                                double);                                                                  \
    template RowContraction<S> direct_sum(const RowContraction<S>&, const RowContraction<S>&);                           \
    template RowContraction<S> unitary_mix(const RowContraction<S>&, const Matrix<S>&, double);                          \
    template bool is_unitary(const Matrix<S>&, double);                                                                   \
    template FockVector<S> apply(const RowContraction<S>&, int, const FockVector<S>&, const ApplyOptions&);              \
    template FockVector<S> apply_adjoint(const RowContraction<S>&, int, const FockVector<S>&, const ApplyOptions&);      \
    template void check_in_model(const RowContraction<S>&, const FockVector<S>&, const ApplyOptions&);                   \
    template FockVector<S> project_onto_orbits(const std::vector<Generator<S>>&, const FockVector<S>&, std::size_t);     \
    template S orbit_projection_entry(const std::vector<Generator<S>>&, const Label&, const Label&);                     \
    template RealOf<S> orbit_projection_norm2(const std::vector<Generator<S>>&, const Label&);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
