#include "ncurv/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ncurv/errors.hpp"

namespace ncurv {

namespace {

template <class S>
S ipow(const S& x, std::size_t k) {
    S out(1);
    for (std::size_t i = 0; i < k; ++i) out *= x;
    return out;
}

// k when w = stem letter^k with k >= 1, otherwise 0.
std::size_t ray_position(const Word& stem, int a, const Word& w) {
    if (w.size() <= stem.size() || !is_prefix(stem, w)) return 0;
    for (std::size_t i = stem.size(); i < w.size(); ++i)
        if (letter(w, i) != a) return 0;
    return w.size() - stem.size();
}

// <A, B> for two rays, B's stem already shifted.
template <class S>
S ray_inner(const Ray<S>& a, const Word& b_stem, const Ray<S>& b) {
    if (a.copy != b.copy || a.letter != b.letter) return S(0);
    const S denom = S(1) - a.ratio * conj(b.ratio);
    const S base = a.scale * conj(b.scale);
    if (b_stem == a.stem) return base / denom;
    if (std::size_t j = ray_position(a.stem, a.letter, b_stem); j > 0) return base * ipow(a.ratio, j) / denom;
    if (std::size_t j = ray_position(b_stem, a.letter, a.stem); j > 0) return base * ipow(conj(b.ratio), j) / denom;
    return S(0);
}

}  // namespace

template <class S>
S Ray<S>::coefficient(std::uint32_t c, const Word& w) const {
    if (c != copy) return S(0);
    std::size_t k = ray_position(stem, letter, w);
    if (k == 0) return S(0);
    return scale * ipow(ratio, k - 1);
}

template <class S>
Generator<S>::Generator(FockVector<S> finite, std::optional<Ray<S>> ray) : finite_(std::move(finite)), ray_(std::move(ray)) {
    if (ray_) {
        if (ray_->copy >= finite_.alpha()) throw ValidationError("ray copy index outside multiplicity");
        if (ray_->letter < 1 || ray_->letter > finite_.n() || !valid_word(ray_->stem, finite_.n()))
            throw ValidationError("ray letter outside [1, n]");
        if (!(abs2(ray_->ratio) < RealOf<S>(1))) throw ValidationError("geometric ratio must have modulus < 1");
        if (is_zero(ray_->scale)) ray_.reset();
    }
    norm2_ = shifted_inner(*this, Word{}, *this).re;
    if (!(norm2_ > RealOf<S>(0))) throw ValidationError("generator is the zero vector");
}

template <class S>
S Generator<S>::coefficient(std::uint32_t copy, const Word& w) const {
    S out = finite_.at(copy, w);
    if (ray_) out += ray_->coefficient(copy, w);
    return out;
}

template <class S>
std::vector<SupportTerm<S>> Generator<S>::support_upto(std::size_t max_len) const {
    FockVector<S> acc(finite_.n(), finite_.alpha());
    for (const auto& [k, v] : finite_.entries())
        if (k.word.size() <= max_len) acc.add(k.copy, k.word, v);
    if (ray_) {
        S coef = ray_->scale;
        for (std::size_t k = 1; ray_->stem.size() + k <= max_len; ++k) {
            acc.add(ray_->copy, ray_->stem + power(ray_->letter, k), coef);
            coef *= ray_->ratio;
            if (is_zero(coef)) break;
        }
    }
    std::vector<SupportTerm<S>> out;
    out.reserve(acc.size());
    for (const auto& [k, v] : acc.entries()) out.push_back({k, v});
    return out;
}

template <class S>
bool Generator<S>::homogeneous(std::size_t* degree) const {
    if (ray_ || finite_.empty()) return false;
    const std::size_t d = finite_.entries().begin()->first.word.size();
    for (const auto& [k, v] : finite_.entries())
        if (k.word.size() != d) return false;
    if (degree) *degree = d;
    return true;
}

template <class S>
std::size_t Generator<S>::min_length() const {
    std::size_t m = ray_ ? ray_->stem.size() + 1 : static_cast<std::size_t>(-1);
    for (const auto& [k, v] : finite_.entries()) m = std::min(m, k.word.size());
    return m;
}

template <class S>
S shifted_inner(const Generator<S>& g, const Word& w, const Generator<S>& h) {
    if (g.n() != h.n() || g.alpha() != h.alpha()) throw std::invalid_argument("generators live in different Fock spaces");
    S out(0);
    // finite part of g against all of L_w h
    for (const auto& [k, v] : g.finite().entries()) {
        if (!is_prefix(w, k.word)) continue;
        S other = h.coefficient(k.copy, k.word.substr(w.size()));
        if (!is_zero(other)) out += v * conj(other);
    }
    if (!g.ray()) return out;
    // ray of g against the finite part of L_w h
    for (const auto& [k, v] : h.finite().entries()) {
        S mine = g.ray()->coefficient(k.copy, w + k.word);
        if (!is_zero(mine)) out += mine * conj(v);
    }
    if (h.ray()) out += ray_inner(*g.ray(), w + h.ray()->stem, *h.ray());
    return out;
}

template <class S>
S orbit_inner(const Generator<S>& g, const Word& u, const Generator<S>& h, const Word& v) {
    if (is_prefix(u, v)) return shifted_inner(g, v.substr(u.size()), h);
    if (is_prefix(v, u)) return conj(shifted_inner(h, u.substr(v.size()), g));
    return S(0);
}

template <class S>
void check_wandering(const std::vector<Generator<S>>& gens, std::size_t depth, double tol) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
        // <zeta_i, L_w zeta_j> can be nonzero only when w prefixes a support word of zeta_i.
        std::set<Word, LengthLex> candidates;
        auto add_prefixes = [&](const Word& word) {
            for (std::size_t l = 0; l <= std::min(depth, word.size()); ++l) candidates.insert(word.substr(0, l));
        };
        candidates.insert(Word{});
        for (const auto& [k, v] : gens[i].finite().entries()) add_prefixes(k.word);
        if (const auto& r = gens[i].ray()) add_prefixes(r->stem + power(r->letter, depth + 1));

        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (gens[j].n() != gens[i].n() || gens[j].alpha() != gens[i].alpha())
                throw ValidationError("generators live in different Fock spaces");
            for (const Word& w : candidates) {
                if (w.size() > depth) continue;
                if (i == j && w.empty()) continue;
                S value = shifted_inner(gens[i], w, gens[j]);
                bool ok;
                if constexpr (backend_of<S>() == Backend::exact) {
                    ok = is_zero(value);
                } else {
                    ok = std::sqrt(abs2(value)) <= tol * std::sqrt(gens[i].norm2() * gens[j].norm2());
                }
                if (!ok)
                    throw ValidationError("generators are not wandering: <zeta_" + std::to_string(i) + ", L_" +
                                          word_to_string(w) + " zeta_" + std::to_string(j) + "> = " + to_string(value));
            }
        }
    }
}

template struct Ray<Exact>;
template struct Ray<Float>;
template class Generator<Exact>;
template class Generator<Float>;
template Exact shifted_inner(const Generator<Exact>&, const Word&, const Generator<Exact>&);
template Float shifted_inner(const Generator<Float>&, const Word&, const Generator<Float>&);
template Exact orbit_inner(const Generator<Exact>&, const Word&, const Generator<Exact>&, const Word&);
template Float orbit_inner(const Generator<Float>&, const Word&, const Generator<Float>&, const Word&);
template void check_wandering(const std::vector<Generator<Exact>>&, std::size_t, double);
template void check_wandering(const std::vector<Generator<Float>>&, std::size_t, double);

}  // namespace ncurv
