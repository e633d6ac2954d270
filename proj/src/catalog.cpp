#include "ncurv/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncurv/basis.hpp"
#include "ncurv/errors.hpp"

namespace ncurv {

namespace {

Rational rpow(const Rational& x, std::size_t k) {
    Rational out(1);
    for (std::size_t i = 0; i < k; ++i) out *= x;
    return out;
}

Rational npow(int n, std::size_t k) { return rpow(Rational(n), k); }

// (n^k - 1)/(n - 1): words of length < k.
std::uint64_t count_below(int n, std::size_t k) { return basis_dimension(n, k); }

Rational q_count(std::uint64_t c) { return Rational(static_cast<unsigned long>(c)); }

template <class S>
Rational to_rational(const RealOf<S>& x) {
    if constexpr (backend_of<S>() == Backend::exact)
        return x;
    else
        return Rational(x);
}

template <class S>
std::string str_real(const RealOf<S>& r) {
    return to_string(r);
}

template <class S>
FockVector<S> monomial(int n, const Word& w, S value = S(1)) {
    return FockVector<S>::basis(n, 1, 0, w, std::move(value));
}

template <class S>
Generator<S> monomial_generator(int n, const Word& w) {
    return Generator<S>(monomial<S>(n, w));
}

Word ones(std::size_t k) { return power(1, k); }

// Correct trace of the defect at level k for a one-dimensional ring: the
// diagonal entries 1 - r^{k-l} on xi_e (l = 0) and on the (n-1) n^{l-1} words
// of length l not ending in the ring letter.
Rational decaying_trace(int n, const Rational& r, std::size_t k) {
    return npow(n, k - 1) - rpow(r, k) - Rational(n - 1) * r * (npow(n, k - 1) - rpow(r, k - 1)) / (Rational(n) - r);
}

// The same trace in the closed form as it is displayed in the source.
Rational decaying_trace_displayed(int n, const Rational& r, std::size_t k) {
    return npow(n, k - 1) - rpow(r, k) - Rational(n - 1) * r / (Rational(n) * (Rational(n) - r)) * (npow(n, k) - rpow(r, k));
}

Rational decaying_curvature(int n, const Rational& r) { return Rational(n - 1) * (Rational(1) - r) / (Rational(n) - r); }

// Binomial coefficient for small arguments.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= b; ++i) out = out * (a - b + i) / i;
    return out;
}

[[noreturn]] void no_exact(const std::string& what) {
    throw ValidationError(what + " has no exact rational representation; use the float backend");
}

template <class S>
RealOf<S> parse_param_real(const std::string& name, const std::string& text) {
    try {
        if constexpr (backend_of<S>() == Backend::exact)
            return parse_rational(text);
        else
            return parse_real(text);
    } catch (const std::domain_error&) {
        no_exact("parameter " + name + " = " + text);
    } catch (const std::invalid_argument& e) {
        throw ParseError("parameter " + name + ": " + e.what());
    }
}

Rational parse_param_rational(const std::string& name, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::domain_error&) {
        no_exact("parameter " + name + " = " + text);
    } catch (const std::invalid_argument& e) {
        throw ParseError("parameter " + name + ": " + e.what());
    }
}

long parse_param_int(const std::string& name, const std::string& text, long lo, long hi) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("parameter " + name + ": expected an integer, got '" + text + "'");
    }
    if (pos != text.size()) throw ParseError("parameter " + name + ": expected an integer, got '" + text + "'");
    if (v < lo || v > hi)
        throw ValidationError("parameter " + name + " = " + text + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

// A decay factor given as text. In the exact backend "sqrt(x)" keeps only the modulus x.
template <class S>
struct DecayFactor {
    std::optional<S> value;
    RealOf<S> modulus{};
};

template <class S>
DecayFactor<S> parse_decay(const std::string& text) {
    DecayFactor<S> out;
    if constexpr (backend_of<S>() == Backend::exact) {
        try {
            const Rational v = parse_rational(text);
            out.value = S(v);
            out.modulus = v * v;
        } catch (const std::domain_error&) {
            std::string t = text;
            if (!t.empty() && t.front() == '-') t.erase(0, 1);
            if (t.size() < 7 || t.rfind("sqrt(", 0) != 0 || t.back() != ')') throw ParseError("malformed decay factor '" + text + "'");
            out.modulus = parse_param_rational("lambda", t.substr(5, t.size() - 6));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("decay factor: ") + e.what());
        }
    } else {
        try {
            const double v = parse_real(text);
            out.value = S(v);
            out.modulus = v * v;
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("decay factor: ") + e.what());
        }
    }
    return out;
}

Word parse_param_word(const std::string& name, const std::string& text, int n) {
    try {
        return parse_word(text, n);
    } catch (const ParseError& e) {
        throw ParseError("parameter " + name + ": " + e.what());
    }
}

std::vector<int> bits_from_dyadic(const Rational& r) {
    if (r < 0 || r > 1) throw ValidationError("binary expansion needs r in [0, 1]");
    if (r == 1) throw ValidationError("r = 1 has no finite expansion with a terminating digit; use bits");
    std::vector<int> bits;
    Rational x = r;
    while (x != 0) {
        if (bits.size() > 62) throw ValidationError("r = " + to_string(r) + " is not a dyadic rational");
        x *= 2;
        if (x >= 1) {
            bits.push_back(1);
            x -= 1;
        } else {
            bits.push_back(0);
        }
    }
    return bits;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        cur.erase(0, cur.find_first_not_of(" \t"));
        cur.erase(cur.find_last_not_of(" \t") + 1);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

Word cycling_ring(int n, std::size_t d) {
    Word w;
    for (std::size_t s = 0; s < d; ++s) w += single(static_cast<int>(s % static_cast<std::size_t>(n)) + 1);
    return w;
}

template <class S>
CatalogEntry<S> entry_left_regular(int n, std::uint32_t alpha) {
    if (n < 2) throw ValidationError("n must be at least 2");
    CatalogEntry<S> e;
    e.name = "left_regular";
    e.params = {{"n", std::to_string(n)}, {"alpha", std::to_string(alpha)}};
    e.source = "isometric tuples: tr Q_k = rk Q_k";
    if (alpha == 0)
        e.contraction = RowContraction<S>(n, DenseTuple<S>{0, std::vector<Matrix<S>>(n, Matrix<S>(0, 0))});
    else
        e.contraction = make_left_regular<S>(n, alpha);
    e.expected.curvature = Rational(alpha);
    e.expected.euler = Rational(alpha);
    e.expected.pure_rank = alpha;
    e.expected.trace_at = [n, alpha](std::size_t k) -> std::optional<Rational> { return q_count(alpha * count_below(n, k)); };
    e.expected.rank_at = [n, alpha](std::size_t k) -> std::optional<std::uint64_t> { return alpha * count_below(n, k); };
    e.expected.formulas = {"K = chi = pure rank = alpha", "tr = rk = alpha (n^k - 1)/(n - 1)"};
    return e;
}

template <class S>
CatalogEntry<S> entry_decaying(int n, const Word& ring, std::vector<RealOf<S>> moduli, std::optional<std::vector<S>> lambda) {
    if (ring.empty() || ring.size() != moduli.size()) throw ValidationError("ring and decay factors must have equal positive length");
    CatalogEntry<S> e;
    e.name = "decaying";
    std::string mods;
    for (std::size_t s = 0; s < moduli.size(); ++s) mods += (s ? "," : "") + str_real<S>(moduli[s]);
    e.params = {{"n", std::to_string(n)}, {"ring", word_to_string(ring)}, {"r", mods}};
    e.source = "decaying atomic representations: pure rank, Euler characteristic 1 - 1/n^d, one-dimensional curvature";
    e.contraction = lambda ? make_decaying_atomic<S>(n, ring, *lambda) : make_decaying_atomic_moduli<S>(n, ring, moduli);
    const std::size_t d = ring.size();
    std::uint64_t pr = 0;
    for (const auto& r : moduli)
        if (r < RealOf<S>(1)) ++pr;
    e.expected.pure_rank = pr;
    e.expected.formulas.push_back("pure rank = #{s : |lambda_s| < 1}");
    if (pr == 0) {
        e.expected.curvature = Rational(0);
        e.expected.euler = Rational(0);
        e.expected.trace_at = [](std::size_t) -> std::optional<Rational> { return Rational(0); };
        e.expected.rank_at = [](std::size_t) -> std::optional<std::uint64_t> { return 0; };
        e.expected.formulas.push_back("Cuntz ring: I - Phi(I) = 0");
        return e;
    }
    if (pr == 1) {
        e.expected.euler = Rational(1) - Rational(1) / npow(n, d);
        e.expected.rank_at = [n, d](std::size_t k) -> std::optional<std::uint64_t> {
            if (k < d) return std::nullopt;
            std::uint64_t out = 0;
            for (std::size_t j = 1; j <= d; ++j) out += checked_pow(n, k - j);
            return out;
        };
        e.expected.formulas.push_back("chi = 1 - 1/n^d; rk = n^{k-1} + ... + n^{k-d} for k >= d");
    }
    if (d == 1) {
        const Rational r = to_rational<S>(moduli[0]);
        e.expected.curvature = decaying_curvature(n, r);
        e.expected.trace_at = [n, r](std::size_t k) -> std::optional<Rational> { return decaying_trace(n, r, k); };
        e.expected.displayed_trace_at = [n, r](std::size_t k) -> std::optional<Rational> {
            return decaying_trace_displayed(n, r, k);
        };
        e.expected.formulas.push_back("K = (n-1)(1-r)/(n-r)");
        e.expected.formulas.push_back("tr = n^{k-1} - r^k - (n-1) r (n^{k-1} - r^{k-1})/(n-r)");
        e.expected.formulas.push_back("displayed: tr = n^{k-1} - r^k - ((n-1) r/(n(n-r)))(n^k - r^k)");
        if (r != 0)
            e.notes.push_back("the displayed finite-level trace formula differs from the computed trace; the limit K agrees");
    }
    return e;
}

template <class S>
CatalogEntry<S> entry_curvature_range(const RealOf<S>& r) {
    if (r < RealOf<S>(0) || r > RealOf<S>(1) / RealOf<S>(2)) throw ValidationError("curvature range needs r in [0, 1/2]");
    const RealOf<S> s = (RealOf<S>(1) - RealOf<S>(2) * r) / (RealOf<S>(1) - r);
    auto e = entry_decaying<S>(2, single(1), {s});
    e.name = "curvature_range";
    e.params = {{"r", str_real<S>(r)}};
    e.source = "range of the curvature invariant: s = (1-2r)/(1-r)";
    e.expected.curvature = to_rational<S>(r);
    e.expected.formulas.push_back("|lambda|^2 = s = (1-2r)/(1-r) gives K = r");
    e.notes.clear();
    return e;
}

template <class S>
CatalogEntry<S> entry_binary_expansion(const std::vector<int>& bits) {
    for (int b : bits)
        if (b != 0 && b != 1) throw ValidationError("bits must be 0 or 1");
    CatalogEntry<S> e;
    e.name = "binary_expansion";
    std::string text;
    for (std::size_t i = 0; i < bits.size(); ++i) text += (i ? "," : "") + std::to_string(bits[i]);
    e.params = {{"bits", text}};
    e.source = "binary expansion subspaces M_r realizing K = chi = r";
    Rational r(0);
    std::optional<std::size_t> last;
    for (std::size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) {
            r += Rational(1) / npow(2, t + 1);
            last = t;
        }
    // The domain M_r is spanned by xi_{1^j}, j <= last, and the orbits of xi_{2 1^t}
    // with bit t set; its orthocomplement is generated by the remaining xi_{2 1^t}
    // (t < last) and xi_{1^{last+1}}.
    std::vector<Generator<S>> gens;
    if (!last) {
        gens.push_back(monomial_generator<S>(2, Word{}));
    } else {
        for (std::size_t t = 0; t < *last; ++t)
            if (!bits[t]) gens.push_back(monomial_generator<S>(2, single(2) + ones(t)));
        gens.push_back(monomial_generator<S>(2, ones(*last + 1)));
    }
    e.contraction = make_compression<S>(2, 1, gens, Orientation::complement);
    e.subspace = SubspaceSpec<S>{2, 1, gens};
    e.expected.curvature = r;
    e.expected.euler = r;
    e.expected.tilde = 1 - r;
    e.expected.pure_rank = last ? 1 : 0;
    // Basis count of M_r within words of length < k.
    auto count = [bits, last](std::size_t k) -> std::uint64_t {
        if (!last) return 0;
        std::uint64_t c = std::min<std::uint64_t>(k, *last + 1);
        for (std::size_t t = 0; t < bits.size(); ++t)
            if (bits[t] && k >= t + 2) c += count_below(2, k - 1 - t);
        return c;
    };
    e.expected.trace_at = [count](std::size_t k) -> std::optional<Rational> { return q_count(count(k)); };
    e.expected.rank_at = [count](std::size_t k) -> std::optional<std::uint64_t> { return count(k); };
    e.expected.formulas = {"K = chi = r = sum eps_k 2^{-k-1}", "tr = rk = #{basis words of M_r of length < k}"};
    return e;
}

template <class S>
CatalogEntry<S> entry_polynomial_isometry(int n, const std::map<Word, S>& coefficients) {
    if (coefficients.empty()) throw ValidationError("polynomial isometry needs at least one coefficient");
    const std::size_t k0 = coefficients.begin()->first.size();
    FockVector<S> z(n, 1);
    RealOf<S> norm(0);
    std::string text;
    for (const auto& [w, a] : coefficients) {
        if (w.size() != k0 || k0 == 0) throw ValidationError("polynomial isometry needs a homogeneous polynomial of degree >= 1");
        if (!valid_word(w, n)) throw ValidationError("coefficient word outside the alphabet");
        z.set(0, w, a);
        norm += abs2(a);
        text += (text.empty() ? "" : ";") + word_to_string(w) + ":" + to_string(a);
    }
    const bool unit = backend_of<S>() == Backend::exact ? norm == RealOf<S>(1) : std::abs(to_double(norm) - 1.0) <= 1e-9;
    if (!unit) throw ValidationError("polynomial isometry coefficients must have unit norm, got " + to_string(norm));
    CatalogEntry<S> e;
    e.name = "polynomial_isometry";
    e.params = {{"n", std::to_string(n)}, {"coefficients", text}};
    e.source = "polynomial isometries R = sum a_w R_w: chi = 1 - 1/n^k";
    std::vector<Generator<S>> gens{Generator<S>(z)};
    e.contraction = make_compression<S>(n, 1, gens, Orientation::complement);
    e.subspace = SubspaceSpec<S>{n, 1, gens};
    const Rational value = Rational(1) - Rational(1) / npow(n, k0);
    e.expected.curvature = value;
    e.expected.euler = value;
    e.expected.pure_rank = 1;
    e.expected.tilde = Rational(1) / npow(n, k0);
    auto count = [n, k0](std::size_t l) -> std::uint64_t { return count_below(n, l) - (l >= k0 ? count_below(n, l - k0) : 0); };
    e.expected.trace_at = [count](std::size_t l) -> std::optional<Rational> { return q_count(count(l)); };
    e.expected.rank_at = [count](std::size_t l) -> std::optional<std::uint64_t> { return count(l); };
    e.expected.formulas = {"K = chi = 1 - 1/n^k0", "K~(RH_n) = 1/n^k0 (displayed as (n-1)/n^k0)",
                           "tr = rk = (n^l - 1)/(n-1) - (n^{l-k0} - 1)/(n-1)"};
    if (n != 2) e.notes.push_back("the displayed K~(RH_n) = (n-1)/n^k0 disagrees with K + K~ = 1; 1/n^k0 is expected");
    return e;
}

template <class S>
CatalogEntry<S> entry_cyclic_range(int n, const Rational& r) {
    if (n < 2) throw ValidationError("n must be at least 2");
    const Rational lo = Rational(1) / npow(n, 2), hi = Rational(1) / npow(n - 1, 2);
    if (!(r > lo && r <= hi))
        throw ValidationError("cyclic range needs 1/n^2 < r <= 1/(n-1)^2, got r = " + to_string(r));
    const Rational a2sq = Rational(n) / Rational(n - 1) * (Rational(1) - Rational(n) * r);
    const Rational a1sq = Rational(1) - a2sq;
    if (a1sq < 0 || a2sq < 0) throw ValidationError("cyclic range coefficients are not real for r = " + to_string(r));
    FockVector<S> z(n, 1);
    if constexpr (backend_of<S>() == Backend::exact) {
        // Unnormalized a1/a2 xi_1 + xi_22 spans the same orbit when the ratio is rational.
        if (a2sq == 0) {
            z.set(0, single(1), S(1));
        } else {
            Rational q;
            if (!exact_sqrt(a1sq / a2sq, q)) no_exact("r = " + to_string(r) + " (a1/a2 = sqrt(" + to_string(a1sq / a2sq) + "))");
            z.set(0, single(1), S(q));
            z.set(0, power(2, 2), S(1));
        }
    } else {
        z.set(0, single(1), S(std::sqrt(nearest_double(a1sq))));
        z.set(0, power(2, 2), S(std::sqrt(nearest_double(a2sq))));
    }
    CatalogEntry<S> e;
    e.name = "cyclic_range";
    e.params = {{"n", std::to_string(n)}, {"r", to_string(r)}};
    e.source = "range of K~ on cyclic subspaces: R = a1 R_1 + a2 R_2^2";
    std::vector<Generator<S>> gens{Generator<S>(z)};
    e.subspace = SubspaceSpec<S>{n, 1, gens};
    e.contraction = make_compression<S>(n, 1, gens, Orientation::complement);
    e.expected.tilde = r;
    e.expected.curvature = Rational(1) - r;
    e.expected.pure_rank = 1;
    e.expected.formulas = {"a2^2 = (n/(n-1))(1 - n r), a1^2 = 1 - a2^2", "K~ = (n-1) a1^2/n^2 + 1/n^2 = r", "K = 1 - K~"};
    return e;
}

template <class S>
CatalogEntry<S> entry_xi_e_perp(int n) {
    if (n < 2) throw ValidationError("n must be at least 2");
    CatalogEntry<S> e;
    e.name = "xi_e_perp";
    e.params = {{"n", std::to_string(n)}};
    e.source = "restriction of L to the invariant subspace xi_e^perp";
    std::vector<Generator<S>> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(monomial_generator<S>(n, single(i)));
    e.contraction = make_compression<S>(n, 1, gens, Orientation::invariant);
    e.expected.curvature = Rational(n);
    e.expected.euler = Rational(n);
    e.expected.pure_rank = static_cast<std::uint64_t>(n);
    e.expected.trace_at = [n](std::size_t k) -> std::optional<Rational> { return q_count(n * count_below(n, k)); };
    e.expected.rank_at = [n](std::size_t k) -> std::optional<std::uint64_t> { return n * count_below(n, k); };
    e.expected.formulas = {"K = chi = (n-1) lim (n + ... + n^k)/n^k = n", "tr = rk = n + n^2 + ... + n^k"};
    return e;
}

template <class S>
CatalogEntry<S> entry_symmetric_fock(int n, std::size_t depth) {
    if constexpr (backend_of<S>() == Backend::exact) {
        no_exact("the symmetric Fock weights sqrt((a_i+1)/(|a|+1))");
    } else {
        if (n < 2 || depth < 1) throw ValidationError("symmetric Fock needs n >= 2 and depth >= 1");
        // Monomials of degree < depth, graded then lexicographic.
        std::vector<std::vector<int>> monos;
        std::map<std::vector<int>, std::size_t> index;
        std::vector<std::vector<int>> level{std::vector<int>(n, 0)};
        for (std::size_t deg = 0; deg < depth; ++deg) {
            std::sort(level.begin(), level.end());
            std::vector<std::vector<int>> next;
            for (const auto& a : level) {
                index.emplace(a, monos.size());
                monos.push_back(a);
                for (int i = 0; i < n; ++i) {
                    auto b = a;
                    ++b[i];
                    next.push_back(b);
                }
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            level = std::move(next);
        }
        const std::size_t dim = monos.size();
        std::vector<Matrix<S>> mats;
        for (int i = 0; i < n; ++i) {
            Matrix<S> m(dim, dim);
            for (std::size_t c = 0; c < dim; ++c) {
                auto b = monos[c];
                int deg = 0;
                for (int x : b) deg += x;
                if (static_cast<std::size_t>(deg) + 1 >= depth) continue;
                const double w = std::sqrt(static_cast<double>(b[i] + 1) / static_cast<double>(deg + 1));
                ++b[i];
                m(index.at(b), c) = S(w);
            }
            mats.push_back(std::move(m));
        }
        CatalogEntry<S> e;
        e.name = "symmetric_fock";
        e.params = {{"n", std::to_string(n)}, {"depth", std::to_string(depth)}};
        e.source = "commuting row contractions have K = chi = 0";
        e.contraction = make_dense<S>(std::move(mats));
        e.expected.curvature = Rational(0);
        e.expected.euler = Rational(0);
        e.expected.pure_rank = 1;
        e.expected.trace_at = [n, depth](std::size_t k) -> std::optional<Rational> {
            if (k > depth) return std::nullopt;
            return q_count(binomial(k + n - 1, n));
        };
        e.expected.rank_at = [n, depth](std::size_t k) -> std::optional<std::uint64_t> {
            if (k > depth) return std::nullopt;
            return binomial(k + n - 1, n);
        };
        e.expected.formulas = {"K = chi = 0", "tr = rk = C(k+n-1, n) for k <= depth"};
        return e;
    }
}

template <class S>
CatalogEntry<S> entry_shift_and_zero(std::size_t m) {
    if (m < 1 || m > 40) throw ValidationError("generator count m must lie in [1, 40]");
    CatalogEntry<S> e;
    e.name = "shift_and_zero";
    e.params = {{"m", std::to_string(m)}};
    e.source = "M = sum R_1^k R_2 H_2: A_1 is the unilateral shift, A_2 = 0";
    std::vector<Generator<S>> gens;
    for (std::size_t k = 0; k < m; ++k) gens.push_back(monomial_generator<S>(2, single(2) + ones(k)));
    e.contraction = make_compression<S>(2, 1, gens, Orientation::complement);
    e.subspace = SubspaceSpec<S>{2, 1, gens};
    const Rational tail = Rational(1) / npow(2, m);
    e.expected.tilde = Rational(1) - tail;
    e.expected.curvature = tail;
    e.expected.euler = tail;
    e.expected.pure_rank = 1;
    // Domain words of length < k: 1^j, and u 2 1^t with t >= m.
    auto count = [m](std::size_t k) -> std::uint64_t {
        std::uint64_t c = k;
        for (std::size_t t = m; t + 2 <= k; ++t) c += count_below(2, k - 1 - t);
        return c;
    };
    e.expected.trace_at = [count](std::size_t k) -> std::optional<Rational> { return q_count(count(k)); };
    e.expected.rank_at = [count](std::size_t k) -> std::optional<std::uint64_t> { return count(k); };
    e.expected.formulas = {"K~ = sum_{k<m} 2^{-k-1} = 1 - 2^-m", "K = chi = 2^-m for the truncated family"};
    e.notes.push_back("truncated at m = " + std::to_string(m) + " generators: K~ falls short of 1 and K exceeds 0 by 2^-" +
                      std::to_string(m) + " = " + to_string(tail));
    return e;
}

template <class S>
CatalogEntry<S> entry_eigenvector(int n, const S& lambda) {
    const RealOf<S> r = abs2(lambda);
    if (!(r < RealOf<S>(1))) throw ValidationError("eigenvector example needs |lambda| < 1");
    CatalogEntry<S> e;
    e.name = "eigenvector";
    e.params = {{"n", std::to_string(n)}, {"lambda", to_string(lambda)}};
    e.source = "eigenvector nu_lambda = sqrt(1-|lambda|^2) sum conj(lambda)^k xi_{1^k}";
    // zeta = -lambda xi_e + (1 - r) sum_{k>=1} conj(lambda)^{k-1} xi_{1^k}: a unit
    // wandering vector orthogonal to nu_lambda whose orbit is the orthocomplement of the domain.
    FockVector<S> head(n, 1);
    head.set(0, Word{}, -lambda);
    Ray<S> ray{0, Word{}, 1, S(RealOf<S>(1) - r), conj(lambda)};
    std::vector<Generator<S>> gens{Generator<S>(head, ray)};
    e.contraction = make_compression<S>(n, 1, gens, Orientation::complement);
    const Rational rq = to_rational<S>(r);
    e.expected.curvature = decaying_curvature(n, rq);
    e.expected.euler = Rational(1) - Rational(1) / Rational(n);
    e.expected.pure_rank = 1;
    e.expected.trace_at = [n, rq](std::size_t k) -> std::optional<Rational> { return decaying_trace(n, rq, k); };
    e.expected.rank_at = [n](std::size_t k) -> std::optional<std::uint64_t> { return checked_pow(n, k - 1); };
    e.expected.formulas = {"unitarily equivalent to the decaying ring u = 1 with the same lambda", "K = (n-1)(1-r)/(n-r)"};
    return e;
}

template <class S>
CatalogEntry<S> entry_three_letter(const RealOf<S>& alpha, const RealOf<S>& beta) {
    const RealOf<S> norm = alpha * alpha + beta * beta;
    const bool unit = backend_of<S>() == Backend::exact ? norm == RealOf<S>(1) : std::abs(to_double(norm) - 1.0) <= 1e-12;
    if (!unit) throw ValidationError("three-letter example needs alpha^2 + beta^2 = 1");
    CatalogEntry<S> e;
    e.name = "three_letter";
    e.params = {{"alpha", str_real<S>(alpha)}, {"beta", str_real<S>(beta)}};
    e.source = "three-letter wandering family: K and chi are not upper semi-continuous";
    // The orthocomplement of span{x, y} in span{xi_1, xi_2, xi_3} is spanned by beta xi_1 - alpha xi_2 + beta xi_3.
    FockVector<S> z(3, 1);
    z.set(0, single(1), S(beta));
    z.set(0, single(2), S(-alpha));
    z.set(0, single(3), S(beta));
    e.contraction = make_compression<S>(3, 1, {Generator<S>(z)}, Orientation::complement);
    e.expected.curvature = Rational(2, 3);
    e.expected.euler = Rational(2, 3);
    e.expected.pure_rank = 1;
    e.expected.rank_at = [](std::size_t l) -> std::optional<std::uint64_t> { return checked_pow(3, l - 1); };
    e.expected.trace_at = [](std::size_t l) -> std::optional<Rational> { return q_count(checked_pow(3, l - 1)); };
    e.expected.formulas = {"rk = 1 + 2 + 2*3 + ... + 2*3^{l-2} = 3^{l-1}", "chi = 2/3"};
    return e;
}

template <class S>
CatalogEntry<S> entry_three_letter_limit() {
    CatalogEntry<S> e;
    e.name = "three_letter_limit";
    e.source = "three-letter wandering family: the limit compression onto span{xi_e, xi_{u2}}";
    e.contraction = make_compression<S>(3, 1, {monomial_generator<S>(3, single(1)), monomial_generator<S>(3, single(3))},
                                        Orientation::complement);
    e.expected.curvature = Rational(1, 3);
    e.expected.euler = Rational(1, 3);
    e.expected.pure_rank = 1;
    e.expected.rank_at = [](std::size_t l) -> std::optional<std::uint64_t> { return (checked_pow(3, l - 1) + 1) / 2; };
    e.expected.trace_at = [](std::size_t l) -> std::optional<Rational> { return q_count((checked_pow(3, l - 1) + 1) / 2); };
    e.expected.formulas = {"rk = (3^{l-1} + 1)/2", "chi = 1/3"};
    return e;
}

template <class S>
CatalogEntry<S> entry_truncation_family(int n, std::size_t l) {
    if (n < 2 || l < 1) throw ValidationError("truncation family needs n >= 2 and l >= 1");
    const TruncatedBasis basis(n, l);
    const auto dim = static_cast<std::size_t>(basis.size());
    std::vector<Matrix<S>> mats;
    for (int i = 1; i <= n; ++i) {
        Matrix<S> m(dim, dim);
        for (std::size_t c = 0; c < dim; ++c) {
            const Word& w = basis.words()[c];
            if (w.size() + 1 < l) m(static_cast<std::size_t>(basis.index(Label{0, single(i) + w})), c) = S(1);
        }
        mats.push_back(std::move(m));
    }
    CatalogEntry<S> e;
    e.name = "truncation_family";
    e.params = {{"n", std::to_string(n)}, {"l", std::to_string(l)}};
    e.source = "truncations A_l = Q_l L|ran Q_l converge to L while their invariants vanish";
    e.contraction = make_dense<S>(std::move(mats));
    e.expected.curvature = Rational(0);
    e.expected.euler = Rational(0);
    e.expected.pure_rank = 1;
    e.expected.rank_at = [n, l](std::size_t k) -> std::optional<std::uint64_t> { return count_below(n, std::min(k, l)); };
    e.expected.trace_at = [n, l](std::size_t k) -> std::optional<Rational> { return q_count(count_below(n, std::min(k, l))); };
    e.expected.formulas = {"K = chi = 0", "rk = tr = (n^l - 1)/(n - 1) for k >= l (displayed as (n^l - l)/(n - 1))"};
    if (l > 1) e.notes.push_back("the displayed rank (n^l - l)/(n - 1) disagrees with the dense computation (n^l - 1)/(n - 1)");
    return e;
}

template <class S>
std::vector<CatalogEntry<S>> entry_decay_sweep(int n, std::size_t d, const std::vector<RealOf<S>>& grid) {
    if (d < 1) throw ValidationError("ring length must be at least 1");
    std::vector<CatalogEntry<S>> out;
    const Word ring = cycling_ring(n, d);
    for (const auto& x : grid) {
        std::vector<S> lambda(d, S(1));
        lambda[0] = S(x);
        std::vector<RealOf<S>> moduli(d, RealOf<S>(1));
        moduli[0] = x * x;
        if (moduli[0] > RealOf<S>(1)) throw ValidationError("decay factors must satisfy |lambda| <= 1");
        auto e = entry_decaying<S>(n, ring, moduli, lambda);
        e.name = "decay_sweep";
        e.params = {{"n", std::to_string(n)}, {"d", std::to_string(d)}, {"lambda", str_real<S>(x)}};
        out.push_back(std::move(e));
    }
    return out;
}

const std::vector<CatalogInfo>& catalog_index() {
    static const std::vector<CatalogInfo> index = {
        {"left_regular", "alpha copies of the left creation operators", "isometric tuples: tr Q_k = rk Q_k",
         {{"n", "2", "alphabet size"}, {"alpha", "1", "multiplicity"}}, "alpha", true},
        {"decaying", "decaying atomic ring with a free tree below each node",
         "decaying atomic representations",
         {{"n", "2", "alphabet size"},
          {"ring", "1", "ring word u"},
          {"lambda", "sqrt(1/2)", "comma-separated decay factors; exact sqrt(x) keeps only |lambda|^2 = x"},
          {"r", "", "comma-separated moduli |lambda_s|^2 (overrides lambda)"}},
         "lambda", true},
        {"curvature_range", "one-dimensional ring with K = r", "range of the curvature invariant", {{"r", "1/3", "target K in [0, 1/2]"}}, "r", true},
        {"binary_expansion", "subspace M_r with K = chi = r", "binary expansion subspaces",
         {{"bits", "1", "comma-separated binary digits eps_0, eps_1, ..."}, {"r", "", "dyadic r in [0, 1) (overrides bits)"}},
         "r", true},
        {"polynomial_isometry", "complement of R H_n for a homogeneous polynomial isometry R", "polynomial isometries",
         {{"n", "2", "alphabet size"}, {"coefficients", "2:1", "word:value pairs separated by ';'"}}, "", true},
        {"cyclic_range", "cyclic subspace (a1 R_1 + a2 R_2^2) H_n with K~ = r", "range of K~ on cyclic subspaces",
         {{"n", "3", "alphabet size"}, {"r", "2/9", "target K~ with 1/n^2 < r <= 1/(n-1)^2"}}, "r", true},
        {"xi_e_perp", "restriction of L to xi_e^perp", "invariant subspace xi_e^perp", {{"n", "2", "alphabet size"}}, "n", true},
        {"symmetric_fock", "commuting shift on symmetric Fock space, truncated", "commuting tuples",
         {{"n", "2", "number of variables"}, {"depth", "14", "monomials of degree < depth"}}, "depth", false},
        {"shift_and_zero", "M = sum_{k<m} R_1^k R_2 H_2 (unilateral shift and zero)", "shift and zero",
         {{"m", "4", "number of generators kept"}}, "m", true},
        {"eigenvector", "compression with eigenvector nu_lambda", "eigenvector example",
         {{"n", "2", "alphabet size"}, {"lambda", "1/2", "eigenvalue, |lambda| < 1"}}, "lambda", true},
        {"three_letter", "n = 3 wandering family A_k", "three-letter family",
         {{"alpha", "3/5", "coefficient alpha"}, {"beta", "", "coefficient beta (default sqrt(1 - alpha^2))"}}, "alpha", true},
        {"three_letter_limit", "limit of the three-letter family", "three-letter family", {}, "", true},
        {"truncation_family", "A_l = Q_l L|ran Q_l", "truncations of L",
         {{"n", "2", "alphabet size"}, {"l", "2", "truncation depth"}}, "l", true},
        {"decay_sweep", "ring of length d with lambda = (x, 1, ..., 1)", "gap theorem and semi-continuity",
         {{"n", "2", "alphabet size"}, {"d", "1", "ring length"}, {"lambda", "1/2", "first decay factor x in [0, 1]"}}, "lambda",
         true},
    };
    return index;
}

const CatalogInfo& catalog_info(const std::string& name) {
    for (const auto& info : catalog_index())
        if (info.name == name) return info;
    throw ValidationError("unknown catalog entry '" + name + "'");
}

template <class S>
CatalogEntry<S> make_entry(const std::string& name, const Params& given) {
    const CatalogInfo& info = catalog_info(name);
    Params p;
    for (const auto& spec : info.params) p[spec.name] = spec.default_value;
    for (const auto& [k, v] : given) {
        if (!p.count(k)) throw ValidationError("entry '" + name + "' has no parameter '" + k + "'");
        p[k] = v;
    }
    auto int_param = [&](const std::string& k, long lo, long hi) { return parse_param_int(k, p.at(k), lo, hi); };
    const long big = 1L << 20;

    if (name == "left_regular") return entry_left_regular<S>(int_param("n", 2, 64), static_cast<std::uint32_t>(int_param("alpha", 0, big)));
    if (name == "decaying") {
        const int n = static_cast<int>(int_param("n", 2, 64));
        const Word ring = parse_param_word("ring", p.at("ring"), n);
        std::vector<RealOf<S>> moduli;
        std::optional<std::vector<S>> lambda;
        if (!p.at("r").empty()) {
            for (const auto& t : split_list(p.at("r"))) moduli.push_back(parse_param_real<S>("r", t));
        } else {
            std::vector<S> values;
            bool all = true;
            for (const auto& t : split_list(p.at("lambda"))) {
                auto f = parse_decay<S>(t);
                moduli.push_back(f.modulus);
                if (f.value)
                    values.push_back(*f.value);
                else
                    all = false;
            }
            if (all) lambda = values;
        }
        for (const auto& r : moduli)
            if (r < RealOf<S>(0) || r > RealOf<S>(1)) throw ValidationError("decay factors must satisfy |lambda| <= 1");
        return entry_decaying<S>(n, ring, moduli, lambda);
    }
    if (name == "curvature_range") return entry_curvature_range<S>(parse_param_real<S>("r", p.at("r")));
    if (name == "binary_expansion") {
        if (!p.at("r").empty()) return entry_binary_expansion<S>(bits_from_dyadic(parse_param_rational("r", p.at("r"))));
        std::vector<int> bits;
        for (const auto& t : split_list(p.at("bits"))) bits.push_back(static_cast<int>(parse_param_int("bits", t, 0, 1)));
        return entry_binary_expansion<S>(bits);
    }
    if (name == "polynomial_isometry") {
        const int n = static_cast<int>(int_param("n", 2, 64));
        std::map<Word, S> coeffs;
        std::istringstream in(p.at("coefficients"));
        std::string item;
        while (std::getline(in, item, ';')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ParseError("coefficient '" + item + "' is not word:value");
            const Word w = parse_param_word("coefficients", item.substr(0, colon), n);
            coeffs[w] = S(parse_param_real<S>("coefficients", item.substr(colon + 1)));
        }
        return entry_polynomial_isometry<S>(n, coeffs);
    }
    if (name == "cyclic_range") {
        const int n = static_cast<int>(int_param("n", 2, 64));
        Rational r;
        if constexpr (backend_of<S>() == Backend::exact)
            r = parse_param_rational("r", p.at("r"));
        else
            r = Rational(parse_param_real<S>("r", p.at("r")));
        return entry_cyclic_range<S>(n, r);
    }
    if (name == "xi_e_perp") return entry_xi_e_perp<S>(static_cast<int>(int_param("n", 2, 64)));
    if (name == "symmetric_fock")
        return entry_symmetric_fock<S>(static_cast<int>(int_param("n", 2, 8)), static_cast<std::size_t>(int_param("depth", 1, 64)));
    if (name == "shift_and_zero") return entry_shift_and_zero<S>(static_cast<std::size_t>(int_param("m", 1, 40)));
    if (name == "eigenvector") {
        const int n = static_cast<int>(int_param("n", 2, 64));
        auto f = parse_decay<S>(p.at("lambda"));
        if (!f.value) no_exact("lambda = " + p.at("lambda"));
        return entry_eigenvector<S>(n, *f.value);
    }
    if (name == "three_letter") {
        const RealOf<S> a = parse_param_real<S>("alpha", p.at("alpha"));
        RealOf<S> b;
        if (p.at("beta").empty()) {
            try {
                b = real_sqrt<S>(RealOf<S>(1) - a * a);
            } catch (const std::domain_error&) {
                no_exact("beta = sqrt(1 - alpha^2)");
            }
        } else {
            b = parse_param_real<S>("beta", p.at("beta"));
        }
        return entry_three_letter<S>(a, b);
    }
    if (name == "three_letter_limit") return entry_three_letter_limit<S>();
    if (name == "truncation_family")
        return entry_truncation_family<S>(static_cast<int>(int_param("n", 2, 64)), static_cast<std::size_t>(int_param("l", 1, 20)));
    if (name == "decay_sweep") {
        const int n = static_cast<int>(int_param("n", 2, 64));
        const auto d = static_cast<std::size_t>(int_param("d", 1, 16));
        auto f = parse_decay<S>(p.at("lambda"));
        if (!f.value) no_exact("lambda = " + p.at("lambda"));
        return entry_decay_sweep<S>(n, d, {f.value->re}).front();
    }
    throw ValidationError("unknown catalog entry '" + name + "'");
}

#define NCURV_INSTANTIATE(S)                                                                                         \
    template CatalogEntry<S> make_entry<S>(const std::string&, const Params&);                                      \
    template CatalogEntry<S> entry_left_regular<S>(int, std::uint32_t);                                              \
    template CatalogEntry<S> entry_decaying<S>(int, const Word&, std::vector<RealOf<S>>, std::optional<std::vector<S>>); \
    template CatalogEntry<S> entry_curvature_range<S>(const RealOf<S>&);                                             \
    template CatalogEntry<S> entry_binary_expansion<S>(const std::vector<int>&);                                     \
    template CatalogEntry<S> entry_polynomial_isometry<S>(int, const std::map<Word, S>&);                            \
    template CatalogEntry<S> entry_cyclic_range<S>(int, const Rational&);                                            \
    template CatalogEntry<S> entry_xi_e_perp<S>(int);                                                                \
    template CatalogEntry<S> entry_symmetric_fock<S>(int, std::size_t);                                              \
    template CatalogEntry<S> entry_shift_and_zero<S>(std::size_t);                                                   \
    template CatalogEntry<S> entry_eigenvector<S>(int, const S&);                                                    \
    template CatalogEntry<S> entry_three_letter<S>(const RealOf<S>&, const RealOf<S>&);                              \
    template CatalogEntry<S> entry_three_letter_limit<S>();                                                          \
    template CatalogEntry<S> entry_truncation_family<S>(int, std::size_t);                                           \
    template std::vector<CatalogEntry<S>> entry_decay_sweep<S>(int, std::size_t, const std::vector<RealOf<S>>&);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
