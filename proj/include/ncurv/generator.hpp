#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ncurv/fock_vector.hpp"

namespace ncurv {

/// Geometric tail sum_{k>=1} scale * ratio^(k-1) xi_{copy, stem letter^k}, |ratio| < 1.
template <class S>
struct Ray {
    std::uint32_t copy = 0;
    Word stem;
    int letter = 1;
    S scale{};
    S ratio{};

    /// Coefficient at (copy, w); zero off the ray.
    S coefficient(std::uint32_t c, const Word& w) const;
};

/// One term of a generator's support: the coefficient at (copy, word).
template <class S>
struct SupportTerm {
    Label label;
    S value;
};

/// A wandering-vector candidate: a finitely supported part plus an optional
/// geometric ray. Generators need not be normalized; every projection divides
/// by norm2().
template <class S>
class Generator {
public:
    Generator() = default;
    explicit Generator(FockVector<S> finite, std::optional<Ray<S>> ray = std::nullopt);

    int n() const { return finite_.n(); }
    std::uint32_t alpha() const { return finite_.alpha(); }
    const FockVector<S>& finite() const { return finite_; }
    const std::optional<Ray<S>>& ray() const { return ray_; }
    const RealOf<S>& norm2() const { return norm2_; }

    S coefficient(std::uint32_t copy, const Word& w) const;

    /// Nonzero support terms with word length <= max_len, in label order.
    std::vector<SupportTerm<S>> support_upto(std::size_t max_len) const;

    /// True when every support word has the same length; that length is written to degree.
    bool homogeneous(std::size_t* degree = nullptr) const;

    /// Shortest word length in the support.
    std::size_t min_length() const;

private:
    FockVector<S> finite_;
    std::optional<Ray<S>> ray_;
    RealOf<S> norm2_{};
};

/// <g, L_w h>, computed exactly (closed-form geometric sums for ray pairs).
template <class S>
S shifted_inner(const Generator<S>& g, const Word& w, const Generator<S>& h);

/// <L_u g, L_v h>.
template <class S>
S orbit_inner(const Generator<S>& g, const Word& u, const Generator<S>& h, const Word& v);

/// Verifies <L_u zeta_i, L_v zeta_j> = delta_ij delta_uv |zeta_i|^2 for all words up to depth.
/// Throws ValidationError naming the first failing pair. tol is ignored in the exact backend.
template <class S>
void check_wandering(const std::vector<Generator<S>>& gens, std::size_t depth, double tol);

}  // namespace ncurv
