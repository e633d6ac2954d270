#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncurv/operators.hpp"

namespace ncurv {

/// An L-invariant subspace given by wandering generators (for K-tilde).
template <class S>
struct SubspaceSpec {
    int n = 2;
    std::uint32_t alpha = 1;
    std::vector<Generator<S>> generators;
};

/// Closed-form expectations. Limits are exact rationals; entries with
/// irrational parameters carry the double value converted exactly.
struct Expected {
    std::optional<Rational> curvature;
    std::optional<Rational> euler;
    std::optional<std::uint64_t> pure_rank;
    std::optional<Rational> tilde;
    /// Finite-level trace and rank, where a closed form is known (nullopt elsewhere).
    std::function<std::optional<Rational>(std::size_t)> trace_at;
    std::function<std::optional<std::uint64_t>(std::size_t)> rank_at;
    /// The finite-level trace formula exactly as displayed in the source, when it
    /// differs from trace_at.
    std::function<std::optional<Rational>(std::size_t)> displayed_trace_at;
    /// Formula text behind each expected value.
    std::vector<std::string> formulas;
};

using Params = std::map<std::string, std::string>;

template <class S>
struct CatalogEntry {
    std::string name;
    Params params;
    std::string source;
    std::optional<RowContraction<S>> contraction;
    std::optional<SubspaceSpec<S>> subspace;
    Expected expected;
    /// Known gaps between the finite construction and the infinite one it stands for.
    std::vector<std::string> notes;
};

struct ParamSpec {
    std::string name;
    std::string default_value;
    std::string description;
};

struct CatalogInfo {
    std::string name;
    std::string summary;
    std::string source;
    std::vector<ParamSpec> params;
    /// Parameter swept by `ncurv sweep` when none is given.
    std::string sweep_param;
    bool exact_supported = true;
};

const std::vector<CatalogInfo>& catalog_index();

/// Throws ValidationError for unknown names.
const CatalogInfo& catalog_info(const std::string& name);

/// Builds an entry from textual parameters; missing ones take their defaults.
/// Throws ValidationError for unknown parameters or invalid values, and for
/// parameters that have no exact representation in the exact backend.
template <class S>
CatalogEntry<S> make_entry(const std::string& name, const Params& params = {});

template <class S>
CatalogEntry<S> entry_left_regular(int n, std::uint32_t alpha);

/// moduli r_s = |lambda_s|^2; lambda may be omitted when only the moduli are known.
template <class S>
CatalogEntry<S> entry_decaying(int n, const Word& ring, std::vector<RealOf<S>> moduli, std::optional<std::vector<S>> lambda = std::nullopt);

/// One-dimensional ring with |lambda|^2 = (1 - 2r)/(1 - r), so K = r; r in [0, 1/2].
template <class S>
CatalogEntry<S> entry_curvature_range(const RealOf<S>& r);

template <class S>
CatalogEntry<S> entry_binary_expansion(const std::vector<int>& bits);

/// Complement of the orbit of a homogeneous unit vector sum a_w xi_w.
template <class S>
CatalogEntry<S> entry_polynomial_isometry(int n, const std::map<Word, S>& coefficients);

/// Orbit of a1 xi_1 + a2 xi_22 with a2^2 = (n/(n-1))(1 - n r); 1/n^2 < r <= 1/(n-1)^2.
template <class S>
CatalogEntry<S> entry_cyclic_range(int n, const Rational& r);

template <class S>
CatalogEntry<S> entry_xi_e_perp(int n);

/// Commuting shift on symmetric Fock space, monomials of degree < depth. Float only.
template <class S>
CatalogEntry<S> entry_symmetric_fock(int n, std::size_t depth);

/// n = 2, M generated by xi_{2 1^k}, k < m.
template <class S>
CatalogEntry<S> entry_shift_and_zero(std::size_t m);

/// Complement of the orbit of the wandering vector orthogonal to the eigenvector
/// nu_lambda inside span{xi_{1^k}}.
template <class S>
CatalogEntry<S> entry_eigenvector(int n, const S& lambda);

/// n = 3, domain spanned by xi_e and the orbits of alpha xi_1 + beta xi_2 and beta xi_2 + alpha xi_3.
template <class S>
CatalogEntry<S> entry_three_letter(const RealOf<S>& alpha, const RealOf<S>& beta);

/// The limit of the three-letter family: domain span{xi_e, xi_{u2}}.
template <class S>
CatalogEntry<S> entry_three_letter_limit();

/// A_l = Q_l L |ran Q_l as a dense tuple.
template <class S>
CatalogEntry<S> entry_truncation_family(int n, std::size_t l);

/// Ring of length d with lambda = (x, 1, ..., 1) for every x in the grid.
template <class S>
std::vector<CatalogEntry<S>> entry_decay_sweep(int n, std::size_t d, const std::vector<RealOf<S>>& lambda_grid);

/// Ring word 1 2 ... used by the sweep: letter s is (s mod n) + 1.
Word cycling_ring(int n, std::size_t d);

/// Parses a comma-separated list.
std::vector<std::string> split_list(const std::string& text);

}  // namespace ncurv
