#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ncurv/catalog.hpp"

namespace ncurv {

/// A parsed representation file:
///   {"type": dense | left_regular | atomic | compression | subspace | direct_sum | unitary_mix | catalog,
///    "n": n, "alpha": alpha, "payload": {...}}
/// Values are numbers, strings in the scalar grammar ("p/q", decimals, "sqrt(p/q)")
/// or [re, im] pairs. "subspace" describes an L-invariant subspace by generators
/// and has no contraction of its own.
template <class S>
struct ParsedSpec {
    std::optional<RowContraction<S>> contraction;
    std::optional<SubspaceSpec<S>> subspace;
    std::optional<CatalogEntry<S>> entry;
};

/// Throws ParseError for malformed JSON or schema violations and
/// ValidationError for mathematically invalid input.
template <class S>
ParsedSpec<S> parse_spec(const nlohmann::json& spec, double tol = 1e-9);

nlohmann::json read_json_file(const std::string& path);

/// Scalar in the backend from a JSON value.
template <class S>
S scalar_from_json(const nlohmann::json& v);

}  // namespace ncurv
