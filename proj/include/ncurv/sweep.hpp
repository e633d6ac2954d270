#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncurv/report.hpp"

namespace ncurv {

/// One grid point. Values are rendered in the backend's notation.
struct SweepRow {
    std::string value;
    std::string curvature;
    std::string curvature_upper;
    std::string euler;
    std::uint64_t pure_rank = 0;
    /// K-tilde of the entry's invariant subspace, when it has one.
    std::optional<std::string> tilde;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
    std::string entry;
    std::string param;
    Params fixed;
    RunConfig config;
    std::vector<SweepRow> rows;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Grid "a:b:steps" with steps >= 2 points, endpoints included. In the exact
/// backend a and b are rationals and the points are exact.
std::vector<std::string> range_grid(const std::string& spec, Backend backend);

/// Evaluates `entry` at every value of `param` (default: the entry's sweep
/// parameter). Throws ValidationError for unknown entries or parameters.
SweepResult run_sweep(const std::string& entry, const std::string& param, const std::vector<std::string>& values,
                      const Params& fixed, const RunConfig& config);

/// Header param,K,K_upper,chi,pure_rank,K_tilde and one row per grid point.
std::string to_csv(const SweepResult& s);
nlohmann::json to_json(const SweepResult& s);
SweepResult sweep_from_json(const nlohmann::json& j);

}  // namespace ncurv
