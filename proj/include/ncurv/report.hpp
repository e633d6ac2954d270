#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncurv/catalog.hpp"
#include "ncurv/invariants.hpp"

namespace ncurv {

inline constexpr const char* kReportSchema = "ncurv.report/1";

struct RunConfig {
    std::size_t k_max = 10;
    Backend backend = Backend::exact;
    double tol = 1e-9;
    double gap = 1e-6;
    std::uint64_t cap = default_basis_cap();
    std::string format = "json";
    std::uint64_t seed = 1;
    /// Wall-clock timing makes reports nondeterministic, so it is opt-in.
    bool timing = false;

    EstimateOptions estimate_options() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Exact values serialize as strings "p/q"; float values as JSON numbers.
template <class S>
nlohmann::json real_to_json(const RealOf<S>& x);
template <class S>
RealOf<S> real_from_json_value(const nlohmann::json& j);

template <class S>
nlohmann::json to_json(const DefectSequence<S>& s);
template <class S>
DefectSequence<S> sequence_from_json(const nlohmann::json& j);

template <class S>
nlohmann::json to_json(const InvariantEstimate<S>& e);
template <class S>
InvariantEstimate<S> estimate_from_json(const nlohmann::json& j);

template <class S>
nlohmann::json to_json(const InvariantReport<S>& r);
template <class S>
InvariantReport<S> invariant_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Expected& e, std::size_t k_max);

/// Result of `ncurv compute`.
template <class S>
struct ComputeReport {
    nlohmann::json input;
    RunConfig config;
    std::optional<InvariantReport<S>> invariants;
    std::optional<InvariantEstimate<S>> tilde;
    std::optional<FreenessVerdict> freeness;
    std::optional<std::string> catalog_entry;
    std::vector<std::string> notes;
    std::optional<double> seconds;

    friend bool operator==(const ComputeReport& a, const ComputeReport& b) { return to_json(a) == to_json(b); }
};

template <class S>
nlohmann::json to_json(const ComputeReport<S>& r);
template <class S>
ComputeReport<S> compute_report_from_json(const nlohmann::json& j);

/// Level-by-level CSV: k, trace, rank, curvature level, euler level.
template <class S>
std::string to_csv(const InvariantReport<S>& r);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

bool operator==(const InvariantEstimate<Exact>& a, const InvariantEstimate<Exact>& b);
bool operator==(const InvariantEstimate<Float>& a, const InvariantEstimate<Float>& b);

}  // namespace ncurv
