#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncurv/report.hpp"

namespace ncurv {

/// One expected-vs-computed comparison. Informational checks are reported but
/// never fail a suite.
struct CheckResult {
    std::string name;
    std::string expected;
    std::string computed;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;
    std::string detail;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct VerifyReport {
    std::string suite;
    RunConfig config;
    std::vector<CheckResult> checks;
    std::optional<double> seconds;

    std::size_t failures() const;
    bool ok() const { return failures() == 0; }
    friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

/// Catalog closed forms. Each instance runs at its own level and in the exact
/// backend where the entry supports it; config.tol and config.cap apply.
VerifyReport verify_paper(const RunConfig& config);

/// `count` seeded random dense tuples (n in {2, 3}, dimension <= 8) checked for
/// 0 <= K <= chi <= pure rank at every level and in the estimates.
VerifyReport verify_hierarchy(const RunConfig& config, std::size_t count = 100);

/// Specialized paths against the dense path (exact, truncation depth <= 6),
/// serial against parallel kernels, and the eigenvector compression against
/// the one-dimensional decaying ring (float, 1e-10).
VerifyReport verify_oracle(const RunConfig& config);

/// Throws ValidationError for an unknown suite name.
VerifyReport run_verify(const std::string& suite, const RunConfig& config);

nlohmann::json to_json(const VerifyReport& r);
VerifyReport verify_report_from_json(const nlohmann::json& j);
std::string to_csv(const VerifyReport& r);

}  // namespace ncurv
