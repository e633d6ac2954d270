#include "ncurv/report.hpp"

#include <cmath>
#include <limits>

#include "ncurv/errors.hpp"

namespace ncurv {

using nlohmann::json;

namespace {

Backend backend_from_string(const std::string& s) {
    if (s == "exact") return Backend::exact;
    if (s == "float") return Backend::floating;
    throw ParseError("unknown backend '" + s + "'");
}

// JSON has no infinity; a gap that is not finite is written as null.
json double_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double double_from(const json& j) { return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>(); }

template <class S>
json optional_real(const std::optional<RealOf<S>>& x) {
    return x ? real_to_json<S>(*x) : json(nullptr);
}

template <class S>
std::optional<RealOf<S>> optional_real_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return real_from_json_value<S>(j);
}

}  // namespace

EstimateOptions RunConfig::estimate_options() const {
    EstimateOptions o;
    o.compute.tol = tol;
    o.compute.cap = cap;
    o.gap = gap;
    return o;
}

json to_json(const RunConfig& c) {
    return json{{"k_max", c.k_max}, {"backend", to_string(c.backend)}, {"tol", c.tol},       {"gap", c.gap},
                {"cap", c.cap},     {"format", c.format},                {"seed", c.seed},     {"timing", c.timing}};
}

RunConfig run_config_from_json(const json& j) {
    RunConfig c;
    c.k_max = j.at("k_max").get<std::size_t>();
    c.backend = backend_from_string(j.at("backend").get<std::string>());
    c.tol = j.at("tol").get<double>();
    c.gap = j.at("gap").get<double>();
    c.cap = j.at("cap").get<std::uint64_t>();
    c.format = j.at("format").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.timing = j.at("timing").get<bool>();
    return c;
}

template <class S>
json real_to_json(const RealOf<S>& x) {
    if constexpr (backend_of<S>() == Backend::exact)
        return to_string(x);
    else
        return x;
}

template <class S>
RealOf<S> real_from_json_value(const json& j) {
    if constexpr (backend_of<S>() == Backend::exact)
        return parse_rational(j.get<std::string>());
    else
        return j.get<double>();
}

template <class S>
json to_json(const DefectSequence<S>& s) {
    json records = json::array();
    for (const auto& r : s.records) records.push_back({{"k", r.k}, {"trace", real_to_json<S>(r.trace)}, {"rank", r.rank}});
    return json{{"n", s.n}, {"backend", to_string(s.backend)}, {"tol", s.tol}, {"records", records}};
}

template <class S>
DefectSequence<S> sequence_from_json(const json& j) {
    DefectSequence<S> s;
    s.n = j.at("n").get<int>();
    if (backend_from_string(j.at("backend").get<std::string>()) != backend_of<S>()) throw ParseError("sequence backend mismatch");
    s.tol = j.at("tol").get<double>();
    for (const auto& r : j.at("records"))
        s.records.push_back({r.at("k").get<std::size_t>(), real_from_json_value<S>(r.at("trace")), r.at("rank").get<std::uint64_t>()});
    return s;
}

template <class S>
json to_json(const InvariantEstimate<S>& e) {
    json levels = json::array();
    for (const auto& v : e.levels) levels.push_back(real_to_json<S>(v));
    return json{{"value", real_to_json<S>(e.value)},
                {"value_float", to_double(e.value)},
                {"upper_bound", optional_real<S>(e.upper_bound)},
                {"lower_bound", optional_real<S>(e.lower_bound)},
                {"k_used", e.k_used},
                {"cauchy_gap", double_or_null(e.cauchy_gap)},
                {"converged", e.converged},
                {"aitken", e.aitken ? json(*e.aitken) : json(nullptr)},
                {"levels", levels}};
}

template <class S>
InvariantEstimate<S> estimate_from_json(const json& j) {
    InvariantEstimate<S> e;
    e.value = real_from_json_value<S>(j.at("value"));
    e.upper_bound = optional_real_from<S>(j.at("upper_bound"));
    e.lower_bound = optional_real_from<S>(j.at("lower_bound"));
    e.k_used = j.at("k_used").get<std::size_t>();
    e.cauchy_gap = double_from(j.at("cauchy_gap"));
    e.converged = j.at("converged").get<bool>();
    if (!j.at("aitken").is_null()) e.aitken = j.at("aitken").get<double>();
    for (const auto& v : j.at("levels")) e.levels.push_back(real_from_json_value<S>(v));
    return e;
}

template <class S>
bool estimates_equal(const InvariantEstimate<S>& a, const InvariantEstimate<S>& b) {
    return a.value == b.value && a.upper_bound == b.upper_bound && a.lower_bound == b.lower_bound && a.k_used == b.k_used &&
           (a.cauchy_gap == b.cauchy_gap || (std::isinf(a.cauchy_gap) && std::isinf(b.cauchy_gap))) && a.converged == b.converged &&
           a.aitken == b.aitken && a.levels == b.levels;
}

bool operator==(const InvariantEstimate<Exact>& a, const InvariantEstimate<Exact>& b) { return estimates_equal(a, b); }
bool operator==(const InvariantEstimate<Float>& a, const InvariantEstimate<Float>& b) { return estimates_equal(a, b); }

template <class S>
json to_json(const InvariantReport<S>& r) {
    return json{{"sequence", to_json(r.sequence)}, {"curvature", to_json(r.curvature)}, {"euler", to_json(r.euler)},
                {"pure_rank", r.pure_rank},        {"hierarchy_ok", r.hierarchy_ok},    {"levelwise_ok", r.levelwise_ok}};
}

template <class S>
InvariantReport<S> invariant_report_from_json(const json& j) {
    InvariantReport<S> r;
    r.sequence = sequence_from_json<S>(j.at("sequence"));
    r.curvature = estimate_from_json<S>(j.at("curvature"));
    r.euler = estimate_from_json<S>(j.at("euler"));
    r.pure_rank = j.at("pure_rank").get<std::uint64_t>();
    r.hierarchy_ok = j.at("hierarchy_ok").get<bool>();
    r.levelwise_ok = j.at("levelwise_ok").get<bool>();
    return r;
}

json to_json(const Expected& e, std::size_t k_max) {
    auto opt = [](const std::optional<Rational>& x) { return x ? json(to_string(*x)) : json(nullptr); };
    json out{{"curvature", opt(e.curvature)},
             {"euler", opt(e.euler)},
             {"pure_rank", e.pure_rank ? json(*e.pure_rank) : json(nullptr)},
             {"tilde", opt(e.tilde)},
             {"formulas", e.formulas}};
    if (e.trace_at) out["trace_at_k_max"] = opt(e.trace_at(k_max));
    if (e.rank_at) {
        auto r = e.rank_at(k_max);
        out["rank_at_k_max"] = r ? json(*r) : json(nullptr);
    }
    if (e.displayed_trace_at) out["displayed_trace_at_k_max"] = opt(e.displayed_trace_at(k_max));
    return out;
}

template <class S>
json to_json(const ComputeReport<S>& r) {
    json out{{"schema", kReportSchema},
             {"command", "compute"},
             {"input", r.input},
             {"config", to_json(r.config)},
             {"invariants", r.invariants ? to_json(*r.invariants) : json(nullptr)},
             {"tilde_curvature", r.tilde ? to_json(*r.tilde) : json(nullptr)},
             {"freeness", r.freeness ? json(to_string(*r.freeness)) : json(nullptr)},
             {"catalog_entry", r.catalog_entry ? json(*r.catalog_entry) : json(nullptr)},
             {"notes", r.notes}};
    if (r.seconds) out["timing"] = {{"seconds", *r.seconds}};
    return out;
}

template <class S>
ComputeReport<S> compute_report_from_json(const json& j) {
    if (j.at("schema").get<std::string>() != kReportSchema) throw ParseError("unsupported report schema");
    ComputeReport<S> r;
    r.input = j.at("input");
    r.config = run_config_from_json(j.at("config"));
    if (!j.at("invariants").is_null()) r.invariants = invariant_report_from_json<S>(j.at("invariants"));
    if (!j.at("tilde_curvature").is_null()) r.tilde = estimate_from_json<S>(j.at("tilde_curvature"));
    if (!j.at("freeness").is_null()) {
        const auto v = j.at("freeness").get<std::string>();
        r.freeness = v == "free-consistent" ? FreenessVerdict::free_consistent
                     : v == "not-free"      ? FreenessVerdict::not_free
                                            : FreenessVerdict::inconclusive;
    }
    if (!j.at("catalog_entry").is_null()) r.catalog_entry = j.at("catalog_entry").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("timing")) r.seconds = j.at("timing").at("seconds").get<double>();
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
    return out + "\r\n";
}

template <class S>
std::string to_csv(const InvariantReport<S>& r) {
    std::string out = csv_row({"k", "trace", "rank", "curvature_level", "euler_level"});
    for (std::size_t i = 0; i < r.sequence.records.size(); ++i) {
        const auto& rec = r.sequence.records[i];
        out += csv_row({std::to_string(rec.k), to_string(rec.trace), std::to_string(rec.rank), to_string(r.curvature.levels[i]),
                        to_string(r.euler.levels[i])});
    }
    return out;
}

#define NCURV_INSTANTIATE(S)                                                           \
    template json real_to_json<S>(const RealOf<S>&);                                   \
    template RealOf<S> real_from_json_value<S>(const json&);                           \
    template json to_json<S>(const DefectSequence<S>&);                                \
    template DefectSequence<S> sequence_from_json<S>(const json&);                     \
    template json to_json<S>(const InvariantEstimate<S>&);                             \
    template InvariantEstimate<S> estimate_from_json<S>(const json&);                  \
    template json to_json<S>(const InvariantReport<S>&);                               \
    template InvariantReport<S> invariant_report_from_json<S>(const json&);            \
    template json to_json<S>(const ComputeReport<S>&);                                 \
    template ComputeReport<S> compute_report_from_json<S>(const json&);                \
    template std::string to_csv<S>(const InvariantReport<S>&);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
