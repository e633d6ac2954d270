#include "ncurv/sweep.hpp"

#include <algorithm>

#include "ncurv/errors.hpp"

namespace ncurv {

using nlohmann::json;

namespace {

template <class S>
SweepRow sweep_point(const std::string& entry, const Params& params, const std::string& value, const RunConfig& config) {
    const auto e = make_entry<S>(entry, params);
    if (!e.contraction) throw ValidationError("entry '" + entry + "' has no contraction to sweep");
    const auto opt = config.estimate_options();
    const auto rep = hierarchy_report(*e.contraction, config.k_max, opt);
    SweepRow row{value, to_string(rep.curvature.value), to_string(*rep.curvature.upper_bound), to_string(rep.euler.value),
                 rep.pure_rank, std::nullopt};
    if (e.subspace) {
        const auto& sub = *e.subspace;
        row.tilde = to_string(tilde_curvature(sub.n, sub.alpha, sub.generators, config.k_max, opt).value);
    }
    return row;
}

}  // namespace

std::vector<std::string> range_grid(const std::string& spec, Backend backend) {
    const auto first = spec.find(':'), second = spec.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) throw ParseError("range '" + spec + "' is not start:stop:points");
    const std::string a = spec.substr(0, first), b = spec.substr(first + 1, second - first - 1), c = spec.substr(second + 1);
    long points;
    try {
        std::size_t used;
        points = std::stol(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::exception&) {
        throw ParseError("range point count '" + c + "' is not an integer");
    }
    if (points < 2 || points > 100000) throw ValidationError("range needs between 2 and 100000 points");
    std::vector<std::string> out;
    if (backend == Backend::exact) {
        const Rational lo = parse_rational(a), hi = parse_rational(b);
        for (long i = 0; i < points; ++i) {
            Rational t(i, points - 1);
            t.canonicalize();
            out.push_back(to_string(Rational(lo + (hi - lo) * t)));
        }
    } else {
        const double lo = parse_real(a), hi = parse_real(b);
        for (long i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(points - 1);
            out.push_back(to_string(i == points - 1 ? hi : lo + (hi - lo) * t));
        }
    }
    return out;
}

SweepResult run_sweep(const std::string& entry, const std::string& param, const std::vector<std::string>& values, const Params& fixed,
                      const RunConfig& config) {
    const CatalogInfo& info = catalog_info(entry);
    const std::string p = param.empty() ? info.sweep_param : param;
    if (p.empty()) throw ValidationError("entry '" + entry + "' has no sweep parameter");
    if (std::none_of(info.params.begin(), info.params.end(), [&](const ParamSpec& s) { return s.name == p; }))
        throw ValidationError("entry '" + entry + "' has no parameter '" + p + "'");
    if (values.empty()) throw ValidationError("sweep needs at least one value");
    SweepResult out{entry, p, fixed, config, {}};
    for (const auto& v : values) {
        Params params = fixed;
        params[p] = v;
        out.rows.push_back(config.backend == Backend::exact ? sweep_point<Exact>(entry, params, v, config)
                                                            : sweep_point<Float>(entry, params, v, config));
    }
    return out;
}

std::string to_csv(const SweepResult& s) {
    std::string out = csv_row({s.param, "K", "K_upper", "chi", "pure_rank", "K_tilde"});
    for (const auto& r : s.rows)
        out += csv_row({r.value, r.curvature, r.curvature_upper, r.euler, std::to_string(r.pure_rank), r.tilde.value_or("")});
    return out;
}

json to_json(const SweepResult& s) {
    json rows = json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"value", r.value},
                        {"K", r.curvature},
                        {"K_upper", r.curvature_upper},
                        {"chi", r.euler},
                        {"pure_rank", r.pure_rank},
                        {"K_tilde", r.tilde ? json(*r.tilde) : json(nullptr)}});
    return json{{"schema", kReportSchema}, {"command", "sweep"}, {"entry", s.entry}, {"param", s.param},
                {"fixed", s.fixed},        {"config", to_json(s.config)}, {"rows", rows}};
}

SweepResult sweep_from_json(const json& j) {
    if (j.at("schema").get<std::string>() != kReportSchema) throw ParseError("unsupported report schema");
    SweepResult s;
    s.entry = j.at("entry").get<std::string>();
    s.param = j.at("param").get<std::string>();
    s.fixed = j.at("fixed").get<Params>();
    s.config = run_config_from_json(j.at("config"));
    for (const auto& r : j.at("rows")) {
        SweepRow row{r.at("value").get<std::string>(), r.at("K").get<std::string>(), r.at("K_upper").get<std::string>(),
                     r.at("chi").get<std::string>(), r.at("pure_rank").get<std::uint64_t>(), std::nullopt};
        if (!r.at("K_tilde").is_null()) row.tilde = r.at("K_tilde").get<std::string>();
        s.rows.push_back(row);
    }
    return s;
}

}  // namespace ncurv
