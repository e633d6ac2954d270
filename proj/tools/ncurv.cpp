// ncurv: curvature invariant, Euler characteristic and K-tilde for row contractions.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 validation error,
// 4 resource cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ncurv/errors.hpp"
#include "ncurv/report.hpp"
#include "ncurv/spec_io.hpp"
#include "ncurv/sweep.hpp"
#include "ncurv/verify.hpp"

namespace {

using namespace ncurv;
using nlohmann::json;

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kValidation = 3, kResource = 4 };

struct Common {
    RunConfig config;
    std::string backend = "exact";
    std::string format;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--kmax", c.config.k_max, "last level k")->check(CLI::Range(1, 64))->capture_default_str();
    cmd->add_option("--backend", c.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
    cmd->add_option("--tol", c.config.tol, "float rank threshold")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--gap", c.config.gap, "convergence gap")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--cap", c.config.cap, "largest materialized basis (env NCURV_BASIS_CAP)")->capture_default_str();
    cmd->add_option("--out", c.out, "write the report here instead of stdout");
    cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", c.config.seed, "seed for random suites")->capture_default_str();
    cmd->add_flag("--timing", c.config.timing, "include wall-clock time (makes reports nondeterministic)");
}

void finish(Common& c, const std::string& default_format) {
    c.config.backend = c.backend == "exact" ? Backend::exact : Backend::floating;
    c.config.format = c.format.empty() ? default_format : c.format;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + c.out + "'");
    f << text;
}

Params parse_sets(const std::vector<std::string>& sets) {
    Params p;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("parameter '" + s + "' is not key=value");
        p[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return p;
}

template <class S>
ComputeReport<S> compute(const ParsedSpec<S>& spec, const json& input, const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ComputeReport<S> r;
    r.input = input;
    r.config = config;
    const auto opt = config.estimate_options();
    if (spec.contraction) {
        r.invariants = hierarchy_report(*spec.contraction, config.k_max, opt);
        r.freeness = freeness_test(*spec.contraction, config.k_max, opt).verdict;
    }
    if (spec.subspace) {
        const auto& s = *spec.subspace;
        r.tilde = tilde_curvature(s.n, s.alpha, s.generators, config.k_max, opt);
    }
    if (spec.entry) {
        r.catalog_entry = spec.entry->name;
        r.notes = spec.entry->notes;
    }
    if (config.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

template <class S>
std::string run_compute(const json& input, const RunConfig& config) {
    const auto spec = parse_spec<S>(input, config.tol);
    const auto r = compute(spec, input, config);
    if (config.format == "csv") {
        if (!r.invariants) throw ValidationError("csv output needs a contraction; this spec only describes a subspace");
        return to_csv(*r.invariants);
    }
    return to_json(r).dump(2) + "\n";
}

std::string catalog_list(const std::string& format) {
    if (format == "json") {
        json out = json::array();
        for (const auto& info : catalog_index())
            out.push_back({{"name", info.name}, {"summary", info.summary}, {"exact", info.exact_supported}});
        return out.dump(2) + "\n";
    }
    std::string text;
    for (const auto& info : catalog_index()) {
        std::string name = info.name;
        name.resize(std::max<std::size_t>(name.size(), 22), ' ');
        text += name + "  " + info.summary + (info.exact_supported ? "" : " (float only)") + "\n";
    }
    return text;
}

std::string catalog_show(const std::string& name, const std::string& format) {
    const auto& info = catalog_info(name);
    if (format == "json") {
        json params = json::array();
        for (const auto& p : info.params) params.push_back({{"name", p.name}, {"default", p.default_value}, {"description", p.description}});
        return json{{"name", info.name},           {"summary", info.summary},       {"source", info.source}, {"params", params},
                    {"sweep_param", info.sweep_param}, {"exact", info.exact_supported}}
                   .dump(2) +
               "\n";
    }
    std::string text = info.name + ": " + info.summary + "\n  source: " + info.source + "\n";
    text += std::string("  backends: ") + (info.exact_supported ? "exact, float" : "float") + "\n";
    if (!info.sweep_param.empty()) text += "  sweep parameter: " + info.sweep_param + "\n";
    for (const auto& p : info.params)
        text += "  " + p.name + " = " + (p.default_value.empty() ? "(unset)" : p.default_value) + "    " + p.description + "\n";
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature invariant, Euler characteristic and K-tilde of row contractions"};
    app.require_subcommand(1);

    Common compute_opts, verify_opts, sweep_opts, catalog_opts;

    auto* compute_cmd = app.add_subcommand("compute", "invariants of a representation spec file or catalog entry");
    std::string spec_path, compute_entry;
    std::vector<std::string> compute_sets;
    compute_cmd->add_option("spec", spec_path, "JSON representation file");
    compute_cmd->add_option("--entry", compute_entry, "catalog entry instead of a spec file");
    compute_cmd->add_option("--set", compute_sets, "entry parameter key=value (repeatable)");
    add_common(compute_cmd, compute_opts);

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify_cmd->add_option("suite", suite, "paper, hierarchy or oracle")->required()->check(CLI::IsMember({"paper", "hierarchy", "oracle"}));
    add_common(verify_cmd, verify_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a catalog entry over a parameter grid");
    std::string sweep_entry, sweep_param, values, range;
    std::vector<std::string> sweep_sets;
    sweep_cmd->add_option("entry", sweep_entry, "catalog entry")->required();
    sweep_cmd->add_option("--param", sweep_param, "parameter to vary (default: the entry's sweep parameter)");
    auto* values_opt = sweep_cmd->add_option("--values", values, "semicolon-separated values");
    auto* range_opt = sweep_cmd->add_option("--range", range, "start:stop:points");
    values_opt->excludes(range_opt);
    sweep_cmd->add_option("--set", sweep_sets, "fixed parameter key=value (repeatable)");
    add_common(sweep_cmd, sweep_opts);

    auto* catalog_cmd = app.add_subcommand("catalog", "list or describe catalog entries");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "all entries");
    auto* show_cmd = catalog_cmd->add_subcommand("show", "parameters of one entry");
    std::string show_name;
    show_cmd->add_option("name", show_name, "entry name")->required();
    for (auto* cmd : {catalog_cmd, list_cmd, show_cmd})
        cmd->add_option("--format", catalog_opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*compute_cmd) {
            finish(compute_opts, "json");
            const auto& cfg = compute_opts.config;
            json input;
            if (!compute_entry.empty()) {
                if (!spec_path.empty()) throw ParseError("give either a spec file or --entry, not both");
                input = {{"type", "catalog"}, {"payload", {{"name", compute_entry}, {"params", parse_sets(compute_sets)}}}};
            } else {
                if (spec_path.empty()) throw ParseError("compute needs a spec file or --entry");
                input = read_json_file(spec_path);
            }
            emit(compute_opts, cfg.backend == Backend::exact ? run_compute<Exact>(input, cfg) : run_compute<Float>(input, cfg));
            return kOk;
        }
        if (*verify_cmd) {
            finish(verify_opts, "json");
            const auto r = run_verify(suite, verify_opts.config);
            emit(verify_opts, verify_opts.config.format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n");
            std::cerr << suite << ": " << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks passed\n";
            return r.ok() ? kOk : kVerifyFailed;
        }
        if (*sweep_cmd) {
            finish(sweep_opts, "csv");
            const auto& cfg = sweep_opts.config;
            std::vector<std::string> grid;
            if (!range.empty())
                grid = range_grid(range, cfg.backend);
            else if (!values.empty()) {
                std::stringstream in(values);
                for (std::string item; std::getline(in, item, ';');)
                    if (!item.empty()) grid.push_back(item);
            } else {
                throw ParseError("sweep needs --values or --range");
            }
            const auto s = run_sweep(sweep_entry, sweep_param, grid, parse_sets(sweep_sets), cfg);
            emit(sweep_opts, cfg.format == "csv" ? to_csv(s) : to_json(s).dump(2) + "\n");
            return kOk;
        }
        if (*catalog_cmd) {
            const std::string fmt = catalog_opts.format.empty() ? "text" : catalog_opts.format;
            std::cout << (*list_cmd ? catalog_list(fmt) : catalog_show(show_name, fmt));
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const ModelMismatch& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}
