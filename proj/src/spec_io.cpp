#include "ncurv/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "ncurv/errors.hpp"

namespace ncurv {

using nlohmann::json;

namespace {

std::string value_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw ParseError("expected a number or a string, got " + v.dump());
}

template <class S>
RealOf<S> real_from_json(const json& v) {
    const std::string text = value_text(v);
    try {
        if constexpr (backend_of<S>() == Backend::exact)
            return parse_rational(text);
        else
            return parse_real(text);
    } catch (const std::domain_error&) {
        throw ValidationError("value " + text + " has no exact rational representation; use the float backend");
    } catch (const std::invalid_argument& e) {
        throw ParseError("value " + text + ": " + e.what());
    }
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

template <class T>
T get_as(const json& obj, const char* key, T fallback) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

Word word_from_json(const json& v, int n) {
    if (v.is_number_integer()) return parse_word(std::to_string(v.get<long>()), n);
    if (!v.is_string()) throw ParseError("expected a word, got " + v.dump());
    return parse_word(v.get<std::string>(), n);
}

template <class S>
Matrix<S> matrix_from_json(const json& rows, std::size_t expect = 0) {
    if (!rows.is_array()) throw ParseError("matrix must be an array of rows");
    const std::size_t r = rows.size();
    if (expect && r != expect) throw ParseError("matrix has " + std::to_string(r) + " rows, expected " + std::to_string(expect));
    Matrix<S> m(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != r) throw ParseError("matrix must be square");
        for (std::size_t j = 0; j < r; ++j) m(i, j) = scalar_from_json<S>(rows[i][j]);
    }
    return m;
}

template <class S>
Generator<S> generator_from_json(const json& g, int n, std::uint32_t alpha) {
    const std::string kind = get_as<std::string>(g, "kind", "finite");
    const auto copy = get_as<std::uint32_t>(g, "copy", 0);
    if (copy >= alpha) throw ValidationError("generator copy index " + std::to_string(copy) + " outside multiplicity");
    FockVector<S> finite(n, alpha);
    if (g.contains("coefficients")) {
        const json& c = g.at("coefficients");
        if (!c.is_object()) throw ParseError("coefficients must be an object word -> value");
        for (const auto& [w, v] : c.items()) finite.add(copy, parse_word(w, n), scalar_from_json<S>(v));
    }
    if (kind == "finite") return Generator<S>(finite);
    if (kind != "geometric") throw ParseError("generator kind must be 'finite' or 'geometric', got '" + kind + "'");
    Ray<S> ray;
    ray.copy = copy;
    ray.stem = g.contains("prefix") ? word_from_json(g.at("prefix"), n) : Word{};
    ray.letter = get_as<int>(g, "letter", 1);
    if (ray.letter < 1 || ray.letter > n) throw ValidationError("ray letter outside [1, n]");
    if (g.contains("head")) finite.add(copy, ray.stem, scalar_from_json<S>(g.at("head")));
    ray.scale = scalar_from_json<S>(field(g, "scale"));
    ray.ratio = scalar_from_json<S>(field(g, "ratio"));
    return Generator<S>(finite, ray);
}

template <class S>
std::vector<Generator<S>> generators_from_json(const json& payload, int n, std::uint32_t alpha) {
    const json& list = field(payload, "generators");
    if (!list.is_array()) throw ParseError("generators must be an array");
    std::vector<Generator<S>> out;
    for (const auto& g : list) out.push_back(generator_from_json<S>(g, n, alpha));
    return out;
}

template <class S>
ParsedSpec<S> parse_node(const json& spec, double tol, int depth) {
    if (depth > 16) throw ParseError("spec nesting too deep");
    if (!spec.is_object()) throw ParseError("spec must be a JSON object");
    const std::string type = get_as<std::string>(spec, "type", "");
    const json empty = json::object();
    const json& payload = spec.contains("payload") ? spec.at("payload") : empty;
    ParsedSpec<S> out;
    if (type == "catalog") {
        Params params;
        if (payload.contains("params")) {
            if (!payload.at("params").is_object()) throw ParseError("catalog params must be an object");
            for (const auto& [k, v] : payload.at("params").items()) params[k] = value_text(v);
        }
        auto entry = make_entry<S>(get_as<std::string>(payload, "name", ""), params);
        out.contraction = entry.contraction;
        out.subspace = entry.subspace;
        out.entry = std::move(entry);
        return out;
    }
    const int n = get_as<int>(spec, "n", 0);
    if (n < 2) throw ParseError("field 'n' must be an integer >= 2");
    const auto alpha = get_as<std::uint32_t>(spec, "alpha", 1);
    if (type == "dense") {
        const json& ms = field(payload, "matrices");
        if (!ms.is_array() || ms.size() != static_cast<std::size_t>(n)) throw ParseError("dense spec needs n matrices");
        std::vector<Matrix<S>> mats;
        for (const auto& m : ms) mats.push_back(matrix_from_json<S>(m, mats.empty() ? 0 : mats[0].rows()));
        out.contraction = make_dense<S>(std::move(mats), tol);
    } else if (type == "left_regular") {
        out.contraction = make_left_regular<S>(n, alpha);
    } else if (type == "atomic") {
        const Word ring = word_from_json(field(payload, "ring"), n);
        if (payload.contains("moduli")) {
            std::vector<RealOf<S>> moduli;
            for (const auto& v : payload.at("moduli")) moduli.push_back(real_from_json<S>(v));
            out.contraction = make_decaying_atomic_moduli<S>(n, ring, moduli);
        } else {
            const json& ls = field(payload, "lambda");
            if (!ls.is_array()) throw ParseError("lambda must be an array");
            std::vector<S> lambda;
            std::vector<RealOf<S>> moduli;
            bool exact_values = true;
            for (const auto& v : ls) {
                try {
                    lambda.push_back(scalar_from_json<S>(v));
                    moduli.push_back(abs2(lambda.back()));
                } catch (const ValidationError&) {
                    // An irrational factor sqrt(x) in the exact backend keeps only |lambda|^2 = x.
                    std::string t = value_text(v);
                    if (!t.empty() && t.front() == '-') t.erase(0, 1);
                    if (t.rfind("sqrt(", 0) != 0 || t.back() != ')') throw;
                    moduli.push_back(real_from_json<S>(json(t.substr(5, t.size() - 6))));
                    exact_values = false;
                }
            }
            out.contraction = exact_values ? make_decaying_atomic<S>(n, ring, lambda) : make_decaying_atomic_moduli<S>(n, ring, moduli);
        }
    } else if (type == "compression") {
        const std::string orient = get_as<std::string>(payload, "orientation", "complement");
        if (orient != "complement" && orient != "invariant") throw ParseError("orientation must be 'complement' or 'invariant'");
        const auto check_depth = get_as<std::size_t>(payload, "depth", 8);
        out.contraction = make_compression<S>(n, alpha, generators_from_json<S>(payload, n, alpha),
                                              orient == "complement" ? Orientation::complement : Orientation::invariant, check_depth, tol);
    } else if (type == "subspace") {
        out.subspace = SubspaceSpec<S>{n, alpha, generators_from_json<S>(payload, n, alpha)};
    } else if (type == "direct_sum") {
        const json& parts = field(payload, "parts");
        if (!parts.is_array() || parts.size() < 2) throw ParseError("direct_sum needs at least two parts");
        std::optional<RowContraction<S>> acc;
        for (const auto& p : parts) {
            auto part = parse_node<S>(p, tol, depth + 1);
            if (!part.contraction) throw ParseError("direct_sum parts must be contractions");
            if (part.contraction->n() != n) throw ValidationError("direct_sum parts must share n");
            acc = acc ? direct_sum(*acc, *part.contraction) : *part.contraction;
        }
        out.contraction = acc;
    } else if (type == "unitary_mix") {
        auto base = parse_node<S>(field(payload, "base"), tol, depth + 1);
        if (!base.contraction) throw ParseError("unitary_mix base must be a contraction");
        if (base.contraction->n() != n) throw ValidationError("unitary_mix base must share n");
        out.contraction = unitary_mix(*base.contraction, matrix_from_json<S>(field(payload, "unitary"), static_cast<std::size_t>(n)), tol);
    } else {
        throw ParseError("unknown spec type '" + type + "'");
    }
    return out;
}

}  // namespace

template <class S>
S scalar_from_json(const json& v) {
    if (v.is_array()) {
        if (v.size() != 2) throw ParseError("complex values are [re, im] pairs");
        return S(real_from_json<S>(v[0]), real_from_json<S>(v[1]));
    }
    return S(real_from_json<S>(v));
}

template <class S>
ParsedSpec<S> parse_spec(const json& spec, double tol) {
    try {
        return parse_node<S>(spec, tol, 0);
    } catch (const json::exception& e) {
        throw ParseError(std::string("spec: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ValidationError(e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

template ParsedSpec<Exact> parse_spec<Exact>(const json&, double);
template ParsedSpec<Float> parse_spec<Float>(const json&, double);
template Exact scalar_from_json<Exact>(const json&);
template Float scalar_from_json<Float>(const json&);

}  // namespace ncurv
