#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "transmin/catalog.hpp"
#include "transmin/errors.hpp"

namespace transmin::cli {

inline constexpr std::string_view kVersion = "transmin 0.1.0";

class UsageError : public Error {
public:
    using Error::Error;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Range&, const Range&) = default;
};

struct GridConfig {
    int nu = 64;
    int nv = 64;
    std::optional<Range> u_range;
    std::optional<Range> v_range;
    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct Tolerances {
    double closed_form = kClosedFormTolerance;
    double quadrature = kQuadratureTolerance;
    double equivalence = 1e-10;
    double ode_trajectory = 1e-7;
    double ode_pointwise = 1e-9;
    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// Every input of a run. Flags fill it first; a --config file then overrides
/// whichever keys it contains.
struct RunConfig {
    std::string command;
    std::optional<std::string> family;
    std::map<std::string, double> params;
    std::string branch = "plus";
    std::optional<std::string> type;
    bool all = false;
    std::optional<std::string> case_id;
    // residual: explicit jets (f', f'', g', g'') or a family point (u, v)
    double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0;
    std::optional<double> u, v;
    GridConfig grid;
    std::uint64_t seed = 42;
    int samples = 200;
    int equivalence_samples = 1000;
    double perturb = 0.0;
    double step = 1e-4;
    Tolerances tolerances;
    std::string output_path; // empty: standard output
    std::string format = "json";
    bool timing = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline void to_json(nlohmann::json& j, const Range& r) { j = nlohmann::json::array({r.lo, r.hi}); }

inline void from_json(const nlohmann::json& j, Range& r) {
    if (!j.is_array() || j.size() != 2) {
        throw UsageError("range must be a two-element array [lo, hi]");
    }
    r.lo = j.at(0).get<double>();
    r.hi = j.at(1).get<double>();
}

inline void to_json(nlohmann::json& j, const GridConfig& g) {
    j = {{"nu", g.nu}, {"nv", g.nv}};
    j["u_range"] = g.u_range ? nlohmann::json(*g.u_range) : nlohmann::json(nullptr);
    j["v_range"] = g.v_range ? nlohmann::json(*g.v_range) : nlohmann::json(nullptr);
}

inline void to_json(nlohmann::json& j, const Tolerances& t) {
    j = {{"closed_form", t.closed_form},       {"quadrature", t.quadrature},
         {"equivalence", t.equivalence},       {"ode_trajectory", t.ode_trajectory},
         {"ode_pointwise", t.ode_pointwise}};
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& o) {
    return o ? nlohmann::json(*o) : nlohmann::json(nullptr);
}

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json::object();
    j["command"] = c.command;
    j["family"] = optional_json(c.family);
    j["params"] = c.params;
    j["branch"] = c.branch;
    j["type"] = optional_json(c.type);
    j["all"] = c.all;
    j["case"] = optional_json(c.case_id);
    j["jets"] = {{"f1", c.f1}, {"f2", c.f2}, {"g1", c.g1}, {"g2", c.g2}};
    j["u"] = optional_json(c.u);
    j["v"] = optional_json(c.v);
    j["grid"] = c.grid;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["equivalence_samples"] = c.equivalence_samples;
    j["perturb"] = c.perturb;
    j["step"] = c.step;
    j["tolerances"] = c.tolerances;
    j["output"] = c.output_path;
    j["format"] = c.format;
    j["timing"] = c.timing;
}

namespace detail {

template <class T>
void read_if(const nlohmann::json& j, const char* key, T& dst) {
    if (j.contains(key)) {
        dst = j.at(key).get<T>();
    }
}

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
    if (j.contains(key)) {
        dst = j.at(key).is_null() ? std::nullopt : std::optional<T>(j.at(key).get<T>());
    }
}

} // namespace detail

/// Overlays the keys present in `j` onto `c`; unknown keys are rejected so a
/// typo cannot silently fall back to a default.
inline void apply_json(const nlohmann::json& j, RunConfig& c) {
    static const std::set<std::string> known = {
        "command", "family", "params", "branch", "type", "all", "case", "jets", "u", "v", "grid",
        "seed", "samples", "equivalence_samples", "perturb", "step", "tolerances", "output",
        "format", "timing"};
    if (!j.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    for (const auto& [k, _] : j.items()) {
        if (!known.contains(k)) {
            throw UsageError("unknown config key '" + k + "'");
        }
    }
    try {
        using detail::read_if;
        using detail::read_optional;
        read_if(j, "command", c.command);
        read_optional(j, "family", c.family);
        if (j.contains("params")) {
            for (const auto& [k, v] : j.at("params").items()) {
                c.params[k] = v.get<double>();
            }
        }
        read_if(j, "branch", c.branch);
        read_optional(j, "type", c.type);
        read_if(j, "all", c.all);
        read_optional(j, "case", c.case_id);
        if (j.contains("jets")) {
            const auto& jj = j.at("jets");
            read_if(jj, "f1", c.f1);
            read_if(jj, "f2", c.f2);
            read_if(jj, "g1", c.g1);
            read_if(jj, "g2", c.g2);
        }
        read_optional(j, "u", c.u);
        read_optional(j, "v", c.v);
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            read_if(g, "nu", c.grid.nu);
            read_if(g, "nv", c.grid.nv);
            read_optional(g, "u_range", c.grid.u_range);
            read_optional(g, "v_range", c.grid.v_range);
        }
        read_if(j, "seed", c.seed);
        read_if(j, "samples", c.samples);
        read_if(j, "equivalence_samples", c.equivalence_samples);
        read_if(j, "perturb", c.perturb);
        read_if(j, "step", c.step);
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            read_if(t, "closed_form", c.tolerances.closed_form);
            read_if(t, "quadrature", c.tolerances.quadrature);
            read_if(t, "equivalence", c.tolerances.equivalence);
            read_if(t, "ode_trajectory", c.tolerances.ode_trajectory);
            read_if(t, "ode_pointwise", c.tolerances.ode_pointwise);
        }
        read_if(j, "output", c.output_path);
        read_if(j, "format", c.format);
        read_if(j, "timing", c.timing);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed config: ") + e.what());
    }
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    apply_json(j, c);
    return c;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

/// Catalog family described by the config (defaults for unspecified parameters).
inline SolutionFamily family_from_config(const RunConfig& c) {
    if (!c.family) {
        throw UsageError(c.command + ": --family is required");
    }
    Branch b;
    if (c.branch == "plus") {
        b = Branch::Plus;
    } else if (c.branch == "minus") {
        b = Branch::Minus;
    } else {
        throw UsageError("--branch must be 'plus' or 'minus'");
    }
    std::optional<TranslationType> t;
    if (c.type) {
        if (*c.type == "I") {
            t = TranslationType::I;
        } else if (*c.type == "II") {
            t = TranslationType::II;
        } else if (*c.type == "III") {
            t = TranslationType::III;
        } else {
            throw UsageError("--type must be I, II or III");
        }
    }
    return make_family(parse_family_id(*c.family), c.params, b, t);
}

} // namespace transmin::cli
