#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "transmin/cli/commands.hpp"
#include "transmin/cli/config.hpp"

namespace transmin::cli {

namespace detail {

inline double parse_number(const std::string& flag, const std::string& text) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw UsageError("value '" + text + "' for " + flag + " is not a number");
    }
    return x;
}

inline Range parse_range(const std::string& flag, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw UsageError(flag + " expects lo,hi");
    }
    return {parse_number(flag, text.substr(0, comma)), parse_number(flag, text.substr(comma + 1))};
}

/// Leftover `--name value` / `--name=value` tokens become family parameters.
inline void parse_family_params(const std::vector<std::string>& extras, RunConfig& cfg) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& tok = extras[i];
        if (tok.rfind("--", 0) != 0 || tok.size() < 3) {
            throw UsageError("unexpected argument '" + tok + "'");
        }
        std::string name = tok.substr(2), value;
        if (const auto eq = name.find('='); eq != std::string::npos) {
            value = name.substr(eq + 1);
            name = name.substr(0, eq);
        } else {
            if (i + 1 >= extras.size()) {
                throw UsageError("parameter --" + name + " needs a value");
            }
            value = extras[++i];
        }
        cfg.params[name] = parse_number("--" + name, value);
    }
    if (!cfg.params.empty() && !cfg.family) {
        throw UsageError("family parameters given without --family");
    }
}

} // namespace detail

// Raised after CLI11 has already printed help, version or a parse error.
struct ExitRequest {
    int code;
};

/// Parses argv into a RunConfig. Throws UsageError for bad values and
/// ExitRequest once CLI11 has handled --help, --version or a malformed flag.
inline RunConfig parse_args(int argc, const char* const* argv) {
    CLI::App app{"Verification engine for minimal translation surfaces", "transmin"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunConfig cfg;
    std::string config_path, u_range, v_range, family, case_id, type;
    double u = 0.0, v = 0.0;
    int samples = 0;

    struct Sub {
        CLI::App* app;
        std::string name;
    };
    std::vector<Sub> subs;
    auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->allow_extras();
        s->add_option("--config", config_path, "JSON config; its keys override flags");
        s->add_option("--output,-o", cfg.output_path, "output file (default: standard output)");
        s->add_option("--format", cfg.format, "output format");
        s->add_option("--seed", cfg.seed, "SplitMix64 seed");
        s->add_option("--samples", samples, "number of samples");
        subs.push_back({s, name});
        return s;
    };
    auto family_opts = [&](CLI::App* s) {
        s->add_option("--family", family, "family id, e.g. F2_23");
        s->add_option("--branch", cfg.branch, "plus or minus for families with a +- branch");
        s->add_option("--type", type, "rebind to surface type I, II or III");
    };

    CLI::App* residual = add("residual", "evaluate a closed-form residual");
    residual->add_option("--case", case_id, "case id, e.g. E_M_I");
    residual->add_option("--f1", cfg.f1, "f'");
    residual->add_option("--f2", cfg.f2, "f''");
    residual->add_option("--g1", cfg.g1, "g'");
    residual->add_option("--g2", cfg.g2, "g''");
    auto* uo = residual->add_option("--u", u, "u coordinate (with --family)");
    auto* vo = residual->add_option("--v", v, "v coordinate (with --family)");
    family_opts(residual);

    CLI::App* verify = add("verify", "run a theorem suite on one family or all of them");
    family_opts(verify);
    verify->add_flag("--all", cfg.all, "every family with default parameters");
    verify->add_option("--perturb", cfg.perturb, "add perturb*u^2 to f (negative control)");
    verify->add_flag("--timing", cfg.timing, "include elapsed_ms per record");

    CLI::App* equiv = add("equivalence", "sweep lambda*numerator against the closed-form residual");
    equiv->add_option("--case", case_id, "case id");

    CLI::App* ode = add("ode-compare", "RK4 trajectories against closed-form profiles");
    family_opts(ode);
    ode->add_option("--step", cfg.step, "RK4 step");

    CLI::App* mesh = add("mesh", "export the immersion as an OBJ quad mesh or CSV");
    family_opts(mesh);
    mesh->add_option("--nu", cfg.grid.nu, "grid points along u");
    mesh->add_option("--nv", cfg.grid.nv, "grid points along v");
    mesh->add_option("--u-range", u_range, "lo,hi");
    mesh->add_option("--v-range", v_range, "lo,hi");

    CLI::App* report = add("report", "theorem suites, equivalence sweeps and ODE checks");
    family_opts(report);
    report->add_flag("--all", cfg.all, "all families, all parameter settings");
    report->add_option("--perturb", cfg.perturb, "add perturb*u^2 to f in every family");
    report->add_flag("--timing", cfg.timing, "include elapsed_ms per record");
    report->add_option("--step", cfg.step, "RK4 step for the ODE section");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
        args.emplace_back(argv[i]);
    }
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        throw ExitRequest{app.exit(e) == 0 ? 0 : kExitUsage};
    }

    for (const Sub& s : subs) {
        if (!s.app->parsed()) {
            continue;
        }
        cfg.command = s.name;
        if (s.name == "mesh" && s.app->get_option("--format")->count() == 0) {
            cfg.format = "obj";
        }
        if (s.app->get_option("--samples")->count() > 0) {
            (s.name == "equivalence" ? cfg.equivalence_samples : cfg.samples) = samples;
        }
        if (!family.empty()) {
            cfg.family = family;
        }
        if (!case_id.empty()) {
            cfg.case_id = case_id;
        }
        if (!type.empty()) {
            cfg.type = type;
        }
        if (s.name == "residual") {
            if (uo->count() > 0) cfg.u = u;
            if (vo->count() > 0) cfg.v = v;
        }
        if (!u_range.empty()) cfg.grid.u_range = detail::parse_range("--u-range", u_range);
        if (!v_range.empty()) cfg.grid.v_range = detail::parse_range("--v-range", v_range);
        detail::parse_family_params(s.app->remaining(), cfg);
        if (!config_path.empty()) {
            apply_json(load_json_file(config_path), cfg);
            cfg.command = s.name;
        }
    }
    return cfg;
}

inline void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        throw UsageError("cannot write output file '" + cfg.output_path + "'");
    }
}

/// Program entry: 0 on pass, 1 on usage or configuration errors, 2 when a
/// verification fails.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const ExitRequest& e) {
        return e.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        const CommandResult r = dispatch(cfg);
        write_output(cfg, r.output, out);
        return r.exit_code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const ParameterConstraintViolation& e) {
        err << "ParameterConstraintViolation: " << e.what() << "\n";
    } catch (const UnknownCase& e) {
        err << "UnknownCase: " << e.what() << "\n";
    } catch (const EmptyDomain& e) {
        err << "EmptyDomain: " << e.what() << "\n";
    } catch (const DomainError& e) {
        err << "DomainError: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

} // namespace transmin::cli
