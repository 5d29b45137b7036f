#pragma once

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "transmin/catalog.hpp"
#include "transmin/cli/config.hpp"
#include "transmin/ode.hpp"
#include "transmin/pde.hpp"
#include "transmin/sweep.hpp"

namespace transmin::cli {

using json = nlohmann::json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;

struct CommandResult {
    int exit_code = kExitPass;
    std::string output;
};

inline std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

// ---------------------------------------------------------------------------
// Record builders shared by verify and report
// ---------------------------------------------------------------------------

inline json family_header(const SolutionFamily& fam) {
    const FamilyInfo& fi = info(fam.id);
    json j;
    j["family"] = std::string(fi.name);
    j["theorem"] = std::string(fi.theorem);
    j["case"] = std::string(to_string(fi.case_id));
    j["type"] = std::string(to_string(fam.surface_type()));
    j["branch"] = fi.has_branch ? json(std::string(to_string(fam.branch))) : json(nullptr);
    j["params"] = fam.params;
    j["quadrature"] = fi.quadrature;
    return j;
}

inline json verification_record(const SolutionFamily& fam, const RunConfig& cfg) {
    json j = family_header(fam);
    const auto t0 = std::chrono::steady_clock::now();
    VerifyOptions opt;
    opt.perturb = cfg.perturb;
    opt.closed_tolerance = cfg.tolerances.closed_form;
    opt.quadrature_tolerance = cfg.tolerances.quadrature;
    j["n_samples"] = cfg.samples;
    j["perturb"] = cfg.perturb;
    try {
        const FamilyVerification r = verify_family(fam, cfg.samples, cfg.seed, opt);
        j["max_abs_numerator"] = r.max_abs_numerator;
        j["max_abs_residual"] = r.max_abs_residual;
        j["worst_numerator"] = {{"u", r.worst_numerator.u}, {"v", r.worst_numerator.v}};
        j["worst_residual"] = {{"u", r.worst_residual.u}, {"v", r.worst_residual.v}};
        j["frame_samples"] = r.numerator_samples;
        j["tolerance"] = r.tolerance;
        j["domain"] = {{"u", interval_json(r.domain.u)}, {"v", interval_json(r.domain.v)}};
        j["verdict"] = r.pass ? "pass" : "fail";
        j["error"] = nullptr;
    } catch (const EmptyDomain& e) {
        j["max_abs_numerator"] = nullptr;
        j["max_abs_residual"] = nullptr;
        j["tolerance"] = info(fam.id).quadrature ? opt.quadrature_tolerance : opt.closed_tolerance;
        j["verdict"] = "fail";
        j["error"] = std::string("EmptyDomain: ") + e.what();
    }
    if (cfg.timing) {
        j["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    return j;
}

inline json equivalence_record(CaseId c, const RunConfig& cfg) {
    const EquivalenceSweep s = equivalence_sweep(c, cfg.equivalence_samples, cfg.seed);
    json j;
    j["case"] = std::string(to_string(c));
    j["requested"] = cfg.equivalence_samples;
    j["accepted"] = s.accepted;
    j["attempts"] = s.attempts;
    j["acceptance_rate"] = s.acceptance_rate();
    j["max_rel_deviation"] = s.max_rel_deviation;
    j["tolerance"] = cfg.tolerances.equivalence;
    j["verdict"] = s.accepted == cfg.equivalence_samples && s.max_rel_deviation <= cfg.tolerances.equivalence
                       ? "pass"
                       : "fail";
    return j;
}

/// RK4 against the closed-form profile on the axis interval, plus a pointwise
/// check of h' = phi(h) on seeded samples of that interval.
inline std::vector<json> ode_records(const SolutionFamily& fam, const RunConfig& cfg) {
    const FamilyProfiles fp = family_profiles(fam);
    std::vector<json> out;
    for (const OdeBinding& b : fp.odes) {
        const AxisProfile& ax = b.axis == Axis::U ? fp.u_axis : fp.v_axis;
        json j = family_header(fam);
        j["axis"] = b.axis == Axis::U ? "u" : "v";
        j["ode"] = std::string(to_string(b.ode.id));
        j["k"] = b.ode.k;
        j["span"] = interval_json(ax.interval);
        j["step"] = cfg.step;
        j["tolerance_trajectory"] = cfg.tolerances.ode_trajectory;
        j["tolerance_pointwise"] = cfg.tolerances.ode_pointwise;
        try {
            const Jet2 start = ax.profile(ax.interval.lo);
            const Trajectory tr = integrate(b.ode, start.d1, ax.interval, cfg.step, start.v);
            const double traj = compare_profile(tr, ax.profile);
            SplitMix64 rng(cfg.seed);
            double point = 0.0;
            for (int i = 0; i < cfg.samples; ++i) {
                const Jet2 p = ax.profile(rng.uniform(ax.interval.lo, ax.interval.hi));
                point = std::max(point, std::abs(p.d2 - b.ode.rhs(p.d1)));
            }
            j["trajectory_error"] = traj;
            j["pointwise_residual"] = point;
            j["verdict"] = traj <= cfg.tolerances.ode_trajectory && point <= cfg.tolerances.ode_pointwise ? "pass"
                                                                                                           : "fail";
            j["error"] = nullptr;
        } catch (const Error& e) {
            j["trajectory_error"] = nullptr;
            j["pointwise_residual"] = nullptr;
            j["verdict"] = "fail";
            j["error"] = e.what();
        }
        out.push_back(std::move(j));
    }
    return out;
}

inline json summarize(const std::vector<const json*>& groups) {
    int total = 0, passed = 0;
    for (const json* g : groups) {
        for (const json& r : *g) {
            ++total;
            passed += r.at("verdict") == "pass" ? 1 : 0;
        }
    }
    return {{"total", total}, {"passed", passed}, {"failed", total - passed},
            {"verdict", passed == total ? "pass" : "fail"}};
}

// ---------------------------------------------------------------------------
// Markdown
// ---------------------------------------------------------------------------

inline std::string md_number(const json& x) { return x.is_null() ? "n/a" : sci(x.get<double>()); }

inline std::string md_params(const json& params) {
    std::string s;
    for (const auto& [k, v] : params.items()) {
        if (!s.empty()) {
            s += ", ";
        }
        s += k + "=" + g17(v.get<double>());
    }
    return s;
}

inline std::string case_title(CaseId c) {
    const CaseBinding b = binding(c);
    std::string types;
    for (TranslationType t : {TranslationType::I, TranslationType::II, TranslationType::III}) {
        if (b.admits(t)) {
            types += (types.empty() ? "" : "/") + std::string(to_string(t));
        }
    }
    return std::string(to_string(c)) + ": " + std::string(to_string(b.signature)) + ", " +
           std::string(to_string(b.connection)) + ", Type " + types;
}

inline void md_verification_sections(std::ostringstream& md, const json& records) {
    for (std::string_view th : theorems()) {
        md << "## Theorem " << th << "\n\n";
        std::vector<CaseId> cases;
        for (FamilyId id : families_of_theorem(th)) {
            if (std::find(cases.begin(), cases.end(), info(id).case_id) == cases.end()) {
                cases.push_back(info(id).case_id);
            }
        }
        for (CaseId c : cases) {
            md << "Case " << case_title(c) << "\n\n";
        }
        md << "| family | type | branch | parameters | max abs numerator | max abs residual | tolerance | verdict |\n";
        md << "|---|---|---|---|---|---|---|---|\n";
        bool any = false;
        for (const json& r : records) {
            if (r.at("theorem") != th) {
                continue;
            }
            any = true;
            md << "| " << r.at("family").get<std::string>() << " | " << r.at("type").get<std::string>() << " | "
               << (r.at("branch").is_null() ? "" : r.at("branch").get<std::string>()) << " | "
               << md_params(r.at("params")) << " | " << md_number(r.at("max_abs_numerator")) << " | "
               << md_number(r.at("max_abs_residual")) << " | " << sci(r.at("tolerance").get<double>()) << " | "
               << r.at("verdict").get<std::string>() << " |\n";
        }
        if (!any) {
            md << "| (not run) | | | | | | | |\n";
        }
        md << "\n";
        for (const json& r : records) {
            if (r.at("theorem") == th && !r.at("error").is_null()) {
                md << "- " << r.at("family").get<std::string>() << ": " << r.at("error").get<std::string>() << "\n";
            }
        }
        md << "\n";
    }
}

inline std::string render_markdown(const json& report) {
    std::ostringstream md;
    md << "# Minimal translation surface verification\n\n";
    md << "- version: " << report.at("version").get<std::string>() << "\n";
    md << "- command: " << report.at("config").at("command").get<std::string>() << "\n";
    md << "- seed: " << report.at("config").at("seed").get<std::uint64_t>() << "\n";
    md << "- samples per family: " << report.at("config").at("samples").get<int>() << "\n";
    md << "- perturbation: " << g17(report.at("config").at("perturb").get<double>()) << "\n\n";
    md_verification_sections(md, report.at("records"));

    if (report.contains("equivalence")) {
        md << "## Derivation equivalence\n\n";
        md << "| case | accepted | attempts | acceptance rate | max rel deviation | verdict |\n|---|---|---|---|---|---|\n";
        for (const json& r : report.at("equivalence")) {
            md << "| " << r.at("case").get<std::string>() << " | " << r.at("accepted").get<int>() << " | "
               << r.at("attempts").get<int>() << " | " << g17(r.at("acceptance_rate").get<double>()) << " | "
               << sci(r.at("max_rel_deviation").get<double>()) << " | " << r.at("verdict").get<std::string>() << " |\n";
        }
        md << "\n";
    }
    if (report.contains("ode")) {
        md << "## Reduced ODEs\n\n";
        md << "| family | axis | ode | k | span | trajectory error | pointwise residual | verdict |\n|---|---|---|---|---|---|---|---|\n";
        for (const json& r : report.at("ode")) {
            md << "| " << r.at("family").get<std::string>() << " | " << r.at("axis").get<std::string>() << " | "
               << r.at("ode").get<std::string>() << " | " << g17(r.at("k").get<double>()) << " | ("
               << g17(r.at("span")[0].get<double>()) << ", " << g17(r.at("span")[1].get<double>()) << ") | "
               << md_number(r.at("trajectory_error")) << " | " << md_number(r.at("pointwise_residual")) << " | "
               << r.at("verdict").get<std::string>() << " |\n";
        }
        md << "\n";
    }
    const json& s = report.at("summary");
    md << "## Summary\n\n";
    md << "- checks: " << s.at("total").get<int>() << "\n";
    md << "- passed: " << s.at("passed").get<int>() << "\n";
    md << "- failed: " << s.at("failed").get<int>() << "\n";
    md << "- verdict: " << s.at("verdict").get<std::string>() << "\n\n";
    md << "Configuration:\n\n```json\n" << report.at("config").dump(2) << "\n```\n";
    return md.str();
}

inline std::string render(const json& report, const std::string& format) {
    if (format == "json") {
        return report.dump(2) + "\n";
    }
    if (format == "markdown") {
        return render_markdown(report);
    }
    throw UsageError("format '" + format + "' is not available for this command (json, markdown)");
}

inline json report_skeleton(const RunConfig& cfg) {
    json j;
    j["version"] = std::string(kVersion);
    j["config"] = cfg;
    return j;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline void require_positive_samples(const RunConfig& cfg) {
    if (cfg.samples <= 0) {
        throw UsageError("--samples must be positive");
    }
}

inline CommandResult cmd_residual(const RunConfig& cfg) {
    json j = report_skeleton(cfg);
    CaseId c;
    Jet2 fj, gj;
    if (cfg.family) {
        const SolutionFamily fam = family_from_config(cfg);
        if (!cfg.u || !cfg.v) {
            throw UsageError("residual --family needs --u and --v");
        }
        const FamilyProfiles fp = family_profiles(fam);
        c = fp.case_id;
        if (cfg.case_id && parse_case_id(*cfg.case_id) != c) {
            throw UsageError("--case does not match the family's case " + std::string(to_string(c)));
        }
        fj = fp.surface.f(*cfg.u);
        gj = fp.surface.g(*cfg.v);
        j["family"] = family_header(fam);
        j["point"] = {{"u", *cfg.u}, {"v", *cfg.v}};
    } else {
        if (!cfg.case_id) {
            throw UsageError("residual needs --case or --family");
        }
        c = parse_case_id(*cfg.case_id);
        fj = {0.0, cfg.f1, cfg.f2};
        gj = {0.0, cfg.g1, cfg.g2};
    }
    const CaseBinding b = binding(c);
    j["case"] = std::string(to_string(c));
    j["jets"] = {{"f1", fj.d1}, {"f2", fj.d2}, {"g1", gj.d1}, {"g2", gj.d2}};
    const double res = residual(c, fj, gj);
    j["residual"] = res;
    json frames = json::array();
    for (TranslationType t : {TranslationType::I, TranslationType::II, TranslationType::III}) {
        if (!b.admits(t)) {
            continue;
        }
        json fr;
        fr["type"] = std::string(to_string(t));
        try {
            const FramePoint p = frame_from_jets(t, b.signature, fj, gj);
            const double num = mean_curvature(AmbientSpace{b.signature, b.connection}, p).numerator;
            const double lam = equivalence_factor(c, t, p);
            fr["numerator"] = num;
            fr["lambda"] = lam;
            fr["rel_deviation"] = std::abs(lam * num - res) / (1.0 + std::abs(res));
        } catch (const DegenerateSurface& e) {
            fr["error"] = std::string("DegenerateSurface: ") + e.what();
        }
        frames.push_back(fr);
    }
    j["frames"] = frames;
    if (cfg.format == "markdown") {
        std::ostringstream md;
        md << "# Residual " << to_string(c) << "\n\n- f' = " << g17(fj.d1) << ", f'' = " << g17(fj.d2)
           << ", g' = " << g17(gj.d1) << ", g'' = " << g17(gj.d2) << "\n- residual = " << g17(res) << "\n";
        return {kExitPass, md.str()};
    }
    return {kExitPass, render(j, cfg.format)};
}

inline CommandResult cmd_verify(const RunConfig& cfg) {
    require_positive_samples(cfg);
    json j = report_skeleton(cfg);
    json records = json::array();
    if (cfg.all) {
        for (FamilyId id : kAllFamilies) {
            records.push_back(verification_record(make_family(id), cfg));
        }
    } else {
        records.push_back(verification_record(family_from_config(cfg), cfg));
    }
    j["records"] = records;
    j["summary"] = summarize({&j["records"]});
    const int code = j["summary"]["verdict"] == "pass" ? kExitPass : kExitFail;
    return {code, render(j, cfg.format)};
}

inline CommandResult cmd_equivalence(const RunConfig& cfg) {
    if (!cfg.case_id) {
        throw UsageError("equivalence needs --case");
    }
    if (cfg.equivalence_samples <= 0) {
        throw UsageError("--samples must be positive");
    }
    const CaseId c = parse_case_id(*cfg.case_id);
    json j = report_skeleton(cfg);
    j["records"] = json::array();
    j["equivalence"] = json::array({equivalence_record(c, cfg)});
    j["summary"] = summarize({&j["equivalence"]});
    const int code = j["summary"]["verdict"] == "pass" ? kExitPass : kExitFail;
    return {code, render(j, cfg.format)};
}

inline CommandResult cmd_ode_compare(const RunConfig& cfg) {
    require_positive_samples(cfg);
    if (!(cfg.step > 0.0)) {
        throw UsageError("--step must be positive");
    }
    const SolutionFamily fam = family_from_config(cfg);
    json j = report_skeleton(cfg);
    j["records"] = json::array();
    j["ode"] = json::array();
    for (json& r : ode_records(fam, cfg)) {
        j["ode"].push_back(std::move(r));
    }
    if (j["ode"].empty()) {
        throw UsageError("family " + std::string(to_string(fam.id)) + " has no reduced ODE");
    }
    j["summary"] = summarize({&j["ode"]});
    const int code = j["summary"]["verdict"] == "pass" ? kExitPass : kExitFail;
    return {code, render(j, cfg.format)};
}

/// Mesh text for the immersion on a grid inside the admissible domain.
inline CommandResult cmd_mesh(const RunConfig& cfg) {
    if (cfg.format != "obj" && cfg.format != "csv") {
        throw UsageError("mesh --format must be obj or csv");
    }
    if (cfg.grid.nu < 2 || cfg.grid.nv < 2) {
        throw UsageError("mesh needs --nu and --nv of at least 2");
    }
    const SolutionFamily fam = family_from_config(cfg);
    const BuiltFamily built = build(fam);
    auto resolve = [&](const std::optional<Range>& r, const Interval& dom, const char* axis) {
        if (!r) {
            return dom;
        }
        const Interval want{r->lo, r->hi};
        if (!(want.hi > want.lo)) {
            throw UsageError(std::string("--") + axis + "-range needs lo < hi");
        }
        if (!dom.covers(want)) {
            const Interval clip = dom.intersect(want);
            std::string msg = std::string(axis) + "-range " + to_string(want) +
                              " leaves the admissible domain " + to_string(dom);
            msg += clip.hi > clip.lo ? "; suggested clipped range " + to_string(clip) : "; ranges do not overlap";
            throw EmptyDomain(msg);
        }
        return want;
    };
    const Interval ur = resolve(cfg.grid.u_range, built.domain.u, "u");
    const Interval vr = resolve(cfg.grid.v_range, built.domain.v, "v");
    const int nu = cfg.grid.nu, nv = cfg.grid.nv;
    const std::vector<Vec3> pts = sample_grid(built.surface, ur, vr, nu, nv);

    std::string out;
    out.reserve(pts.size() * 64);
    char line[160];
    if (cfg.format == "obj") {
        out += "# " + std::string(kVersion) + " " + std::string(to_string(fam.id)) + " " +
               std::to_string(nu) + "x" + std::to_string(nv) + "\n";
        for (const Vec3& p : pts) {
            std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", p.c1, p.c2, p.c3);
            out += line;
        }
        for (int i = 0; i + 1 < nu; ++i) {
            for (int k = 0; k + 1 < nv; ++k) {
                const int a = i * nv + k + 1;
                std::snprintf(line, sizeof line, "f %d %d %d %d\n", a, a + nv, a + nv + 1, a + 1);
                out += line;
            }
        }
    } else {
        out += "u,v,x,y,z\n";
        std::size_t n = 0;
        for (int i = 0; i < nu; ++i) {
            const double uu = ur.lo + (ur.hi - ur.lo) * i / (nu - 1);
            for (int k = 0; k < nv; ++k) {
                const double vv = vr.lo + (vr.hi - vr.lo) * k / (nv - 1);
                const Vec3& p = pts[n++];
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", uu, vv, p.c1, p.c2, p.c3);
                out += line;
            }
        }
    }
    return {kExitPass, out};
}

/// Every theorem suite over all parameter settings, every equivalence sweep and
/// every ODE comparison; a single family restricts the suites to that family.
inline CommandResult cmd_report(const RunConfig& cfg) {
    require_positive_samples(cfg);
    if (!cfg.all && !cfg.family) {
        throw UsageError("report needs --all or --family");
    }
    json j = report_skeleton(cfg);
    j["records"] = json::array();
    j["equivalence"] = json::array();
    j["ode"] = json::array();
    std::vector<SolutionFamily> fams;
    if (cfg.all) {
        for (FamilyId id : kAllFamilies) {
            for (SolutionFamily& f : parameter_settings(id)) {
                fams.push_back(std::move(f));
            }
        }
    } else {
        fams.push_back(family_from_config(cfg));
    }
    for (const SolutionFamily& f : fams) {
        j["records"].push_back(verification_record(f, cfg));
    }
    if (cfg.all) {
        for (CaseId c : kAllCases) {
            j["equivalence"].push_back(equivalence_record(c, cfg));
        }
        for (FamilyId id : kAllFamilies) {
            for (json& r : ode_records(make_family(id), cfg)) {
                j["ode"].push_back(std::move(r));
            }
        }
    } else {
        j["equivalence"].push_back(equivalence_record(info(fams[0].id).case_id, cfg));
        for (json& r : ode_records(fams[0], cfg)) {
            j["ode"].push_back(std::move(r));
        }
    }
    j["summary"] = summarize({&j["records"], &j["equivalence"], &j["ode"]});
    const int code = j["summary"]["verdict"] == "pass" ? kExitPass : kExitFail;
    return {code, render(j, cfg.format)};
}

inline CommandResult dispatch(const RunConfig& cfg) {
    if (cfg.command == "residual") return cmd_residual(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "equivalence") return cmd_equivalence(cfg);
    if (cfg.command == "ode-compare") return cmd_ode_compare(cfg);
    if (cfg.command == "mesh") return cmd_mesh(cfg);
    if (cfg.command == "report") return cmd_report(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

} // namespace transmin::cli
