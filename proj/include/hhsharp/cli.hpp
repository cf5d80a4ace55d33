#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hhsharp/errors.hpp"
#include "hhsharp/function_spec.hpp"
#include "hhsharp/geometry_checks.hpp"
#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/mixed_norm.hpp"
#include "hhsharp/operators.hpp"
#include "hhsharp/quadrature.hpp"
#include "hhsharp/sharp_constants.hpp"

// Subcommand implementations behind tools/hhsharp. Every command returns a
// Report whose payload depends only on the RunConfig, so identical configs
// render byte-identical output.

namespace hhsharp::cli
{

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

enum class Command
{
    constants,
    verify_sharp,
    apply,
    norm,
    geom_check,
};

inline const char* command_name(Command c)
{
    switch (c)
    {
    case Command::constants:
        return "constants";
    case Command::verify_sharp:
        return "verify-sharp";
    case Command::apply:
        return "apply";
    case Command::norm:
        return "norm";
    case Command::geom_check:
        return "geom-check";
    }
    return "unknown";
}

enum class Format
{
    csv,
    json,
};

/// List-valued fields span a grid for `constants`; every other command
/// requires a single value.
struct RunConfig
{
    std::vector<int> n{1};
    std::vector<double> p{2.0};
    std::vector<double> p_bar_1{2.0};
    std::vector<double> p_bar_2{2.0};
    std::vector<std::string> kinds{"hardy"};
    std::string weight = "power:c=1,beta=2";
    std::vector<double> eps_grid{kDefaultEpsGrid.begin(), kDefaultEpsGrid.end()};
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    std::size_t mc_count = 1000000;
    std::uint64_t seed = 42;
    Format format = Format::csv;
    std::string out;  // empty: stdout
    std::string function = "exp:1";
    std::vector<double> radii{1.0};
    std::size_t trials = 100;
    std::size_t triples = 100000;

    QuadratureSpec quadrature() const
    {
        QuadratureSpec s;
        s.rel_tol = rel_tol;
        s.abs_tol = abs_tol;
        return s;
    }
};

/// Structured result plus the tabular view used by the CSV renderer.
struct Report
{
    Command command = Command::constants;
    Json config;
    Json results;
    Json provenance;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;  // extra CSV comment lines after the table
    int exit_code = kExitOk;
};

namespace detail
{

inline std::string fmt(double v)
{
    if (std::isnan(v))
    {
        return "nan";
    }
    if (std::isinf(v))
    {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline void require(bool ok, const std::string& reason)
{
    if (!ok)
    {
        throw ConfigError(reason);
    }
}

inline void require_single(Command cmd, std::size_t size, const char* flag)
{
    require(size == 1, std::string(command_name(cmd)) + " takes exactly one value for " + flag);
}

inline Json config_json(const RunConfig& cfg)
{
    Json j;
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["pbar1"] = cfg.p_bar_1;
    j["pbar2"] = cfg.p_bar_2;
    j["kind"] = cfg.kinds;
    j["weight"] = cfg.weight;
    j["eps_grid"] = cfg.eps_grid;
    j["rel_tol"] = cfg.rel_tol;
    j["abs_tol"] = cfg.abs_tol;
    j["mc_count"] = cfg.mc_count;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format == Format::csv ? "csv" : "json";
    j["function"] = cfg.function;
    j["radii"] = cfg.radii;
    j["trials"] = cfg.trials;
    j["triples"] = cfg.triples;
    return j;
}

inline Json provenance_json(const RunConfig& cfg, Command cmd)
{
    const QuadratureSpec spec = cfg.quadrature();
    Json j;
    j["tool"] = "hhsharp";
    j["version"] = kVersion;
    j["command"] = command_name(cmd);
    j["seed"] = cfg.seed;
    j["rel_tol"] = spec.rel_tol;
    j["abs_tol"] = spec.abs_tol;
    j["inner_rel_tol"] = nested_spec(spec).rel_tol;
    j["mc_count"] = cfg.mc_count;
    return j;
}

inline Report make_report(const RunConfig& cfg, Command cmd)
{
    Report r;
    r.command = cmd;
    r.config = config_json(cfg);
    r.provenance = provenance_json(cfg, cmd);
    return r;
}

inline Json number_or_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

inline std::string weight_label(const OperatorKind& kind, const std::string& weight)
{
    return kind.is_weighted() ? weight : "-";
}

}  // namespace detail

/// Checks every precondition the command relies on before any computation.
inline void validate(const RunConfig& cfg, Command cmd)
{
    using detail::require;
    require(!cfg.n.empty() && !cfg.p.empty() && !cfg.p_bar_1.empty() && !cfg.p_bar_2.empty() && !cfg.kinds.empty(),
            "--n, --p, --pbar1, --pbar2 and --kind need at least one value");
    for (int n : cfg.n)
    {
        require(n >= 1 && n <= 64, "--n must lie in [1, 64], got " + std::to_string(n));
    }
    for (const auto* list : {&cfg.p, &cfg.p_bar_1, &cfg.p_bar_2})
    {
        for (double e : *list)
        {
            require(e > 1.0 && std::isfinite(e), "exponents must lie in (1, inf), got " + detail::fmt(e));
        }
    }
    require(cfg.rel_tol >= 1e-13 && cfg.rel_tol <= 1e-2, "--rel-tol must lie in [1e-13, 1e-2]");
    require(cfg.abs_tol > 0.0 && std::isfinite(cfg.abs_tol), "abs_tol must be positive");
    require(cfg.mc_count >= 1, "--mc-count must be >= 1");
    const WeightFunction weight = parse_weight_spec(cfg.weight);
    for (const auto& k : cfg.kinds)
    {
        (void)parse_operator_kind(k, weight);
    }
    if (cmd == Command::constants)
    {
        return;
    }
    detail::require_single(cmd, cfg.n.size(), "--n");
    detail::require_single(cmd, cfg.p.size(), "--p");
    detail::require_single(cmd, cfg.p_bar_1.size(), "--pbar1");
    detail::require_single(cmd, cfg.p_bar_2.size(), "--pbar2");
    detail::require_single(cmd, cfg.kinds.size(), "--kind");
    const HeisSpace space(cfg.n[0]);
    switch (cmd)
    {
    case Command::verify_sharp: {
        require(!cfg.eps_grid.empty(), "--eps-grid needs at least one value");
        for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i)
        {
            require(cfg.eps_grid[i] > 0.0 && cfg.eps_grid[i] < 1.0, "--eps-grid values must lie in (0, 1)");
            require(i == 0 || cfg.eps_grid[i] < cfg.eps_grid[i - 1], "--eps-grid must be strictly decreasing");
        }
        require(cfg.trials >= 1, "--trials must be >= 1");
        const SharpConstantQuery q{parse_operator_kind(cfg.kinds[0], weight),
                                   MixedExponents(cfg.p[0], cfg.p_bar_1[0], cfg.p_bar_2[0]), space};
        try
        {
            (void)theoretical_constant(q, cfg.quadrature());
        }
        catch (const UnboundedOperator& e)
        {
            throw ConfigError(std::string("nothing to verify: ") + e.what());
        }
        break;
    }
    case Command::apply:
        require(!cfg.radii.empty(), "--r needs at least one radius");
        for (double r : cfg.radii)
        {
            require(r > 0.0 && std::isfinite(r), "--r values must be positive and finite");
        }
        (void)parse_function_spec(cfg.function, space, cfg.p[0]);
        break;
    case Command::norm:
        (void)parse_function_spec(cfg.function, space, cfg.p[0]);
        break;
    case Command::geom_check:
        require(cfg.triples >= 1, "--triples must be >= 1");
        break;
    case Command::constants:
        break;
    }
}

/// Table of sharp constants over the kind x n x p x pbar1 x pbar2 grid.
inline Report cmd_constants(const RunConfig& cfg)
{
    validate(cfg, Command::constants);
    Report report = detail::make_report(cfg, Command::constants);
    report.header = {"kind", "n", "Q", "p", "pbar1", "pbar2", "weight", "constant", "verdict"};
    const WeightFunction weight = parse_weight_spec(cfg.weight);
    const QuadratureSpec spec = cfg.quadrature();
    report.results = Json::array();
    for (const auto& kind_name : cfg.kinds)
    {
        const OperatorKind kind = parse_operator_kind(kind_name, weight);
        for (int n : cfg.n)
        {
            const HeisSpace space(n);
            for (double p : cfg.p)
            {
                for (double pb1 : cfg.p_bar_1)
                {
                    for (double pb2 : cfg.p_bar_2)
                    {
                        const SharpConstantQuery q{kind, MixedExponents(p, pb1, pb2), space};
                        double constant = std::numeric_limits<double>::quiet_NaN();
                        std::string verdict = "bounded";
                        try
                        {
                            constant = theoretical_constant(q, spec);
                        }
                        catch (const UnboundedOperator&)
                        {
                            verdict = "unbounded";
                        }
                        Json row;
                        row["kind"] = kind.name();
                        row["n"] = n;
                        row["Q"] = space.Q;
                        row["p"] = p;
                        row["pbar1"] = pb1;
                        row["pbar2"] = pb2;
                        row["weight"] = detail::weight_label(kind, cfg.weight);
                        row["constant"] = detail::number_or_null(constant);
                        row["verdict"] = verdict;
                        report.results.push_back(row);
                        report.rows.push_back({kind.name(), std::to_string(n), std::to_string(space.Q),
                                               detail::fmt(p), detail::fmt(pb1), detail::fmt(pb2),
                                               detail::weight_label(kind, cfg.weight),
                                               verdict == "bounded" ? detail::fmt(constant) : "", verdict});
                    }
                }
            }
        }
    }
    return report;
}

/// Convergence table along the extremal family plus a random upper-bound
/// probe. Exit 0 iff every row respects the bound, the final gap is at most
/// 0.05 and no probe exceeds the constant.
inline Report cmd_verify_sharp(const RunConfig& cfg)
{
    validate(cfg, Command::verify_sharp);
    Report report = detail::make_report(cfg, Command::verify_sharp);
    report.header = {"epsilon", "ratio", "constant", "relative_gap", "error_estimate"};
    const QuadratureSpec spec = cfg.quadrature();
    const SharpConstantQuery q{parse_operator_kind(cfg.kinds[0], parse_weight_spec(cfg.weight)),
                               MixedExponents(cfg.p[0], cfg.p_bar_1[0], cfg.p_bar_2[0]), HeisSpace(cfg.n[0])};

    const auto table = convergence_table(q, cfg.eps_grid, spec);
    Json convergence = Json::array();
    Json assertions = Json::array();
    bool ok = true;
    auto assert_that = [&](std::string name, bool pass, std::string detail_text) {
        ok = ok && pass;
        Json a;
        a["name"] = std::move(name);
        a["pass"] = pass;
        a["detail"] = std::move(detail_text);
        report.notes.push_back(std::string("assertion ") + (pass ? "PASS " : "FAIL ") + a["name"].get<std::string>()
                               + ": " + a["detail"].get<std::string>());
        assertions.push_back(std::move(a));
    };
    for (std::size_t i = 0; i < table.size(); ++i)
    {
        const RatioReport& row = table[i];
        Json j;
        j["epsilon"] = row.epsilon;
        j["ratio"] = row.ratio;
        j["constant"] = row.constant;
        j["relative_gap"] = row.relative_gap;
        j["error_estimate"] = row.error_estimate;
        convergence.push_back(j);
        report.rows.push_back({detail::fmt(row.epsilon), detail::fmt(row.ratio), detail::fmt(row.constant),
                               detail::fmt(row.relative_gap), detail::fmt(row.error_estimate)});
        assert_that("row " + std::to_string(i) + " upper bound", row.within_bound(),
                    "eps=" + detail::fmt(row.epsilon) + " ratio=" + detail::fmt(row.ratio)
                        + " limit=" + detail::fmt(row.constant * (1.0 + 1e-6 + row.error_estimate)));
    }
    const RatioReport& last = table.back();
    assert_that("final gap", last.relative_gap <= 0.05,
                "eps=" + detail::fmt(last.epsilon) + " relative_gap=" + detail::fmt(last.relative_gap) + " <= 0.05");

    const ProbeResult probe = upper_bound_probe(q, cfg.trials, cfg.seed, spec);
    Json pj;
    pj["trials"] = probe.trials;
    pj["seed"] = cfg.seed;
    pj["worst_ratio"] = probe.worst.ratio;
    pj["constant"] = probe.worst.constant;
    pj["worst_error_estimate"] = probe.worst.error_estimate;
    pj["worst_source"] = probe.worst.source;
    pj["bound_holds"] = probe.bound_holds;
    report.notes.push_back("probe trials=" + std::to_string(probe.trials) + " worst_ratio="
                           + detail::fmt(probe.worst.ratio) + " constant=" + detail::fmt(probe.worst.constant)
                           + " worst=" + probe.worst.source);
    std::string offending = "all trials within constant*(1+1e-6)+error";
    if (!probe.bound_holds)
    {
        for (std::size_t t = 0; t < probe.ratios.size(); ++t)
        {
            if (probe.ratios[t] > probe.worst.constant * (1.0 + 1e-6))
            {
                offending = "trial " + std::to_string(t) + " ratio=" + detail::fmt(probe.ratios[t]);
                break;
            }
        }
    }
    assert_that("probe upper bound", probe.bound_holds, offending);

    report.results["constant"] = last.constant;
    report.results["convergence"] = std::move(convergence);
    report.results["probe"] = std::move(pj);
    report.results["assertions"] = std::move(assertions);
    report.results["pass"] = ok;
    report.exit_code = ok ? kExitOk : kExitNumeric;
    return report;
}

/// T f(r) at the requested radii. The error column is the change in value
/// when the tolerance is tightened a hundredfold.
inline Report cmd_apply(const RunConfig& cfg)
{
    validate(cfg, Command::apply);
    Report report = detail::make_report(cfg, Command::apply);
    report.header = {"r", "value", "error_estimate"};
    const HeisSpace space(cfg.n[0]);
    const OperatorKind kind = parse_operator_kind(cfg.kinds[0], parse_weight_spec(cfg.weight));
    const RadialProfile f = parse_function_spec(cfg.function, space, cfg.p[0]);
    const QuadratureSpec coarse = cfg.quadrature();
    QuadratureSpec fine = coarse;
    fine.rel_tol = std::max(coarse.rel_tol * 1e-2, 1e-14);
    fine.abs_tol = coarse.abs_tol * 1e-2;
    const RadialProfile image = apply(kind, f, space, coarse);
    const RadialProfile image_fine = apply(kind, f, space, fine);
    report.results = Json::array();
    for (double r : cfg.radii)
    {
        const double v = image_fine(r);
        const double err = std::abs(image(r) - v) + fine.rel_tol * std::abs(v);
        Json row;
        row["r"] = r;
        row["value"] = v;
        row["error_estimate"] = err;
        report.results.push_back(row);
        report.rows.push_back({detail::fmt(r), detail::fmt(v), detail::fmt(err)});
    }
    return report;
}

/// Mixed norm of a radial function with exponents (p, pbar1). A divergent
/// norm is rendered as a verdict and exits with the config status.
inline Report cmd_norm(const RunConfig& cfg)
{
    validate(cfg, Command::norm);
    Report report = detail::make_report(cfg, Command::norm);
    report.header = {"value", "error_estimate", "verdict"};
    const HeisSpace space(cfg.n[0]);
    const RadialProfile f = parse_function_spec(cfg.function, space, cfg.p[0]);
    Json row;
    try
    {
        const Estimate e = mixed_norm_radial(f, cfg.p[0], cfg.p_bar_1[0], space, cfg.quadrature());
        row["value"] = e.value;
        row["error_estimate"] = e.error;
        row["verdict"] = "finite";
        report.rows.push_back({detail::fmt(e.value), detail::fmt(e.error), "finite"});
    }
    catch (const DivergentIntegral& e)
    {
        row["value"] = nullptr;
        row["error_estimate"] = nullptr;
        row["verdict"] = "divergent norm";
        row["reason"] = e.what();
        report.rows.push_back({"", "", "divergent norm"});
        report.notes.push_back(std::string("reason: ") + e.what());
        report.exit_code = kExitConfig;
    }
    report.results = std::move(row);
    return report;
}

/// Randomized group-law and metric properties plus the Monte Carlo volume.
inline Report cmd_geom_check(const RunConfig& cfg)
{
    validate(cfg, Command::geom_check);
    Report report = detail::make_report(cfg, Command::geom_check);
    report.header = {"property", "trials", "worst", "tolerance", "violations", "pass"};
    const HeisSpace space(cfg.n[0]);
    GeometrySuiteConfig suite;
    suite.triangle_trials = cfg.triples;
    suite.volume_count = cfg.mc_count;
    suite.seed = cfg.seed;
    const GeometryReport g = run_geometry_suite(space, suite);
    Json props = Json::array();
    for (const auto& p : g.properties)
    {
        Json j;
        j["property"] = p.name;
        j["trials"] = p.trials;
        j["worst"] = p.worst;
        j["tolerance"] = p.tolerance;
        j["violations"] = p.violations;
        j["pass"] = p.pass;
        props.push_back(j);
        report.rows.push_back({p.name, std::to_string(p.trials), detail::fmt(p.worst), detail::fmt(p.tolerance),
                               std::to_string(p.violations), p.pass ? "true" : "false"});
    }
    Json vol;
    vol["count"] = g.volume.count;
    vol["estimate"] = g.volume.estimate;
    vol["standard_error"] = g.volume.standard_error;
    vol["expected"] = g.volume.expected;
    vol["z_score"] = g.volume.z_score;
    vol["pass"] = g.volume.pass;
    vol["lebesgue_expected"] = g.volume.lebesgue_expected;
    vol["lebesgue_z_score"] = g.volume.lebesgue_z_score;
    report.notes.push_back("volume count=" + std::to_string(g.volume.count) + " estimate="
                           + detail::fmt(g.volume.estimate) + " standard_error="
                           + detail::fmt(g.volume.standard_error) + " expected=" + detail::fmt(g.volume.expected)
                           + " z=" + detail::fmt(g.volume.z_score) + (g.volume.pass ? " pass" : " FAIL"));
    report.notes.push_back("volume diagnostic lebesgue_expected=" + detail::fmt(g.volume.lebesgue_expected)
                           + " z=" + detail::fmt(g.volume.lebesgue_z_score));
    report.results["properties"] = std::move(props);
    report.results["volume"] = std::move(vol);
    report.results["pass"] = g.pass();
    report.exit_code = g.pass() ? kExitOk : kExitNumeric;
    return report;
}

inline Report run_command(Command cmd, const RunConfig& cfg)
{
    switch (cmd)
    {
    case Command::constants:
        return cmd_constants(cfg);
    case Command::verify_sharp:
        return cmd_verify_sharp(cfg);
    case Command::apply:
        return cmd_apply(cfg);
    case Command::norm:
        return cmd_norm(cfg);
    case Command::geom_check:
        return cmd_geom_check(cfg);
    }
    throw ConfigError("unknown command");
}

inline std::string render_json(const Report& r)
{
    Json j;
    j["config"] = r.config;
    j["results"] = r.results;
    j["provenance"] = r.provenance;
    return j.dump(2) + "\n";
}

/// '#' comment lines carry the config and provenance; then header and rows.
inline std::string render_csv(const Report& r)
{
    std::string s;
    s += "# config: " + r.config.dump() + "\n";
    s += "# provenance: " + r.provenance.dump() + "\n";
    auto line = [&s](std::span<const std::string> cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
            if (i)
            {
                s += ',';
            }
            if (quote)
            {
                s += '"';
                for (char c : cells[i])
                {
                    s += c == '"' ? std::string("\"\"") : std::string(1, c);
                }
                s += '"';
            }
            else
            {
                s += cells[i];
            }
        }
        s += '\n';
    };
    line(r.header);
    for (const auto& row : r.rows)
    {
        line(row);
    }
    for (const auto& note : r.notes)
    {
        s += "# " + note + "\n";
    }
    return s;
}

inline std::string render(const Report& r, Format format)
{
    return format == Format::json ? render_json(r) : render_csv(r);
}

/// Machine-readable rejection for stderr.
inline std::string error_json(const char* kind, const std::string& reason)
{
    Json j;
    j["error"] = kind;
    j["reason"] = reason;
    return j.dump() + "\n";
}

}  // namespace hhsharp::cli
