#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "hhsharp/cli.hpp"

namespace
{

using hhsharp::cli::Command;
using hhsharp::cli::Format;
using hhsharp::cli::RunConfig;

void add_common(CLI::App& sub, RunConfig& cfg, std::string& format)
{
    sub.add_option("--n", cfg.n, "Heisenberg dimension n (Q = 2n + 2)")->delimiter(',');
    sub.add_option("--p", cfg.p, "radial exponent p")->delimiter(',');
    sub.add_option("--pbar1", cfg.p_bar_1, "angular exponent of the source space")->delimiter(',');
    sub.add_option("--pbar2", cfg.p_bar_2, "angular exponent of the target space")->delimiter(',');
    sub.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    sub.add_option("--seed", cfg.seed, "random seed")->envname("HH_SEED");
    sub.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--out", cfg.out, "write the report here instead of stdout");
}

void add_operator(CLI::App& sub, RunConfig& cfg)
{
    sub.add_option("--kind", cfg.kinds, "hardy | dual-hardy | whardy | wcesaro")->delimiter(',');
    sub.add_option("--weight", cfg.weight, "weight for whardy/wcesaro, e.g. power:c=1,beta=2");
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    std::string format = "csv";

    CLI::App app{"Hardy-type operators on Heisenberg groups: sharp constants and their numerical verification"};
    app.set_version_flag("--version", std::string("hhsharp ") + hhsharp::cli::kVersion);
    app.require_subcommand(1);

    std::map<CLI::App*, Command> commands;

    auto* constants = app.add_subcommand("constants", "table of sharp constants over a parameter grid");
    add_common(*constants, cfg, format);
    add_operator(*constants, cfg);
    commands[constants] = Command::constants;

    auto* verify = app.add_subcommand("verify-sharp", "extremal convergence table and random upper-bound probe");
    add_common(*verify, cfg, format);
    add_operator(*verify, cfg);
    verify->add_option("--eps-grid", cfg.eps_grid, "strictly decreasing eps values in (0,1)")->delimiter(',');
    verify->add_option("--trials", cfg.trials, "number of random probe profiles");
    commands[verify] = Command::verify_sharp;

    auto* apply_cmd = app.add_subcommand("apply", "evaluate T f at given radii");
    add_common(*apply_cmd, cfg, format);
    add_operator(*apply_cmd, cfg);
    apply_cmd->add_option("--f", cfg.function, "function spec, e.g. power:1 or mixture:1*exp:1;2*power:-5");
    apply_cmd->add_option("--r", cfg.radii, "evaluation radii")->delimiter(',');
    commands[apply_cmd] = Command::apply;

    auto* norm = app.add_subcommand("norm", "mixed norm of a radial function (exponents p, pbar1)");
    add_common(*norm, cfg, format);
    norm->add_option("--f", cfg.function, "function spec");
    commands[norm] = Command::norm;

    auto* geom = app.add_subcommand("geom-check", "group-law and gauge-metric property suite");
    add_common(*geom, cfg, format);
    geom->add_option("--mc-count", cfg.mc_count, "Monte Carlo samples for the ball volume");
    geom->add_option("--triples", cfg.triples, "random triples for the triangle inequality");
    commands[geom] = Command::geom_check;

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        std::cerr << hhsharp::cli::error_json("config", e.what());
        return hhsharp::cli::kExitConfig;
    }
    cfg.format = format == "json" ? Format::json : Format::csv;

    Command cmd = Command::constants;
    for (const auto& [sub, c] : commands)
    {
        if (sub->parsed())
        {
            cmd = c;
        }
    }

    try
    {
        const hhsharp::cli::Report report = hhsharp::cli::run_command(cmd, cfg);
        const std::string payload = hhsharp::cli::render(report, cfg.format);
        if (cfg.out.empty())
        {
            std::cout << payload;
        }
        else
        {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out)
            {
                std::cerr << hhsharp::cli::error_json("config", "cannot open --out path " + cfg.out);
                return hhsharp::cli::kExitConfig;
            }
            out << payload;
        }
        return report.exit_code;
    }
    catch (const hhsharp::ConfigError& e)
    {
        std::cerr << hhsharp::cli::error_json("config", e.what());
        return hhsharp::cli::kExitConfig;
    }
    catch (const hhsharp::DomainError& e)
    {
        std::cerr << hhsharp::cli::error_json("config", e.what());
        return hhsharp::cli::kExitConfig;
    }
    catch (const hhsharp::DivergentIntegral& e)
    {
        std::cerr << hhsharp::cli::error_json("config", e.what());
        return hhsharp::cli::kExitConfig;
    }
    catch (const hhsharp::Error& e)
    {
        std::cerr << hhsharp::cli::error_json("numeric", e.what());
        return hhsharp::cli::kExitNumeric;
    }
}
