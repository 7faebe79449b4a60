#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "berezin/cli.hpp"

int main(int argc, char** argv) {
    namespace bc = berezin::cli;
    bc::RunConfig cfg;
    CLI::App app{"Generalized Berezin transforms on the complex ball: verification and tabulation"};

    std::string command;
    std::vector<std::string> names;
    for (const auto& [key, cmd] : bc::kCommands) names.emplace_back(key);
    app.add_option("command", command, "What to run")->required()->check(CLI::IsMember(names));

    app.add_option("--n", cfg.params.n, "Complex dimension n >= 1")->capture_default_str();
    app.add_option("--nu", cfg.params.nu, "Magnetic strength nu > n/2")->capture_default_str();
    app.add_option("--m", cfg.params.m, "Landau level 0 <= m < nu - n/2")->capture_default_str();
    app.add_option("--lambda-grid", cfg.lambda_grid, "Spectral parameters, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    double tol = 0.0;
    auto* tol_opt = app.add_option("--tol", tol, "Relative tolerance (default depends on the command)");
    app.add_option("--out", cfg.output_path, "CSV output file (stdout when omitted)");

    app.add_option("--quad-T", cfg.quad.truncation_T, "Initial truncation of [0, inf)")->capture_default_str();
    app.add_option("--quad-panels", cfg.quad.panels, "Gauss-Legendre panels")->capture_default_str();
    app.add_option("--quad-points", cfg.quad.points_per_panel, "Nodes per panel")->capture_default_str();
    app.add_option("--quad-tol", cfg.quad.tol, "Quadrature refinement tolerance")->capture_default_str();

    app.add_option("--draws", cfg.draws, "Random draws per identity / eigen check")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed of the random draws")->capture_default_str();
    app.add_option("--distances", cfg.distances, "Geodesic distances for tabulate-kernel")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--point", cfg.point, "Base point for apply as re,im pairs")->delimiter(',');
    std::string symbol = "one";
    app.add_option("--symbol", symbol, "Symbol for apply")
        ->check(CLI::IsMember({"one", "spherical", "gaussian"}))
        ->capture_default_str();
    app.add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples for apply at n >= 3")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bc::kExitInvalidParameters;
    }
    cfg.command = bc::parse_command(command);
    cfg.symbol = bc::parse_symbol(symbol);
    if (tol_opt->count() > 0) cfg.tol = tol;
    return bc::run(cfg, std::cout, std::cerr);
}
