// becsim: numerical laboratory for a Raman-coupled three-level condensate.
// Subcommands emit deterministic CSV data plus a JSON manifest; exit code 0
// means every built-in assertion held, 1 an assertion failed, 2 the
// configuration or usage was invalid.

#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bec/cli/runners.hpp"
#include "bec/revivals.hpp"

namespace {

using namespace bec;
using namespace bec::cli;

RunConfig default_config(ExperimentKind kind) {
    RunConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
        case ExperimentKind::spectrum:
            cfg.effective = resonant_params(0.1, ResonanceConvention::derived);
            break;
        case ExperimentKind::evolve:
            cfg.effective = resonant_params(0.1, ResonanceConvention::derived);
            for (int k = 0; k <= 20; ++k) cfg.time_grid.push_back(0.5 * k);
            break;
        case ExperimentKind::revival:
            for (int k = 0; k <= 40; ++k) {
                cfg.tau_grid.push_back(2.0 * std::numbers::pi * k / 40.0);
            }
            break;
        case ExperimentKind::adiabatic: {
            cfg.squeezing = SqueezingParam(0.4, 0.0);
            RamanParams p;
            p.g1 = Complex(1.0, 0.0);
            p.g2 = Complex(1.0, 0.0);
            p.lambda1 = p.lambda2 = p.lambda3 = 2.5e-4;
            p.lambda12 = p.lambda13 = p.lambda23 = 1e-4;
            cfg.raman = p;
            cfg.ratio_grid = {20.0, 200.0};
            break;
        }
        case ExperimentKind::validity:
            break;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"becsim: squeezing, revivals and entanglement in a Raman-coupled "
                 "three-level condensate"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int cutoff = 0;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON run configuration file");
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--cutoff", cutoff, "override the per-mode Fock cutoff");
    app.add_flag("--quiet", quiet, "suppress the run summary");

    app.add_subcommand("spectrum", "rotating-wave eigenvalues: closed form vs operator");
    app.add_subcommand("evolve", "exact evolution of a squeezed product state");
    app.add_subcommand("revival", "fractional-revival fidelities on the resonance manifold");
    app.add_subcommand("adiabatic", "middle-level elimination quality vs detuning ratio");
    app.add_subcommand("validity", "dilute-regime estimate for the physical parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ExperimentKind kind =
            experiment_from_string(app.get_subcommands().front()->get_name());
        RunConfig cfg = config_path.empty() ? default_config(kind) : load_config(config_path);
        if (cfg.experiment != kind) {
            throw ConfigError({"config experiment '" + to_string(cfg.experiment) +
                               "' does not match subcommand '" + to_string(kind) + "'"});
        }
        if (cutoff != 0) {
            if (cutoff < 4 || cutoff > 69) {
                throw ConfigError({"--cutoff must lie in [4, 69]"});
            }
            cfg.cutoff = cutoff;
        }

        const RunReport report = run_experiment(cfg);
        write_report(report, out_dir, to_string(kind));
        if (!quiet) {
            std::cout << to_string(kind) << ": " << (report.exit_code == 0 ? "ok" : "FAILED")
                      << '\n';
            for (const std::string& failure : report.failures) {
                std::cout << "  assertion failed: " << failure << '\n';
            }
            std::cout << "wrote " << out_dir << '/' << to_string(kind) << ".csv and "
                      << to_string(kind) << ".json\n";
        }
        return report.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
