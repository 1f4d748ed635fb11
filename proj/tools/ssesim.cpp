// Command-line front end: configure an experiment, run it, emit CSV.

#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "sse/experiment.hpp"

namespace {

// Per-model defaults mirroring the figures the toolkit reproduces; applied
// only to flags the user (or config file) left untouched.
void apply_model_defaults(const CLI::App& app, sse::ExperimentConfig& cfg) {
    const bool scheme_set = app.count("--scheme") > 0;
    const bool dt_set = app.count("--dt") > 0;
    const bool tf_set = app.count("--t-final") > 0;
    const bool r_set = app.count("--realizations") > 0;
    const bool fn_set = app.count("--functional") > 0;

    if (cfg.model == "homodyne") {
        if (!scheme_set) cfg.scheme = "euler";
        if (!dt_set) cfg.dt = 0.01;
        if (!tf_set) cfg.t_final = 10.0;
        if (!r_set) cfg.realizations = 10000;
        if (!fn_set) cfg.functional = "eta11";
    } else if (cfg.model == "oscillator") {
        if (!scheme_set) cfg.scheme = "platen";
        if (!dt_set) cfg.dt = 0.01;
        if (!tf_set) cfg.t_final = 5.0;
        if (!r_set) cfg.realizations = 1000;
        if (!fn_set) cfg.functional = "mean_n";
    } else if (cfg.model == "ouqubit") {
        if (!scheme_set) cfg.scheme = "euler";
        if (!dt_set) cfg.dt = 0.01;
        if (!tf_set) cfg.t_final = 10.0;
        if (!r_set) cfg.realizations = 10000;
        if (!fn_set) cfg.functional = "eta11";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diffusive stochastic Schrodinger equation simulator"};
    app.fallthrough();

    sse::ExperimentConfig cfg;
    app.add_option("--model", cfg.model, "homodyne | oscillator | ouqubit");
    app.add_option("--scheme", cfg.scheme, "euler | platen");
    app.add_option("--functional", cfg.functional,
                   "eta11 | mean_n | bloch_z | output_B | norm2 | aux_x");
    app.add_option("--dt", cfg.dt, "time step (single value; list for convergence)");
    app.add_option("--t-final", cfg.t_final, "final time, an integer multiple of dt");
    app.add_option("--realizations", cfg.realizations, "number of trajectories R");
    app.add_option("--seed", cfg.seed, "master seed (decimal 64-bit)");
    app.add_option("--omega-r", cfg.omega_r, "Rabi frequency (homodyne)");
    app.add_option("--gamma", cfg.gamma, "linewidth / damping rate");
    app.add_option("--omega0", cfg.omega0, "level splitting (ouqubit)");
    app.add_option("--k", cfg.k, "O-U inverse correlation time (ouqubit)");
    app.add_option("--n-max", cfg.n_max, "Fock truncation (oscillator)");
    app.add_option("--n0", cfg.n0, "initial Fock level (oscillator)");
    app.add_option("--theta", cfg.theta, "local-oscillator phase: pi2 | 0");
    app.add_option("--stride", cfg.stride, "output every stride-th grid point");
    app.add_option("--threads", cfg.threads, "worker threads (0 = runtime default, 1 = serial)");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.set_config("--config", "", "flat key = value config file; flags override");

    auto* cmd_ensemble =
        app.add_subcommand("ensemble", "ensemble statistics (ensemble.csv, reference.csv)");
    auto* cmd_trajectory =
        app.add_subcommand("trajectory", "single realizations (trajectory_<r>.csv)");
    auto* cmd_reference = app.add_subcommand("reference", "reference curve only (reference.csv)");
    auto* cmd_convergence =
        app.add_subcommand("convergence", "time-step sweep vs reference (convergence.csv)");
    app.require_subcommand(1);

    std::vector<double> dt_values;
    cmd_convergence->add_option("--dt-list", dt_values, "step sizes for the sweep")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_model_defaults(app, cfg);
        if (cmd_convergence->parsed()) {
            // --dt also accepts the sweep list for this mode.
            cfg.dt_list = dt_values;
            if (cfg.dt_list.empty() && app.count("--dt") > 0) {
                for (const auto& s : app.get_option("--dt")->results()) {
                    cfg.dt_list.push_back(std::stod(s));
                }
            }
        }

        std::vector<std::filesystem::path> files;
        if (cmd_ensemble->parsed()) {
            files = sse::run_ensemble_files(cfg);
        } else if (cmd_trajectory->parsed()) {
            files = sse::run_trajectory_files(cfg);
        } else if (cmd_reference->parsed()) {
            files = sse::run_reference_files(cfg);
        } else {
            files = sse::run_convergence_files(cfg);
        }
        for (const auto& f : files) {
            std::printf("wrote %s\n", f.string().c_str());
        }
        return 0;
    } catch (const sse::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const sse::InvalidParameter& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const sse::ParameterDomain& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}
