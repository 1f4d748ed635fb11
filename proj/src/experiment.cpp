#include "sse/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sse/csv.hpp"
#include "sse/reference.hpp"

namespace sse {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kModels = {"homodyne", "oscillator", "ouqubit"};
const std::set<std::string> kFunctionals = {"eta11",    "mean_n", "bloch_z",
                                            "output_B", "norm2",  "aux_x"};

// Functionals each model can evaluate (norm2 switches homodyne to the
// linear equation, where the squared norm is the martingale of interest).
bool functional_allowed(const std::string& model, const std::string& fn) {
    if (model == "homodyne") {
        return fn == "eta11" || fn == "bloch_z" || fn == "output_B" || fn == "norm2";
    }
    if (model == "oscillator") {
        return fn == "mean_n";
    }
    return fn == "eta11" || fn == "bloch_z" || fn == "aux_x";  // ouqubit
}

double parse_theta(const std::string& theta) {
    if (theta == "pi2") {
        return 1.5707963267948966;
    }
    if (theta == "0") {
        return 0.0;
    }
    throw ConfigError("theta: expected 'pi2' or '0', got '" + theta + "'");
}

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw ConfigError(std::string(field) + ": must be finite");
    }
}

std::string config_metadata_value(const ExperimentConfig& cfg, const std::string& key) {
    if (key == "model") return cfg.model;
    if (key == "scheme") return cfg.scheme;
    if (key == "functional") return cfg.functional;
    if (key == "dt") return format_g17(cfg.dt);
    if (key == "t-final") return format_g17(cfg.t_final);
    if (key == "realizations") return std::to_string(cfg.realizations);
    if (key == "seed") return std::to_string(cfg.seed);
    if (key == "omega-r") return format_g17(cfg.omega_r);
    if (key == "gamma") return format_g17(cfg.gamma);
    if (key == "omega0") return format_g17(cfg.omega0);
    if (key == "k") return format_g17(cfg.k);
    if (key == "n-max") return std::to_string(cfg.n_max);
    if (key == "n0") return std::to_string(cfg.n0);
    if (key == "theta") return cfg.theta;
    if (key == "stride") return std::to_string(cfg.stride);
    return {};
}

void write_config_metadata(CsvWriter& w, const ExperimentConfig& cfg,
                           const std::string& command) {
    w.metadata("ssesim", kVersion);
    w.metadata("command", command);
    for (const char* key : {"model", "scheme", "functional", "dt", "t-final", "realizations",
                            "seed", "omega-r", "gamma", "omega0", "k", "n-max", "n0", "theta",
                            "stride"}) {
        w.metadata(key, config_metadata_value(cfg, key));
    }
}

Functional make_functional(const ExperimentConfig& cfg) {
    Functional f;
    f.name = cfg.functional;
    if (cfg.functional == "eta11") {
        // Excited population; index 0 is the excited state.
        f.eval = [](const StateVector& psi) { return std::norm(psi(0)); };
    } else if (cfg.functional == "bloch_z") {
        f.eval = [](const StateVector& psi) { return std::norm(psi(0)) - std::norm(psi(1)); };
    } else if (cfg.functional == "mean_n") {
        f.eval = [](const StateVector& psi) {
            double n = 0.0;
            for (Eigen::Index i = 1; i < psi.size(); ++i) {
                n += static_cast<double>(i) * std::norm(psi(i));
            }
            return n;
        };
    } else if (cfg.functional == "norm2") {
        f.eval = [](const StateVector& psi) { return psi.squaredNorm(); };
    } else if (cfg.functional == "output_B") {
        f.kind = Functional::Kind::Output;
    } else {  // aux_x
        f.kind = Functional::Kind::Aux;
        f.aux_index = 0;
    }
    return f;
}

std::vector<double> lindblad_mean_n_curve(const ExperimentConfig& cfg,
                                          const std::vector<double>& times) {
    const LinearOperator h =
        make_operator(Eigen::MatrixXcd::Zero(cfg.n_max + 1, cfg.n_max + 1), true);
    const LinearOperator l =
        make_operator(std::sqrt(cfg.gamma) * annihilation(cfg.n_max).mat);
    const DensityMatrix rho0 = pure_density(fock_state(cfg.n0, cfg.n_max));
    const double dt = times.size() > 1 ? times[1] - times[0] : cfg.dt;
    const auto path = lindblad_evolve(h, {l}, rho0, times.back(), dt);
    const LinearOperator n_op = number_operator(cfg.n_max);
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i] = (n_op.mat * path.states[i]).trace().real();
    }
    return out;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
    if (!kModels.count(cfg.model)) {
        throw ConfigError("model: expected homodyne, oscillator or ouqubit, got '" +
                          cfg.model + "'");
    }
    parse_scheme(cfg.scheme);  // throws ConfigError on bad names
    if (!kFunctionals.count(cfg.functional)) {
        throw ConfigError("functional: unknown value '" + cfg.functional + "'");
    }
    if (!functional_allowed(cfg.model, cfg.functional)) {
        throw ConfigError("functional: '" + cfg.functional + "' is not defined for model '" +
                          cfg.model + "'");
    }
    require_finite(cfg.dt, "dt");
    require_finite(cfg.t_final, "t-final");
    require_finite(cfg.omega_r, "omega-r");
    require_finite(cfg.gamma, "gamma");
    require_finite(cfg.omega0, "omega0");
    require_finite(cfg.k, "k");
    if (!(cfg.dt > 0.0)) {
        throw ConfigError("dt: must be positive");
    }
    if (!(cfg.t_final >= cfg.dt)) {
        throw ConfigError("t-final: must be at least dt");
    }
    try {
        grid_steps(cfg.t_final, cfg.dt);
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("dt/t-final: ") + e.what());
    }
    if (cfg.realizations < 1) {
        throw ConfigError("realizations: must be >= 1");
    }
    if (cfg.stride < 1) {
        throw ConfigError("stride: must be >= 1");
    }
    if (cfg.threads < 0) {
        throw ConfigError("threads: must be >= 0");
    }
    parse_theta(cfg.theta);
    if (cfg.functional == "norm2" && cfg.scheme != "euler") {
        throw ConfigError("functional: norm2 martingale runs use the Euler stepper");
    }
}

PreparedExperiment prepare_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    PreparedExperiment exp;
    exp.scheme = parse_scheme(cfg.scheme);
    exp.functionals.push_back(make_functional(cfg));

    if (cfg.model == "homodyne") {
        const HomodyneParams p{cfg.omega_r, cfg.gamma, parse_theta(cfg.theta)};
        exp.psi0 = homodyne_initial_state();
        if (cfg.functional == "norm2") {
            exp.linear = true;
            exp.linear_ops = homodyne_lsse_ops(p);
            exp.reference = [](const std::vector<double>& times) {
                return std::vector<double>(times.size(), 1.0);
            };
        } else {
            exp.model = homodyne_qubit(p);
            if (cfg.functional == "eta11" || cfg.functional == "bloch_z") {
                const bool z = cfg.functional == "bloch_z";
                const double omega_r = cfg.omega_r;
                const double gamma = cfg.gamma;
                exp.reference = [omega_r, gamma, z](const std::vector<double>& times) {
                    std::vector<double> out(times.size());
                    for (std::size_t i = 0; i < times.size(); ++i) {
                        const double eta = homodyne_eta11(times[i], omega_r, gamma);
                        out[i] = z ? 2.0 * eta - 1.0 : eta;
                    }
                    return out;
                };
            } else if (cfg.functional == "output_B") {
                if (parse_theta(cfg.theta) == 0.0) {
                    // Tr{sigma_x eta(t)} = 0, so the theta = 0 output has
                    // zero mean at all times.
                    exp.reference = [](const std::vector<double>& times) {
                        return std::vector<double>(times.size(), 0.0);
                    };
                } else {
                    const double omega_r = cfg.omega_r;
                    const double gamma = cfg.gamma;
                    exp.reference = [omega_r, gamma](const std::vector<double>& times) {
                        std::vector<double> out(times.size());
                        for (std::size_t i = 0; i < times.size(); ++i) {
                            out[i] = homodyne_mean_output(times[i], omega_r, gamma);
                        }
                        return out;
                    };
                }
            }
        }
    } else if (cfg.model == "oscillator") {
        const OscillatorParams p{cfg.gamma, cfg.n_max, cfg.n0};
        exp.model = damped_oscillator(p);
        exp.psi0 = oscillator_initial_state(p);
        exp.reference = [cfg](const std::vector<double>& times) {
            return lindblad_mean_n_curve(cfg, times);
        };
    } else {  // ouqubit
        const OUQubitParams p{cfg.omega0, cfg.gamma, cfg.k};
        exp.model = ou_qubit(p);
        exp.psi0 = ou_qubit_initial_state();
        if (cfg.functional == "eta11" || cfg.functional == "bloch_z") {
            const bool z = cfg.functional == "bloch_z";
            const double omega0 = cfg.omega0;
            const double gamma = cfg.gamma;
            const double k = cfg.k;
            exp.reference = [omega0, gamma, k, z](const std::vector<double>& times) {
                const double dt = times.size() > 1 ? times[1] - times[0] : times.back();
                const auto path = nonmarkov_bloch(times.back(), dt, omega0, gamma, k);
                std::vector<double> out(times.size());
                for (std::size_t i = 0; i < times.size(); ++i) {
                    out[i] = z ? path.states[i].z : path.eta11(i);
                }
                return out;
            };
        } else if (cfg.functional == "aux_x") {
            // The O-U process has zero mean at all times.
            exp.reference = [](const std::vector<double>& times) {
                return std::vector<double>(times.size(), 0.0);
            };
        }
    }
    return exp;
}

EnsembleResult run_configured_ensemble(const ExperimentConfig& cfg,
                                       const PreparedExperiment& exp) {
    EnsembleRequest req;
    req.model = exp.linear ? nullptr : &exp.model;
    req.linear_ops = exp.linear ? &exp.linear_ops : nullptr;
    req.scheme = exp.scheme;
    req.psi0 = exp.psi0;
    req.t_final = cfg.t_final;
    req.dt = cfg.dt;
    req.realizations = cfg.realizations;
    req.master_seed = cfg.seed;
    req.functionals = exp.functionals;
    EnsembleResult res = run_ensemble(req, cfg.threads);
    if (res.aborted * 1000 > cfg.realizations) {
        throw AbortRateExceeded("aborted trajectories exceed 0.1%: " +
                                std::to_string(res.aborted) + " of " +
                                std::to_string(cfg.realizations));
    }
    return res;
}

std::vector<fs::path> run_ensemble_files(const ExperimentConfig& cfg) {
    if (cfg.realizations < 2) {
        throw ConfigError("realizations: ensemble statistics need at least 2");
    }
    const PreparedExperiment exp = prepare_experiment(cfg);
    const EnsembleResult res = run_configured_ensemble(cfg, exp);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    std::vector<fs::path> written;

    const auto& summary = res.summaries[0];
    {
        CsvWriter w(dir / "ensemble.csv");
        write_config_metadata(w, cfg, "ensemble");
        w.metadata("aborted", std::to_string(res.aborted));
        w.metadata("guard_warnings", std::to_string(res.guard_warnings));
        w.header({"t", "mean", "stderr", "R_accepted"});
        for (std::size_t i = 0; i < res.times.size(); i += static_cast<std::size_t>(cfg.stride)) {
            w.row({res.times[i], summary.mean[i], summary.stderr_[i],
                   static_cast<double>(res.accepted)});
        }
        written.push_back(dir / "ensemble.csv");
    }
    if (exp.reference) {
        std::vector<double> ref;
        try {
            ref = exp.reference(res.times);
        } catch (const ParameterDomain&) {
            // Closed form unavailable here (e.g. overdamped homodyne);
            // the ensemble stands on its own.
            return written;
        }
        CsvWriter w(dir / "reference.csv");
        write_config_metadata(w, cfg, "ensemble-reference");
        w.header({"t", "value"});
        for (std::size_t i = 0; i < res.times.size(); i += static_cast<std::size_t>(cfg.stride)) {
            w.row({res.times[i], ref[i]});
        }
        written.push_back(dir / "reference.csv");
    }
    return written;
}

std::vector<fs::path> run_trajectory_files(const ExperimentConfig& cfg) {
    const PreparedExperiment exp = prepare_experiment(cfg);
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    std::vector<fs::path> written;

    // Append the output column when the model has one and it is not already
    // the selected functional.
    std::vector<Functional> fns = exp.functionals;
    const bool extra_output = !exp.linear && exp.model.output_signal != nullptr &&
                              cfg.functional != "output_B";
    if (extra_output) {
        Functional b;
        b.name = "output_B";
        b.kind = Functional::Kind::Output;
        fns.push_back(b);
    }

    for (long r = 0; r < cfg.realizations; ++r) {
        NoiseStream stream(cfg.seed, static_cast<std::uint64_t>(r));
        TrajectoryRecord rec =
            exp.linear ? simulate_linear_trajectory(exp.linear_ops.h, exp.linear_ops.rs,
                                                    exp.psi0, cfg.t_final, cfg.dt, stream, fns)
                       : simulate_trajectory(exp.model, exp.scheme, exp.psi0, cfg.t_final,
                                             cfg.dt, stream, fns);
        const fs::path file = dir / ("trajectory_" + std::to_string(r) + ".csv");
        CsvWriter w(file);
        write_config_metadata(w, cfg, "trajectory");
        w.metadata("trajectory", std::to_string(r));
        if (extra_output) {
            w.header({"t", "value", "B"});
        } else {
            w.header({"t", "value"});
        }
        for (std::size_t i = 0; i < rec.times.size(); i += static_cast<std::size_t>(cfg.stride)) {
            if (extra_output) {
                w.row({rec.times[i], rec.functional_samples[0][i], rec.functional_samples[1][i]});
            } else {
                w.row({rec.times[i], rec.functional_samples[0][i]});
            }
        }
        written.push_back(file);
    }
    return written;
}

std::vector<fs::path> run_reference_files(const ExperimentConfig& cfg) {
    const PreparedExperiment exp = prepare_experiment(cfg);
    if (!exp.reference) {
        throw ConfigError("no reference curve for model '" + cfg.model + "' functional '" +
                          cfg.functional + "'");
    }
    const long n = grid_steps(cfg.t_final, cfg.dt);
    std::vector<double> times(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        times[i] = cfg.dt * static_cast<double>(i);
    }
    const auto ref = exp.reference(times);

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    CsvWriter w(dir / "reference.csv");
    write_config_metadata(w, cfg, "reference");
    w.header({"t", "value"});
    for (std::size_t i = 0; i < times.size(); i += static_cast<std::size_t>(cfg.stride)) {
        w.row({times[i], ref[i]});
    }
    return {dir / "reference.csv"};
}

std::vector<fs::path> run_convergence_files(const ExperimentConfig& cfg) {
    if (cfg.dt_list.size() < 2) {
        throw ConfigError("dt: convergence sweeps need at least 2 step sizes");
    }
    if (cfg.realizations < 2) {
        throw ConfigError("realizations: convergence sweeps need at least 2");
    }
    for (double dt : cfg.dt_list) {
        ExperimentConfig probe = cfg;
        probe.dt = dt;
        validate_config(probe);
    }
    {
        ExperimentConfig probe = cfg;
        probe.dt = cfg.dt_list.front();
        if (!prepare_experiment(probe).reference) {
            throw ConfigError("convergence sweeps need a reference curve for model '" +
                              cfg.model + "' functional '" + cfg.functional + "'");
        }
    }

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    CsvWriter w(dir / "convergence.csv");
    write_config_metadata(w, cfg, "convergence");
    w.header({"dt", "avg_abs_error", "avg_stderr"});
    for (double dt : cfg.dt_list) {
        ExperimentConfig run = cfg;
        run.dt = dt;
        const PreparedExperiment exp = prepare_experiment(run);
        const EnsembleResult res = run_configured_ensemble(run, exp);
        const auto ref = exp.reference(res.times);
        const auto& summary = res.summaries[0];
        double err = 0.0;
        double sd = 0.0;
        for (std::size_t i = 0; i < res.times.size(); ++i) {
            err += std::abs(summary.mean[i] - ref[i]);
            sd += summary.stderr_[i];
        }
        const double n_points = static_cast<double>(res.times.size());
        w.row({dt, err / n_points, sd / n_points});
    }
    return {dir / "convergence.csv"};
}

}  // namespace sse
