#pragma once

// Experiment orchestration behind the CLI: configuration, functional and
// reference-curve wiring per model, and the CSV-emitting run modes.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "sse/ensemble.hpp"

namespace sse {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
    std::string model = "homodyne";    // homodyne | oscillator | ouqubit
    std::string scheme = "euler";      // euler | platen
    std::string functional = "eta11";  // eta11 | mean_n | bloch_z | output_B | norm2 | aux_x
    double dt = 0.01;
    double t_final = 10.0;
    long realizations = 10000;
    std::uint64_t seed = 0;
    double omega_r = 1.0;
    double gamma = 1.0;
    double omega0 = 3.0413812651491097;  // sqrt(37)/2
    double k = 1.0;
    int n_max = 12;
    int n0 = 9;
    std::string theta = "pi2";  // pi2 | 0
    long stride = 1;
    int threads = 1;
    std::string out_dir = ".";
    std::vector<double> dt_list;  // convergence sweeps
};

// Throws ConfigError with the offending field named.
void validate_config(const ExperimentConfig& cfg);

// Everything needed to run the configured experiment.
struct PreparedExperiment {
    bool linear = false;           // norm2 runs integrate the linear equation
    DiffusionModel model;          // valid when !linear
    LinearModelOps linear_ops;     // valid when linear
    SchemeId scheme = SchemeId::EulerRenorm;
    StateVector psi0;
    std::vector<Functional> functionals;  // exactly one, the configured functional

    // Deterministic reference curve on a time grid; unset when the model /
    // functional pair has no oracle.
    std::function<std::vector<double>(const std::vector<double>& times)> reference;
};

PreparedExperiment prepare_experiment(const ExperimentConfig& cfg);

EnsembleResult run_configured_ensemble(const ExperimentConfig& cfg,
                                       const PreparedExperiment& exp);

// Run modes; each writes CSV files under cfg.out_dir and returns the list
// of files written. Throws AbortRateExceeded when more than 0.1% of the
// realizations died.
std::vector<std::filesystem::path> run_ensemble_files(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_trajectory_files(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_reference_files(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_convergence_files(const ExperimentConfig& cfg);

}  // namespace sse
