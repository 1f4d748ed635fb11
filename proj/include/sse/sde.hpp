#pragma once

// Diffusive SDE integration on Hilbert-space states: Euler with per-step
// renormalization, the single-channel second-order weak Platen scheme, the
// trajectory driver, and an un-normalized linear stepper used for the
// norm-martingale checks.

#include <functional>
#include <string>
#include <vector>

#include "sse/hilbert.hpp"
#include "sse/noise.hpp"

namespace sse {

using AuxState = std::vector<double>;

// Coefficient container for d psi = drift dt + sum_j diffusion_j dW_j,
// optionally coupled to auxiliary scalar SDEs (the O-U driver X(t)). The
// maps write into preallocated outputs so the inner loops stay free of
// heap traffic.
struct DiffusionModel {
    int dim = 0;
    int n_channels = 1;
    int aux_dim = 0;

    std::function<void(double t, const StateVector& psi, const AuxState& aux, StateVector& out)>
        drift;
    std::function<void(double t, const StateVector& psi, const AuxState& aux, int channel,
                       StateVector& out)>
        diffusion;

    // Derivative maps for the auxiliary scalars; the auxiliary SDE is driven
    // by the same dW (channel 0) as the state.
    std::function<void(double t, const AuxState& aux, AuxState& out)> aux_drift;
    std::function<void(double t, const AuxState& aux, AuxState& out)> aux_diffusion;
    std::function<AuxState(NoiseStream& s)> aux_init;

    // m(t) of the output process B(t) = W(t) + int m ds, prefactors included
    // (homodyne: sqrt(gamma) <sigma_y>). Unset when the model has no output.
    std::function<double(const StateVector& psi)> output_signal;

    // Optional per-step guard; returns true when the step left the model's
    // validity region (oscillator truncation monitor). Trips a warning
    // counter, never an abort.
    std::function<bool(const StateVector& psi)> guard;
};

enum class SchemeId {
    EulerRenorm,
    PlatenWeak2,
};

SchemeId parse_scheme(const std::string& name);

struct StepResult {
    StateVector psi;    // normalized
    AuxState aux;
    double pre_norm;    // ||psi|| before the renormalization
};

// One Euler step psi -> (psi + drift dt + sum_j diffusion_j dW_j) / norm,
// with the auxiliary scalars advanced by their own Euler step on the same
// increments. dw must hold n_channels values.
StepResult euler_step(const DiffusionModel& m, double t, const StateVector& psi,
                      const AuxState& aux, double dt, const std::vector<double>& dw);

// Second-order weak Platen step (single channel), renormalized afterwards.
StepResult platen_step(const DiffusionModel& m, double t, const StateVector& psi,
                       const AuxState& aux, double dt, double dw);

struct TrajectoryRecord {
    std::vector<double> times;
    // One row per requested functional, sampled at every grid point.
    std::vector<std::vector<double>> functional_samples;
    // Cumulative output B_n; empty unless an output functional was requested.
    std::vector<double> output_path;
    StateVector final_state;
    long guard_warnings = 0;
};

// What to sample along a trajectory.
struct Functional {
    enum class Kind {
        State,   // eval(psi) on the post-normalization state
        Output,  // cumulative B_n (needs model.output_signal)
        Aux,     // auxiliary scalar aux[aux_index]
    };

    std::string name;
    Kind kind = Kind::State;
    std::function<double(const StateVector& psi)> eval;
    int aux_index = 0;
};

// Integrates one realization on the uniform grid t_n = n dt. Functionals
// are evaluated on the post-normalization state; the output accumulator
// uses the pre-update state, B_{n+1} = B_n + dW_n + m(psi_n) dt. Throws
// TrajectoryAbort on zero-norm or non-finite amplitudes.
TrajectoryRecord simulate_trajectory(const DiffusionModel& m, SchemeId scheme,
                                     const StateVector& psi0, double t_final, double dt,
                                     NoiseStream& s, const std::vector<Functional>& functionals);

// Un-normalized Euler update of the linear equation
// d phi = (-iH - 1/2 sum_j R_j^dag R_j) phi dt + sum_j R_j phi dB_j.
StateVector linear_euler_step(const LinearOperator& h, const std::vector<LinearOperator>& rs,
                              const StateVector& phi, double dt, const std::vector<double>& db);

// Trajectory of the linear equation under the reference measure (dB = Wiener
// increments); functionals see the raw, un-normalized phi.
TrajectoryRecord simulate_linear_trajectory(const LinearOperator& h,
                                            const std::vector<LinearOperator>& rs,
                                            const StateVector& phi0, double t_final, double dt,
                                            NoiseStream& s,
                                            const std::vector<Functional>& functionals);

// Grid helper: number of steps such that n*dt == t_final within 1e-9
// relative; throws InvalidParameter otherwise.
long grid_steps(double t_final, double dt);

}  // namespace sse
