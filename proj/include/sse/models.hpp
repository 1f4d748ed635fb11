#pragma once

// The three concrete systems: a resonantly driven two-level atom under
// homodyne detection (rotating frame), the damped harmonic oscillator on a
// truncated Fock space, and a dissipative qubit driven by Ornstein-Uhlenbeck
// coloured noise.

#include <vector>

#include "sse/hilbert.hpp"
#include "sse/sde.hpp"

namespace sse {

struct HomodyneParams {
    double omega_r = 1.0;        // Rabi frequency
    double gamma = 1.0;          // natural linewidth
    double theta = 1.5707963267948966;  // local-oscillator phase; pi/2 or 0
};

struct OscillatorParams {
    double gamma = 1.0;
    int n_max = 12;  // Fock truncation
    int n0 = 9;      // initial Fock level
};

struct OUQubitParams {
    double omega0 = 3.0413812651491097;  // sqrt(37)/2, the paper's nu = 3 choice
    double gamma = 1.0;
    double k = 1.0;  // inverse correlation time of the O-U noise
};

// Rotating-frame SSE of the homodyne qubit. Only theta = pi/2 (the paper's
// choice, measurement signal <sigma_y>) and theta = 0 (signal <sigma_x>)
// are supported; the drift/diffusion pair is
//   A1(psi) = -i H_L psi + (gamma/2)(m e^{i theta} sigma_- - sigma_+ sigma_- - m^2/4) psi
//   A2(psi) = sqrt(gamma) (e^{i theta} sigma_- - m/2) psi
// with H_L = -(omega_r/2) sigma_x and m = <e^{i theta} sigma_- + h.c.>.
DiffusionModel homodyne_qubit(const HomodyneParams& p);

// Damped harmonic oscillator SSE on dim = n_max + 1, with a truncation
// guard that flags population reaching the top level.
DiffusionModel damped_oscillator(const OscillatorParams& p);

// Coloured-noise qubit: d psi = (C - k X D) psi dt + D psi dW coupled to
// dX = -k X dt + dW, with C = -i(omega0/2) sigma_z - (gamma/4) and
// D = -i sqrt(gamma/2) sigma_y. Norm-preserving in continuous time.
DiffusionModel ou_qubit(const OUQubitParams& p);

// Initial states matching the paper's experiments.
StateVector homodyne_initial_state();    // ground state
StateVector oscillator_initial_state(const OscillatorParams& p);  // |n0>
StateVector ou_qubit_initial_state();    // excited state

// Operators of the homodyne linear equation in the rotating frame
// (H = H_L, R = sqrt(gamma) e^{i theta} sigma_-), for martingale runs.
struct LinearModelOps {
    LinearOperator h;
    std::vector<LinearOperator> rs;
};

LinearModelOps homodyne_lsse_ops(const HomodyneParams& p);

}  // namespace sse
