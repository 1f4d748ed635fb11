#pragma once

// Independent deterministic oracles: the closed-form solution of the
// homodyne qubit master equation, RK4 integration of Lindblad equations,
// and the memory-kernel approximation ODEs for the coloured-noise qubit.
// These never touch the stochastic code paths; the simulators are checked
// against them.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sse/hilbert.hpp"

namespace sse {

// Coefficients of eta11(t) = v+ e^{-a+ t} + v- e^{-a- t} + steady and
// Tr{sigma_y eta(t)} = u+ e^{-a+ t} + u- e^{-a- t} + steady_y, valid for
// omega_r^2 > gamma^2/16 (complex conjugate mode pair).
struct HomodyneSolution {
    Complex u_plus, u_minus;
    Complex v_plus, v_minus;
    Complex a_plus, a_minus;
    double steady_eta11;    //  omega_r^2 / (2 omega_r^2 + gamma^2)
    double steady_sigma_y;  // -omega_r gamma / (omega_r^2 + gamma^2/2)
};

HomodyneSolution homodyne_solution(double omega_r, double gamma);

// Excited-state population with ground-state start; real value in [0,1].
double homodyne_eta11(double t, double omega_r, double gamma);

// Tr{sigma_y eta(t)}, real value in [-1,1].
double homodyne_sigma_y(double t, double omega_r, double gamma);

// Mean integrated output E[B(t)] = sqrt(gamma) * int_0^t Tr{sigma_y eta} ds,
// composite trapezoid on a fine fixed grid (absolute error budget 1e-6).
double homodyne_mean_output(double t, double omega_r, double gamma);

// Classical fourth-order Runge-Kutta on a uniform grid; returns the path
// including t=0. Throws IntegrationFailure on non-finite field values.
using OdeField = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

std::vector<Eigen::VectorXd> rk4_solve(const OdeField& field, Eigen::VectorXd y0,
                                       double t_final, double dt);

struct DensityPath {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

// d rho/dt = -i[H,rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho}),
// integrated with RK4 at an internal step of min(dt, 1e-3) and sampled on
// the requested dt grid. Every output is validated as a state.
DensityPath lindblad_evolve(const LinearOperator& h, const std::vector<LinearOperator>& ls,
                            const DensityMatrix& rho0, double t_final, double dt);

struct BlochODEState {
    double x = 0.0, y = 0.0, z = 0.0;
    double zeta = 0.0;  // memory integral feeding x
    double xi = 0.0;    // cosine memory integral feeding z
    double eps = 0.0;   // sine memory integral feeding z
};

struct BlochPath {
    std::vector<double> times;
    std::vector<BlochODEState> states;

    // Excited population (1 + z)/2 at grid index i.
    double eta11(std::size_t i) const { return 0.5 * (1.0 + states[i].z); }
};

// Memory-kernel approximation for the coloured-noise qubit: two decoupled
// constant-coefficient linear systems, (x, y, zeta) and (xi, eps, z),
// started from the excited state (z = 1, everything else 0). k = 0 is the
// Markovian reference. Requires omega0 > gamma/2 so nu = sqrt(omega0^2 -
// gamma^2/4) is real.
BlochPath nonmarkov_bloch(double t_final, double dt, double omega0, double gamma, double k);

}  // namespace sse
