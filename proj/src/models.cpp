#include "sse/models.hpp"

#include <cmath>

namespace sse {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPiHalf = 1.5707963267948966;

// The two supported local-oscillator phases as exact complex constants.
Complex phase_factor(double theta) {
    if (std::abs(theta - kPiHalf) <= 1e-12) {
        return kI;
    }
    if (std::abs(theta) <= 1e-12) {
        return Complex{1.0, 0.0};
    }
    throw InvalidParameter("homodyne model supports theta = pi/2 or theta = 0 only");
}

double real_expectation(const Eigen::MatrixXcd& op, const StateVector& psi) {
    return psi.dot(op * psi).real();
}

}  // namespace

DiffusionModel homodyne_qubit(const HomodyneParams& p) {
    if (!(p.gamma > 0.0)) {
        throw InvalidParameter("homodyne_qubit: gamma must be positive");
    }
    if (p.omega_r < 0.0) {
        throw InvalidParameter("homodyne_qubit: omega_r must be >= 0");
    }
    const Complex phase = phase_factor(p.theta);
    const double gamma = p.gamma;
    const double root_gamma = std::sqrt(gamma);

    // m = <e^{i theta} sigma_- + e^{-i theta} sigma_+>: sigma_y for pi/2,
    // sigma_x for 0.
    const Eigen::MatrixXcd m_op =
        phase * sigma_minus().mat + std::conj(phase) * sigma_plus().mat;
    const Eigen::MatrixXcd phased_lower = phase * sigma_minus().mat;
    const Eigen::MatrixXcd excited_proj = sigma_plus().mat * sigma_minus().mat;
    const Eigen::MatrixXcd minus_i_hl = kI * (p.omega_r / 2.0) * sigma_x().mat;  // -i H_L

    DiffusionModel m;
    m.dim = 2;
    m.n_channels = 1;
    m.aux_dim = 0;
    m.drift = [=](double, const StateVector& psi, const AuxState&, StateVector& out) {
        const double my = real_expectation(m_op, psi);
        out = minus_i_hl * psi +
              (gamma / 2.0) * (my * (phased_lower * psi) - excited_proj * psi -
                               (0.25 * my * my) * psi);
    };
    m.diffusion = [=](double, const StateVector& psi, const AuxState&, int, StateVector& out) {
        const double my = real_expectation(m_op, psi);
        out = root_gamma * (phased_lower * psi - (0.5 * my) * psi);
    };
    m.output_signal = [=](const StateVector& psi) {
        return root_gamma * real_expectation(m_op, psi);
    };
    return m;
}

DiffusionModel damped_oscillator(const OscillatorParams& p) {
    if (!(p.gamma > 0.0)) {
        throw InvalidParameter("damped_oscillator: gamma must be positive");
    }
    if (p.n_max < 1) {
        throw InvalidParameter("damped_oscillator: n_max must be >= 1");
    }
    if (p.n0 < 0 || p.n0 > p.n_max) {
        throw InvalidParameter("damped_oscillator: need 0 <= n0 <= n_max");
    }
    const double gamma = p.gamma;
    const double root_gamma = std::sqrt(gamma);
    const Eigen::MatrixXcd a_op = annihilation(p.n_max).mat;
    const Eigen::MatrixXcd n_op = number_operator(p.n_max).mat;
    const Eigen::MatrixXcd x_op = a_op + a_op.adjoint();
    const int top = p.n_max;

    DiffusionModel m;
    m.dim = p.n_max + 1;
    m.n_channels = 1;
    m.aux_dim = 0;
    m.drift = [=](double, const StateVector& psi, const AuxState&, StateVector& out) {
        const double q = real_expectation(x_op, psi);
        out = (gamma / 2.0) * (q * (a_op * psi) - n_op * psi - (0.25 * q * q) * psi);
    };
    m.diffusion = [=](double, const StateVector& psi, const AuxState&, int, StateVector& out) {
        const double q = real_expectation(x_op, psi);
        out = root_gamma * (a_op * psi - (0.5 * q) * psi);
    };
    m.guard = [top](const StateVector& psi) {
        return std::norm(psi(top)) > 1e-6;
    };
    return m;
}

DiffusionModel ou_qubit(const OUQubitParams& p) {
    if (p.gamma < 0.0) {  // gamma = 0 is the dissipation-free phase rotation
        throw InvalidParameter("ou_qubit: gamma must be >= 0");
    }
    if (!(p.omega0 > p.gamma / 2.0)) {
        throw InvalidParameter("ou_qubit: need omega0 > gamma/2");
    }
    if (!(p.k > 0.0)) {
        throw InvalidParameter("ou_qubit: k must be positive (use the reference ODEs for k = 0)");
    }
    const double k = p.k;

    // C = -i H_0 - L^2/2 with H_0 = (omega0/2) sigma_z and L = sqrt(gamma/2)
    // sigma_y; L^2 = (gamma/2) * identity.
    const Eigen::MatrixXcd c_op = -kI * (p.omega0 / 2.0) * sigma_z().mat -
                                  (p.gamma / 4.0) * Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd d_op = -kI * std::sqrt(p.gamma / 2.0) * sigma_y().mat;

    DiffusionModel m;
    m.dim = 2;
    m.n_channels = 1;
    m.aux_dim = 1;
    m.drift = [=](double, const StateVector& psi, const AuxState& aux, StateVector& out) {
        out = c_op * psi - (k * aux[0]) * (d_op * psi);
    };
    m.diffusion = [=](double, const StateVector& psi, const AuxState&, int, StateVector& out) {
        out = d_op * psi;
    };
    m.aux_drift = [=](double, const AuxState& aux, AuxState& out) {
        out[0] = -k * aux[0];
    };
    m.aux_diffusion = [](double, const AuxState&, AuxState& out) {
        out[0] = 1.0;
    };
    m.aux_init = [=](NoiseStream& s) {
        return AuxState{ou_init(k, s).x};
    };
    return m;
}

StateVector homodyne_initial_state() {
    return qubit_ground();
}

StateVector oscillator_initial_state(const OscillatorParams& p) {
    return fock_state(p.n0, p.n_max);
}

StateVector ou_qubit_initial_state() {
    return qubit_excited();
}

LinearModelOps homodyne_lsse_ops(const HomodyneParams& p) {
    if (!(p.gamma > 0.0)) {
        throw InvalidParameter("homodyne_lsse_ops: gamma must be positive");
    }
    if (p.omega_r < 0.0) {
        throw InvalidParameter("homodyne_lsse_ops: omega_r must be >= 0");
    }
    const Complex phase = phase_factor(p.theta);
    LinearModelOps ops;
    ops.h = make_operator(-(p.omega_r / 2.0) * sigma_x().mat, true);
    ops.rs.push_back(make_operator(std::sqrt(p.gamma) * phase * sigma_minus().mat));
    return ops;
}

}  // namespace sse
