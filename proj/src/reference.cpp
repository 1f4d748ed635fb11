#include "sse/reference.hpp"

#include <cmath>

namespace sse {

namespace {
constexpr Complex kI{0.0, 1.0};
}

HomodyneSolution homodyne_solution(double omega_r, double gamma) {
    if (!(omega_r > 0.0) || !(gamma > 0.0)) {
        throw ParameterDomain("homodyne solution needs omega_r > 0 and gamma > 0");
    }
    const double disc = omega_r * omega_r - gamma * gamma / 16.0;
    if (!(disc > 0.0)) {
        throw ParameterDomain("homodyne solution needs omega_r^2 > gamma^2/16");
    }
    const double s = std::sqrt(disc);
    const double o2 = omega_r * omega_r;
    const double g2 = gamma * gamma;
    const double denom = 2.0 * o2 + g2;

    HomodyneSolution sol;
    sol.a_plus = 0.75 * gamma + kI * s;
    sol.a_minus = 0.75 * gamma - kI * s;
    sol.u_plus = omega_r * (gamma * s - kI * (o2 - g2 / 4.0)) / (s * denom);
    sol.u_minus = omega_r * (gamma * s + kI * (o2 - g2 / 4.0)) / (s * denom);
    sol.v_plus = o2 * (-3.0 * kI * gamma / 4.0 - s) / (2.0 * s * denom);
    sol.v_minus = o2 * (3.0 * kI * gamma / 4.0 - s) / (2.0 * s * denom);
    sol.steady_eta11 = o2 / denom;
    sol.steady_sigma_y = -omega_r * gamma / (o2 + g2 / 2.0);
    return sol;
}

double homodyne_eta11(double t, double omega_r, double gamma) {
    if (t < 0.0) {
        throw ParameterDomain("homodyne_eta11: t must be >= 0");
    }
    const HomodyneSolution sol = homodyne_solution(omega_r, gamma);
    const Complex value = sol.v_plus * std::exp(-sol.a_plus * t) +
                          sol.v_minus * std::exp(-sol.a_minus * t) + sol.steady_eta11;
    return value.real();
}

double homodyne_sigma_y(double t, double omega_r, double gamma) {
    if (t < 0.0) {
        throw ParameterDomain("homodyne_sigma_y: t must be >= 0");
    }
    const HomodyneSolution sol = homodyne_solution(omega_r, gamma);
    const Complex value = sol.u_plus * std::exp(-sol.a_plus * t) +
                          sol.u_minus * std::exp(-sol.a_minus * t) + sol.steady_sigma_y;
    return value.real();
}

double homodyne_mean_output(double t, double omega_r, double gamma) {
    if (t < 0.0) {
        throw ParameterDomain("homodyne_mean_output: t must be >= 0");
    }
    const HomodyneSolution sol = homodyne_solution(omega_r, gamma);
    if (t == 0.0) {
        return 0.0;
    }
    // Trapezoid at h <= 2.5e-4 keeps the composite error under 1e-6 for the
    // horizons of interest (|f''| stays O(1) for the paper's parameters).
    const long n = std::max<long>(1, static_cast<long>(std::ceil(t / 2.5e-4)));
    const double h = t / static_cast<double>(n);
    auto f = [&](double s) {
        const Complex value = sol.u_plus * std::exp(-sol.a_plus * s) +
                              sol.u_minus * std::exp(-sol.a_minus * s) + sol.steady_sigma_y;
        return value.real();
    };
    double sum = 0.5 * (f(0.0) + f(t));
    for (long i = 1; i < n; ++i) {
        sum += f(h * static_cast<double>(i));
    }
    return std::sqrt(gamma) * h * sum;
}

std::vector<Eigen::VectorXd> rk4_solve(const OdeField& field, Eigen::VectorXd y0,
                                       double t_final, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidParameter("rk4_solve: dt must be positive");
    }
    const long n_steps = static_cast<long>(std::llround(t_final / dt));
    std::vector<Eigen::VectorXd> path;
    path.reserve(static_cast<std::size_t>(n_steps) + 1);
    path.push_back(y0);

    const auto dim = y0.size();
    Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    Eigen::VectorXd y = std::move(y0);
    for (long i = 0; i < n_steps; ++i) {
        const double t = dt * static_cast<double>(i);
        field(t, y, k1);
        tmp = y + 0.5 * dt * k1;
        field(t + 0.5 * dt, tmp, k2);
        tmp = y + 0.5 * dt * k2;
        field(t + 0.5 * dt, tmp, k3);
        tmp = y + dt * k3;
        field(t + dt, tmp, k4);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!y.allFinite()) {
            throw IntegrationFailure("rk4_solve: non-finite value at step " + std::to_string(i));
        }
        path.push_back(y);
    }
    return path;
}

namespace {

// Pack a dim x dim complex matrix as [Re; Im] column-stacked reals so the
// real-vector RK4 can drive it.
Eigen::VectorXd pack_density(const DensityMatrix& rho) {
    const auto d = rho.rows();
    Eigen::VectorXd y(2 * d * d);
    Eigen::Index at = 0;
    for (Eigen::Index col = 0; col < d; ++col) {
        for (Eigen::Index row = 0; row < d; ++row) {
            y(at++) = rho(row, col).real();
            y(at++) = rho(row, col).imag();
        }
    }
    return y;
}

DensityMatrix unpack_density(const Eigen::VectorXd& y, Eigen::Index d) {
    DensityMatrix rho(d, d);
    Eigen::Index at = 0;
    for (Eigen::Index col = 0; col < d; ++col) {
        for (Eigen::Index row = 0; row < d; ++row) {
            rho(row, col) = Complex{y(at), y(at + 1)};
            at += 2;
        }
    }
    return rho;
}

}  // namespace

DensityPath lindblad_evolve(const LinearOperator& h, const std::vector<LinearOperator>& ls,
                            const DensityMatrix& rho0, double t_final, double dt) {
    if (!h.hermitian) {
        throw InvalidParameter("lindblad_evolve: Hamiltonian must be hermitian-flagged");
    }
    const Eigen::Index d = rho0.rows();
    if (h.mat.rows() != d) {
        throw DimensionMismatch("lindblad_evolve: H dimension mismatch");
    }
    for (const auto& l : ls) {
        if (l.mat.rows() != d) {
            throw DimensionMismatch("lindblad_evolve: Lindblad operator dimension mismatch");
        }
    }
    if (!(dt > 0.0) || !(t_final > 0.0)) {
        throw InvalidParameter("lindblad_evolve: dt and t_final must be positive");
    }
    validate_state(rho0);

    // Precompute L^dag L once; the Liouvillian is applied matrix-free.
    std::vector<Eigen::MatrixXcd> ldag_l;
    ldag_l.reserve(ls.size());
    for (const auto& l : ls) {
        ldag_l.push_back(l.mat.adjoint() * l.mat);
    }

    auto liouvillian = [&](const DensityMatrix& rho) {
        DensityMatrix out = -kI * (h.mat * rho - rho * h.mat);
        for (std::size_t j = 0; j < ls.size(); ++j) {
            out += ls[j].mat * rho * ls[j].mat.adjoint();
            out -= 0.5 * (ldag_l[j] * rho + rho * ldag_l[j]);
        }
        return out;
    };

    OdeField field = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        dy = pack_density(liouvillian(unpack_density(y, d)));
    };

    const long n_out = static_cast<long>(std::llround(t_final / dt));
    const long substeps = std::max<long>(1, static_cast<long>(std::ceil(dt / 1e-3 - 1e-12)));
    const double h_int = dt / static_cast<double>(substeps);

    DensityPath out;
    out.times.reserve(static_cast<std::size_t>(n_out) + 1);
    out.states.reserve(static_cast<std::size_t>(n_out) + 1);
    out.times.push_back(0.0);
    out.states.push_back(rho0);

    DensityMatrix rho = rho0;
    for (long i = 0; i < n_out; ++i) {
        auto seg = rk4_solve(field, pack_density(rho), dt, h_int);
        rho = unpack_density(seg.back(), d);
        const double tr_dev = std::abs(rho.trace() - Complex{1.0, 0.0});
        if (tr_dev > 1e-8) {
            throw IntegrationFailure("lindblad_evolve: trace drifted by " +
                                     std::to_string(tr_dev));
        }
        validate_state(rho);
        out.times.push_back(dt * static_cast<double>(i + 1));
        out.states.push_back(rho);
    }
    return out;
}

BlochPath nonmarkov_bloch(double t_final, double dt, double omega0, double gamma, double k) {
    if (!(gamma > 0.0)) {
        throw ParameterDomain("nonmarkov_bloch: gamma must be positive");
    }
    if (!(omega0 > gamma / 2.0)) {
        throw ParameterDomain("nonmarkov_bloch: need omega0 > gamma/2");
    }
    if (k < 0.0) {
        throw ParameterDomain("nonmarkov_bloch: k must be >= 0");
    }
    if (!(dt > 0.0) || !(t_final > 0.0)) {
        throw InvalidParameter("nonmarkov_bloch: dt and t_final must be positive");
    }
    const double nu2 = omega0 * omega0 - gamma * gamma / 4.0;

    // State layout: (x, y, zeta, xi, eps, z); the two 3x3 blocks are
    // decoupled but integrated together.
    OdeField field = [=](double, const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
        const double x = s(0), y = s(1), zeta = s(2);
        const double xi = s(3), eps = s(4), z = s(5);
        ds.resize(6);
        ds(0) = -omega0 * y - gamma * x + k * zeta;
        ds(1) = omega0 * x;
        ds(2) = -(k + gamma) * zeta + gamma * x;
        ds(3) = -(k + gamma / 2.0) * xi + (2.0 * nu2 / gamma) * eps + gamma * z;
        ds(4) = -(k + gamma / 2.0) * eps - (gamma / 2.0) * xi;
        ds(5) = -gamma * z + k * (xi + eps);
    };

    const long n_out = static_cast<long>(std::llround(t_final / dt));
    const long substeps = std::max<long>(1, static_cast<long>(std::ceil(dt / 1e-3 - 1e-12)));
    const double h_int = dt / static_cast<double>(substeps);

    Eigen::VectorXd y0(6);
    y0 << 0.0, 0.0, 0.0, 0.0, 0.0, 1.0;  // excited start, eta11(0) = 1

    auto full = rk4_solve(field, y0, t_final, h_int);

    BlochPath out;
    out.times.reserve(static_cast<std::size_t>(n_out) + 1);
    out.states.reserve(static_cast<std::size_t>(n_out) + 1);
    for (long i = 0; i <= n_out; ++i) {
        const auto& s = full[static_cast<std::size_t>(i * substeps)];
        out.times.push_back(dt * static_cast<double>(i));
        out.states.push_back(BlochODEState{s(0), s(1), s(5), s(2), s(3), s(4)});
    }
    return out;
}

}  // namespace sse
