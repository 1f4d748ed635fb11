#include "sse/sde.hpp"

#include <cmath>

namespace sse {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Workspace {
    StateVector acc, drift_v, diff_v;
    StateVector psi_tilde, psi_plus, psi_minus;
    StateVector d1_base, d1_tilde, d2_base, d2_plus, d2_minus;
    AuxState aux_drift_v, aux_diff_v;

    explicit Workspace(const DiffusionModel& m)
        : acc(m.dim), drift_v(m.dim), diff_v(m.dim),
          psi_tilde(m.dim), psi_plus(m.dim), psi_minus(m.dim),
          d1_base(m.dim), d1_tilde(m.dim), d2_base(m.dim), d2_plus(m.dim), d2_minus(m.dim),
          aux_drift_v(static_cast<std::size_t>(m.aux_dim)),
          aux_diff_v(static_cast<std::size_t>(m.aux_dim)) {}
};

// Renormalizes v in place; returns the pre-normalization norm. Throws
// ZeroNorm when the norm vanished or turned non-finite.
double renormalize_in_place(StateVector& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n <= 1e-300) {
        throw ZeroNorm("state norm vanished or became non-finite");
    }
    v /= n;
    return n;
}

// Euler update of the auxiliary scalars on the shared channel-0 increment.
void advance_aux(const DiffusionModel& m, double t, const AuxState& aux, double dt, double dw0,
                 Workspace& ws, AuxState& out) {
    out.resize(aux.size());
    if (m.aux_dim == 0) {
        return;
    }
    m.aux_drift(t, aux, ws.aux_drift_v);
    m.aux_diffusion(t, aux, ws.aux_diff_v);
    for (std::size_t i = 0; i < aux.size(); ++i) {
        out[i] = aux[i] + ws.aux_drift_v[i] * dt + ws.aux_diff_v[i] * dw0;
    }
}

double euler_step_ws(const DiffusionModel& m, double t, const StateVector& psi,
                     const AuxState& aux, double dt, const std::vector<double>& dw,
                     Workspace& ws, StateVector& out_psi, AuxState& out_aux) {
    m.drift(t, psi, aux, ws.drift_v);
    ws.acc = psi + dt * ws.drift_v;
    for (int j = 0; j < m.n_channels; ++j) {
        m.diffusion(t, psi, aux, j, ws.diff_v);
        ws.acc += dw[static_cast<std::size_t>(j)] * ws.diff_v;
    }
    const double pre_norm = renormalize_in_place(ws.acc);
    out_psi = ws.acc;
    advance_aux(m, t, aux, dt, dw.empty() ? 0.0 : dw[0], ws, out_aux);
    return pre_norm;
}

double platen_step_ws(const DiffusionModel& m, double t, const StateVector& psi,
                      const AuxState& aux, double dt, double dw, Workspace& ws,
                      StateVector& out_psi, AuxState& out_aux) {
    const double root_dt = std::sqrt(dt);

    m.drift(t, psi, aux, ws.d1_base);
    m.diffusion(t, psi, aux, 0, ws.d2_base);

    ws.psi_tilde = psi + dt * ws.d1_base + dw * ws.d2_base;
    ws.psi_plus = psi + dt * ws.d1_base + root_dt * ws.d2_base;
    ws.psi_minus = psi + dt * ws.d1_base - root_dt * ws.d2_base;

    m.drift(t + dt, ws.psi_tilde, aux, ws.d1_tilde);
    m.diffusion(t, ws.psi_plus, aux, 0, ws.d2_plus);
    m.diffusion(t, ws.psi_minus, aux, 0, ws.d2_minus);

    ws.acc = psi + 0.5 * dt * (ws.d1_tilde + ws.d1_base) +
             0.25 * dw * (ws.d2_plus + ws.d2_minus + 2.0 * ws.d2_base) +
             0.25 * ((dw * dw - dt) / root_dt) * (ws.d2_plus - ws.d2_minus);

    const double pre_norm = renormalize_in_place(ws.acc);
    out_psi = ws.acc;
    advance_aux(m, t, aux, dt, dw, ws, out_aux);
    return pre_norm;
}

void check_step_preconditions(const DiffusionModel& m, const StateVector& psi,
                              std::size_t n_dw) {
    if (psi.size() != m.dim) {
        throw DimensionMismatch("step: state dimension does not match model");
    }
    if (n_dw != static_cast<std::size_t>(m.n_channels)) {
        throw DimensionMismatch("step: dW count does not match n_channels");
    }
}

}  // namespace

SchemeId parse_scheme(const std::string& name) {
    if (name == "euler") {
        return SchemeId::EulerRenorm;
    }
    if (name == "platen") {
        return SchemeId::PlatenWeak2;
    }
    throw ConfigError("unknown scheme '" + name + "' (expected euler or platen)");
}

StepResult euler_step(const DiffusionModel& m, double t, const StateVector& psi,
                      const AuxState& aux, double dt, const std::vector<double>& dw) {
    check_step_preconditions(m, psi, dw.size());
    Workspace ws(m);
    StepResult r;
    r.psi.resize(m.dim);
    r.pre_norm = euler_step_ws(m, t, psi, aux, dt, dw, ws, r.psi, r.aux);
    return r;
}

StepResult platen_step(const DiffusionModel& m, double t, const StateVector& psi,
                       const AuxState& aux, double dt, double dw) {
    if (m.n_channels != 1) {
        throw MultiChannelUnsupported("platen_step supports a single Wiener channel");
    }
    check_step_preconditions(m, psi, 1);
    Workspace ws(m);
    StepResult r;
    r.psi.resize(m.dim);
    r.pre_norm = platen_step_ws(m, t, psi, aux, dt, dw, ws, r.psi, r.aux);
    return r;
}

long grid_steps(double t_final, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidParameter("dt must be positive");
    }
    if (!(t_final >= dt)) {
        throw InvalidParameter("t_final must be at least dt");
    }
    const long n = static_cast<long>(std::llround(t_final / dt));
    if (n < 1 || std::abs(static_cast<double>(n) * dt - t_final) >
                     1e-9 * std::max(1.0, std::abs(t_final))) {
        throw InvalidParameter("dt must divide t_final");
    }
    return n;
}

TrajectoryRecord simulate_trajectory(const DiffusionModel& m, SchemeId scheme,
                                     const StateVector& psi0, double t_final, double dt,
                                     NoiseStream& s, const std::vector<Functional>& functionals) {
    const long n_steps = grid_steps(t_final, dt);
    if (psi0.size() != m.dim) {
        throw DimensionMismatch("simulate_trajectory: psi0 dimension mismatch");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-9) {
        throw InvalidParameter("simulate_trajectory: psi0 must be normalized");
    }
    if (scheme == SchemeId::PlatenWeak2 && m.n_channels != 1) {
        throw MultiChannelUnsupported("Platen scheme supports a single Wiener channel");
    }

    bool want_output = false;
    for (const auto& f : functionals) {
        if (f.kind == Functional::Kind::Output) {
            want_output = true;
            if (!m.output_signal) {
                throw InvalidParameter("functional '" + f.name + "': model has no output signal");
            }
        }
        if (f.kind == Functional::Kind::Aux && f.aux_index >= m.aux_dim) {
            throw InvalidParameter("functional '" + f.name + "': aux index out of range");
        }
    }

    const std::size_t n_points = static_cast<std::size_t>(n_steps) + 1;
    TrajectoryRecord rec;
    rec.times.resize(n_points);
    rec.functional_samples.assign(functionals.size(), std::vector<double>(n_points));
    if (want_output) {
        rec.output_path.resize(n_points);
    }

    AuxState aux = m.aux_dim > 0 ? m.aux_init(s) : AuxState{};
    StateVector psi = psi0;
    AuxState next_aux;
    StateVector next_psi(m.dim);
    Workspace ws(m);

    double b_acc = 0.0;
    std::vector<double> dw(static_cast<std::size_t>(m.n_channels));
    const double root_dt = std::sqrt(dt);

    auto sample = [&](std::size_t i) {
        rec.times[i] = dt * static_cast<double>(i);
        for (std::size_t f = 0; f < functionals.size(); ++f) {
            switch (functionals[f].kind) {
                case Functional::Kind::State:
                    rec.functional_samples[f][i] = functionals[f].eval(psi);
                    break;
                case Functional::Kind::Output:
                    rec.functional_samples[f][i] = b_acc;
                    break;
                case Functional::Kind::Aux:
                    rec.functional_samples[f][i] =
                        aux[static_cast<std::size_t>(functionals[f].aux_index)];
                    break;
            }
        }
        if (want_output) {
            rec.output_path[i] = b_acc;
        }
    };

    sample(0);
    for (long step = 0; step < n_steps; ++step) {
        const double t = dt * static_cast<double>(step);
        for (auto& x : dw) {
            x = s.standard_normal() * root_dt;
        }
        if (want_output) {
            // B_{n+1} = B_n + dW_n + m(psi_n) dt with the pre-update state.
            b_acc += dw[0] + m.output_signal(psi) * dt;
        }
        try {
            if (scheme == SchemeId::EulerRenorm) {
                euler_step_ws(m, t, psi, aux, dt, dw, ws, next_psi, next_aux);
            } else {
                platen_step_ws(m, t, psi, aux, dt, dw[0], ws, next_psi, next_aux);
            }
        } catch (const ZeroNorm& e) {
            throw TrajectoryAbort(e.what(), step);
        }
        if (!next_psi.allFinite()) {
            throw TrajectoryAbort("non-finite amplitude", step);
        }
        psi.swap(next_psi);
        aux.swap(next_aux);
        if (m.guard && m.guard(psi)) {
            ++rec.guard_warnings;
        }
        sample(static_cast<std::size_t>(step) + 1);
    }
    rec.final_state = psi;
    return rec;
}

StateVector linear_euler_step(const LinearOperator& h, const std::vector<LinearOperator>& rs,
                              const StateVector& phi, double dt, const std::vector<double>& db) {
    if (!h.hermitian) {
        throw InvalidParameter("linear_euler_step: H must be hermitian-flagged");
    }
    if (h.mat.cols() != phi.size()) {
        throw DimensionMismatch("linear_euler_step: H dimension mismatch");
    }
    if (db.size() != rs.size()) {
        throw DimensionMismatch("linear_euler_step: need one dB per channel");
    }
    StateVector out = phi - kI * dt * (h.mat * phi);
    for (std::size_t j = 0; j < rs.size(); ++j) {
        if (rs[j].mat.cols() != phi.size()) {
            throw DimensionMismatch("linear_euler_step: R dimension mismatch");
        }
        const StateVector r_phi = rs[j].mat * phi;
        out += db[j] * r_phi - 0.5 * dt * (rs[j].mat.adjoint() * r_phi);
    }
    return out;
}

TrajectoryRecord simulate_linear_trajectory(const LinearOperator& h,
                                            const std::vector<LinearOperator>& rs,
                                            const StateVector& phi0, double t_final, double dt,
                                            NoiseStream& s,
                                            const std::vector<Functional>& functionals) {
    const long n_steps = grid_steps(t_final, dt);
    if (!h.hermitian) {
        throw InvalidParameter("simulate_linear_trajectory: H must be hermitian-flagged");
    }
    for (const auto& f : functionals) {
        if (f.kind != Functional::Kind::State) {
            throw InvalidParameter("linear trajectories support state functionals only");
        }
    }

    // K = -iH - 1/2 sum_j R_j^dag R_j, fixed along the run.
    Eigen::MatrixXcd k_op = -kI * h.mat;
    for (const auto& r : rs) {
        if (r.mat.cols() != phi0.size()) {
            throw DimensionMismatch("simulate_linear_trajectory: R dimension mismatch");
        }
        k_op -= 0.5 * (r.mat.adjoint() * r.mat);
    }

    const std::size_t n_points = static_cast<std::size_t>(n_steps) + 1;
    TrajectoryRecord rec;
    rec.times.resize(n_points);
    rec.functional_samples.assign(functionals.size(), std::vector<double>(n_points));

    StateVector phi = phi0;
    StateVector acc(phi.size());
    const double root_dt = std::sqrt(dt);

    auto sample = [&](std::size_t i) {
        rec.times[i] = dt * static_cast<double>(i);
        for (std::size_t f = 0; f < functionals.size(); ++f) {
            rec.functional_samples[f][i] = functionals[f].eval(phi);
        }
    };

    sample(0);
    for (long step = 0; step < n_steps; ++step) {
        acc = phi + dt * (k_op * phi);
        for (const auto& r : rs) {
            acc += (s.standard_normal() * root_dt) * (r.mat * phi);
        }
        if (!acc.allFinite()) {
            throw TrajectoryAbort("non-finite amplitude", step);
        }
        phi.swap(acc);
        sample(static_cast<std::size_t>(step) + 1);
    }
    rec.final_state = phi;
    return rec;
}

}  // namespace sse
