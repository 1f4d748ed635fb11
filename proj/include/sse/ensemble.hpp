#pragma once

// Ensemble driver. Realizations are grouped into fixed-size blocks of
// consecutive trajectory indices; each block is accumulated sequentially
// into its own accumulator and the block accumulators are merged in block
// order. The block partition is independent of the worker count, so the
// serial reference path and the OpenMP path produce bit-identical moments.

#include <cstdint>
#include <vector>

#include "sse/models.hpp"
#include "sse/sde.hpp"
#include "sse/stats.hpp"

namespace sse {

// Trajectories per reduction block; fixed so results do not depend on the
// number of workers.
inline constexpr long kTrajectoryBlock = 64;

struct EnsembleRequest {
    const DiffusionModel* model = nullptr;  // nonlinear runs
    const LinearModelOps* linear_ops = nullptr;  // linear (martingale) runs
    SchemeId scheme = SchemeId::EulerRenorm;
    StateVector psi0;
    double t_final = 1.0;
    double dt = 0.01;
    long realizations = 2;
    std::uint64_t master_seed = 0;
    std::vector<Functional> functionals;
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<EnsembleAccumulator::Summary> summaries;  // one per functional
    long accepted = 0;
    long aborted = 0;
    long guard_warnings = 0;
};

// Plain-loop reference implementation.
EnsembleResult run_ensemble_serial(const EnsembleRequest& req);

// OpenMP implementation; threads == 0 picks the runtime default. Falls back
// to the serial path when built without OpenMP.
EnsembleResult run_ensemble_parallel(const EnsembleRequest& req, int threads);

// Dispatches on threads (<= 1 runs the serial reference).
EnsembleResult run_ensemble(const EnsembleRequest& req, int threads);

}  // namespace sse
