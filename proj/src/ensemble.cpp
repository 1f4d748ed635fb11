#include "sse/ensemble.hpp"

#include <algorithm>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sse {

namespace {

struct BlockState {
    std::vector<EnsembleAccumulator> acc;  // one per functional
    long aborted = 0;
    long guard_warnings = 0;
    std::string error;  // first non-abort failure, rethrown after the loop
};

void validate_request(const EnsembleRequest& req) {
    if ((req.model == nullptr) == (req.linear_ops == nullptr)) {
        throw InvalidParameter("ensemble request needs exactly one of model/linear_ops");
    }
    if (req.realizations < 1) {
        throw InvalidParameter("ensemble request needs realizations >= 1");
    }
    if (req.functionals.empty()) {
        throw InvalidParameter("ensemble request needs at least one functional");
    }
}

void run_block(const EnsembleRequest& req, long block, std::size_t n_points, BlockState& state) {
    state.acc.assign(req.functionals.size(), EnsembleAccumulator(n_points));
    const long first = block * kTrajectoryBlock;
    const long last = std::min(first + kTrajectoryBlock, req.realizations);
    for (long r = first; r < last; ++r) {
        NoiseStream stream(req.master_seed, static_cast<std::uint64_t>(r));
        try {
            TrajectoryRecord rec =
                req.model != nullptr
                    ? simulate_trajectory(*req.model, req.scheme, req.psi0, req.t_final,
                                          req.dt, stream, req.functionals)
                    : simulate_linear_trajectory(req.linear_ops->h, req.linear_ops->rs,
                                                 req.psi0, req.t_final, req.dt, stream,
                                                 req.functionals);
            state.guard_warnings += rec.guard_warnings;
            for (std::size_t f = 0; f < req.functionals.size(); ++f) {
                state.acc[f].add(rec.functional_samples[f]);
            }
        } catch (const TrajectoryAbort&) {
            ++state.aborted;
        } catch (const std::exception& e) {
            state.error = "trajectory " + std::to_string(r) + ": " + e.what();
            return;
        }
    }
}

EnsembleResult reduce_blocks(const EnsembleRequest& req, std::size_t n_points,
                             std::vector<BlockState>& blocks) {
    for (const auto& b : blocks) {
        if (!b.error.empty()) {
            throw IntegrationFailure(b.error);
        }
    }
    std::vector<EnsembleAccumulator> total(req.functionals.size(),
                                           EnsembleAccumulator(n_points));
    EnsembleResult out;
    for (const auto& b : blocks) {
        out.aborted += b.aborted;
        out.guard_warnings += b.guard_warnings;
        for (std::size_t f = 0; f < total.size(); ++f) {
            total[f].merge(b.acc[f]);
        }
    }
    out.accepted = static_cast<long>(total[0].count());
    out.times.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        out.times[i] = req.dt * static_cast<double>(i);
    }
    out.summaries.reserve(total.size());
    for (const auto& acc : total) {
        out.summaries.push_back(acc.finalize());
    }
    return out;
}

}  // namespace

EnsembleResult run_ensemble_serial(const EnsembleRequest& req) {
    validate_request(req);
    const std::size_t n_points = static_cast<std::size_t>(grid_steps(req.t_final, req.dt)) + 1;
    const long n_blocks = (req.realizations + kTrajectoryBlock - 1) / kTrajectoryBlock;
    std::vector<BlockState> blocks(static_cast<std::size_t>(n_blocks));
    for (long b = 0; b < n_blocks; ++b) {
        run_block(req, b, n_points, blocks[static_cast<std::size_t>(b)]);
    }
    return reduce_blocks(req, n_points, blocks);
}

EnsembleResult run_ensemble_parallel(const EnsembleRequest& req, int threads) {
    validate_request(req);
    const std::size_t n_points = static_cast<std::size_t>(grid_steps(req.t_final, req.dt)) + 1;
    const long n_blocks = (req.realizations + kTrajectoryBlock - 1) / kTrajectoryBlock;
    std::vector<BlockState> blocks(static_cast<std::size_t>(n_blocks));
#ifdef _OPENMP
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
    for (long b = 0; b < n_blocks; ++b) {
        run_block(req, b, n_points, blocks[static_cast<std::size_t>(b)]);
    }
#else
    (void)threads;
    for (long b = 0; b < n_blocks; ++b) {
        run_block(req, b, n_points, blocks[static_cast<std::size_t>(b)]);
    }
#endif
    return reduce_blocks(req, n_points, blocks);
}

EnsembleResult run_ensemble(const EnsembleRequest& req, int threads) {
    if (threads == 1) {
        return run_ensemble_serial(req);
    }
    return run_ensemble_parallel(req, threads);
}

}  // namespace sse
