// Compares the serial reference ensemble driver against the OpenMP one on
// the homodyne model and checks that both produce identical moments.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sse/ensemble.hpp"

using namespace sse;

namespace {

double run_once(const EnsembleRequest& req, bool parallel, int threads,
                EnsembleResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = parallel ? run_ensemble_parallel(req, threads) : run_ensemble_serial(req);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    long realizations = 2000;
    double t_final = 10.0;
    if (argc > 1) {
        realizations = std::atol(argv[1]);
    }
    if (argc > 2) {
        t_final = std::atof(argv[2]);
    }

    const DiffusionModel model = homodyne_qubit(HomodyneParams{});
    Functional eta11;
    eta11.name = "eta11";
    eta11.eval = [](const StateVector& psi) { return std::norm(psi(0)); };

    EnsembleRequest req;
    req.model = &model;
    req.scheme = SchemeId::EulerRenorm;
    req.psi0 = homodyne_initial_state();
    req.t_final = t_final;
    req.dt = 0.01;
    req.realizations = realizations;
    req.master_seed = 20260809;
    req.functionals = {eta11};

    std::printf("homodyne ensemble, R=%ld, t_final=%g, dt=%g\n", realizations, t_final, req.dt);

    EnsembleResult serial_res;
    const double t_serial = run_once(req, false, 1, serial_res);
    std::printf("serial   : %8.3f s\n", t_serial);

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    EnsembleResult par_res;
    const double t_par = run_once(req, true, max_threads, par_res);
    std::printf("parallel : %8.3f s  (%d threads, speedup %.2fx)\n", t_par, max_threads,
                t_serial / t_par);

    for (std::size_t i = 0; i < serial_res.times.size(); ++i) {
        if (std::memcmp(&serial_res.summaries[0].mean[i], &par_res.summaries[0].mean[i],
                        sizeof(double)) != 0 ||
            std::memcmp(&serial_res.summaries[0].stderr_[i], &par_res.summaries[0].stderr_[i],
                        sizeof(double)) != 0) {
            std::printf("MISMATCH at grid point %zu\n", i);
            return 1;
        }
    }
    std::printf("serial and parallel moments are bit-identical\n");
    return 0;
}
