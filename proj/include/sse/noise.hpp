#pragma once

// Reproducible pseudo-random streams. A NoiseStream is an xoshiro256++
// generator whose 256-bit state is derived from (master_seed, stream_index)
// by a SplitMix64 expansion, so stream r is the same no matter which worker
// runs it or in which order. Normal variates come from the polar (rejection)
// form of Box-Muller, consuming uniform pairs in a fixed order and caching
// the spare deviate.

#include <array>
#include <cstdint>
#include <vector>

#include "sse/errors.hpp"

namespace sse {

class NoiseStream {
public:
    NoiseStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64();

    // Uniform on [0,1), 53-bit resolution.
    double uniform01();

    // Standard normal via polar Box-Muller.
    double standard_normal();

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::array<std::uint64_t, 4> state_{};
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

struct WienerIncrements {
    double dt;
    std::vector<double> values;  // dW_n = Z_n sqrt(dt)
};

WienerIncrements wiener_increments(NoiseStream& s, long n_steps, double dt);

// Stationary Ornstein-Uhlenbeck scalar, dX = -k X dt + dW, k > 0.
struct OUState {
    double k;
    double x;
};

// X(0) = Z / sqrt(2k); consumes one normal draw. Throws InvalidParameter
// for k <= 0 (the stationary construction diverges as k -> 0; the Markovian
// limit is reached only through the reference ODEs).
OUState ou_init(double k, NoiseStream& s);

// One Euler step with externally supplied dW (the same Wiener increment
// that drives the state SDE).
OUState ou_step(const OUState& st, double dt, double dw);

}  // namespace sse
