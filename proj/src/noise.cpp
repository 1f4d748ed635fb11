#include "sse/noise.hpp"

#include <cmath>

namespace sse {

namespace {

// SplitMix64 (Vigna); used only to expand the (seed, index) key into the
// xoshiro256++ state.
struct SplitMix64 {
    std::uint64_t x;
    std::uint64_t next() {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    // substream_state = mix(master_seed, stream_index): whiten the seed,
    // fold in the stream index scaled by the SplitMix64 increment, then
    // take four successive SplitMix64 outputs as the xoshiro state.
    SplitMix64 sm{master_seed};
    const std::uint64_t whitened = sm.next();
    sm.x = whitened ^ ((stream_index + 1) * 0x9E3779B97F4A7C15ULL);
    for (auto& word : state_) {
        word = sm.next();
    }
}

std::uint64_t NoiseStream::next_u64() {
    // xoshiro256++ (Blackman & Vigna, public domain reference code).
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double NoiseStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseStream::standard_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // Polar rejection: draw (u,v) uniform on [-1,1)^2 until inside the unit
    // disc (origin excluded), consuming two uniforms per attempt.
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_normal_ = true;
    return u * f;
}

WienerIncrements wiener_increments(NoiseStream& s, long n_steps, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidParameter("wiener_increments: dt must be positive");
    }
    if (n_steps < 0) {
        throw InvalidParameter("wiener_increments: n_steps must be >= 0");
    }
    WienerIncrements w{dt, {}};
    w.values.reserve(static_cast<std::size_t>(n_steps));
    const double root_dt = std::sqrt(dt);
    for (long i = 0; i < n_steps; ++i) {
        w.values.push_back(s.standard_normal() * root_dt);
    }
    return w;
}

OUState ou_init(double k, NoiseStream& s) {
    if (!(k > 0.0)) {
        throw InvalidParameter("ou_init: k must be positive");
    }
    return OUState{k, s.standard_normal() / std::sqrt(2.0 * k)};
}

OUState ou_step(const OUState& st, double dt, double dw) {
    if (!(dt > 0.0)) {
        throw InvalidParameter("ou_step: dt must be positive");
    }
    return OUState{st.k, st.x - st.k * st.x * dt + dw};
}

}  // namespace sse
