#include "sse/stats.hpp"

#include <cmath>

namespace sse {

EnsembleAccumulator::EnsembleAccumulator(std::size_t n_points)
    : mean_(n_points, 0.0), m2_(n_points, 0.0) {
    if (n_points == 0) {
        throw InvalidParameter("EnsembleAccumulator: empty grid");
    }
}

void EnsembleAccumulator::add(const std::vector<double>& samples) {
    if (samples.size() != mean_.size()) {
        throw GridMismatch("EnsembleAccumulator::add: record grid does not match");
    }
    ++count_;
    const double inv_n = 1.0 / static_cast<double>(count_);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double delta = samples[i] - mean_[i];
        mean_[i] += delta * inv_n;
        m2_[i] += delta * (samples[i] - mean_[i]);
    }
}

void EnsembleAccumulator::merge(const EnsembleAccumulator& other) {
    if (other.mean_.size() != mean_.size()) {
        throw GridMismatch("EnsembleAccumulator::merge: grid size mismatch");
    }
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double nab = na + nb;
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = other.mean_[i] - mean_[i];
        mean_[i] += delta * (nb / nab);
        m2_[i] += other.m2_[i] + delta * delta * (na * nb / nab);
    }
    count_ += other.count_;
}

EnsembleAccumulator::Summary EnsembleAccumulator::finalize() const {
    if (count_ < 2) {
        throw InsufficientSamples("finalize needs at least 2 realizations");
    }
    Summary out;
    out.count = count_;
    out.mean = mean_;
    out.stderr_.resize(m2_.size());
    const double r = static_cast<double>(count_);
    for (std::size_t i = 0; i < m2_.size(); ++i) {
        out.stderr_[i] = std::sqrt(std::max(0.0, m2_[i]) / (r * (r - 1.0)));
    }
    return out;
}

}  // namespace sse
