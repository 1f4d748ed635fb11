#pragma once

// Ensemble estimators over independent realizations: per-grid-point sample
// mean and sample standard error, accumulated in a numerically stable
// streaming form (incremental mean / M2 rather than raw power sums).

#include <cstddef>
#include <vector>

#include "sse/errors.hpp"

namespace sse {

class EnsembleAccumulator {
public:
    explicit EnsembleAccumulator(std::size_t n_points);

    std::size_t n_points() const { return mean_.size(); }
    std::size_t count() const { return count_; }

    // One realization's functional values, one per grid point.
    void add(const std::vector<double>& samples);

    // Folds another accumulator in; associative on the moments. The caller
    // fixes the merge order (the ensemble driver merges blocks in index
    // order so results do not depend on worker count).
    void merge(const EnsembleAccumulator& other);

    struct Summary {
        std::vector<double> mean;
        std::vector<double> stderr_;  // sqrt(M2 / (R(R-1)))
        std::size_t count = 0;
    };

    // Requires count >= 2; throws InsufficientSamples otherwise.
    Summary finalize() const;

private:
    std::size_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

}  // namespace sse
