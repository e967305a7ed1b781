#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "poik/params.hpp"

namespace poik {

enum class SeriesKind {
    PMF,  // f(n; lambda), the probability mass function
    H,    // h(n; lambda) = exp(k*lambda) * f(n; lambda), the ratio f(n)/f(0)
};

/// A prefix of a pmf (or of its h-normalized form) held in scaled linear
/// space: the true value at index n is values[n] * exp(log_scale). The shared
/// exponent ledger keeps the recurrence in plain doubles while representing
/// magnitudes far outside the double range (f(0) = exp(-k*lambda) alone
/// underflows once k*lambda > ~708). The band of representable entries tracks
/// the running maximum; entries more than ~600 natural-log units below it
/// flush to zero.
struct ScaledSeries {
    DistParams params;
    SeriesKind kind;
    std::vector<double> values;  // index n = 0..n_max, all finite and >= 0
    double log_scale = 0.0;

    std::int64_t n_max() const { return static_cast<std::int64_t>(values.size()) - 1; }

    /// True value at n; over/underflows honestly if it leaves double range.
    double at(std::int64_t n) const { return values[static_cast<std::size_t>(n)] * std::exp(log_scale); }

    /// Natural log of the true value at n (-inf if the scaled entry is 0).
    double log_at(std::int64_t n) const {
        return std::log(values[static_cast<std::size_t>(n)]) + log_scale;
    }

    double scaled_at(std::int64_t n) const { return values[static_cast<std::size_t>(n)]; }
};

}  // namespace poik
