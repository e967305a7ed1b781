#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "poik/errors.hpp"

namespace poik {

/// One instance of the Poisson distribution of order k: the jump-size cap k
/// and the rate lambda. kappa = k(k+1)/2 is carried along because the mean
/// (kappa * lambda) and most search ceilings are phrased in terms of it.
struct DistParams {
    std::int64_t k = 1;
    double lambda = 1.0;
    std::int64_t kappa = 1;

    DistParams(std::int64_t k_, double lambda_) : k(k_), lambda(lambda_) {
        if (k < 1)
            throw InvalidParamsError("order k must be >= 1, got " + std::to_string(k));
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw InvalidParamsError("rate lambda must be a finite positive real, got " +
                                     std::to_string(lambda));
        kappa = k * (k + 1) / 2;
    }

    /// Mean of the distribution, kappa * lambda.
    double mean() const { return static_cast<double>(kappa) * lambda; }

    /// Variance, lambda * k(k+1)(2k+1)/6. The integer factor is exact.
    double variance() const {
        const std::int64_t f = k * (k + 1) * (2 * k + 1) / 6;
        return lambda * static_cast<double>(f);
    }
};

/// floor(lambda * kappa) computed exactly (lambda is a dyadic rational, so
/// the product has no representable-rounding ambiguity). Implemented in
/// eval.cpp with exact rational arithmetic.
std::int64_t floor_mean(const DistParams& params);

}  // namespace poik
