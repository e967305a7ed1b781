#pragma once

#include <cstdint>
#include <vector>

#include "poik/params.hpp"
#include "poik/scaled_series.hpp"

namespace poik {

/// Policy for the dual-recurrence consistency check: the forward (probability)
/// recurrence is always the primary path; the order-direction recurrence can
/// be replayed against it in log space.
enum class CrossCheck {
    Off,    // primary path only (hot loops; the property suite covers them)
    Auto,   // run the check when the table is small enough to make it cheap
    Force,  // always run the check
};

struct EvalOptions {
    CrossCheck cross_check = CrossCheck::Auto;
    double cross_check_rel_tol = 1e-10;  // disagreement beyond this is an error
    std::int64_t auto_check_n_cap = 128; // Auto runs the check for n_max <= cap
};

/// h(n; lambda) = exp(k*lambda) * f(n; lambda) for n = 0..n_max.
/// Entry 0 rescales to exactly 1. Throws PrecisionLossError if the enabled
/// cross-check finds relative disagreement beyond cross_check_rel_tol.
ScaledSeries h_series(const DistParams& params, std::int64_t n_max, const EvalOptions& opts = {});

/// f(n; lambda) for n = 0..n_max.
ScaledSeries pmf_series(const DistParams& params, std::int64_t n_max, const EvalOptions& opts = {});

/// log h(n; lambda) via the independent order-direction recurrence.
/// Exposed so tests can compare the two paths directly at chosen sizes.
std::vector<double> h_log_reference(const DistParams& params, std::int64_t n_max);

/// Table length covering all non-negligible mass: ceil(mean) plus
/// max(50, 20 standard deviations).
std::int64_t default_n_max(const DistParams& params);

}  // namespace poik
