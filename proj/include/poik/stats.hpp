#pragma once

#include <cstdint>
#include <vector>

#include "poik/params.hpp"

namespace poik {

/// All locations of the global maximum of the pmf, with the band used to
/// decide ties. Ties in this family occur only at algebraic values of
/// lambda, so any gap inside the band but not resolvable as an exact tie is
/// settled by extended-precision re-evaluation.
struct ModeSummary {
    std::vector<std::int64_t> modes;  // sorted, nonempty
    double peak_value = 0.0;          // pmf at the modes (double range permitting)
    double tie_tolerance = 1e-9;      // relative
    std::int64_t n_scanned = 0;
};

struct ModeOptions {
    double tie_tolerance = 1e-9;
    // Candidates whose relative gap to the peak lands in
    // (tie_tolerance, 1e3 * tie_tolerance] are re-evaluated in extended
    // precision before being classified. Disabled inside the excluded-value
    // walk, where probes intentionally straddle breakpoints and the walk only
    // consumes set identity.
    bool escalate_near_ties = true;
    int extended_digits = 30;  // escalation precision; tiers of 50/100 digits
};

struct MedianOptions {
    int extended_digits = 30;
};

double mean(const DistParams& params);
double variance(const DistParams& params);

/// Smallest n with CDF(n) >= 1/2. If the CDF at the crossing is within 1e-12
/// of 1/2, the comparison is redone in extended precision; a tie surviving
/// that is reported as PrecisionLossError rather than decided silently.
std::int64_t median(const DistParams& params, const MedianOptions& opts = {});

/// Scans n in [0, floor(mean)] (the mode never exceeds the mean) and returns
/// every n whose pmf is within tie_tolerance (relative) of the maximum.
ModeSummary mode(const DistParams& params, const ModeOptions& opts = {});

}  // namespace poik
