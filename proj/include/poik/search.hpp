#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "poik/params.hpp"
#include "poik/stats.hpp"

namespace poik {

struct SearchOptions {
    double root_tol = 1e-12;   // final bisection bracket width on lambda
    int extended_digits = 30;  // precision tier for near-tie escalation
};

/// First positive double mode of order k: the smallest lambda at which the
/// pmf is bimodal, with modes at 0 and m_hat.
struct DoubleModeResult {
    std::int64_t k = 0;
    std::int64_t m_hat = 0;      // location of the positive mode, >= k
    double lambda_hat = 0.0;     // in [1/kappa, r_k]
    double bracket_width = 0.0;  // final bisection bracket on lambda
    double runner_up_gap = 0.0;  // lambda gap to the second-smallest unit root
};

enum class CeilingSource {
    ConjectureRegularRegime,  // default ceiling k(k+1) - floor((3k+5)/8)
    User,
};

/// Sorted disjoint closed integer intervals [lo, hi] of values that are not
/// a mode for any lambda, within [1, n_upper].
struct ExcludedReport {
    std::int64_t k = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
    std::int64_t n_upper = 0;
    CeilingSource ceiling_source = CeilingSource::ConjectureRegularRegime;
};

/// Step-function view of the mode set as lambda grows: the mode set is
/// constant on each open interval between consecutive breakpoints.
struct BreakpointMap {
    std::int64_t k = 0;
    double lambda_start = 0.0;
    double lambda_max = 0.0;
    std::vector<double> breakpoints;                   // increasing
    std::vector<std::vector<std::int64_t>> mode_sets;  // breakpoints.size() + 1 entries
};

struct BreakpointOptions {
    double locate_tol = 1e-12;  // breakpoint localization width
    std::optional<double> grid_step;  // default 1/(4*kappa)
    int extended_digits = 30;
};

/// A lambda at which >= arity integers tie for the global maximum.
struct MultimodalCandidate {
    double lambda = 0.0;
    std::vector<std::int64_t> tie_set;
    bool ambiguous = false;  // a member sat exactly at the tolerance edge
};

/// Unique root in (0, 1) of h(k; lambda) = 1, bracketed in [1/kappa, 1).
/// h(k; .) is strictly increasing, so bisection always converges; a bracket
/// sign failure is an internal bug trap, not a reachable user error.
double root_rk(std::int64_t k, const SearchOptions& opts = {});

/// The unique lambda > 0 with h(n; lambda) = 1 (strict monotonicity in
/// lambda makes it well defined). Upper bracket found by doubling from 1.
double unit_root(std::int64_t k, std::int64_t n, const SearchOptions& opts = {});

/// Smallest lambda at which some positive n ties n = 0 for the global
/// maximum, and that n. Computed by bisecting the strictly increasing
/// envelope max_n h(n; lambda) over [1/kappa, r_k]; this equals the minimum
/// over n of the per-n unit roots without scanning a lambda grid. The result
/// is verified against the full series (h(j) <= 1 + 1e-10 for every j in the
/// scan range) and the runner-up unit root is located to compute the gap.
/// Throws MultiWayTieError if the two smallest unit roots are within 1e-10.
DoubleModeResult first_double_mode(std::int64_t k, const SearchOptions& opts = {});

/// Integers in [1, n_upper] that are not a mode for any lambda. Walks lambda
/// with step 1/(4*kappa), accumulating mode sets; any transition that skips
/// integers is bisected to 1e-12 to hunt for narrow intervals. The walk stops
/// once the mode set reaches n_upper (larger lambda only adds larger modes).
ExcludedReport excluded_values(std::int64_t k, std::optional<std::int64_t> n_upper = {},
                               const SearchOptions& opts = {});

/// Full step-function map of the mode set on [1e-6, lambda_max]: every
/// mode-set change localized to locate_tol.
BreakpointMap mode_breakpoints(std::int64_t k, double lambda_max,
                               const BreakpointOptions& opts = {});

/// True iff the mode set at lambda = n/kappa is exactly the singleton
/// { n - floor((3k+5)/8) }. Requires n >= 2*kappa (the regular regime).
bool check_mode_conjecture(std::int64_t k, std::int64_t n, const SearchOptions& opts = {});

/// Breakpoints whose tie set has at least `arity` members within relative
/// tolerance 1e-10 (certified in extended precision after refining the
/// breakpoint). An empty result is evidence of absence, not proof.
std::vector<MultimodalCandidate> scan_multimodal(std::int64_t k, double lambda_max, int arity,
                                                 const SearchOptions& opts = {});

}  // namespace poik
