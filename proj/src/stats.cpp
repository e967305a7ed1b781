#include "poik/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "poik/detail/engine.hpp"
#include "poik/errors.hpp"
#include "poik/eval.hpp"

namespace poik {

double mean(const DistParams& params) { return params.mean(); }

double variance(const DistParams& params) { return params.variance(); }

namespace {

// Maps a requested decimal-digit count onto the available software-float
// tiers. 50 digits covers the default of 30 with headroom.
enum class ExtTier { Digits50, Digits100 };

ExtTier tier_for_digits(int digits) {
    if (digits <= 50) return ExtTier::Digits50;
    if (digits <= 100) return ExtTier::Digits100;
    throw InvalidParamsError("extended precision capped at 100 decimal digits, got " +
                             std::to_string(digits));
}

template <class Real>
std::vector<Real> scan_values_ext(const DistParams& params, std::int64_t n_max) {
    auto table =
        detail::build_table<Real>(params.k, Real(params.lambda), n_max, SeriesKind::H);
    return std::move(table.values);
}

// Relative gaps (1 - v/vmax) of the given candidates, re-evaluated at the
// chosen precision tier.
std::vector<double> extended_gaps(const DistParams& params, std::int64_t n_max,
                                  const std::vector<std::int64_t>& candidates, int digits) {
    auto compute = [&](auto real_tag) {
        using Real = decltype(real_tag);
        const std::vector<Real> values = scan_values_ext<Real>(params, n_max);
        Real vmax(0);
        for (const Real& v : values) vmax = std::max(vmax, v);
        std::vector<double> gaps;
        gaps.reserve(candidates.size());
        for (std::int64_t n : candidates) {
            const Real gap = (vmax - values[static_cast<std::size_t>(n)]) / vmax;
            gaps.push_back(static_cast<double>(gap));
        }
        return gaps;
    };
    return tier_for_digits(digits) == ExtTier::Digits50 ? compute(detail::float50{})
                                                        : compute(detail::float100{});
}

}  // namespace

ModeSummary mode(const DistParams& params, const ModeOptions& opts) {
    if (!(opts.tie_tolerance > 0) || opts.tie_tolerance >= 1)
        throw InvalidParamsError("tie tolerance must lie in (0, 1)");

    // The global maximum never exceeds the mean, so [0, floor(mean)] covers
    // every possible mode.
    const std::int64_t n_hi = floor_mean(params);
    EvalOptions eopts;
    eopts.cross_check = CrossCheck::Off;  // hot path; covered by the invariant suite
    const ScaledSeries series = pmf_series(params, n_hi, eopts);

    double vmax = 0.0;
    for (std::int64_t n = 0; n <= n_hi; ++n) vmax = std::max(vmax, series.scaled_at(n));

    const double tol = opts.tie_tolerance;
    std::vector<std::int64_t> members;
    std::vector<std::int64_t> gray;  // gap in (tol, 1e3*tol]: too close to call in doubles
    for (std::int64_t n = 0; n <= n_hi; ++n) {
        const double gap = (vmax - series.scaled_at(n)) / vmax;
        if (gap <= tol)
            members.push_back(n);
        else if (opts.escalate_near_ties && gap <= 1e3 * tol)
            gray.push_back(n);
    }

    if (!gray.empty()) {
        // Settle the gray band at higher precision; membership keeps the same
        // threshold, now measured on trustworthy gaps.
        std::vector<std::int64_t> candidates = members;
        candidates.insert(candidates.end(), gray.begin(), gray.end());
        std::sort(candidates.begin(), candidates.end());
        const std::vector<double> gaps =
            extended_gaps(params, n_hi, candidates, opts.extended_digits);
        members.clear();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (std::abs(gaps[i] - tol) <= tol * 1e-6) {
                std::ostringstream msg;
                msg << "tie between n=" << candidates[i]
                    << " and the peak undecidable at extended precision (k=" << params.k
                    << ", lambda=" << params.lambda << ", relative gap " << gaps[i] << ")";
                throw AmbiguousTieError(msg.str());
            }
            if (gaps[i] <= tol) members.push_back(candidates[i]);
        }
    }

    if (members.empty()) throw InternalError("mode scan produced an empty mode set");

    std::int64_t argmax = members.front();
    for (std::int64_t n : members)
        if (series.scaled_at(n) > series.scaled_at(argmax)) argmax = n;

    // Self-check against the two-sided mean bound: floor(mean) - kappa + 1
    // (minus 1 more for k = 1) <= mode <= floor(mean).
    const std::int64_t lo_bound = n_hi - params.kappa + 1 - (params.k == 1 ? 1 : 0);
    for (std::int64_t m : members) {
        if (m < lo_bound || m > n_hi) {
            std::ostringstream msg;
            msg << "mode " << m << " violates the mean bound [" << lo_bound << ", " << n_hi
                << "] (k=" << params.k << ", lambda=" << params.lambda << ")";
            throw InternalError(msg.str());
        }
    }

    ModeSummary summary;
    summary.modes = std::move(members);
    summary.peak_value = series.at(argmax);
    summary.tie_tolerance = tol;
    summary.n_scanned = n_hi + 1;
    return summary;
}

namespace {

template <class Real>
struct CdfCrossing {
    std::int64_t index = -1;  // smallest n with CDF(n) >= 1/2, -1 if never reached
    // Distance of log CDF from log(1/2) at the crossing and at the entry just
    // before it; the entry below matters because a CDF value marginally short
    // of 1/2 flips the answer if better arithmetic pushes it over.
    Real closest_log_distance{std::numeric_limits<double>::infinity()};
};

template <class Real>
CdfCrossing<Real> cdf_crossing(const detail::SeriesTable<Real>& table) {
    using std::abs;
    using std::log;
    const Real log_half = log(Real(1) / 2);
    CdfCrossing<Real> result;
    Real cumulative(0);
    const std::int64_t n_max = static_cast<std::int64_t>(table.values.size()) - 1;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        cumulative += table.values[static_cast<std::size_t>(n)];
        if (!(cumulative > Real(0))) continue;
        const Real log_cdf = log(cumulative) + table.log_scale;
        result.closest_log_distance = std::min(result.closest_log_distance, abs(log_cdf - log_half));
        if (log_cdf >= log_half) {
            result.index = n;
            return result;
        }
    }
    return result;
}

}  // namespace

std::int64_t median(const DistParams& params, const MedianOptions& opts) {
    std::int64_t n_max = default_n_max(params);
    for (int attempt = 0;; ++attempt) {
        auto table = detail::build_table<double>(params.k, params.lambda, n_max, SeriesKind::PMF);
        const CdfCrossing<double> crossing = cdf_crossing<double>(table);
        if (crossing.index < 0) {
            // Mass target not reached; widen. Two doublings are already far
            // beyond anything the tail bound permits.
            if (attempt >= 2) throw InternalError("median: CDF failed to reach 1/2");
            n_max *= 2;
            continue;
        }
        // |CDF - 1/2| ~ |log CDF - log 1/2| near the crossing (factor ~2).
        if (crossing.closest_log_distance >= 2e-12) return crossing.index;

        // Too close to call in doubles: redo the comparison in extended
        // precision.
        auto decide = [&](auto real_tag) -> std::int64_t {
            using Real = decltype(real_tag);
            auto ext = detail::build_table<Real>(params.k, Real(params.lambda), n_max,
                                                 SeriesKind::PMF);
            const CdfCrossing<Real> ext_crossing = cdf_crossing<Real>(ext);
            if (ext_crossing.index < 0)
                throw InternalError("median: extended CDF failed to reach 1/2");
            if (ext_crossing.closest_log_distance < Real("1e-35")) {
                std::ostringstream msg;
                msg << "median crossing at n=" << ext_crossing.index
                    << " is within 1e-35 of CDF=1/2 at extended precision (k=" << params.k
                    << ", lambda=" << params.lambda << ")";
                throw PrecisionLossError(msg.str());
            }
            return ext_crossing.index;
        };
        return tier_for_digits(opts.extended_digits) == ExtTier::Digits50
                   ? decide(detail::float50{})
                   : decide(detail::float100{});
    }
}

}  // namespace poik
