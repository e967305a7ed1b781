#pragma once

// Generic series construction, templated on the scalar type so the same code
// runs the fast double path and the software extended-precision path used to
// settle near-ties.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "poik/errors.hpp"
#include "poik/scaled_series.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace poik::detail {

using float50 = boost::multiprecision::cpp_bin_float_50;
using float100 = boost::multiprecision::cpp_bin_float_100;

template <class Real>
struct SeriesTable {
    std::vector<Real> values;
    Real log_scale{0};

    Real log_at(std::int64_t n) const {
        using std::log;
        return log(values[static_cast<std::size_t>(n)]) + log_scale;
    }
};

// Forward recurrence for the compound Poisson pmf with unit jumps of size
// 1..k:  n*f(n) = lambda * sum_{j=1..min(k,n)} j * f(n-j), f(0) = exp(-k*lambda).
// Every term is nonnegative, so the recurrence is forward stable. The shared
// exponent ledger is renormalized downward whenever the leading edge grows
// past 1e100, so the representable band always tracks the running maximum.
// Entries whose true value falls more than ~600 natural-log units below that
// maximum flush to zero; the distribution never climbs back across such a
// span (it rises to the single global-mass region and then decays), so the
// recurrence itself is not affected.
template <class Real>
SeriesTable<Real> build_table(std::int64_t k, Real lambda, std::int64_t n_max, SeriesKind kind) {
    using std::log;
    if (n_max < 0) throw InvalidParamsError("n_max must be >= 0");

    const Real window_hi = Real(1e100);

    SeriesTable<Real> t;
    t.values.assign(static_cast<std::size_t>(n_max) + 1, Real(0));
    t.values[0] = Real(1);
    t.log_scale = (kind == SeriesKind::PMF) ? Real(-lambda * Real(k)) : Real(0);

    auto renormalize = [&](std::int64_t upto, const Real& factor) {
        for (std::int64_t i = 0; i <= upto; ++i) t.values[static_cast<std::size_t>(i)] /= factor;
        t.log_scale += log(factor);
    };

    for (std::int64_t n = 1; n <= n_max; ++n) {
        const std::int64_t jmax = std::min<std::int64_t>(k, n);
        Real s(0);
        const Real* v = t.values.data();
        for (std::int64_t j = 1; j <= jmax; ++j) s += Real(j) * v[n - j];
        Real x = lambda * s / Real(n);
        if (x > window_hi) {
            renormalize(n - 1, x);
            x = Real(1);
        }
        t.values[static_cast<std::size_t>(n)] = x;
    }

    // Final pass: pin the table into a predictable range. For the h-form the
    // n=0 entry is identically 1, so prefer rescaling by it (making the
    // scaled entry exactly 1.0) unless that would blow later entries out of
    // double range.
    Real vmax(0);
    for (const Real& v : t.values) vmax = std::max(vmax, v);
    if (vmax > Real(0)) {
        Real factor = vmax;
        if (kind == SeriesKind::H && t.values[0] > vmax * Real(1e-280)) factor = t.values[0];
        renormalize(n_max, factor);
    }
    return t;
}

// Reference evaluation of log h(n; lambda) for n = 0..n_max via the
// order-direction recurrence
//   h_k(n) = sum_{t=0..floor(n/k)} lambda^t / t! * h_{k-1}(n - k t),
//   h_1(n) = lambda^n / n!,
// carried out entirely in log space (log-sum-exp per entry). Slower than the
// forward recurrence but an arithmetically independent path; the two are
// cross-checked against each other. Orders above n_max contribute nothing
// (h_k(n) is the same polynomial for every k > n), so the ladder stops at
// min(k, n_max).
std::vector<double> log_h_reference(std::int64_t k, double lambda, std::int64_t n_max);

}  // namespace poik::detail
