#include "poik/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "poik/detail/engine.hpp"
#include "poik/errors.hpp"
#include "poik/polynomial.hpp"

namespace poik {

namespace detail {

std::vector<double> log_h_reference(std::int64_t k, double lambda, std::int64_t n_max) {
    const std::int64_t order_cap = std::min(k, std::max<std::int64_t>(n_max, 1));
    const double log_lambda = std::log(lambda);
    const std::size_t size = static_cast<std::size_t>(n_max) + 1;

    // log(lambda^t / t!) for t = 0..n_max
    std::vector<double> log_poisson_term(size);
    for (std::int64_t t = 0; t <= n_max; ++t)
        log_poisson_term[static_cast<std::size_t>(t)] =
            static_cast<double>(t) * log_lambda - std::lgamma(static_cast<double>(t) + 1.0);

    std::vector<double> cur = log_poisson_term;  // order 1: h(n) = lambda^n / n!
    std::vector<double> next(size);
    std::vector<double> terms;
    for (std::int64_t j = 2; j <= order_cap; ++j) {
        next[0] = 0.0;
        for (std::int64_t n = 1; n <= n_max; ++n) {
            terms.clear();
            double m = -std::numeric_limits<double>::infinity();
            for (std::int64_t t = 0; t * j <= n; ++t) {
                const double v = log_poisson_term[static_cast<std::size_t>(t)] +
                                 cur[static_cast<std::size_t>(n - t * j)];
                terms.push_back(v);
                m = std::max(m, v);
            }
            double s = 0.0;
            for (double v : terms) s += std::exp(v - m);
            next[static_cast<std::size_t>(n)] = m + std::log(s);
        }
        cur.swap(next);
    }
    return cur;
}

}  // namespace detail

namespace {

bool should_cross_check(const EvalOptions& opts, std::int64_t n_max) {
    switch (opts.cross_check) {
        case CrossCheck::Off: return false;
        case CrossCheck::Force: return true;
        case CrossCheck::Auto: return n_max <= opts.auto_check_n_cap;
    }
    return false;
}

void run_cross_check(const DistParams& params, const ScaledSeries& series, std::int64_t n_max,
                     double rel_tol) {
    const std::vector<double> ref = detail::log_h_reference(params.k, params.lambda, n_max);
    const double kind_offset =
        (series.kind == SeriesKind::PMF) ? -params.lambda * static_cast<double>(params.k) : 0.0;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        const double want = ref[static_cast<std::size_t>(n)] + kind_offset;
        const double scaled = series.scaled_at(n);
        if (scaled >= 1e-250) {
            // both sides are logs, so their difference is the relative error
            const double got = series.log_at(n);
            if (std::abs(got - want) <= rel_tol) continue;
        } else {
            // entry sits in (or below) the flush band of the shared-exponent
            // representation; the reference must agree it belongs there
            if (want - series.log_scale <= std::log(1e-240)) continue;
        }
        std::ostringstream msg;
        msg << "dual-recurrence disagreement at n=" << n << " (k=" << params.k
            << ", lambda=" << params.lambda << ")";
        throw PrecisionLossError(msg.str());
    }
}

ScaledSeries build_series(const DistParams& params, std::int64_t n_max, SeriesKind kind,
                          const EvalOptions& opts) {
    if (n_max < 0) throw InvalidParamsError("n_max must be >= 0");
    detail::SeriesTable<double> t = detail::build_table<double>(params.k, params.lambda, n_max, kind);
    ScaledSeries series{params, kind, std::move(t.values), t.log_scale};
    if (should_cross_check(opts, n_max)) run_cross_check(params, series, n_max, opts.cross_check_rel_tol);
    return series;
}

}  // namespace

ScaledSeries h_series(const DistParams& params, std::int64_t n_max, const EvalOptions& opts) {
    return build_series(params, n_max, SeriesKind::H, opts);
}

ScaledSeries pmf_series(const DistParams& params, std::int64_t n_max, const EvalOptions& opts) {
    return build_series(params, n_max, SeriesKind::PMF, opts);
}

std::vector<double> h_log_reference(const DistParams& params, std::int64_t n_max) {
    if (n_max < 0) throw InvalidParamsError("n_max must be >= 0");
    return detail::log_h_reference(params.k, params.lambda, n_max);
}

std::int64_t default_n_max(const DistParams& params) {
    const double spread = 20.0 * std::sqrt(params.variance());
    const double tail = std::max(50.0, std::ceil(spread));
    return static_cast<std::int64_t>(std::ceil(params.mean()) + tail);
}

std::int64_t floor_mean(const DistParams& params) {
    // lambda is a dyadic rational; kappa * lambda computed exactly.
    const Rational product = Rational(params.lambda) * params.kappa;
    const auto& num = boost::multiprecision::numerator(product);
    const auto& den = boost::multiprecision::denominator(product);
    boost::multiprecision::cpp_int q = num / den;  // truncation; product > 0 so this is floor
    return static_cast<std::int64_t>(q);
}

}  // namespace poik
