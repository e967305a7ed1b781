#include "poik/search.hpp"

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

namespace {

using detail::SeriesTable;

// log h(n; lambda) for n = 0..n_max, forward recurrence, no cross-check
// (root loops are covered by the dual-recurrence property suite).
SeriesTable<double> h_table(std::int64_t k, double lambda, std::int64_t n_max) {
    return detail::build_table<double>(k, lambda, n_max, SeriesKind::H);
}

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// Bisection of a monotone-increasing criterion g (sign convention: g < 0
// left of the root). Endpoints are assumed already validated.
template <class G>
Bracket bisect(double lo, double hi, double tol, G&& g) {
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit double resolution
        if (g(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

double checked_lambda_max(double lambda_max) {
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
        throw InvalidParamsError("lambda_max must be a finite positive real");
    return lambda_max;
}

std::int64_t require_order_at_least(std::int64_t k, std::int64_t min_k) {
    if (k < min_k)
        throw InvalidParamsError("order k must be >= " + std::to_string(min_k) + ", got " +
                                 std::to_string(k));
    return k;
}

Bracket root_rk_bracket(std::int64_t k, double tol) {
    require_order_at_least(k, 2);
    const double kappa = 0.5 * static_cast<double>(k) * static_cast<double>(k + 1);
    const double lo = 1.0 / kappa;
    const double hi = 1.0;
    auto g = [&](double lambda) { return h_table(k, lambda, k).log_at(k); };
    // h(k; .) is strictly increasing with h(k; 1/kappa) <= 1 and h(k; 1) > 1;
    // a sign failure here means the evaluator is broken.
    if (g(lo) > 1e-12)
        throw InternalError("root_rk: h(k; 1/kappa) > 1 (k = " + std::to_string(k) + ")");
    if (!(g(hi) > 0.0))
        throw InternalError("root_rk: h(k; 1) <= 1 (k = " + std::to_string(k) + ")");
    return bisect(lo, hi, tol, g);
}

}  // namespace

double root_rk(std::int64_t k, const SearchOptions& opts) {
    return root_rk_bracket(k, opts.root_tol).mid();
}

double unit_root(std::int64_t k, std::int64_t n, const SearchOptions& opts) {
    require_order_at_least(k, 1);
    if (n < 1) throw InvalidParamsError("unit_root requires n >= 1");
    auto g = [&](double lambda) { return h_table(k, lambda, n).log_at(n); };
    double hi = 1.0;
    int doublings = 0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (++doublings > 60) throw InternalError("unit_root: no upper bracket below 2^60");
    }
    return bisect(0.0, hi, opts.root_tol, g).mid();
}

namespace {

// Largest log h over n in [n_lo, n_hi] plus the argmax.
struct EnvelopeValue {
    double log_max = -std::numeric_limits<double>::infinity();
    std::int64_t argmax = -1;
};

EnvelopeValue envelope(const SeriesTable<double>& table, std::int64_t n_lo, std::int64_t n_hi,
                       std::int64_t skip = -1) {
    EnvelopeValue e;
    double vmax = -1.0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        if (n == skip) continue;
        const double v = table.values[static_cast<std::size_t>(n)];
        if (v > vmax) {
            vmax = v;
            e.argmax = n;
        }
    }
    if (e.argmax >= 0) e.log_max = table.log_at(e.argmax);
    return e;
}

}  // namespace

DoubleModeResult first_double_mode(std::int64_t k, const SearchOptions& opts) {
    require_order_at_least(k, 2);
    const std::int64_t kappa = k * (k + 1) / 2;
    const double inv_kappa = 1.0 / static_cast<double>(kappa);

    const Bracket rk = root_rk_bracket(k, opts.root_tol);
    // The mode never exceeds the mean and the first double mode sits at
    // lambda <= r_k, so floor(r_k * kappa) bounds every candidate location;
    // +k is slack for the floor interaction.
    const std::int64_t n_hi = static_cast<std::int64_t>(rk.hi * static_cast<double>(kappa)) + k;

    // max over n in [k, N] of h(n; .) is strictly increasing in lambda, and
    // its unit crossing is exactly the smallest per-n unit root, i.e. the
    // first double mode. Locations below k cannot host the first double mode
    // (the chain h(1) < ... < h(k) would put a strictly larger entry above 1);
    // the verification pass below re-checks that assumption directly.
    auto g_envelope = [&](double lambda) {
        return envelope(h_table(k, lambda, n_hi), k, n_hi).log_max;
    };
    if (g_envelope(inv_kappa) > 1e-12)
        throw InternalError("first_double_mode: envelope above 1 at lambda = 1/kappa (k = " +
                            std::to_string(k) + ")");
    if (g_envelope(rk.hi) < -1e-12)
        throw InternalError("first_double_mode: envelope below 1 at lambda = r_k (k = " +
                            std::to_string(k) + ")");
    Bracket lam = bisect(inv_kappa, rk.hi, opts.root_tol, g_envelope);

    const std::int64_t m_hat = envelope(h_table(k, lam.hi, n_hi), k, n_hi).argmax;
    if (m_hat < k) throw InternalError("first_double_mode: argmax below k");

    // Polish lambda against h(m_hat; .) alone until h(m_hat; lambda_hat) = 1
    // to 1e-10: |d log h / d lambda| <= m_hat / lambda caps the bracket width
    // needed. The envelope tolerance alone would leave the tie looser for
    // large k.
    const double slope_cap = static_cast<double>(m_hat) / lam.lo;
    const double tie_tol_width = 0.5e-10 / slope_cap;
    if (lam.width() > tie_tol_width) {
        auto g_tie = [&](double lambda) { return h_table(k, lambda, m_hat).log_at(m_hat); };
        lam = bisect(lam.lo, lam.hi, tie_tol_width, g_tie);
    }

    DoubleModeResult result;
    result.k = k;
    result.m_hat = m_hat;
    result.lambda_hat = lam.mid();
    result.bracket_width = lam.width();

    // Verify the root against the whole series: every entry must sit at or
    // below 1 (within 1e-10) at lambda_hat, including n < k.
    {
        const SeriesTable<double> table = h_table(k, result.lambda_hat, n_hi);
        const double cap = 1e-10;
        std::vector<std::int64_t> offenders;
        for (std::int64_t j = 1; j <= n_hi; ++j) {
            if (j != m_hat && table.log_at(j) > cap) offenders.push_back(j);
        }
        if (std::abs(table.log_at(m_hat)) > cap)
            throw InconsistentRootError("first_double_mode: h(m_hat) off 1 beyond 1e-10 (k = " +
                                        std::to_string(k) + ")");
        if (!offenders.empty()) {
            // Near-unity comparisons escalate to software floats before the
            // root is declared inconsistent.
            auto ext = detail::build_table<detail::float50>(
                k, detail::float50(result.lambda_hat), n_hi, SeriesKind::H);
            for (std::int64_t j : offenders) {
                if (static_cast<double>(ext.log_at(j)) > cap) {
                    std::ostringstream msg;
                    msg << "first_double_mode: h(" << j << "; lambda_hat) = 1 + "
                        << static_cast<double>(ext.log_at(j)) << " exceeds the 1e-10 cap (k=" << k
                        << ")";
                    throw InconsistentRootError(msg.str());
                }
            }
        }
    }

    // Locate the second-smallest unit root to report the tie margin.
    auto g_runner_up = [&](double lambda) {
        return envelope(h_table(k, lambda, n_hi), 1, n_hi, /*skip=*/m_hat).log_max;
    };
    double hi2 = std::max(rk.hi, lam.hi * (1.0 + 1e-9));
    int expansions = 0;
    while (g_runner_up(hi2) < 0.0) {
        hi2 *= 1.5;
        if (++expansions > 200) throw InternalError("first_double_mode: runner-up bracket failure");
    }
    const Bracket runner = bisect(lam.lo, hi2, opts.root_tol, g_runner_up);
    result.runner_up_gap = std::max(0.0, runner.mid() - result.lambda_hat);

    // At large k the unit roots of neighbouring locations crowd together, so
    // a small lambda gap alone does not make the winner ambiguous; the
    // runner-up is only a tie candidate if it also sits at 1 within the
    // h-space tolerance at lambda_hat. Certify that in software floats
    // before reporting a possible multi-way tie.
    if (result.runner_up_gap < 1e-10) {
        const std::int64_t runner_n =
            envelope(h_table(k, runner.hi, n_hi), 1, n_hi, /*skip=*/m_hat).argmax;
        auto ext = detail::build_table<detail::float50>(
            k, detail::float50(result.lambda_hat), std::max(runner_n, m_hat), SeriesKind::H);
        if (std::abs(static_cast<double>(ext.log_at(runner_n))) <= 1e-10) {
            std::ostringstream msg;
            msg << "first_double_mode: location " << runner_n << " ties " << m_hat
                << " within 1e-10 at lambda_hat (gap " << result.runner_up_gap
                << "); possible multi-way tie (k=" << k << ")";
            throw MultiWayTieError(msg.str());
        }
    }
    return result;
}

namespace {

using ModeSet = std::vector<std::int64_t>;

ModeSet sorted_union(const ModeSet& a, const ModeSet& b) {
    ModeSet u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

// Probing helper shared by the walk and the breakpoint map.
struct ModeProbe {
    std::int64_t k;
    ModeOptions mode_opts;

    ModeSet operator()(double lambda) const {
        return mode(DistParams(k, lambda), mode_opts).modes;
    }
};

}  // namespace

ExcludedReport excluded_values(std::int64_t k, std::optional<std::int64_t> n_upper_opt,
                               const SearchOptions& opts) {
    require_order_at_least(k, 2);
    const std::int64_t kappa = k * (k + 1) / 2;

    ExcludedReport report;
    report.k = k;
    if (n_upper_opt) {
        if (*n_upper_opt < 1) throw InvalidParamsError("n_upper must be >= 1");
        report.n_upper = *n_upper_opt;
        report.ceiling_source = CeilingSource::User;
    } else {
        // Above this ceiling the mode walks through every integer (regular
        // regime), so only [1, ceiling] needs testing.
        report.n_upper = k * (k + 1) - (3 * k + 5) / 8;
        report.ceiling_source = CeilingSource::ConjectureRegularRegime;
    }
    const std::int64_t n_upper = report.n_upper;
    const double lambda_max =
        2.0 * static_cast<double>(n_upper + kappa) / static_cast<double>(kappa);

    ModeProbe probe{k, ModeOptions{}};
    probe.mode_opts.tie_tolerance = 1e-10;
    // The walk consumes set identity only; probes deliberately straddle
    // breakpoints during localization, where near-tie escalation would buy
    // nothing but extended-precision table builds.
    probe.mode_opts.escalate_near_ties = false;

    std::vector<char> attained(static_cast<std::size_t>(n_upper) + 1, 0);
    auto mark = [&](const ModeSet& s) {
        for (std::int64_t m : s)
            if (m >= 0 && m <= n_upper) attained[static_cast<std::size_t>(m)] = 1;
    };

    // A transition needs refinement when integers between the two mode sets
    // could hide a narrow interval of their own.
    auto needs_refine = [](const ModeSet& a, const ModeSet& b) {
        return a != b && b.front() > a.back() + 1;
    };

    const double locate_tol = opts.root_tol;
    auto localize = [&](auto&& self, double a, const ModeSet& sa, double b,
                        const ModeSet& sb) -> void {
        if (b - a <= locate_tol) return;
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) return;
        const ModeSet sm = probe(mid);
        mark(sm);
        if (needs_refine(sa, sm)) self(self, a, sa, mid, sm);
        if (needs_refine(sm, sb)) self(self, mid, sm, b, sb);
    };

    const double step = 1.0 / (4.0 * static_cast<double>(kappa));
    double lam_a = 1e-6;
    ModeSet set_a = probe(lam_a);
    mark(set_a);
    while (lam_a < lambda_max && set_a.back() < n_upper) {
        const double lam_b = std::min(lam_a + step, lambda_max);
        ModeSet set_b = probe(lam_b);
        mark(set_b);
        if (needs_refine(set_a, set_b)) localize(localize, lam_a, set_a, lam_b, set_b);
        lam_a = lam_b;
        set_a = std::move(set_b);
    }

    for (std::int64_t m = 1; m <= n_upper; ++m) {
        if (attained[static_cast<std::size_t>(m)]) continue;
        std::int64_t hi = m;
        while (hi + 1 <= n_upper && !attained[static_cast<std::size_t>(hi + 1)]) ++hi;
        report.intervals.emplace_back(m, hi);
        m = hi;
    }
    return report;
}

BreakpointMap mode_breakpoints(std::int64_t k, double lambda_max, const BreakpointOptions& opts) {
    require_order_at_least(k, 1);
    checked_lambda_max(lambda_max);
    const std::int64_t kappa = k * (k + 1) / 2;
    const double start = 1e-6;
    if (lambda_max <= start) throw InvalidParamsError("lambda_max must exceed the 1e-6 walk start");

    ModeProbe probe{k, ModeOptions{}};
    probe.mode_opts.tie_tolerance = 1e-10;
    probe.mode_opts.extended_digits = opts.extended_digits;

    BreakpointMap map;
    map.k = k;
    map.lambda_start = start;
    map.lambda_max = lambda_max;

    struct Transition {
        double lambda;
        ModeSet right;
    };
    std::vector<Transition> transitions;

    const double tol = opts.locate_tol;
    auto localize = [&](auto&& self, double a, const ModeSet& sa, double b,
                        const ModeSet& sb) -> void {
        if (sa == sb) return;
        if (b - a <= tol) {
            const double mid = 0.5 * (a + b);
            const ModeSet sm = probe(mid);
            if (sm != sa && sm != sb && sm != sorted_union(sa, sb)) {
                std::ostringstream msg;
                msg << "mode transitions inseparable at tolerance " << tol << " near lambda = "
                    << mid << " (k=" << k << ")";
                throw UnresolvedTransitionError(msg.str());
            }
            transitions.push_back({mid, sb});
            return;
        }
        const double mid = 0.5 * (a + b);
        const ModeSet sm = probe(mid);
        if (sm != sa && sm != sb && sm == sorted_union(sa, sb)) {
            // Landed exactly on the tie; the probe *is* the breakpoint.
            transitions.push_back({mid, sb});
            return;
        }
        self(self, a, sa, mid, sm);
        self(self, mid, sm, b, sb);
    };

    const double step = opts.grid_step.value_or(1.0 / (4.0 * static_cast<double>(kappa)));
    if (!(step > 0)) throw InvalidParamsError("grid step must be positive");

    double lam_a = start;
    ModeSet set_a = probe(lam_a);
    map.mode_sets.push_back(set_a);
    while (lam_a < lambda_max) {
        const double lam_b = std::min(lam_a + step, lambda_max);
        const ModeSet set_b = probe(lam_b);
        if (set_a != set_b) localize(localize, lam_a, set_a, lam_b, set_b);
        lam_a = lam_b;
        set_a = set_b;
    }
    for (const Transition& t : transitions) {
        map.breakpoints.push_back(t.lambda);
        map.mode_sets.push_back(t.right);
    }
    return map;
}

bool check_mode_conjecture(std::int64_t k, std::int64_t n, const SearchOptions& opts) {
    require_order_at_least(k, 2);
    const std::int64_t kappa = k * (k + 1) / 2;
    if (n < 2 * kappa)
        throw InvalidParamsError("conjecture check requires n >= 2*kappa (regular regime)");
    ModeOptions mopts;
    mopts.extended_digits = opts.extended_digits;
    const ModeSummary s = mode(DistParams(k, static_cast<double>(n) / static_cast<double>(kappa)),
                               mopts);
    const std::int64_t predicted = n - (3 * k + 5) / 8;
    return s.modes.size() == 1 && s.modes.front() == predicted;
}

namespace {

// Refine a localized breakpoint in extended precision and collect every
// location whose h value ties the maximum within rel_tol.
template <class Real>
MultimodalCandidate certify_tie(std::int64_t k, double bp, const ModeSet& left,
                                const ModeSet& right, double locate_tol, double rel_tol) {
    using std::abs;
    const std::int64_t a = left.back();
    const std::int64_t b = right.front();
    const std::int64_t table_hi = std::max(a, b);

    auto diff = [&](const Real& lambda) {
        auto t = detail::build_table<Real>(k, lambda, table_hi, SeriesKind::H);
        return t.log_at(a) - t.log_at(b);  // h(a) dominates left of the tie
    };

    Real lo = Real(bp) - Real(4.0 * locate_tol);
    Real hi = Real(bp) + Real(4.0 * locate_tol);
    if (lo < Real(1e-12)) lo = Real(1e-12);
    int widenings = 0;
    while (!(diff(lo) >= 0) || !(diff(hi) <= 0)) {
        const Real w = hi - lo;
        lo -= w;
        hi += w;
        if (lo < Real(1e-12)) lo = Real(1e-12);
        if (++widenings > 6)
            throw InternalError("multimodal certification: tie bracket lost near lambda = " +
                                std::to_string(bp));
    }
    // Pin lambda tightly enough that the h-gap induced by lambda error stays
    // far below rel_tol: |d(log h(a) - log h(b))/d lambda| <= |a - b| / lambda.
    const Real target_width =
        Real(0.02 * rel_tol) * Real(bp) / Real(static_cast<double>(std::max<std::int64_t>(std::abs(a - b), 1)));
    for (int iter = 0; iter < 300 && hi - lo > target_width; ++iter) {
        const Real mid = (lo + hi) / 2;
        if (diff(mid) <= 0)
            hi = mid;
        else
            lo = mid;
    }
    const Real lambda_star = (lo + hi) / 2;

    const std::int64_t scan_hi = floor_mean(DistParams(k, static_cast<double>(lambda_star)));
    auto table = detail::build_table<Real>(k, lambda_star, std::max(scan_hi, table_hi),
                                           SeriesKind::H);
    Real vmax(0);
    for (std::int64_t n = 0; n <= scan_hi; ++n)
        vmax = std::max(vmax, table.values[static_cast<std::size_t>(n)]);

    MultimodalCandidate c;
    c.lambda = static_cast<double>(lambda_star);
    for (std::int64_t n = 0; n <= scan_hi; ++n) {
        const double gap =
            static_cast<double>((vmax - table.values[static_cast<std::size_t>(n)]) / vmax);
        if (gap <= rel_tol) c.tie_set.push_back(n);
        if (std::abs(gap - rel_tol) <= rel_tol * 1e-10) c.ambiguous = true;
    }
    return c;
}

}  // namespace

std::vector<MultimodalCandidate> scan_multimodal(std::int64_t k, double lambda_max, int arity,
                                                 const SearchOptions& opts) {
    require_order_at_least(k, 1);
    checked_lambda_max(lambda_max);
    if (arity < 2) throw InvalidParamsError("arity must be >= 2");

    BreakpointOptions bopts;
    bopts.locate_tol = opts.root_tol;
    bopts.extended_digits = opts.extended_digits;
    const BreakpointMap map = mode_breakpoints(k, lambda_max, bopts);

    const double rel_tol = 1e-10;
    std::vector<MultimodalCandidate> found;
    for (std::size_t i = 0; i < map.breakpoints.size(); ++i) {
        const ModeSet& left = map.mode_sets[i];
        const ModeSet& right = map.mode_sets[i + 1];
        MultimodalCandidate c =
            opts.extended_digits <= 50
                ? certify_tie<detail::float50>(k, map.breakpoints[i], left, right, opts.root_tol,
                                               rel_tol)
                : certify_tie<detail::float100>(k, map.breakpoints[i], left, right, opts.root_tol,
                                                rel_tol);
        if (static_cast<int>(c.tie_set.size()) >= arity) found.push_back(std::move(c));
    }
    return found;
}

}  // namespace poik
