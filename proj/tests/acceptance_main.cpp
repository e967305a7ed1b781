// Acceptance suite: runs every advertised guarantee of the artifact at its
// stated tolerance and prints one PASS/FAIL line per criterion. Exit status
// is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "poik/detail/parallel.hpp"
#include "poik/eval.hpp"
#include "poik/fitting.hpp"
#include "poik/oracle.hpp"
#include "poik/polynomial.hpp"
#include "poik/search.hpp"
#include "poik/stats.hpp"

using namespace poik;

namespace {

using Failures = std::vector<std::string>;
using Intervals = std::vector<std::pair<std::int64_t, std::int64_t>>;

struct Cache {
    std::map<std::int64_t, DoubleModeResult> dm;
    std::map<std::int64_t, double> rk;
    std::map<std::int64_t, ExcludedReport> excluded;
    std::mutex mutex;

    void fill_double_modes(std::int64_t k_min, std::int64_t k_max) {
        std::vector<std::int64_t> missing;
        for (std::int64_t k = k_min; k <= k_max; ++k)
            if (!dm.count(k)) missing.push_back(k);
        detail::parallel_for(static_cast<std::int64_t>(missing.size()), [&](std::int64_t i) {
            const std::int64_t k = missing[static_cast<std::size_t>(i)];
            DoubleModeResult r = first_double_mode(k);
            const double root = root_rk(k);
            std::lock_guard<std::mutex> lock(mutex);
            dm.emplace(k, r);
            rk.emplace(k, root);
        });
    }

    void fill_excluded(std::int64_t k_min, std::int64_t k_max) {
        std::vector<std::int64_t> missing;
        for (std::int64_t k = k_min; k <= k_max; ++k)
            if (!excluded.count(k)) missing.push_back(k);
        detail::parallel_for(static_cast<std::int64_t>(missing.size()), [&](std::int64_t i) {
            const std::int64_t k = missing[static_cast<std::size_t>(i)];
            ExcludedReport r = excluded_values(k);
            std::lock_guard<std::mutex> lock(mutex);
            excluded.emplace(k, std::move(r));
        });
    }
};

Cache g_cache;

template <class... Args>
std::string text(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

// --------------------------------------------------------------------------
// 1. Exactness anchor: float h series vs the enumeration oracle, 1e-13.

Failures criterion_exactness_anchor() {
    Failures fails;
    for (std::int64_t k = 1; k <= 6; ++k) {
        for (double lambda : {0.1, 1.0 / 3.0, 1.0, 1.5}) {
            ScaledSeries h = h_series(DistParams(k, lambda), 20, {CrossCheck::Force});
            const Rational lam_exact(lambda);
            for (std::int64_t n = 0; n <= 20; ++n) {
                const double want =
                    static_cast<double>(eval_exact(oracle::enumerate_h(k, n), lam_exact));
                const double got = h.at(n);
                const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
                if (!(rel <= 1e-13))
                    fails.push_back(text("k=", k, " lambda=", lambda, " n=", n, " rel=", rel));
            }
        }
    }
    return fails;
}

// --------------------------------------------------------------------------
// 2. Order-2 algebraic case: m_hat = 2, lambda_hat = sqrt(3) - 1 to 1e-10.

Failures criterion_order2_algebraic() {
    Failures fails;
    const DoubleModeResult dm = first_double_mode(2);
    if (dm.m_hat != 2) fails.push_back(text("m_hat=", dm.m_hat, " want 2"));
    const double err = std::abs(dm.lambda_hat - (std::sqrt(3.0) - 1.0));
    if (!(err <= 1e-10)) fails.push_back(text("lambda_hat off by ", err));
    return fails;
}

// --------------------------------------------------------------------------
// 3. Order-50 case study: m_hat = 113, lambda_hat = 0.10194 +- 1e-5, local
//    max at n = 98 of height 0.9835 +- 5e-4, dip at n = 51.

Failures criterion_order50_case_study() {
    Failures fails;
    const DoubleModeResult dm = first_double_mode(50);
    if (dm.m_hat != 113) fails.push_back(text("m_hat=", dm.m_hat, " want 113"));
    if (!(std::abs(dm.lambda_hat - 0.10194) <= 1e-5))
        fails.push_back(text("lambda_hat=", dm.lambda_hat, " want 0.10194 +- 1e-5"));

    ScaledSeries h = h_series(DistParams(50, dm.lambda_hat), 130, {CrossCheck::Off});
    const double h98 = h.at(98);
    if (!(std::abs(h98 - 0.9835) <= 5e-4))
        fails.push_back(text("h(98)=", h98, " want 0.9835 +- 5e-4"));
    if (!(h.at(97) < h98 && h.at(99) < h98))
        fails.push_back("n=98 is not a local maximum");
    if (!(h.at(51) < h.at(50))) fails.push_back("no dip at n=51");
    return fails;
}

// --------------------------------------------------------------------------
// 4. Regime table for m_hat: k, 2k-5, 2k-4, 2k-3 across [2, 41].

Failures criterion_regime_table() {
    Failures fails;
    g_cache.fill_double_modes(2, 41);
    for (std::int64_t k = 2; k <= 41; ++k) {
        const std::int64_t want = k <= 14   ? k
                                  : k <= 28 ? 2 * k - 5
                                  : k <= 37 ? 2 * k - 4
                                            : 2 * k - 3;
        const std::int64_t got = g_cache.dm.at(k).m_hat;
        if (got != want) fails.push_back(text("k=", k, " m_hat=", got, " want ", want));
    }
    return fails;
}

// --------------------------------------------------------------------------
// 5. Excluded-value tables for k in [2, 41], interval for interval.

const std::map<std::int64_t, Intervals>& reference_excluded_tables() {
    // second/third intervals as typeset; the first interval is [1, m_hat-1]
    // with m_hat from the regime table.
    static const std::map<std::int64_t, Intervals> tables = [] {
        std::map<std::int64_t, Intervals> t;
        auto row = [&](std::int64_t k, Intervals rest) {
            const std::int64_t m_hat = k <= 14   ? k
                                       : k <= 28 ? 2 * k - 5
                                       : k <= 37 ? 2 * k - 4
                                                 : 2 * k - 3;
            Intervals full{{1, m_hat - 1}};
            for (auto& iv : rest) full.push_back(iv);
            t[k] = full;
        };
        row(2, {{3, 3}});
        row(3, {{4, 4}});
        row(4, {{5, 6}, {9, 9}});
        row(5, {{6, 8}, {11, 11}});
        row(6, {{7, 9}, {13, 13}});
        row(7, {{8, 11}, {15, 15}});
        row(8, {{9, 13}, {17, 17}});
        row(9, {{10, 14}, {19, 20}});
        row(10, {{11, 16}, {21, 22}});
        row(11, {{12, 18}, {23, 24}});
        row(12, {{13, 19}, {25, 26}});
        row(13, {{14, 21}, {27, 28}});
        row(14, {{15, 23}, {29, 30}});
        row(15, {{30, 32}});
        row(16, {{32, 35}});
        row(17, {{34, 37}});
        row(18, {{36, 39}});
        row(19, {{38, 41}});
        row(20, {{40, 43}});
        row(21, {{42, 45}});
        row(22, {{44, 48}});
        row(23, {{46, 50}});
        row(24, {{48, 52}});
        row(25, {{50, 54}});
        row(26, {{51, 56}});
        row(27, {{53, 58}});
        row(28, {{55, 61}});
        row(29, {{57, 63}});
        row(30, {{59, 65}});
        row(31, {{61, 67}});
        row(32, {{63, 69}});
        row(33, {{65, 71}});
        row(34, {{67, 73}});
        row(35, {{69, 76}});
        row(36, {{70, 78}});
        row(37, {{72, 80}});
        row(38, {{74, 82}});
        row(39, {{76, 84}});
        row(40, {{78, 86}});
        row(41, {{80, 89}});
        return t;
    }();
    return tables;
}

std::string intervals_text(const Intervals& ivs) {
    std::string s;
    for (auto [lo, hi] : ivs) s += text("[", lo, ",", hi, "] ");
    return s;
}

Failures criterion_reference_tables() {
    Failures fails;
    g_cache.fill_excluded(2, 41);
    for (const auto& [k, want] : reference_excluded_tables()) {
        const Intervals& got = g_cache.excluded.at(k).intervals;
        if (got != want)
            fails.push_back(
                text("k=", k, " got ", intervals_text(got), "want ", intervals_text(want)));
    }
    return fails;
}

// --------------------------------------------------------------------------
// 6. Bounds suite over [2, 100]: m_hat >= k, 1/kappa <= lambda_hat <= r_k < 1,
//    lambda_hat strictly decreasing, k+1 excluded.

Failures criterion_bounds_suite() {
    Failures fails;
    g_cache.fill_double_modes(2, 100);
    g_cache.fill_excluded(2, 100);
    for (std::int64_t k = 2; k <= 100; ++k) {
        const DoubleModeResult& dm = g_cache.dm.at(k);
        const double rk = g_cache.rk.at(k);
        const double kappa = 0.5 * static_cast<double>(k) * static_cast<double>(k + 1);
        if (!(dm.m_hat >= k)) fails.push_back(text("k=", k, " m_hat < k"));
        if (!(dm.lambda_hat >= 1.0 / kappa))
            fails.push_back(text("k=", k, " lambda_hat below 1/kappa"));
        if (!(dm.lambda_hat <= rk + 1e-12)) fails.push_back(text("k=", k, " lambda_hat > r_k"));
        if (!(rk < 1.0)) fails.push_back(text("k=", k, " r_k >= 1"));
        if (k > 2 && !(dm.lambda_hat < g_cache.dm.at(k - 1).lambda_hat))
            fails.push_back(text("k=", k, " lambda_hat not strictly decreasing"));

        bool k_plus_1_excluded = false;
        for (auto [lo, hi] : g_cache.excluded.at(k).intervals)
            if (lo <= k + 1 && k + 1 <= hi) k_plus_1_excluded = true;
        if (!k_plus_1_excluded) fails.push_back(text("k=", k, " k+1 not excluded"));
    }
    return fails;
}

// --------------------------------------------------------------------------
// 7. Distribution-law suite, >= 1e4 random probes, zero violations.

Failures criterion_law_suite() {
    Failures fails;
    std::map<std::int64_t, double> rk_memo;
    auto rk = [&](std::int64_t k) {
        auto it = rk_memo.find(k);
        if (it == rk_memo.end()) it = rk_memo.emplace(k, root_rk(k)).first;
        return it->second;
    };

    std::mt19937_64 rng(0xACCE97ED);
    std::uniform_int_distribution<std::int64_t> pick_k(2, 60);
    std::uniform_real_distribution<double> uniform01(1e-9, 1.0);
    const int probes = 2500;  // per family; 12500 total

    // increasing prefix chain lambda = h(1) < ... < h(k)
    for (int p = 0; p < probes; ++p) {
        const std::int64_t k = pick_k(rng);
        const double lambda = uniform01(rng);
        ScaledSeries h = h_series(DistParams(k, lambda), k, {CrossCheck::Off});
        if (std::abs(h.at(1) - lambda) > 1e-14 * lambda)
            fails.push_back(text("chain: h(1) != lambda at k=", k));
        for (std::int64_t n = 2; n <= k; ++n)
            if (!(h.log_at(n) > h.log_at(n - 1))) {
                fails.push_back(text("chain violated at k=", k, " n=", n, " lambda=", lambda));
                break;
            }
    }

    // sign pattern of h(k) - 1 around the zero-tie root
    for (int p = 0; p < probes; ++p) {
        const std::int64_t k = pick_k(rng);
        const double lambda = uniform01(rng);
        if (std::abs(lambda - rk(k)) < 1e-9) continue;
        const double log_hk = h_series(DistParams(k, lambda), k, {CrossCheck::Off}).log_at(k);
        if ((lambda < rk(k)) != (log_hk < 0.0))
            fails.push_back(text("sign pattern violated at k=", k, " lambda=", lambda));
    }

    // h(k) > h(k+1) for lambda <= r_k
    for (int p = 0; p < probes; ++p) {
        const std::int64_t k = pick_k(rng);
        const double lambda = uniform01(rng) * rk(k);
        ScaledSeries h = h_series(DistParams(k, lambda), k + 1, {CrossCheck::Off});
        if (!(h.log_at(k) > h.log_at(k + 1)))
            fails.push_back(text("dip violated at k=", k, " lambda=", lambda));
    }

    // orders above n coincide (<= 1e-13 in the float path)
    for (int p = 0; p < probes; ++p) {
        const std::int64_t k = pick_k(rng);
        if (k < 3) continue;
        std::uniform_int_distribution<std::int64_t> pick_n(1, k - 1);
        const std::int64_t n = pick_n(rng);
        const double lambda = uniform01(rng);
        const double a = h_series(DistParams(k, lambda), n, {CrossCheck::Off}).log_at(n);
        const double b = h_series(DistParams(n, lambda), n, {CrossCheck::Off}).log_at(n);
        if (!(std::abs(a - b) <= 1e-13))
            fails.push_back(text("order collapse violated at k=", k, " n=", n));
    }

    // strict growth in the order for fixed n >= 2
    for (int p = 0; p < probes; ++p) {
        std::uniform_int_distribution<std::int64_t> pick_n(2, 30);
        const std::int64_t n = pick_n(rng);
        const double lambda = uniform01(rng);
        double prev = h_series(DistParams(1, lambda), n, {CrossCheck::Off}).log_at(n);
        for (std::int64_t j = 2; j <= n; ++j) {
            const double cur = h_series(DistParams(j, lambda), n, {CrossCheck::Off}).log_at(n);
            if (!(cur > prev)) {
                fails.push_back(text("order chain violated at n=", n, " j=", j));
                break;
            }
            prev = cur;
        }
    }
    return fails;
}

// --------------------------------------------------------------------------
// 8. Median-zero criterion, >= 1e4 probes, guard band 1e-12.

Failures criterion_median_zero() {
    Failures fails;
    std::mt19937_64 rng(0x3ED1A2);
    std::uniform_int_distribution<std::int64_t> pick_k(1, 200);
    std::uniform_real_distribution<double> uniform01(0.0, 1.0);
    int tested = 0;
    for (int p = 0; p < 11000 && tested < 10500; ++p) {
        const std::int64_t k = pick_k(rng);
        const double threshold = std::log(2.0) / static_cast<double>(k);
        const double lambda = (p % 4 == 0) ? uniform01(rng) * 1.0 + 1e-9
                                           : uniform01(rng) * 2.2 * threshold + 1e-9;
        if (std::abs(lambda - threshold) < 1e-12) continue;
        ++tested;
        const bool zero_median = median(DistParams(k, lambda)) == 0;
        if (zero_median != (lambda <= threshold))
            fails.push_back(text("k=", k, " lambda=", lambda, " threshold=", threshold));
    }
    if (tested < 10000) fails.push_back(text("only ", tested, " probes ran"));
    return fails;
}

// --------------------------------------------------------------------------
// 9. Mode-vs-mean bound, randomized (k <= 200, lambda <= 3), zero violations.

Failures criterion_mode_mean_bound() {
    Failures fails;
    std::mt19937_64 rng(0x0DE3EA1);
    std::uniform_int_distribution<std::int64_t> pick_k(1, 200);
    std::uniform_real_distribution<double> pick_lambda(1e-9, 3.0);
    for (int p = 0; p < 2500; ++p) {
        const std::int64_t k = pick_k(rng);
        DistParams params(k, pick_lambda(rng));
        const ModeSummary s = mode(params);
        const std::int64_t hi = floor_mean(params);
        const std::int64_t lo = hi - params.kappa + 1 - (k == 1 ? 1 : 0);
        for (std::int64_t m : s.modes)
            if (m < lo || m > hi)
                fails.push_back(text("k=", k, " lambda=", params.lambda, " mode=", m));
    }
    return fails;
}

// --------------------------------------------------------------------------
// 10. Regular-regime mode formula for k in [2, 40], ten n >= 2*kappa each.

Failures criterion_regular_regime() {
    Failures fails;
    std::mutex mutex;
    detail::parallel_for(39, [&](std::int64_t i) {
        const std::int64_t k = 2 + i;
        const std::int64_t kappa = k * (k + 1) / 2;
        const std::int64_t stride = std::max<std::int64_t>(1, kappa / 3);
        for (int j = 0; j < 10; ++j) {
            const std::int64_t n = 2 * kappa + j * stride;
            if (!check_mode_conjecture(k, n)) {
                std::lock_guard<std::mutex> lock(mutex);
                fails.push_back(text("k=", k, " n=", n));
            }
        }
    });
    return fails;
}

// --------------------------------------------------------------------------
// 11. Asymptotic fits over log-sampled k in [50, 1000]: slope of the
//     mean-minus-mode line in 0.38 +- 0.05, mean growth exponent in
//     1.125 +- 0.05.

Failures criterion_asymptotic_fits() {
    Failures fails;
    std::vector<std::int64_t> ks;
    for (int i = 0; i <= 24; ++i) {
        const double x = 50.0 * std::pow(1000.0 / 50.0, i / 24.0);
        const std::int64_t k = static_cast<std::int64_t>(std::llround(x));
        if (ks.empty() || ks.back() != k) ks.push_back(k);
    }

    std::vector<DoubleModeResult> dms(ks.size());
    detail::parallel_for(static_cast<std::int64_t>(ks.size()), [&](std::int64_t i) {
        dms[static_cast<std::size_t>(i)] = first_double_mode(ks[static_cast<std::size_t>(i)]);
    });

    std::vector<FitPoint> diff_points, mean_points;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double kappa = 0.5 * static_cast<double>(ks[i]) * static_cast<double>(ks[i] + 1);
        const double mu = kappa * dms[i].lambda_hat;
        const double m_hat = static_cast<double>(dms[i].m_hat);
        if (!(m_hat < mu)) {
            fails.push_back(text("k=", ks[i], " mode does not fall below the mean"));
            return fails;
        }
        diff_points.push_back({static_cast<double>(ks[i]), mu - m_hat});
        mean_points.push_back({static_cast<double>(ks[i]), mu});
    }

    const FitResult line = linear_fit(diff_points);
    if (!(std::abs(line.c1 - 0.38) <= 0.05))
        fails.push_back(text("mean-minus-mode slope ", line.c1, " outside 0.38 +- 0.05"));
    const FitResult power = power_law_fit(mean_points);
    if (!(std::abs(power.c1 - 1.125) <= 0.05))
        fails.push_back(text("mean growth exponent ", power.c1, " outside 1.125 +- 0.05"));
    return fails;
}

// --------------------------------------------------------------------------
// 12. Single-interval conjecture for k in [42, 100]: the excluded set is
//     exactly [1, m_hat - 1].

Failures criterion_single_interval() {
    Failures fails;
    g_cache.fill_double_modes(42, 100);
    g_cache.fill_excluded(42, 100);
    for (std::int64_t k = 42; k <= 100; ++k) {
        const Intervals& got = g_cache.excluded.at(k).intervals;
        const Intervals want{{1, g_cache.dm.at(k).m_hat - 1}};
        if (got != want)
            fails.push_back(
                text("k=", k, " got ", intervals_text(got), "want ", intervals_text(want)));
    }
    return fails;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Failures()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "exactness anchor vs enumeration oracle (1e-13)", criterion_exactness_anchor},
        {2, "order-2 algebraic double mode (1e-10)", criterion_order2_algebraic},
        {3, "order-50 case study (m=113, 0.10194, n=98 shoulder)", criterion_order50_case_study},
        {4, "m_hat regime table on [2,41]", criterion_regime_table},
        {5, "excluded-value tables on [2,41]", criterion_reference_tables},
        {6, "bounds suite on [2,100]", criterion_bounds_suite},
        {7, "distribution-law suite (>=1e4 probes)", criterion_law_suite},
        {8, "median-zero criterion (>=1e4 probes)", criterion_median_zero},
        {9, "mode-vs-mean bound (randomized)", criterion_mode_mean_bound},
        {10, "regular-regime mode formula on [2,40]", criterion_regular_regime},
        {11, "asymptotic fits on log-sampled [50,1000]", criterion_asymptotic_fits},
        {12, "single-interval conjecture on [42,100]", criterion_single_interval},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Failures fails;
        try {
            fails = c.run();
        } catch (const std::exception& e) {
            fails.push_back(text("exception: ", e.what()));
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.1f s)\n", fails.empty() ? "PASS" : "FAIL", c.id,
                    c.name, seconds);
        if (!fails.empty()) {
            ++failed;
            const std::size_t shown = std::min<std::size_t>(fails.size(), 5);
            for (std::size_t i = 0; i < shown; ++i)
                std::printf("         - %s\n", fails[i].c_str());
            if (fails.size() > shown)
                std::printf("         - ... %zu more\n", fails.size() - shown);
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed;
}
