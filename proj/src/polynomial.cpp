#include "poik/polynomial.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace poik {

Rational eval_exact(const HPolynomial& poly, const Rational& lambda) {
    Rational acc = 0;
    for (std::int64_t j = poly.degree; j >= 0; --j) {
        acc = acc * lambda + poly.coeffs[static_cast<std::size_t>(j)];
    }
    return acc;
}

HPolynomial h_polynomial(std::int64_t k, std::int64_t n) {
    if (k < 1) throw InvalidParamsError("order k must be >= 1");
    if (n < 0) throw InvalidParamsError("n must be >= 0");
    if (n > 64)
        throw UnsupportedRangeError("exact polynomial path capped at n <= 64, got n = " +
                                    std::to_string(n));

    // For orders above n the polynomial is unchanged, so the ladder stops
    // at min(k, n).
    const std::int64_t order_cap = std::max<std::int64_t>(std::min(k, n), 1);

    std::vector<Rational> inv_factorial(static_cast<std::size_t>(n) + 1);
    Rational f = 1;
    inv_factorial[0] = 1;
    for (std::int64_t t = 1; t <= n; ++t) {
        f *= t;
        inv_factorial[static_cast<std::size_t>(t)] = Rational(1) / f;
    }

    // cur[m] = coefficients of h_j(m; lambda) for the current order j.
    // Order 1: h_1(m) = lambda^m / m!.
    std::vector<std::vector<Rational>> cur(static_cast<std::size_t>(n) + 1);
    for (std::int64_t m = 0; m <= n; ++m) {
        cur[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m) + 1, Rational(0));
        cur[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] =
            inv_factorial[static_cast<std::size_t>(m)];
    }

    for (std::int64_t j = 2; j <= order_cap; ++j) {
        std::vector<std::vector<Rational>> next(static_cast<std::size_t>(n) + 1);
        for (std::int64_t m = 0; m <= n; ++m) {
            std::vector<Rational> acc(static_cast<std::size_t>(m) + 1, Rational(0));
            // h_j(m) = sum_t lambda^t / t! * h_{j-1}(m - j t)
            for (std::int64_t t = 0; t * j <= m; ++t) {
                const auto& lower = cur[static_cast<std::size_t>(m - j * t)];
                const Rational& w = inv_factorial[static_cast<std::size_t>(t)];
                for (std::size_t c = 0; c < lower.size(); ++c) {
                    if (lower[c] != 0) acc[c + static_cast<std::size_t>(t)] += w * lower[c];
                }
            }
            next[static_cast<std::size_t>(m)] = std::move(acc);
        }
        cur = std::move(next);
    }

    HPolynomial poly;
    poly.degree = n;
    poly.order = k;
    poly.coeffs = std::move(cur[static_cast<std::size_t>(n)]);
    return poly;
}

}  // namespace poik
