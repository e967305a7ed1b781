#include "poik/oracle.hpp"

#include <string>
#include <vector>

namespace poik::oracle {

namespace {

struct Enumerator {
    std::int64_t k;
    std::vector<Rational> inv_factorial;
    std::vector<Rational> coeffs;  // accumulated by tuple degree

    // Descend over n_j for j = part, part-1, ..., 1 with `remaining` still to
    // be split into parts of size <= part. `degree` counts tuple entries and
    // `weight` carries 1/(n_k! ... n_{part+1}!).
    void descend(std::int64_t part, std::int64_t remaining, std::int64_t degree, Rational weight) {
        if (part == 1) {
            // n_1 = remaining; weight gains 1/n_1!
            coeffs[static_cast<std::size_t>(degree + remaining)] +=
                weight * inv_factorial[static_cast<std::size_t>(remaining)];
            return;
        }
        for (std::int64_t count = 0; count * part <= remaining; ++count) {
            descend(part - 1, remaining - count * part, degree + count,
                    weight * inv_factorial[static_cast<std::size_t>(count)]);
        }
    }
};

}  // namespace

HPolynomial enumerate_h(std::int64_t k, std::int64_t n) {
    if (k < 1) throw InvalidParamsError("order k must be >= 1");
    if (n < 0) throw InvalidParamsError("n must be >= 0");
    if (n > 25 || k > 25)
        throw UnsupportedRangeError("enumeration oracle capped at n <= 25, k <= 25 (got n = " +
                                    std::to_string(n) + ", k = " + std::to_string(k) + ")");

    Enumerator e;
    e.k = k;
    e.inv_factorial.resize(static_cast<std::size_t>(n) + 1);
    Rational f = 1;
    e.inv_factorial[0] = 1;
    for (std::int64_t t = 1; t <= n; ++t) {
        f *= t;
        e.inv_factorial[static_cast<std::size_t>(t)] = Rational(1) / f;
    }
    e.coeffs.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    e.descend(std::max<std::int64_t>(std::min(k, n), 1), n, 0, Rational(1));

    HPolynomial poly;
    poly.degree = n;
    poly.order = k;
    poly.coeffs = std::move(e.coeffs);
    return poly;
}

}  // namespace poik::oracle
