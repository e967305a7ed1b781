#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "poik/errors.hpp"

namespace poik {

using Rational = boost::multiprecision::cpp_rational;

/// h(n; lambda) as an exact polynomial in lambda. coeffs[j] is the
/// coefficient of lambda^j; coeffs[0] is 1 for degree 0 and 0 otherwise
/// (h has no constant term for n > 0). All nonzero coefficients are
/// positive and the leading one equals 1/n!.
struct HPolynomial {
    std::int64_t degree = 0;  // = n
    std::int64_t order = 1;   // = k
    std::vector<Rational> coeffs;

    Rational coeff(std::int64_t j) const { return coeffs[static_cast<std::size_t>(j)]; }
};

/// Exact Horner evaluation.
Rational eval_exact(const HPolynomial& poly, const Rational& lambda);

/// Exact coefficients of h_k(n; lambda) via the order-direction recurrence
/// in rational arithmetic. Capped at n <= 64 (coefficient bit-lengths grow
/// roughly like n log n); throws UnsupportedRangeError beyond the cap.
HPolynomial h_polynomial(std::int64_t k, std::int64_t n);

}  // namespace poik
