#pragma once

// Ground-truth evaluation of the defining sum of the pmf by exhaustive
// enumeration in exact rational arithmetic. Deliberately slow and simple:
// this is the anchor every floating-point path is tested against.

#include <cstdint>

#include "poik/polynomial.hpp"

namespace poik::oracle {

/// Exact coefficients of h_k(n; lambda) obtained by enumerating every tuple
/// (n_1, ..., n_k) of nonnegative integers with n_1 + 2 n_2 + ... + k n_k = n
/// and accumulating lambda^(n_1+...+n_k) / (n_1! ... n_k!). Capped at
/// n <= 25, k <= 25 to keep tuple counts in the low millions.
HPolynomial enumerate_h(std::int64_t k, std::int64_t n);

}  // namespace poik::oracle
