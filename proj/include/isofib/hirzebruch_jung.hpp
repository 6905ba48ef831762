#pragma once

#include <vector>

#include "isofib/rational.hpp"

namespace isofib {

// Hirzebruch-Jung continued fraction n/q = [b1,...,bk], all b_i >= 2,
//   n/q = b1 - 1/(b2 - 1/(... - 1/bk)).
struct HJExpansion {
    long n = 0, q = 0;
    std::vector<long> b;
};

// Per-singularity correction data for the resolution string:
//   discrepancies a_i solve (sum_j a_j Z_j) . Z_i = b_i - 2,
//   c = -sum a_i (b_i - 2)    (drop of K^2 against the quotient baseline),
//   e = k + 1 - 1/n           (Euler contribution against the baseline),
//   B = (2e + c) / 3          (the singularity's share of 8chi - K^2).
struct Corrections {
    std::vector<Rational> discrepancies;
    Rational c, e, B;
};

// The unique all->=2 expansion of n/q (0 < q < n, gcd(n,q) = 1).
HJExpansion hj_expand(long n, long q);

// Expansion of n/(n-q) (Riemenschneider's dual).
HJExpansion hj_dual(long n, long q);

// Exact solve of the tridiagonal discrepancy system plus the derived
// correction numbers.
Corrections hj_corrections(const HJExpansion& x);

// True iff all b_i = 2, equivalently q = n - 1 (rational double point
// of type A_{n-1}).
bool is_rdp(const HJExpansion& x);

}  // namespace isofib
