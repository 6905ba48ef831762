#include "isofib/hirzebruch_jung.hpp"

#include <numeric>
#include <string>

#include "isofib/errors.hpp"

namespace isofib {

HJExpansion hj_expand(long n, long q) {
    if (n <= 0 || q <= 0 || q >= n)
        throw invalid_input("hj_expand: need 0 < q < n, got n=" + std::to_string(n) +
                            " q=" + std::to_string(q));
    if (std::gcd(n, q) != 1)
        throw invalid_input("hj_expand: gcd(n,q) != 1 for n=" + std::to_string(n) +
                            " q=" + std::to_string(q));
    HJExpansion x;
    x.n = n;
    x.q = q;
    while (q > 0) {
        long b = (n + q - 1) / q;  // ceil(n/q)
        x.b.push_back(b);
        long next_q = b * q - n;
        n = q;
        q = next_q;
    }
    return x;
}

HJExpansion hj_dual(long n, long q) {
    HJExpansion d = hj_expand(n, n - q);
    return d;
}

Corrections hj_corrections(const HJExpansion& x) {
    size_t k = x.b.size();
    if (k == 0) throw invalid_input("hj_corrections: empty expansion");
    for (long b : x.b)
        if (b < 2) throw invalid_input("hj_corrections: expansion entry < 2");

    // Solve M a = d with M the string intersection matrix (diag -b_i,
    // offdiag 1) and d_i = b_i - 2, by forward elimination on the
    // tridiagonal system. Exact rational arithmetic throughout.
    std::vector<Rational> diag(k), rhs(k);
    for (size_t i = 0; i < k; ++i) {
        diag[i] = Rational(-x.b[i]);
        rhs[i] = Rational(x.b[i] - 2);
    }
    for (size_t i = 1; i < k; ++i) {
        // eliminate the subdiagonal 1 using row i-1
        Rational f = Rational(1) / diag[i - 1];
        diag[i] -= f;
        rhs[i] -= rhs[i - 1] * f;
    }
    Corrections out;
    out.discrepancies.assign(k, Rational(0));
    for (size_t i = k; i-- > 0;) {
        Rational upper = (i + 1 < k) ? out.discrepancies[i + 1] : Rational(0);
        if (diag[i] == Rational(0)) throw internal_error("singular HJ intersection matrix");
        out.discrepancies[i] = (rhs[i] - upper) / diag[i];
    }
    for (size_t i = 0; i < k; ++i) {
        const Rational& a = out.discrepancies[i];
        if (!(a > Rational(-1) && a <= Rational(0)))
            throw internal_error("discrepancy outside (-1, 0]: " + a.str());
        out.c -= a * Rational(x.b[i] - 2);
    }
    out.e = Rational(static_cast<long>(k) + 1) - Rational(1, x.n);
    out.B = (Rational(2) * out.e + out.c) / Rational(3);
    return out;
}

bool is_rdp(const HJExpansion& x) {
    for (long b : x.b)
        if (b != 2) return false;
    return true;
}

}  // namespace isofib
