#include <numeric>

#include "doctest.h"
#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"

using namespace isofib;

namespace {

// independent oracle: fold the continued fraction back to a rational
Rational cf_value(const std::vector<long>& b) {
    Rational acc(b.back());
    for (size_t i = b.size() - 1; i-- > 0;) acc = Rational(b[i]) - Rational(1) / acc;
    return acc;
}

}  // namespace

TEST_CASE("expansion examples") {
    CHECK(hj_expand(2, 1).b == std::vector<long>{2});
    CHECK(hj_expand(5, 1).b == std::vector<long>{5});
    CHECK(hj_expand(7, 2).b == std::vector<long>{4, 2});
    CHECK(hj_expand(7, 4).b == std::vector<long>{2, 4});
    CHECK(cf_value({4, 2}) == Rational(7, 2));
    CHECK(cf_value({2, 4}) == Rational(7, 4));
    CHECK_THROWS_AS(hj_expand(6, 2), invalid_input);
    CHECK_THROWS_AS(hj_expand(4, 4), invalid_input);
    CHECK_THROWS_AS(hj_expand(4, 0), invalid_input);
}

TEST_CASE("duals") {
    CHECK(hj_dual(2, 1).b == std::vector<long>{2});          // self-dual
    CHECK(hj_dual(7, 2).b == std::vector<long>{2, 2, 3});    // 7/5
    CHECK(cf_value({2, 2, 3}) == Rational(7, 5));
    CHECK(hj_dual(4, 1).b == std::vector<long>{2, 2, 2});    // 4/3, the A3 chain
}

TEST_CASE("correction numbers on frozen cases") {
    auto c21 = hj_corrections(hj_expand(2, 1));
    CHECK(c21.discrepancies == std::vector<Rational>{Rational(0)});
    CHECK(c21.c == Rational(0));
    CHECK(c21.e == Rational(3, 2));
    CHECK(c21.B == Rational(1));

    auto c41 = hj_corrections(hj_expand(4, 1));
    CHECK(c41.discrepancies == std::vector<Rational>{Rational(-1, 2)});
    CHECK(c41.c == Rational(1));
    CHECK(c41.e == Rational(7, 4));
    CHECK(c41.B == Rational(3, 2));

    auto c72 = hj_corrections(hj_expand(7, 2));
    CHECK(c72.discrepancies == std::vector<Rational>{Rational(-4, 7), Rational(-2, 7)});
    CHECK(c72.c == Rational(8, 7));
    CHECK(c72.e == Rational(20, 7));
    CHECK(c72.B == Rational(16, 7));

    auto c71 = hj_corrections(hj_expand(7, 1));
    CHECK(c71.c == Rational(25, 7));
    CHECK(c71.e == Rational(13, 7));
    CHECK(c71.B == Rational(17, 7));

    auto c31 = hj_corrections(hj_expand(3, 1));
    CHECK(c31.c == Rational(1, 3));
    CHECK(c31.B == Rational(11, 9));
}

TEST_CASE("rational double point detection") {
    CHECK(is_rdp(hj_expand(2, 1)));
    CHECK(is_rdp(hj_expand(3, 2)));
    CHECK_FALSE(is_rdp(hj_expand(7, 1)));
    CHECK_FALSE(is_rdp(hj_expand(7, 2)));
}

TEST_CASE("exhaustive properties for n <= 200") {
    for (long n = 2; n <= 200; ++n) {
        for (long q = 1; q < n; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto x = hj_expand(n, q);
            CHECK(cf_value(x.b) == Rational(n, q));

            // reversal law: reversed expansion belongs to the inverse residue
            long qinv = 0;
            for (long t = 1; t < n; ++t)
                if (t * q % n == 1) {
                    qinv = t;
                    break;
                }
            auto rev = x.b;
            std::reverse(rev.begin(), rev.end());
            CHECK(rev == hj_expand(n, qinv).b);

            // Riemenschneider length identity
            auto d = hj_dual(n, q);
            long sum = 0;
            for (long b : x.b) sum += b - 1;
            CHECK(sum == static_cast<long>(x.b.size()) + static_cast<long>(d.b.size()) - 1);

            auto corr = hj_corrections(x);
            for (const auto& a : corr.discrepancies) {
                CHECK(a > Rational(-1));
                CHECK(a <= Rational(0));
            }
            CHECK(corr.c >= Rational(0));
            CHECK((corr.c == Rational(0)) == is_rdp(x));
            CHECK(corr.B >= Rational(1));
            CHECK((corr.B == Rational(1)) == (n == 2 && q == 1));
        }
    }
}
