#include <catch2/catch_amalgamated.hpp>

#include "milincert/jacobi.hpp"

using namespace milincert;

namespace {

// Independent oracle: the Rodrigues formula
//   P_j^{(a,b)}(x) = (-1)^j / (2^j j!) (1-x)^{-a} (1+x)^{-b}
//                    d^j/dx^j [ (1-x)^{a+j} (1+x)^{b+j} ]
// which is pure polynomial algebra for integer a, b >= 0.
RatPoly rodrigues(long j, long a, long b) {
    RatPoly one_minus({Rat(1), Rat(-1)}), one_plus({Rat(1), Rat(1)});
    RatPoly w = RatPoly::constant(Rat(1));
    for (long i = 0; i < a + j; ++i) w = w * one_minus;
    for (long i = 0; i < b + j; ++i) w = w * one_plus;
    for (long i = 0; i < j; ++i) w = w.derivative();
    RatPoly d = RatPoly::constant(Rat(1));
    for (long i = 0; i < a; ++i) d = d * one_minus;
    for (long i = 0; i < b; ++i) d = d * one_plus;
    Rat c(1);
    for (long i = 1; i <= j; ++i) c *= Rat(2 * i);  // 2^j j!
    return (Rat(j % 2 == 0 ? 1 : -1) / c) * w.exact_div(d);
}

Rat binom(long n, long k) {
    Rat r(1);
    for (long i = 1; i <= k; ++i) r = r * Rat(n - k + i) / Rat(i);
    return r;
}

}  // namespace

TEST_CASE("three-term recurrence matches the Rodrigues oracle") {
    const std::pair<long, long> params[] = {{2, 0}, {4, 0}, {6, 0}, {1, 1}};
    for (auto [a, b] : params)
        for (long j = 0; j <= 8; ++j)
            REQUIRE(jacobi_poly(j, Rat(a), Rat(b)) == rodrigues(j, a, b));
}

TEST_CASE("low-degree literals") {
    CHECK(jacobi_poly(0, Rat(2), Rat(0)) == RatPoly::constant(Rat(1)));
    CHECK(jacobi_poly(1, Rat(2), Rat(0)) == RatPoly({Rat(1), Rat(2)}));
    CHECK(jacobi_poly(1, Rat(8), Rat(0)) == RatPoly({Rat(4), Rat(5)}));
    CHECK(jacobi_poly(2, Rat(0), Rat(0)) == RatPoly({rat(-1, 2), Rat(0), rat(3, 2)}));  // Legendre
}

TEST_CASE("endpoint values") {
    for (long k = 1; k <= 10; ++k)
        for (long j = 0; j <= 16; ++j)
            REQUIRE(jacobi_poly(j, Rat(2 * k), Rat(0)).eval(Rat(-1)) ==
                    Rat(j % 2 == 0 ? 1 : -1));
    for (long k = 1; k <= 6; ++k)
        for (long j = 0; j <= 12; ++j)
            REQUIRE(jacobi_poly(j, Rat(2 * k), Rat(0)).eval(Rat(1)) == binom(j + 2 * k, j));
}

TEST_CASE("partial sums and degree") {
    for (long k = 1; k <= 4; ++k) {
        RatPoly acc;
        for (long j = 0; j <= 5; ++j) {
            acc = acc + jacobi_poly(j, Rat(2 * k), Rat(0));
            CHECK(jacobi_poly(j, Rat(2 * k), Rat(0)).degree() == static_cast<int>(j));
        }
        CHECK(jacobi_partial_sum(5, k) == acc);
    }
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(jacobi_poly(-1, Rat(2), Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_poly(2, Rat(-1), Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_partial_sum(3, 0), std::invalid_argument);
}
