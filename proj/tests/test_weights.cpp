#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "milincert/weights.hpp"

using namespace milincert;

TEST_CASE("weight values") {
    CHECK(weight_value(RatQuadNum(Rat(0), rat(4, 3)), 1) == rat(3, 7));
    CHECK(weight_value(SquaredFactor(Rat(1), rat(1, 20)), 1) == rat(5, 21));
    CHECK(weight_value(TwoFactorNum(Rat(1), Rat(1)), 2) == rat(2, 9));
    CHECK(weight_value(Reciprocal(Rat(1)), 3) == rat(1, 4));
    CHECK(weight_value(Geometric(rat(1, 2)), 3) == rat(1, 64));
    CHECK(weight_value(GeomShift(Rat(1), rat(1, 2)), 2) == rat(3, 4));
    CHECK(weight_value_f(PowerLaw(2.0), 4) == Catch::Approx(1.0 / 16));
    CHECK_THROWS_AS(weight_value(PowerLaw(2.0), 1), std::domain_error);
    CHECK_THROWS_AS(weight_value(Reciprocal(Rat(1)), 0), std::invalid_argument);
}

TEST_CASE("parameter domains enforced at construction") {
    CHECK_THROWS_AS(Reciprocal(Rat(-1)), std::invalid_argument);
    CHECK_THROWS_AS(RatQuadNum(Rat(0), Rat(-1)), std::invalid_argument);
    CHECK_THROWS_AS(TwoFactorNum(Rat(-2), Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(Geometric(Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(GeomShift(Rat(0), Rat(2)), std::invalid_argument);
    CHECK_THROWS_AS(PowerLaw(0.0), std::invalid_argument);
}

TEST_CASE("family specs round-trip through parse and label") {
    for (const std::string spec :
         {"reciprocal:alpha=1", "ratquadnum:a=0,b=4/3", "twofactornum:alpha=1,beta=1",
          "invquad:a=1,b=2", "invtwofactor:alpha=0,beta=1", "squaredfactor:alpha=1,beta=1/20",
          "geomshift:alpha=0,r=1/2", "geometric:r=1/3"}) {
        CHECK(family_label(parse_family(spec)) == spec);
    }
    CHECK_THROWS_AS(parse_family("nosuchfamily:x=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family("reciprocal:beta=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family("ratquadnum:a=0"), std::invalid_argument);
}

TEST_CASE("second differences hit the published values") {
    DerivedSeq roth(TwoFactorNum(Rat(1), Rat(1)), 5);
    CHECK(roth.lambda(1) == rat(-1, 144));

    DerivedSeq f43(RatQuadNum(Rat(0), rat(4, 3)), 9);
    CHECK(f43.lambda(1) == rat(-27, 868));

    DerivedSeq f120(SquaredFactor(Rat(1), rat(1, 20)), 9);
    CHECK(f120.lambda(1) == rat(-6985, 630252));
    CHECK(f120.lambda(2) == rat(12103, 2025810));
}

TEST_CASE("derived sequence identities") {
    DerivedSeq seq(TwoFactorNum(Rat(1), Rat(1)), 5);
    long N = seq.cutoff();

    // nu_1 = q_1 - q_6 for the Roth family
    CHECK(seq.nu(1) == (rat(1, 4) - rat(2, 9)) - (rat(6, 49) - rat(7, 64)));

    for (long m = 1; m <= N; ++m) {
        Rat tel(0);
        for (long n = m; n <= N; ++n) tel += seq.lambda(n);
        CHECK(seq.nu(m) == tel);
        if (m < N) CHECK(seq.nu(m) - seq.nu(m + 1) == seq.lambda(m));
    }
    CHECK(seq.nu(N) == seq.lambda(N));
    CHECK(seq.mu(N) == seq.lambda(N));

    for (long k = 1; k <= N; ++k) {
        // index-shift identity for mu
        Rat shifted(0);
        for (long j = 1; j <= N - k + 1; ++j) shifted += Rat(j) * seq.lambda(j + k - 1);
        CHECK(seq.mu(k) == shifted);
        if (k + 2 <= N) CHECK(seq.v(k) - seq.v(k + 2) == seq.lambda(k));
    }
    CHECK(seq.v(1) == seq.lambda(1) + seq.lambda(3) + seq.lambda(5));
    CHECK(seq.v(2) == seq.lambda(2) + seq.lambda(4));

    CHECK_THROWS_AS(seq.nu(6), std::invalid_argument);
    CHECK_THROWS_AS(seq.mu(0), std::invalid_argument);
    CHECK_THROWS_AS(DerivedSeq(TwoFactorNum(Rat(1), Rat(1)), 0), std::invalid_argument);
    CHECK_THROWS_AS(DerivedSeq(PowerLaw(1.0), 3), std::domain_error);
}

TEST_CASE("v_1 closed form for the quadratic-denominator family at N=3") {
    for (const Rat& b : {Rat(1), rat(6, 5), rat(4, 3), rat(23849, 20000)}) {
        DerivedSeq seq(RatQuadNum(Rat(0), b), 3);
        Rat num = 12 * (Rat(440) - 317 * b - 40 * b * b - 3 * b * b * b);
        Rat den = (1 + b) * (4 + b) * (9 + b) * (16 + b) * (25 + b);
        CHECK(seq.v(1) == num / den);
    }
}

TEST_CASE("truncated first differences converge to the weight") {
    // p_k = sum_{n>=k} lambda_n (n-k+1) for summable convex families
    WeightFamily fam = Reciprocal(Rat(1));
    auto partial = [&](long k, long K) {
        double acc = 0;
        for (long n = K; n >= k; --n) {
            double lam = weight_value(fam, n).get_d() - 2 * weight_value(fam, n + 1).get_d() +
                         weight_value(fam, n + 2).get_d();
            acc += lam * static_cast<double>(n - k + 1);
        }
        return acc;
    };
    for (long k = 1; k <= 10; ++k) {
        double pk = weight_value(fam, k).get_d();
        double err_small = std::abs(pk - partial(k, 100));
        double err_mid = std::abs(pk - partial(k, 1000));
        double err_big = std::abs(pk - partial(k, 10000));
        CHECK(err_big < 1e-3);
        CHECK(err_big <= err_mid);
        CHECK(err_mid <= err_small);
    }
}

TEST_CASE("convexity predicates evaluate the printed conditions") {
    CHECK(convexity_condition(Reciprocal(Rat(1))) == std::optional<bool>(true));
    CHECK(convexity_condition(RatQuadNum(Rat(0), Rat(1))) == std::optional<bool>(true));
    CHECK(convexity_condition(RatQuadNum(Rat(0), rat(6, 5))) == std::optional<bool>(false));
    CHECK(convexity_condition(RatQuadNum(Rat(0), rat(4, 3))) == std::optional<bool>(false));
    CHECK(convexity_condition(TwoFactorNum(Rat(1), Rat(1))) == std::optional<bool>(false));
    CHECK(convexity_condition(InvTwoFactor(Rat(0), Rat(1))) == std::optional<bool>(true));
    CHECK(convexity_condition(SquaredFactor(Rat(1), rat(1, 20))) == std::optional<bool>(false));
    CHECK(convexity_condition(SquaredFactor(rat(1, 4), rat(1, 4))) == std::optional<bool>(true));
    CHECK(convexity_condition(Geometric(rat(1, 2))) == std::optional<bool>(true));
    CHECK(convexity_condition(GeomShift(Rat(0), rat(1, 10))) == std::optional<bool>(true));
    CHECK(convexity_condition(GeomShift(Rat(0), rat(1, 5))) == std::optional<bool>(false));
    CHECK_THROWS_AS(convexity_condition(WeightFamily(Custom{[](long n) { return Rat(n); }})),
                    std::domain_error);
}

TEST_CASE("tail certificates carry the analytic thresholds") {
    CHECK(tail_certificate(Reciprocal(Rat(1))) == std::optional<long>(1));
    CHECK(tail_certificate(Geometric(rat(1, 2))) == std::optional<long>(1));
    CHECK(tail_certificate(RatQuadNum(Rat(0), rat(4, 3))) == std::optional<long>(2));
    CHECK(tail_certificate(TwoFactorNum(Rat(1), Rat(1))) == std::optional<long>(2));
    CHECK(tail_certificate(SquaredFactor(Rat(1), rat(1, 20))) == std::optional<long>(3));
    CHECK(!tail_certificate(WeightFamily(Custom{[](long n) { return rat(1, n); }})));
    CHECK(!tail_certificate(GeomShift(Rat(0), rat(1, 5))));
}

TEST_CASE("predicate-passing families have nonnegative second differences") {
    for (const WeightFamily& fam :
         {WeightFamily(Reciprocal(Rat(1))), WeightFamily(RatQuadNum(Rat(0), Rat(1))),
          WeightFamily(Geometric(rat(1, 2))), WeightFamily(InvTwoFactor(Rat(0), Rat(1))),
          WeightFamily(SquaredFactor(rat(1, 4), rat(1, 4)))}) {
        REQUIRE(convexity_condition(fam) == std::optional<bool>(true));
        for (long n = 1; n <= 256; ++n) {
            Rat lam = weight_value(fam, n) - 2 * weight_value(fam, n + 1) +
                      weight_value(fam, n + 2);
            REQUIRE(lam >= 0);
        }
    }
}
