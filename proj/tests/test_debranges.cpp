#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "milincert/debranges.hpp"

using namespace milincert;

TEST_CASE("system matrix layout") {
    RatMatrix A = system_matrix(3);
    CHECK(A.at(0, 0) == Rat(-1));
    CHECK(A.at(0, 1) == Rat(4));
    CHECK(A.at(0, 2) == Rat(-6));
    CHECK(A.at(1, 0) == Rat(0));
    CHECK(A.at(1, 1) == Rat(-2));
    CHECK(A.at(1, 2) == Rat(6));
    CHECK(A.at(2, 2) == Rat(-3));
    CHECK(system_matrix(1).at(0, 0) == Rat(-1));
    CHECK_THROWS_AS(system_matrix(0), std::invalid_argument);
}

TEST_CASE("matrix exponential against the closed forms") {
    RatMatrix A2 = system_matrix(2), A3 = system_matrix(3);
    for (double t : {0.1, 1.0, 2.0}) {
        double u = std::exp(-t);
        DMatrix E2 = matrix_exp(A2, t);
        CHECK(std::abs(E2[0][0] - u) < 1e-12);
        CHECK(std::abs(E2[1][1] - u * u) < 1e-12);
        CHECK(std::abs(E2[1][0]) < 1e-12);
        CHECK(std::abs(E2[0][1] - 4 * u * (1 - u)) < 1e-10);

        DMatrix E3 = matrix_exp(A3, t);
        CHECK(std::abs(E3[0][0] - u) < 1e-12);
        CHECK(std::abs(E3[1][1] - u * u) < 1e-12);
        CHECK(std::abs(E3[2][2] - u * u * u) < 1e-12);
        CHECK(std::abs(E3[1][2] - 6 * u * u * (1 - u)) < 1e-10);
        CHECK(std::abs(E3[0][2] - 3 * u * (1 - u) * (3 - 5 * u)) < 1e-10);
    }
    CHECK_THROWS_AS(matrix_exp(A2, -1.0), std::invalid_argument);
}

TEST_CASE("semigroup property") {
    RatMatrix A = system_matrix(4);
    DMatrix E1 = matrix_exp(A, 1.0);
    DMatrix Es = detail::dmat_mul(matrix_exp(A, 0.3), matrix_exp(A, 0.7));
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) REQUIRE(std::abs(E1[i][j] - Es[i][j]) < 1e-10);
}

TEST_CASE("exponential agrees with a Runge-Kutta integration") {
    RatMatrix A = system_matrix(3);
    DMatrix M = A.to_double();
    std::vector<double> x = {1.0, 1.0, 1.0};
    auto deriv = [&](const std::vector<double>& y) {
        std::vector<double> d(3, 0.0);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) d[i] += M[i][j] * y[j];
        return d;
    };
    const double h = 1e-3;
    for (int step = 0; step < 2000; ++step) {
        auto k1 = deriv(x);
        std::vector<double> y2(3), y3(3), y4(3);
        for (size_t i = 0; i < 3; ++i) y2[i] = x[i] + h / 2 * k1[i];
        auto k2 = deriv(y2);
        for (size_t i = 0; i < 3; ++i) y3[i] = x[i] + h / 2 * k2[i];
        auto k3 = deriv(y3);
        for (size_t i = 0; i < 3; ++i) y4[i] = x[i] + h * k3[i];
        auto k4 = deriv(y4);
        for (size_t i = 0; i < 3; ++i)
            x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    DMatrix E = matrix_exp(A, 2.0);
    for (size_t i = 0; i < 3; ++i) {
        double want = E[i][0] + E[i][1] + E[i][2];
        REQUIRE(std::abs(x[i] - want) < 1e-6);
    }
}

TEST_CASE("tau derivative closed form") {
    TauSystem tau(DerivedSeq(TwoFactorNum(Rat(1), Rat(1)), 5));
    REQUIRE(tau.size() == 5);

    SECTION("initial slope is -k v_k, exactly") {
        for (long k = 1; k <= 5; ++k) {
            // exact identity through the polynomial evaluation
            CHECK(tau.Q(k).eval(Rat(-1)) == tau.seq().v(k));
            HPReal slope = tau.tau_prime(k, HPReal(0));
            mp want = -k * mp_from_rat(tau.seq().v(k));
            CHECK(abs(slope.v - want) <= slope.e);
            CHECK(slope.e < mp("1e-50"));
        }
    }
    SECTION("certified weights are decreasing for t > 0") {
        for (long k = 1; k <= 5; ++k)
            for (double t : {0.01, 0.5, 1.0, 3.0})
                CHECK(tau.tau_prime(k, HPReal(mp(t))).v < 0);
    }
    SECTION("domain") {
        CHECK_THROWS_AS(tau.tau_prime(0, HPReal(0)), std::invalid_argument);
        CHECK_THROWS_AS(tau.tau_prime(1, HPReal(mp(-1))), std::invalid_argument);
    }
}

TEST_CASE("sign conditions alone do not force monotone weights") {
    for (double eps : {1e-3, 0.05}) {
        InsufficiencyWitness w = insufficiency_demo(eps);
        CHECK(w.t_witness > 0);
        CHECK(w.first_entry_value < 0);
        CHECK(w.tau1_prime_surrogate > 0);

        // independent recomputation at the witness
        DMatrix E = matrix_exp(system_matrix(3), w.t_witness);
        double first = E[0][0] * eps + E[0][1] * eps + E[0][2] * (1 - 2 * eps);
        CHECK(std::abs(first - w.first_entry_value) < 1e-12);
    }
    CHECK_THROWS_AS(insufficiency_demo(0.0), std::invalid_argument);
    CHECK_THROWS_AS(insufficiency_demo(1.0), std::invalid_argument);
}
