#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "milincert/hpreal.hpp"
#include "milincert/poly.hpp"
#include "milincert/sturm.hpp"

namespace milincert {

// The four radius-of-class-U equations, solved exactly as printed: the
// prior results in prefactor form, the improved ones in threshold form.
// Constants E_{1,1/20} and B_{2/sqrt3} come live from the constants layer,
// never from hard-coded decimals.

namespace detail {

inline mp radius_residual(const std::string& id, const mp& b, const mp& r) {
    mp r2 = r * r;
    mp pi = mp_pi();
    if (id == "r1") {
        mp pref = 2 * pi * pi / 3 - 4 - b * b / 4;
        return pref * r2 * r2 * (1 + r2) - pow(1 - r2, 3);
    }
    if (id == "r3") {
        mp pref = 2 * pi * pi / 3 - 4 - b * b / 4;
        mp poly = r2 * r2 * r2 - 5 * r2 * r2 + 19 * r2 + 9;
        return pref * r2 * r2 * poly - pow(1 - r2, 5);
    }
    if (id == "r2" || id == "r2tight") {
        static const mp E = constant_E(HPReal(1), HPReal::exact(rat_from_string("1/20"))).v;
        mp lhs = log(1 / (1 - r2)) + (-r2 + 23 * r2 * r2 + 18 * r2 * r2 * r2) / pow(1 - r2, 3);
        // "r2" solves the published equation, whose threshold subtracts only a
        // quarter of the n = 1 term of the energy sum (5b^2/84). "r2tight"
        // subtracts the full n = 1 term, 5b^2/21: the first weight of the
        // energy sum is 1/(4 * 21/20) = 5/21 and |gamma_1|^2 = b^2/4. The two
        // agree at b = 0; see the curve tests for how they compare against r1.
        mp deduction = (id == "r2") ? 5 * b * b / 84 : 5 * b * b / 21;
        mp rhs = 20 / (4 * E - deduction);
        return lhs - rhs;
    }
    if (id == "r4") {
        static const mp B = constant_B(hp_sqrt(HPReal::exact(rat_from_string("4/3")))).v;
        mp pref = 4 * B - 3 * b * b / 7;
        mp poly = r2 * r2 * r2 + 2 * r2 * r2 + 11 * r2 + 4;
        return pref * r2 * r2 * poly - mp(3) / 4 * pow(1 - r2, 5);
    }
    throw std::invalid_argument("unknown radius equation id: " + id);
}

}  // namespace detail

struct RadiusSolution {
    mp root;
    mp residual;
    int iterations = 0;
};

// Unique root in (0,1) by bisection to 1e-13, with the sign change of the
// bracket verified before iterating. The tight tolerance keeps the residual
// at the returned root below 1e-9 even where the defining function is steep.
inline RadiusSolution solve_radius(const std::string& id, const mp& b) {
    if (b < 0 || b > 2) throw std::invalid_argument("solve_radius: need 0 <= b <= 2");
    mp lo("1e-6"), hi = 1 - mp("1e-9");
    mp flo = detail::radius_residual(id, b, lo);
    mp fhi = detail::radius_residual(id, b, hi);
    if (!(flo < 0 && fhi > 0))
        throw std::runtime_error("solve_radius: bracket does not straddle a sign change");
    RadiusSolution sol;
    const mp tol("1e-13");
    while (hi - lo > tol && sol.iterations < 60) {
        mp mid = (lo + hi) / 2;
        mp fm = detail::radius_residual(id, b, mid);
        if (fm < 0)
            lo = mid;
        else
            hi = mid;
        ++sol.iterations;
    }
    sol.root = (lo + hi) / 2;
    sol.residual = detail::radius_residual(id, b, sol.root);
    return sol;
}

struct RadiusCurveRow {
    mp b, r1, r2, r2_minus_r1, r3, r4, r4_minus_r3;
};

inline std::vector<RadiusCurveRow> radius_curve(const std::vector<mp>& b_grid) {
    std::vector<RadiusCurveRow> rows;
    for (const mp& b : b_grid) {
        RadiusCurveRow row;
        row.b = b;
        row.r1 = solve_radius("r1", b).root;
        row.r2 = solve_radius("r2", b).root;
        row.r3 = solve_radius("r3", b).root;
        row.r4 = solve_radius("r4", b).root;
        row.r2_minus_r1 = row.r2 - row.r1;
        row.r4_minus_r3 = row.r4 - row.r3;
        rows.push_back(row);
    }
    return rows;
}

// The cubic whose unique real root b0 bounds the N=3 necessary condition
// for the family n/(n^2+b): 3b^3 + 40b^2 + 317b - 440 = 0.
inline RatPoly b0_cubic() {
    return RatPoly({Rat(-440), Rat(317), Rat(40), Rat(3)});
}

struct B0Solution {
    mp root;
    int real_root_count = 0;  // over all of R, certified by Sturm counting
};

inline B0Solution solve_b0() {
    RatPoly cubic = b0_cubic();
    B0Solution sol;
    sol.real_root_count = SturmChain(cubic).count_all();
    mp lo(1), hi(2);
    const mp tol("1e-12");
    auto f = [&](const mp& x) {
        mp acc = 0;
        for (int i = cubic.degree(); i >= 0; --i) acc = acc * x + mp_from_rat(cubic.coeff(i));
        return acc;
    };
    if (!(f(lo) < 0 && f(hi) > 0)) throw std::runtime_error("solve_b0: bad bracket");
    while (hi - lo > tol) {
        mp mid = (lo + hi) / 2;
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    sol.root = (lo + hi) / 2;
    return sol;
}

}  // namespace milincert
