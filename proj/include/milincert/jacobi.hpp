#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "milincert/poly.hpp"
#include "milincert/rational.hpp"

namespace milincert {

// Exact Jacobi polynomial P_j^{(alpha,beta)} by the standard three-term
// recurrence. Certification only ever needs (2k, 0), but rational parameters
// with alpha, beta > -1 are accepted generally.
inline RatPoly jacobi_poly(long j, const Rat& alpha, const Rat& beta) {
    if (j < 0) throw std::invalid_argument("jacobi_poly: degree must be >= 0");
    if (!(alpha > -1) || !(beta > -1))
        throw std::invalid_argument("jacobi_poly: need alpha, beta > -1");

    static std::map<std::tuple<long, Rat, Rat>, RatPoly> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({j, alpha, beta});
        if (it != cache.end()) return it->second;
    }

    RatPoly pm2 = RatPoly::constant(Rat(1));
    if (j == 0) return pm2;
    // P_1 = (alpha - beta)/2 + (alpha + beta + 2) x / 2
    RatPoly pm1({(alpha - beta) / 2, (alpha + beta + 2) / 2});
    for (long n = 2; n <= j; ++n) {
        Rat nn(n);
        Rat ab = alpha + beta;
        Rat c0 = 2 * nn * (nn + ab) * (2 * nn + ab - 2);
        Rat c1 = (2 * nn + ab - 1) * (2 * nn + ab) * (2 * nn + ab - 2);
        Rat c2 = (2 * nn + ab - 1) * (alpha * alpha - beta * beta);
        Rat c3 = 2 * (nn + alpha - 1) * (nn + beta - 1) * (2 * nn + ab);
        RatPoly next =
            (Rat(1) / c0) * (RatPoly({c2, c1}) * pm1 - c3 * pm2);
        pm2 = std::move(pm1);
        pm1 = std::move(next);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(std::make_tuple(j, alpha, beta), pm1);
    return pm1;
}

// sum_{j=0}^{m} P_j^{(2k,0)}(x), the partial sums entering the closed form
// of the de Branges derivatives.
inline RatPoly jacobi_partial_sum(long m, long k) {
    if (m < 0) throw std::invalid_argument("jacobi_partial_sum: need m >= 0");
    if (k < 1) throw std::invalid_argument("jacobi_partial_sum: need k >= 1");
    RatPoly acc;
    for (long j = 0; j <= m; ++j) acc = acc + jacobi_poly(j, Rat(2 * k), Rat(0));
    return acc;
}

}  // namespace milincert
