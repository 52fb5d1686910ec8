#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "milincert/rational.hpp"

namespace milincert {

// Working precision ~250 bits; all certified error targets in this project
// are at or above 1e-30, leaving a wide safety margin.
using mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<75>>;

inline mp mp_from_rat(const Rat& q) {
    return mp(q.get_num().get_str()) / mp(q.get_den().get_str());
}

inline mp mp_pi() { return boost::math::constants::pi<mp>(); }

// A value together with a certified absolute error bound, propagated
// outward through every operation.
struct HPReal {
    mp v;
    mp e;

    HPReal() : v(0), e(0) {}
    HPReal(long n) : v(n), e(0) {}
    HPReal(const mp& value, const mp& err = mp(0)) : v(value), e(err) {}

    static HPReal exact(const Rat& q) {
        HPReal r(mp_from_rat(q));
        r.e = ulp(r.v);
        return r;
    }

    static HPReal parse(const std::string& s) {
        // Accepts exact rational "p/q" syntax or a decimal literal.
        if (s.find('/') != std::string::npos || s.find('.') == std::string::npos)
            return exact(rat_from_string(s));
        HPReal r{mp(s)};
        r.e = ulp(r.v);
        return r;
    }

    static mp ulp(const mp& x) {
        static const mp eps("1e-70");
        return (abs(x) + mp("1e-300")) * eps;
    }

    double to_double() const { return v.convert_to<double>(); }
};

inline HPReal operator+(const HPReal& a, const HPReal& b) {
    mp v = a.v + b.v;
    return {v, a.e + b.e + HPReal::ulp(v)};
}
inline HPReal operator-(const HPReal& a, const HPReal& b) {
    mp v = a.v - b.v;
    return {v, a.e + b.e + HPReal::ulp(v)};
}
inline HPReal operator-(const HPReal& a) { return {-a.v, a.e}; }
inline HPReal operator*(const HPReal& a, const HPReal& b) {
    mp v = a.v * b.v;
    return {v, a.e * abs(b.v) + b.e * abs(a.v) + a.e * b.e + HPReal::ulp(v)};
}
inline HPReal operator/(const HPReal& a, const HPReal& b) {
    mp denom = abs(b.v) - b.e;
    if (denom <= 0) throw std::domain_error("division by interval containing zero");
    mp v = a.v / b.v;
    return {v, (a.e + abs(v) * b.e) / denom + HPReal::ulp(v)};
}
inline bool operator<(const HPReal& a, const HPReal& b) { return a.v < b.v; }
inline bool operator>(const HPReal& a, const HPReal& b) { return a.v > b.v; }

inline HPReal hp_abs(const HPReal& a) { return {abs(a.v), a.e}; }

inline HPReal hp_exp(const HPReal& a) {
    mp v = exp(a.v);
    return {v, v * a.e * 2 + HPReal::ulp(v)};
}
inline HPReal hp_log(const HPReal& a) {
    mp lo = a.v - a.e;
    if (lo <= 0) throw std::domain_error("log of interval reaching zero");
    mp v = log(a.v);
    return {v, a.e / lo + HPReal::ulp(v)};
}
inline HPReal hp_sqrt(const HPReal& a) {
    mp v = sqrt(a.v);
    mp d = v > 0 ? mp(a.e / (2 * v)) : mp(sqrt(a.e));
    return {v, d + HPReal::ulp(v)};
}
inline HPReal hp_pi() { return {mp_pi(), HPReal::ulp(mp_pi())}; }

// coth x = (e^{2x}+1)/(e^{2x}-1), x != 0.
inline HPReal hp_coth(const HPReal& a) {
    HPReal e2 = hp_exp(a * HPReal(2));
    return (e2 + HPReal(1)) / (e2 - HPReal(1));
}

namespace detail {

// B_2, B_4, ..., B_40.
inline const std::vector<Rat>& bernoulli_even() {
    static const std::vector<Rat> b = {
        rat_from_string("1/6"),
        rat_from_string("-1/30"),
        rat_from_string("1/42"),
        rat_from_string("-1/30"),
        rat_from_string("5/66"),
        rat_from_string("-691/2730"),
        rat_from_string("7/6"),
        rat_from_string("-3617/510"),
        rat_from_string("43867/798"),
        rat_from_string("-174611/330"),
        rat_from_string("854513/138"),
        rat_from_string("-236364091/2730"),
        rat_from_string("8553103/6"),
        rat_from_string("-23749461029/870"),
        rat_from_string("8615841276005/14322"),
        rat_from_string("-7709321041217/510"),
        rat_from_string("2577687858367/6"),
        rat_from_string("-26315271553053477373/1919190"),
        rat_from_string("2929993913841559/6"),
        rat_from_string("-261082718496449122051/13530"),
    };
    return b;
}

constexpr double kPsiShift = 40.0;

}  // namespace detail

// psi(x) for x > 0 by upward recurrence psi(1+x) = psi(x) + 1/x to reach the
// asymptotic regime, then the Bernoulli-number expansion
//   psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n}).
inline HPReal digamma(const HPReal& x0) {
    if (!(x0.v > 0)) throw std::domain_error("digamma requires x > 0");
    HPReal x = x0, shift(0);
    while (x.v < detail::kPsiShift) {
        shift = shift - HPReal(1) / x;
        x = x + HPReal(1);
    }
    HPReal res = hp_log(x) - HPReal(1) / (HPReal(2) * x);
    HPReal x2 = x * x, pw = x2;
    const auto& B = detail::bernoulli_even();
    for (size_t n = 0; n < B.size(); ++n) {
        res = res - HPReal::exact(B[n]) / (HPReal(2 * static_cast<long>(n) + 2) * pw);
        pw = pw * x2;
    }
    // truncation bound: next Bernoulli terms, with a generous growth factor
    res.e += mp("1e9") * abs(mp_from_rat(B.back())) / pw.v;
    return res + shift;
}

// psi'(x) ~ 1/x + 1/(2x^2) + sum B_{2n} / x^{2n+1}; recurrence
// psi'(x) = psi'(x+1) + 1/x^2.
inline HPReal trigamma(const HPReal& x0) {
    if (!(x0.v > 0)) throw std::domain_error("trigamma requires x > 0");
    HPReal x = x0, shift(0);
    while (x.v < detail::kPsiShift) {
        shift = shift + HPReal(1) / (x * x);
        x = x + HPReal(1);
    }
    HPReal res = HPReal(1) / x + HPReal(1) / (HPReal(2) * x * x);
    HPReal x2 = x * x, pw = x2 * x;
    const auto& B = detail::bernoulli_even();
    for (size_t n = 0; n < B.size(); ++n) {
        res = res + HPReal::exact(B[n]) / pw;
        pw = pw * x2;
    }
    res.e += mp("1e9") * abs(mp_from_rat(B.back())) / pw.v;
    return res + shift;
}

// psi''(x) ~ -1/x^2 - 1/x^3 - sum B_{2n} (2n+1) / x^{2n+2}; recurrence
// psi''(x) = psi''(x+1) - 2/x^3.
inline HPReal tetragamma(const HPReal& x0) {
    if (!(x0.v > 0)) throw std::domain_error("polygamma(2) requires x > 0");
    HPReal x = x0, shift(0);
    while (x.v < detail::kPsiShift) {
        shift = shift - HPReal(2) / (x * x * x);
        x = x + HPReal(1);
    }
    HPReal res = -HPReal(1) / (x * x) - HPReal(1) / (x * x * x);
    HPReal x2 = x * x, pw = x2 * x2;
    const auto& B = detail::bernoulli_even();
    for (size_t n = 0; n < B.size(); ++n) {
        res = res - HPReal(2 * static_cast<long>(n) + 3) * HPReal::exact(B[n]) / pw;
        pw = pw * x2;
    }
    res.e += mp("1e11") * abs(mp_from_rat(B.back())) / pw.v;
    return res + shift;
}

// Riemann zeta for s > 1 by Euler-Maclaurin:
//   zeta(s) = sum_{n<M} n^-s + M^{1-s}/(s-1) + M^-s/2
//           + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * M^{-s-2k+1}.
inline HPReal zeta(const HPReal& s) {
    if (!(s.v > 1)) throw std::domain_error("zeta requires s > 1");
    const long M = 40;
    HPReal sum(0);
    for (long n = 1; n < M; ++n) sum = sum + hp_exp(-s * hp_log(HPReal(n)));
    HPReal Ms = hp_exp(-s * hp_log(HPReal(M)));  // M^-s
    sum = sum + HPReal(M) * Ms / (s - HPReal(1)) + Ms / HPReal(2);
    const auto& B = detail::bernoulli_even();
    HPReal rising(1);  // s(s+1)...(s+2k-2)
    Rat fact(1);       // (2k)!
    HPReal Mpow = Ms / HPReal(M);  // M^{-s-2k+1} for k=1
    HPReal term(0);
    for (size_t k = 1; k <= 15; ++k) {
        rising = (k == 1) ? s : rising * (s + HPReal(2 * static_cast<long>(k) - 3)) *
                                    (s + HPReal(2 * static_cast<long>(k) - 2));
        fact *= Rat(static_cast<long>(2 * k - 1)) * Rat(static_cast<long>(2 * k));
        term = HPReal::exact(B[k - 1] / fact) * rising * Mpow;
        sum = sum + term;
        Mpow = Mpow / HPReal(M * M);
    }
    sum.e += abs(term.v);  // truncation bound: magnitude of the last term
    return sum;
}

// ---------------------------------------------------------------------------
// Sharp bound constants. Near-equal arguments switch to a midpoint branch at
// |difference| < 1e-8 to avoid catastrophic cancellation in divided
// differences of psi; the extra error is folded into the certified bound.
// ---------------------------------------------------------------------------

namespace detail {
inline const mp& branch_eps() {
    static const mp e("1e-8");
    return e;
}
}  // namespace detail

// A_alpha = sum 1/(n(n+alpha)) = (psi(1+alpha) - psi(1)) / alpha, A_0 = pi^2/6.
inline HPReal constant_A(const HPReal& alpha) {
    if (!(alpha.v > -1)) throw std::domain_error("A requires alpha > -1");
    if (abs(alpha.v) < detail::branch_eps()) {
        HPReal r = trigamma(HPReal(1) + alpha / HPReal(2));
        r.e += abs(alpha.v) * abs(alpha.v);  // midpoint-rule remainder bound
        return r;
    }
    return (digamma(HPReal(1) + alpha) - digamma(HPReal(1))) / alpha;
}

// B_alpha = sum 1/(n^2+alpha^2) = (pi alpha coth(pi alpha) - 1) / (2 alpha^2).
inline HPReal constant_B(const HPReal& alpha) {
    if (!(alpha.v > 0)) throw std::domain_error("B requires alpha > 0");
    HPReal pa = hp_pi() * alpha;
    return (pa * hp_coth(pa) - HPReal(1)) / (HPReal(2) * alpha * alpha);
}

// C_{alpha,beta} = sum 1/((n+alpha)(n+beta)).
inline HPReal constant_C(const HPReal& alpha, const HPReal& beta) {
    if (!(alpha.v > -1) || !(beta.v > -1)) throw std::domain_error("C requires alpha, beta > -1");
    if (abs(beta.v - alpha.v) < detail::branch_eps()) {
        HPReal r = trigamma(HPReal(1) + (alpha + beta) / HPReal(2));
        r.e += abs(beta.v - alpha.v) * abs(beta.v - alpha.v);
        return r;
    }
    return (digamma(HPReal(1) + beta) - digamma(HPReal(1) + alpha)) / (beta - alpha);
}

// D_{alpha,beta} = sum 1/(n(n+alpha)(n+beta)); D_{0,0} = zeta(3).
inline HPReal constant_D(const HPReal& alpha, const HPReal& beta) {
    if (!(alpha.v > -1) || !(beta.v > -1)) throw std::domain_error("D requires alpha, beta > -1");
    const mp& eps = detail::branch_eps();
    bool a0 = abs(alpha.v) < eps, b0 = abs(beta.v) < eps;
    if (a0 && b0) return zeta(HPReal(3));
    if (a0) return (zeta(HPReal(2)) - constant_A(beta)) / beta;
    if (b0) return (zeta(HPReal(2)) - constant_A(alpha)) / alpha;
    if (abs(beta.v - alpha.v) < eps) {
        HPReal m = (alpha + beta) / HPReal(2);
        HPReal r = (digamma(HPReal(1) + m) - digamma(HPReal(1))) / (m * m) - trigamma(HPReal(1) + m) / m;
        r.e += abs(beta.v - alpha.v);
        return r;
    }
    return (constant_A(alpha) - constant_A(beta)) / (beta - alpha);
}

// E_{alpha,beta} = sum n/((n+alpha)^2(n+beta))
//               = (beta C_{alpha,beta} - alpha C_{alpha,alpha}) / (beta - alpha).
inline HPReal constant_E(const HPReal& alpha, const HPReal& beta) {
    const mp& eps = detail::branch_eps();
    if (abs(alpha.v) < eps || abs(beta.v) < eps)
        throw std::domain_error("E requires nonzero alpha, beta");
    if (abs(beta.v - alpha.v) < eps) {
        HPReal m = (alpha + beta) / HPReal(2);
        HPReal r = trigamma(HPReal(1) + m) + m * tetragamma(HPReal(1) + m) / HPReal(2);
        r.e += abs(beta.v - alpha.v);
        return r;
    }
    return (beta * constant_C(alpha, beta) - alpha * constant_C(alpha, alpha)) / (beta - alpha);
}

// The two extra bounds: zeta(3) - 1 and (18 - pi^2 - 6 zeta(3)) / 6.
inline std::pair<HPReal, HPReal> corollary2_constants() {
    HPReal z3 = zeta(HPReal(3));
    HPReal pi = hp_pi();
    HPReal second = (HPReal(18) - pi * pi - HPReal(6) * z3) / HPReal(6);
    return {z3 - HPReal(1), second};
}

}  // namespace milincert
