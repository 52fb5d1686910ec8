#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "milincert/hpreal.hpp"
#include "milincert/rational.hpp"

namespace milincert {

// Weight-sequence families p_n (n >= 1). Parameter domains are enforced at
// construction so the evaluators stay total.

struct Reciprocal {  // p_n = 1/(n+alpha)
    Rat alpha;
    explicit Reciprocal(Rat a) : alpha(std::move(a)) {
        if (!(alpha > -1)) throw std::invalid_argument("Reciprocal: need alpha > -1");
    }
};

struct RatQuadNum {  // p_n = n/(n^2+an+b)
    Rat a, b;
    RatQuadNum(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
        // n^2+an+b = (n-1)(n+1+a)+1+a+b stays positive for n >= 1
        if (!(a + b + 1 > 0) || !(a + 3 >= 0))
            throw std::invalid_argument("RatQuadNum: need 1+a+b > 0 and a+3 >= 0");
    }
};

struct TwoFactorNum {  // p_n = n/((n+alpha)(n+beta))
    Rat alpha, beta;
    TwoFactorNum(Rat a, Rat b) : alpha(std::move(a)), beta(std::move(b)) {
        if (!(alpha > -1) || !(beta > -1))
            throw std::invalid_argument("TwoFactorNum: need alpha, beta > -1");
    }
};

struct InvQuad {  // p_n = 1/(n^2+an+b)
    Rat a, b;
    InvQuad(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
        if (!(a + b + 1 > 0) || !(a + 3 >= 0))
            throw std::invalid_argument("InvQuad: need 1+a+b > 0 and a+3 >= 0");
    }
};

struct InvTwoFactor {  // p_n = 1/((n+alpha)(n+beta))
    Rat alpha, beta;
    InvTwoFactor(Rat a, Rat b) : alpha(std::move(a)), beta(std::move(b)) {
        if (!(alpha > -1) || !(beta > -1))
            throw std::invalid_argument("InvTwoFactor: need alpha, beta > -1");
    }
};

struct SquaredFactor {  // p_n = n^2/((n+alpha)^2(n+beta))
    Rat alpha, beta;
    SquaredFactor(Rat a, Rat b) : alpha(std::move(a)), beta(std::move(b)) {
        if (!(alpha > -1) || !(beta > -1))
            throw std::invalid_argument("SquaredFactor: need alpha, beta > -1");
    }
};

struct GeomShift {  // p_n = (n+alpha) r^n
    Rat alpha, r;
    GeomShift(Rat a, Rat r_) : alpha(std::move(a)), r(std::move(r_)) {
        if (!(alpha > -1)) throw std::invalid_argument("GeomShift: need alpha > -1");
        if (!(r > 0 && r < 1)) throw std::invalid_argument("GeomShift: need 0 < r < 1");
    }
};

struct Geometric {  // p_n = r^{2n}
    Rat r;
    explicit Geometric(Rat r_) : r(std::move(r_)) {
        if (!(r > 0 && r < 1)) throw std::invalid_argument("Geometric: need 0 < r < 1");
    }
};

struct PowerLaw {  // p_n = n^{-alpha}, float-only family
    double alpha;
    explicit PowerLaw(double a) : alpha(a) {
        if (!(a > 0)) throw std::invalid_argument("PowerLaw: need alpha > 0");
    }
};

struct Custom {
    std::function<Rat(long)> eval;
    std::string label = "custom";
};

using WeightFamily = std::variant<Reciprocal, RatQuadNum, TwoFactorNum, InvQuad, InvTwoFactor,
                                  SquaredFactor, GeomShift, Geometric, PowerLaw, Custom>;

inline bool rational_valued(const WeightFamily& f) {
    return !std::holds_alternative<PowerLaw>(f);
}

// Exact p_n for the rational-valued families.
inline Rat weight_value(const WeightFamily& f, long n) {
    if (n < 1) throw std::invalid_argument("weight index must be >= 1");
    Rat N(n);
    return std::visit(
        [&](const auto& fam) -> Rat {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Reciprocal>) {
                return Rat(1) / (N + fam.alpha);
            } else if constexpr (std::is_same_v<T, RatQuadNum>) {
                return N / (N * N + fam.a * N + fam.b);
            } else if constexpr (std::is_same_v<T, TwoFactorNum>) {
                return N / ((N + fam.alpha) * (N + fam.beta));
            } else if constexpr (std::is_same_v<T, InvQuad>) {
                return Rat(1) / (N * N + fam.a * N + fam.b);
            } else if constexpr (std::is_same_v<T, InvTwoFactor>) {
                return Rat(1) / ((N + fam.alpha) * (N + fam.beta));
            } else if constexpr (std::is_same_v<T, SquaredFactor>) {
                Rat s = N + fam.alpha;
                return N * N / (s * s * (N + fam.beta));
            } else if constexpr (std::is_same_v<T, GeomShift>) {
                return (N + fam.alpha) * rat_pow(fam.r, static_cast<unsigned long>(n));
            } else if constexpr (std::is_same_v<T, Geometric>) {
                return rat_pow(fam.r, static_cast<unsigned long>(2 * n));
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                throw std::domain_error("PowerLaw family is float-only");
            } else {
                return fam.eval(n);
            }
        },
        f);
}

inline double weight_value_f(const WeightFamily& f, long n) {
    if (const auto* p = std::get_if<PowerLaw>(&f))
        return std::pow(static_cast<double>(n), -p->alpha);
    return weight_value(f, n).get_d();
}

inline std::string family_label(const WeightFamily& f) {
    auto s = [](const Rat& q) { return rat_to_string(q); };
    return std::visit(
        [&](const auto& fam) -> std::string {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Reciprocal>)
                return "reciprocal:alpha=" + s(fam.alpha);
            else if constexpr (std::is_same_v<T, RatQuadNum>)
                return "ratquadnum:a=" + s(fam.a) + ",b=" + s(fam.b);
            else if constexpr (std::is_same_v<T, TwoFactorNum>)
                return "twofactornum:alpha=" + s(fam.alpha) + ",beta=" + s(fam.beta);
            else if constexpr (std::is_same_v<T, InvQuad>)
                return "invquad:a=" + s(fam.a) + ",b=" + s(fam.b);
            else if constexpr (std::is_same_v<T, InvTwoFactor>)
                return "invtwofactor:alpha=" + s(fam.alpha) + ",beta=" + s(fam.beta);
            else if constexpr (std::is_same_v<T, SquaredFactor>)
                return "squaredfactor:alpha=" + s(fam.alpha) + ",beta=" + s(fam.beta);
            else if constexpr (std::is_same_v<T, GeomShift>)
                return "geomshift:alpha=" + s(fam.alpha) + ",r=" + s(fam.r);
            else if constexpr (std::is_same_v<T, Geometric>)
                return "geometric:r=" + s(fam.r);
            else if constexpr (std::is_same_v<T, PowerLaw>)
                return "powerlaw:alpha=" + std::to_string(fam.alpha);
            else
                return fam.label;
        },
        f);
}

// Parses the compact CLI form, e.g. "ratquadnum:a=0,b=4/3".
WeightFamily parse_family(const std::string& spec);

// Derived sequences q_n = p_n - p_{n+1}, lambda_n = q_n - q_{n+1} for a fixed
// cutoff N. Values are cached eagerly; afterwards everything is read-only.
class DerivedSeq {
  public:
    DerivedSeq(WeightFamily fam, long N) : fam_(std::move(fam)), N_(N) {
        if (N < 1) throw std::invalid_argument("DerivedSeq: need N >= 1");
        if (!rational_valued(fam_))
            throw std::domain_error("DerivedSeq requires a rational-valued family");
        p_.reserve(static_cast<size_t>(N) + 3);
        for (long n = 1; n <= N + 3; ++n) p_.push_back(weight_value(fam_, n));
    }

    const WeightFamily& family() const { return fam_; }
    long cutoff() const { return N_; }

    Rat p(long n) const {
        if (n < 1) throw std::invalid_argument("p: need n >= 1");
        if (n <= static_cast<long>(p_.size())) return p_[static_cast<size_t>(n - 1)];
        return weight_value(fam_, n);
    }

    Rat q(long n) const { return p(n) - p(n + 1); }

    Rat lambda(long n) const { return p(n) - 2 * p(n + 1) + p(n + 2); }

    // mu_k = sum_{n=k}^{N} lambda_n (n-k+1), the initial value tau_k(0).
    Rat mu(long k) const {
        check_k(k);
        Rat acc(0);
        for (long n = k; n <= N_; ++n) acc += lambda(n) * Rat(n - k + 1);
        return acc;
    }

    // nu_m = q_m - q_{N+1} = sum_{n=m}^{N} lambda_n.
    Rat nu(long m) const {
        check_k(m);
        return q(m) - q(N_ + 1);
    }

    // v_k = lambda_k + lambda_{k+2} + ... (last index N or N-1, same parity as k).
    Rat v(long k) const {
        check_k(k);
        Rat acc(0);
        for (long n = k; n <= N_; n += 2) acc += lambda(n);
        return acc;
    }

  private:
    void check_k(long k) const {
        if (k < 1 || k > N_) throw std::invalid_argument("index out of range [1, N]");
    }

    WeightFamily fam_;
    long N_;
    std::vector<Rat> p_;
};

// Lemma-style convexity predicate, evaluated exactly on the printed parameter
// conditions. nullopt = indeterminate (GeomShift's transcendental comparison
// landing within 1e-20 of the boundary).
inline std::optional<bool> convexity_condition(const WeightFamily& f) {
    auto quad_cond = [](const Rat& a, const Rat& b) {
        return a + b + 1 > 0 && a + 3 >= 0 && (6 + a) * b <= 6;
    };
    return std::visit(
        [&](const auto& fam) -> std::optional<bool> {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Reciprocal>) {
                return fam.alpha > -1;
            } else if constexpr (std::is_same_v<T, RatQuadNum>) {
                return quad_cond(fam.a, fam.b);
            } else if constexpr (std::is_same_v<T, TwoFactorNum>) {
                return fam.alpha > -1 && fam.beta > -1 &&
                       quad_cond(fam.alpha + fam.beta, fam.alpha * fam.beta);
            } else if constexpr (std::is_same_v<T, InvQuad>) {
                return fam.a + fam.b + 1 > 0 && fam.a + 2 >= 0 &&
                       fam.b <= fam.a * fam.a + 6 * fam.a + 11;
            } else if constexpr (std::is_same_v<T, InvTwoFactor>) {
                return fam.alpha > -1 && fam.beta > -1;
            } else if constexpr (std::is_same_v<T, SquaredFactor>) {
                return fam.alpha > -1 && fam.beta > -1 &&
                       rat_abs(fam.alpha) *
                               (1 + 3 * rat_abs(fam.beta) + fam.beta * fam.beta) <=
                           rat_from_string("1/2");
            } else if constexpr (std::is_same_v<T, GeomShift>) {
                // 2 <= (alpha+1) log(1/r), transcendental side in HPReal
                HPReal lhs(mp(2));
                HPReal rhs = (HPReal::exact(fam.alpha) + HPReal(1)) *
                             hp_log(HPReal(1) / HPReal::exact(fam.r));
                mp gap = rhs.v - lhs.v;
                mp band = rhs.e + mp("1e-20");
                if (abs(gap) <= band) return std::nullopt;
                return gap > 0;
            } else if constexpr (std::is_same_v<T, Geometric>) {
                return true;  // r^{2n} is convex for 0 < r < 1
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return fam.alpha > 0;
            } else {
                throw std::domain_error("no symbolic condition available for custom family");
            }
        },
        f);
}

// Smallest stored analytic threshold N0 with lambda_n >= 0 for all n >= N0,
// cross-checked exactly on a finite window. nullopt = no certificate known.
inline std::optional<long> tail_certificate(const WeightFamily& f, long check_window = 64) {
    std::optional<long> n0;
    auto conv = [&]() -> std::optional<bool> {
        try {
            return convexity_condition(f);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    };
    // phi(x) = x/(x^2+ax+b) has phi''(x) = 2(x^3-3bx-ab)/(x^2+ax+b)^3; the
    // numerator cubic is increasing for x >= sqrt(max(b,0)), so the smallest
    // integer past that point where it is >= 0 is a convexity threshold.
    auto quad_num_threshold = [](const Rat& a, const Rat& b) -> std::optional<long> {
        for (long n = 1; n <= 1 << 20; ++n) {
            Rat x(n);
            if (x * x >= b && x * x * x - 3 * b * x - a * b >= 0) return n;
        }
        return std::nullopt;
    };
    // phi(x) = 1/(x^2+ax+b): phi'' numerator 3x^2+3ax+a^2-b, increasing for
    // x >= -a/2.
    auto inv_quad_threshold = [](const Rat& a, const Rat& b) -> std::optional<long> {
        for (long n = 1; n <= 1 << 20; ++n) {
            Rat x(n);
            if (2 * x >= -a && 3 * x * x + 3 * a * x + a * a - b >= 0) return n;
        }
        return std::nullopt;
    };
    if (conv() == std::optional<bool>(true)) {
        n0 = 1;
    } else if (const auto* rq = std::get_if<RatQuadNum>(&f)) {
        n0 = quad_num_threshold(rq->a, rq->b);
    } else if (const auto* tf = std::get_if<TwoFactorNum>(&f)) {
        n0 = quad_num_threshold(tf->alpha + tf->beta, tf->alpha * tf->beta);
    } else if (const auto* iq = std::get_if<InvQuad>(&f)) {
        n0 = inv_quad_threshold(iq->a, iq->b);
    } else if (const auto* itf = std::get_if<InvTwoFactor>(&f)) {
        n0 = inv_quad_threshold(itf->alpha + itf->beta, itf->alpha * itf->beta);
    } else if (const auto* sf = std::get_if<SquaredFactor>(&f);
               sf && sf->alpha == 1 && sf->beta == rat_from_string("1/20")) {
        // second-derivative analysis of x^2/((x+1)^2(x+1/20)): positive for x >= 3
        n0 = 3;
    }
    if (!n0) return std::nullopt;
    for (long n = *n0; n < *n0 + check_window; ++n) {
        Rat lam = weight_value(f, n) - 2 * weight_value(f, n + 1) + weight_value(f, n + 2);
        if (lam < 0)
            throw std::logic_error("tail certificate contradicted by exact lambda_" +
                                   std::to_string(n));
    }
    return n0;
}

namespace detail {

inline Rat parse_param(const std::string& kv, const std::string& key) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || kv.substr(0, eq) != key)
        throw std::invalid_argument("expected parameter '" + key + "' in '" + kv + "'");
    return rat_from_string(kv.substr(eq + 1));
}

}  // namespace detail

inline WeightFamily parse_family(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<std::string> parts;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            parts.push_back(rest.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto need = [&](size_t n) {
        if (parts.size() != n)
            throw std::invalid_argument("family '" + name + "' takes " + std::to_string(n) +
                                        " parameter(s)");
    };
    using detail::parse_param;
    if (name == "reciprocal") {
        need(1);
        return Reciprocal(parse_param(parts[0], "alpha"));
    } else if (name == "ratquadnum") {
        need(2);
        return RatQuadNum(parse_param(parts[0], "a"), parse_param(parts[1], "b"));
    } else if (name == "twofactornum") {
        need(2);
        return TwoFactorNum(parse_param(parts[0], "alpha"), parse_param(parts[1], "beta"));
    } else if (name == "invquad") {
        need(2);
        return InvQuad(parse_param(parts[0], "a"), parse_param(parts[1], "b"));
    } else if (name == "invtwofactor") {
        need(2);
        return InvTwoFactor(parse_param(parts[0], "alpha"), parse_param(parts[1], "beta"));
    } else if (name == "squaredfactor") {
        need(2);
        return SquaredFactor(parse_param(parts[0], "alpha"), parse_param(parts[1], "beta"));
    } else if (name == "geomshift") {
        need(2);
        return GeomShift(parse_param(parts[0], "alpha"), parse_param(parts[1], "r"));
    } else if (name == "geometric") {
        need(1);
        return Geometric(parse_param(parts[0], "r"));
    } else if (name == "powerlaw") {
        need(1);
        return PowerLaw(parse_param(parts[0], "alpha").get_d());
    }
    throw std::invalid_argument("unknown weight family: '" + name + "'");
}

}  // namespace milincert
