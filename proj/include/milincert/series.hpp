#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "milincert/hpreal.hpp"
#include "milincert/rational.hpp"
#include "milincert/weights.hpp"

namespace milincert {

// Exact complex number over the rationals; the substrate of the identity
// checks, which must be exact to be convincing.
struct RatComplex {
    Rat re, im;

    RatComplex() : re(0), im(0) {}
    RatComplex(Rat r) : re(std::move(r)), im(0) {}
    RatComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    Rat norm2() const { return re * re + im * im; }

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator-(const RatComplex& a, const RatComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RatComplex operator-(const RatComplex& a) { return {-a.re, -a.im}; }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatComplex operator/(const RatComplex& a, const RatComplex& b) {
        Rat n = b.norm2();
        if (n == 0) throw std::domain_error("complex division by zero");
        RatComplex c = a * RatComplex(b.re, -b.im);
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const RatComplex& a, const RatComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Truncated formal power series with exact complex-rational coefficients.
// Binary operations truncate to the smaller order; no operation ever claims
// accuracy beyond its truncation order.
class PowerSeries {
  public:
    PowerSeries() = default;
    explicit PowerSeries(std::vector<RatComplex> c) : c_(std::move(c)) {}

    static PowerSeries identity(int order) {  // f(z) = z
        std::vector<RatComplex> c(static_cast<size_t>(order) + 1);
        if (order >= 1) c[1] = RatComplex(Rat(1));
        return PowerSeries(std::move(c));
    }

    // z/(1-z)^2 = sum n z^n
    static PowerSeries koebe(int order) {
        std::vector<RatComplex> c(static_cast<size_t>(order) + 1);
        for (int n = 1; n <= order; ++n) c[static_cast<size_t>(n)] = RatComplex(Rat(n));
        return PowerSeries(std::move(c));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const RatComplex& coeff(int i) const {
        static const RatComplex z;
        if (i < 0 || i > order()) return z;
        return c_[static_cast<size_t>(i)];
    }

    RatComplex& at(int i) { return c_.at(static_cast<size_t>(i)); }

    PowerSeries truncated(int m) const {
        std::vector<RatComplex> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), m + 1));
        c.resize(static_cast<size_t>(m) + 1);
        return PowerSeries(std::move(c));
    }

    bool normalized() const {
        return order() >= 1 && coeff(0).is_zero() && coeff(1) == RatComplex(Rat(1));
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        int m = std::min(a.order(), b.order());
        std::vector<RatComplex> c(static_cast<size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) c[static_cast<size_t>(i)] = a.coeff(i) + b.coeff(i);
        return PowerSeries(std::move(c));
    }

    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        int m = std::min(a.order(), b.order());
        std::vector<RatComplex> c(static_cast<size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) c[static_cast<size_t>(i)] = a.coeff(i) - b.coeff(i);
        return PowerSeries(std::move(c));
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        int m = std::min(a.order(), b.order());
        std::vector<RatComplex> c(static_cast<size_t>(m) + 1);
        for (int i = 0; i <= m; ++i)
            for (int j = 0; i + j <= m; ++j)
                c[static_cast<size_t>(i + j)] = c[static_cast<size_t>(i + j)] + a.coeff(i) * b.coeff(j);
        return PowerSeries(std::move(c));
    }

    friend PowerSeries operator*(const RatComplex& s, const PowerSeries& a) {
        std::vector<RatComplex> c(a.c_);
        for (auto& x : c) x = s * x;
        return PowerSeries(std::move(c));
    }

    PowerSeries derivative() const {
        if (c_.size() <= 1) return PowerSeries({RatComplex()});
        std::vector<RatComplex> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = RatComplex(Rat(static_cast<long>(i))) * c_[i];
        return PowerSeries(std::move(c));
    }

    // term-by-term primitive with zero constant term; gains one order
    PowerSeries integral() const {
        std::vector<RatComplex> c(c_.size() + 1);
        for (size_t i = 0; i < c_.size(); ++i) {
            Rat d(static_cast<long>(i + 1));
            c[i + 1] = RatComplex(c_[i].re / d, c_[i].im / d);
        }
        return PowerSeries(std::move(c));
    }

    // series with coefficients shifted down one degree (division by z);
    // requires zero constant term
    PowerSeries shift_down() const {
        if (!coeff(0).is_zero()) throw std::domain_error("shift_down: nonzero constant term");
        std::vector<RatComplex> c(c_.begin() + 1, c_.end());
        return PowerSeries(std::move(c));
    }

    PowerSeries shift_up() const {
        std::vector<RatComplex> c(c_.size() + 1);
        std::copy(c_.begin(), c_.end(), c.begin() + 1);
        return PowerSeries(std::move(c));
    }

    // multiplicative inverse; requires nonzero constant term
    PowerSeries reciprocal() const {
        if (coeff(0).is_zero()) throw std::domain_error("reciprocal: zero constant term");
        int m = order();
        std::vector<RatComplex> r(static_cast<size_t>(m) + 1);
        RatComplex inv0 = RatComplex(Rat(1)) / coeff(0);
        r[0] = inv0;
        for (int n = 1; n <= m; ++n) {
            RatComplex acc;
            for (int k = 1; k <= n; ++k) acc = acc + coeff(k) * r[static_cast<size_t>(n - k)];
            r[static_cast<size_t>(n)] = -(inv0 * acc);
        }
        return PowerSeries(std::move(r));
    }

    // log of a series with constant term 1, by the derivative recurrence
    // L_n = g_n - (1/n) sum_{k<n} k L_k g_{n-k}
    PowerSeries log() const {
        if (!(coeff(0) == RatComplex(Rat(1))))
            throw std::domain_error("log: constant term must be 1");
        int m = order();
        std::vector<RatComplex> L(static_cast<size_t>(m) + 1);
        for (int n = 1; n <= m; ++n) {
            RatComplex acc;
            for (int k = 1; k < n; ++k)
                acc = acc + RatComplex(Rat(k)) * L[static_cast<size_t>(k)] * coeff(n - k);
            RatComplex t = coeff(n) - RatComplex(Rat(1) / Rat(n)) * acc;
            L[static_cast<size_t>(n)] = t;
        }
        return PowerSeries(std::move(L));
    }

    // exp of a series with zero constant term: n E_n = sum k h_k E_{n-k}
    PowerSeries exp() const {
        if (!coeff(0).is_zero()) throw std::domain_error("exp: constant term must be 0");
        int m = order();
        std::vector<RatComplex> E(static_cast<size_t>(m) + 1);
        E[0] = RatComplex(Rat(1));
        for (int n = 1; n <= m; ++n) {
            RatComplex acc;
            for (int k = 1; k <= n; ++k)
                acc = acc + RatComplex(Rat(k)) * coeff(k) * E[static_cast<size_t>(n - k)];
            E[static_cast<size_t>(n)] = RatComplex(Rat(1) / Rat(n)) * acc;
        }
        return PowerSeries(std::move(E));
    }

    // JSON array of [re, im] rational-string pairs
    nlohmann::json to_json() const {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : c_) a.push_back({rat_to_string(x.re), rat_to_string(x.im)});
        return a;
    }

    static PowerSeries from_json(const nlohmann::json& a) {
        std::vector<RatComplex> c;
        for (const auto& e : a)
            c.emplace_back(rat_from_string(e[0].get<std::string>()),
                           rat_from_string(e[1].get<std::string>()));
        return PowerSeries(std::move(c));
    }

  private:
    std::vector<RatComplex> c_;
};

// gamma_1..gamma_M, defined by log(f(z)/z) = 2 sum gamma_n z^n.
struct LogCoeffs {
    std::vector<RatComplex> g;  // g[n-1] = gamma_n

    int order() const { return static_cast<int>(g.size()); }
    const RatComplex& gamma(int n) const {
        if (n < 1 || n > order()) throw std::invalid_argument("gamma index out of range");
        return g[static_cast<size_t>(n - 1)];
    }
};

inline LogCoeffs log_coefficients(const PowerSeries& f) {
    if (!f.normalized())
        throw std::domain_error("log_coefficients: series must be normalized (c0=0, c1=1)");
    PowerSeries L = f.shift_down().log();
    LogCoeffs out;
    Rat half = rat_from_string("1/2");
    for (int n = 1; n <= L.order(); ++n)
        out.g.push_back(RatComplex(half) * L.coeff(n));
    return out;
}

struct LMCheck {
    Rat lhs, rhs, slack;
};

// sum_{k=1}^n k(n-k+1)|gamma_k|^2 vs sum (n-k+1)/k, exact.
inline LMCheck lebedev_milin_check(const LogCoeffs& gamma, int n) {
    if (n < 1 || n > gamma.order())
        throw std::invalid_argument("lebedev_milin_check: n out of range");
    Rat lhs(0), rhs(0);
    for (int k = 1; k <= n; ++k) {
        Rat w(n - k + 1);
        lhs += Rat(k) * w * gamma.gamma(k).norm2();
        rhs += w / Rat(k);
    }
    return {lhs, rhs, rhs - lhs};
}

struct WeightedCheck {
    Rat lhs_partial, rhs_partial;
    std::optional<double> rhs_infinite;
};

// Partial sums of the weighted inequality plus, where a closed form exists,
// the infinite right-hand side.
inline WeightedCheck weighted_check(const WeightFamily& fam, const LogCoeffs& gamma, int M) {
    if (M > gamma.order()) throw std::invalid_argument("weighted_check: M beyond gamma order");
    WeightedCheck out{Rat(0), Rat(0), std::nullopt};
    for (int n = 1; n <= M; ++n) {
        Rat p = weight_value(fam, n);
        out.lhs_partial += Rat(n) * p * gamma.gamma(n).norm2();
        out.rhs_partial += p / Rat(n);
    }
    // closed-form sum of p_n/n per family
    if (const auto* r = std::get_if<Reciprocal>(&fam)) {
        out.rhs_infinite = constant_A(HPReal::exact(r->alpha)).to_double();
    } else if (const auto* t = std::get_if<TwoFactorNum>(&fam)) {
        out.rhs_infinite =
            constant_C(HPReal::exact(t->alpha), HPReal::exact(t->beta)).to_double();
    } else if (const auto* rq = std::get_if<RatQuadNum>(&fam); rq && rq->a == 0 && rq->b > 0) {
        out.rhs_infinite = constant_B(hp_sqrt(HPReal::exact(rq->b))).to_double();
    } else if (const auto* sf = std::get_if<SquaredFactor>(&fam)) {
        out.rhs_infinite =
            constant_E(HPReal::exact(sf->alpha), HPReal::exact(sf->beta)).to_double();
    } else if (const auto* it = std::get_if<InvTwoFactor>(&fam)) {
        out.rhs_infinite =
            constant_D(HPReal::exact(it->alpha), HPReal::exact(it->beta)).to_double();
    } else if (const auto* g = std::get_if<Geometric>(&fam)) {
        double r2 = g->r.get_d() * g->r.get_d();
        out.rhs_infinite = std::log(1.0 / (1.0 - r2));
    }
    return out;
}

// h_f(z) = z + 2 sum_{n>=2} ((n-1)/n) gamma_{n-1} z^n, from the logarithmic
// coefficients.
inline PowerSeries transform_hf(const PowerSeries& f) {
    if (!f.normalized()) throw std::domain_error("transform_hf: series must be normalized");
    LogCoeffs g = log_coefficients(f);
    int M = f.order();
    std::vector<RatComplex> c(static_cast<size_t>(M) + 1);
    if (M >= 1) c[1] = RatComplex(Rat(1));
    for (int n = 2; n <= M; ++n)
        c[static_cast<size_t>(n)] =
            RatComplex(2 * Rat(n - 1) / Rat(n)) * g.gamma(n - 1);
    return PowerSeries(std::move(c));
}

// Same transform by direct term-by-term integration of z f'/f.
inline PowerSeries transform_hf_integral(const PowerSeries& f) {
    if (!f.normalized()) throw std::domain_error("transform_hf: series must be normalized");
    PowerSeries g = f.shift_down();                       // order M-1
    PowerSeries G = g.derivative() * g.reciprocal();      // g'/g, order M-2
    // h = int (1 + t G(t)) dt = z + shift-up-twice-and-integrate of G
    PowerSeries tG = G.shift_up();                        // order M-1
    PowerSeries h = tG.integral();                        // order M
    h.at(1) = RatComplex(Rat(1));
    return h;
}

// U_F = F'(z) (z/F(z))^2 - 1 for a normalized series F.
inline PowerSeries u_operator(const PowerSeries& F) {
    if (!F.normalized()) throw std::domain_error("u_operator: series must be normalized");
    PowerSeries g = F.shift_down();  // F/z, constant term 1, order M-1
    // F' = g + z g' has coefficients (n+1) g_n
    int m = g.order();
    std::vector<RatComplex> a(static_cast<size_t>(m) + 1);
    for (int n = 0; n <= m; ++n) a[static_cast<size_t>(n)] = RatComplex(Rat(n + 1)) * g.coeff(n);
    PowerSeries Fprime(std::move(a));
    PowerSeries rg = g.reciprocal();
    PowerSeries U = Fprime * rg * rg;
    U.at(0) = RatComplex();  // subtract 1
    return U;
}

// Numeric validation of the closed-form sums used in the radius proofs.
struct ClosedFormCheck {
    bool ok = false;
    double max_deviation = 0;
};

inline ClosedFormCheck series_closed_form_check(const std::string& id, double alpha = 0.0) {
    const double radii[] = {0.1, 0.3, 0.5, 0.7};
    ClosedFormCheck out;
    out.ok = true;
    for (double r : radii) {
        double r2 = r * r;
        double numeric = 0, closed = 0;
        if (id == "r4_comparison_sum") {
            // sum_{n>=2} (n-1)^2 (n^2+4/3) r^{2n}
            for (int n = 2; n <= 600; ++n)
                numeric += std::pow(n - 1.0, 2) * (n * n + 4.0 / 3.0) * std::pow(r2, n);
            closed = 4 * std::pow(r2, 2) * (std::pow(r2, 3) + 2 * r2 * r2 + 11 * r2 + 4) /
                     (3 * std::pow(1 - r2, 5));
        } else if (id == "r2_comparison_sum") {
            // sum_{n>=2} (n-1)^2 (n+1/20)/n r^{2n}
            for (int n = 2; n <= 600; ++n)
                numeric += std::pow(n - 1.0, 2) * (n + 0.05) / n * std::pow(r2, n);
            closed = (-r2 + 23 * r2 * r2 + 18 * std::pow(r2, 3)) / (20 * std::pow(1 - r2, 3)) -
                     std::log(1 - r2) / 20;
        } else if (id == "geom_shift_sum") {
            // 1 + sum_{n>=1} ((n+alpha)/n) r^{2n} = 1/(1-r^2) + alpha log(1/(1-r^2))
            numeric = 1;
            for (int n = 1; n <= 600; ++n) numeric += (n + alpha) / n * std::pow(r2, n);
            closed = 1 / (1 - r2) + alpha * std::log(1 / (1 - r2));
        } else {
            throw std::invalid_argument("unknown closed-form id: " + id);
        }
        out.max_deviation = std::max(out.max_deviation, std::abs(numeric - closed));
    }
    out.ok = out.max_deviation <= 1e-10;
    return out;
}

}  // namespace milincert
