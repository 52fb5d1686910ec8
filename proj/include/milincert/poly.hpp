#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "milincert/rational.hpp"

namespace milincert {

// Univariate polynomial with exact rational coefficients, ascending degree.
// Canonical form: no trailing zero coefficients; the zero polynomial is the
// empty coefficient vector (degree() == -1).
class RatPoly {
  public:
    RatPoly() = default;

    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static RatPoly zero() { return RatPoly(); }

    static RatPoly constant(const Rat& a) { return RatPoly({a}); }

    // x^k
    static RatPoly monomial(int k, const Rat& a = Rat(1)) {
        std::vector<Rat> c(static_cast<size_t>(k) + 1, Rat(0));
        c.back() = a;
        return RatPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
        return c_[static_cast<size_t>(i)];
    }

    const Rat& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    // Horner evaluation, exact.
    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval_double(double x) const {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
        return acc;
    }

    RatPoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<Rat> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return RatPoly(std::move(d));
    }

    RatPoly operator-() const {
        std::vector<Rat> c(c_);
        for (auto& a : c) a = -a;
        return RatPoly(std::move(c));
    }

    friend RatPoly operator+(const RatPoly& p, const RatPoly& q) {
        std::vector<Rat> c(std::max(p.c_.size(), q.c_.size()), Rat(0));
        for (size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
        for (size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
        return RatPoly(std::move(c));
    }

    friend RatPoly operator-(const RatPoly& p, const RatPoly& q) { return p + (-q); }

    friend RatPoly operator*(const RatPoly& p, const RatPoly& q) {
        if (p.is_zero() || q.is_zero()) return zero();
        std::vector<Rat> c(p.c_.size() + q.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        return RatPoly(std::move(c));
    }

    friend RatPoly operator*(const Rat& a, const RatPoly& p) {
        std::vector<Rat> c(p.c_);
        for (auto& x : c) x *= a;
        return RatPoly(std::move(c));
    }

    friend bool operator==(const RatPoly& p, const RatPoly& q) { return p.c_ == q.c_; }

    // Euclidean remainder of *this by d (d nonzero).
    RatPoly rem(const RatPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        RatPoly r = *this;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rat f = r.leading() / d.leading();
            int shift = r.degree() - d.degree();
            r = r - (f * (d * monomial(shift)));
        }
        return r;
    }

    // Positive-scalar rescaling to integer coefficients with unit content.
    // Sign pattern of the polynomial is unchanged.
    RatPoly primitive() const {
        if (is_zero()) return zero();
        mpz_class den_lcm(1);
        for (const auto& a : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
        mpz_class content(0);
        for (const auto& a : c_) {
            mpz_class num = a.get_num() * (den_lcm / a.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
        }
        Rat scale(den_lcm, content);
        scale.canonicalize();
        return scale * (*this);
    }

    // gcd up to positive scalar, returned primitive with positive leading coeff.
    static RatPoly gcd(RatPoly a, RatPoly b) {
        while (!b.is_zero()) {
            RatPoly r = a.rem(b).primitive();
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        a = a.primitive();
        if (rat_sign(a.leading()) < 0) a = -a;
        return a;
    }

    // p / gcd(p, p'): same distinct roots, all simple.
    RatPoly square_free_part() const {
        if (is_zero()) throw std::domain_error("square-free part of zero polynomial");
        RatPoly g = gcd(*this, derivative());
        if (g.degree() <= 0) return *this;
        return exact_div(g);
    }

    // Exact quotient; throws if the division leaves a remainder.
    RatPoly exact_div(const RatPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        RatPoly r = *this;
        std::vector<Rat> q(r.is_zero() || r.degree() < d.degree()
                               ? 0
                               : static_cast<size_t>(r.degree() - d.degree()) + 1,
                           Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rat f = r.leading() / d.leading();
            int shift = r.degree() - d.degree();
            q[static_cast<size_t>(shift)] = f;
            r = r - (f * (d * monomial(shift)));
        }
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return RatPoly(std::move(q));
    }

    // JSON array of "num/den" strings, ascending degree.
    nlohmann::json to_json() const {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : c_) a.push_back(rat_to_string(x));
        return a;
    }

    static RatPoly from_json(const nlohmann::json& a) {
        std::vector<Rat> c;
        for (const auto& s : a) c.push_back(rat_from_string(s.get<std::string>()));
        return RatPoly(std::move(c));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (coeff(i) == 0) continue;
            if (!s.empty()) s += " + ";
            s += rat_to_string(coeff(i));
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s;
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

}  // namespace milincert
