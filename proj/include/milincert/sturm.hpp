#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "milincert/poly.hpp"

namespace milincert {

// Sturm chain of the square-free part of p. Root counts obtained from it are
// counts of distinct real roots. Intermediate remainders are rescaled to
// primitive integer form (positive scalar), which keeps coefficient growth
// under control for the degree-8 chains used in certification.
class SturmChain {
  public:
    explicit SturmChain(const RatPoly& p) {
        if (p.is_zero()) throw std::domain_error("degenerate input: zero polynomial");
        RatPoly f = p.square_free_part().primitive();
        chain_.push_back(f);
        if (f.degree() >= 1) {
            RatPoly d = f.derivative().primitive();
            chain_.push_back(d);
            while (chain_.back().degree() >= 1) {
                RatPoly r = chain_[chain_.size() - 2].rem(chain_.back());
                if (r.is_zero()) break;  // cannot happen for square-free f
                chain_.push_back((-r).primitive());
            }
        }
    }

    const std::vector<RatPoly>& chain() const { return chain_; }

    const RatPoly& squarefree() const { return chain_.front(); }

    int sign_variations_at(const Rat& x) const {
        int var = 0, prev = 0;
        for (const auto& f : chain_) {
            int s = rat_sign(f.eval(x));
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }

    // dir = +1 for +infinity, -1 for -infinity.
    int sign_variations_at_infinity(int dir) const {
        int var = 0, prev = 0;
        for (const auto& f : chain_) {
            int s = rat_sign(f.leading());
            if (dir < 0 && f.degree() % 2 == 1) s = -s;
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }

    // Number of distinct real roots in the half-open interval (a, b].
    int count_half_open(const Rat& a, const Rat& b) const {
        return sign_variations_at(a) - sign_variations_at(b);
    }

    bool root_at(const Rat& x) const { return squarefree().eval(x) == 0; }

    // Distinct real roots in the open interval (a, b).
    int count_open(const Rat& a, const Rat& b) const {
        int n = count_half_open(a, b);
        if (root_at(b)) --n;
        return n;
    }

    int count_all() const {
        return sign_variations_at_infinity(-1) - sign_variations_at_infinity(+1);
    }

    // Distinct real roots in (-infinity, b].
    int count_below(const Rat& b) const {
        return sign_variations_at_infinity(-1) - sign_variations_at(b);
    }

    // Distinct real roots in [a, +infinity).
    int count_above(const Rat& a) const {
        return sign_variations_at(a) - sign_variations_at_infinity(+1) + (root_at(a) ? 1 : 0);
    }

  private:
    std::vector<RatPoly> chain_;
};

inline int count_real_roots(const RatPoly& p, const Rat& a, const Rat& b) {
    if (!(a < b)) throw std::invalid_argument("count_real_roots: need a < b");
    return SturmChain(p).count_open(a, b);
}

struct PositivityResult {
    bool positive = false;
    // Witness against positivity: an isolating interval around a real root in
    // (a, b), or a sample point where the polynomial is <= 0.
    std::optional<std::pair<Rat, Rat>> root_interval;
    std::optional<Rat> bad_sample;
};

namespace detail {

// Shrinks (lo, hi), known to contain >= 1 root, to an interval holding
// exactly one; an exact rational root yields a degenerate interval.
inline std::pair<Rat, Rat> isolate_root(const SturmChain& s, Rat lo, Rat hi) {
    for (int iter = 0; iter < 256; ++iter) {
        Rat mid = (lo + hi) / 2;
        if (s.root_at(mid)) return {mid, mid};
        int left = s.count_open(lo, mid);
        if (left > 0)
            hi = mid;
        else
            lo = mid;
        if (s.count_open(lo, hi) == 1 && iter >= 10) break;
    }
    return {lo, hi};
}

}  // namespace detail

// True iff p has no root in (a, b) and is positive at an interior sample
// (midpoint; deterministically perturbed if the midpoint happens to be a
// root of the original polynomial).
inline PositivityResult certify_positive(const RatPoly& p, const Rat& a, const Rat& b) {
    if (!(a < b)) throw std::invalid_argument("certify_positive: need a < b");
    if (p.is_zero()) throw std::domain_error("degenerate input: zero polynomial");
    SturmChain s(p);
    Rat sample = (a + b) / 2;
    if (p.eval(sample) == 0) sample = (a + sample) / 2;

    PositivityResult res;
    int roots = s.count_open(a, b);
    if (roots > 0) {
        res.positive = false;
        res.root_interval = detail::isolate_root(s, a, b);
        if (rat_sign(p.eval(sample)) <= 0) {
            res.bad_sample = sample;
        } else {
            // dyadic refinement around the isolated root until a strictly
            // negative sample appears (or the root turns out to be a touch
            // point, in which case the interval alone is the witness)
            Rat lo = res.root_interval->first, hi = res.root_interval->second;
            Rat h = (b - a) / 4;
            for (int iter = 0; iter < 96 && !res.bad_sample; ++iter) {
                for (const Rat& x : {Rat(hi + h), Rat((lo + hi) / 2), Rat(lo - h)}) {
                    if (x > a && x < b && rat_sign(p.eval(x)) < 0) {
                        res.bad_sample = x;
                        break;
                    }
                }
                h /= 2;
                if (lo < hi) {
                    Rat mid = (lo + hi) / 2;
                    if (s.root_at(mid) || s.count_open(lo, mid) > 0)
                        hi = mid;
                    else
                        lo = mid;
                }
            }
        }
        return res;
    }
    if (rat_sign(p.eval(sample)) <= 0) {
        res.positive = false;
        res.bad_sample = sample;
        return res;
    }
    res.positive = true;
    return res;
}

}  // namespace milincert
