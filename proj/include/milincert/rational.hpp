#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace milincert {

// Exact rational substrate. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as we canonicalize after raw construction.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p". Whitespace is not accepted.
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("cannot parse rational: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline int rat_sign(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return abs(q); }

// q^e for integer e >= 0.
inline Rat rat_pow(const Rat& q, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

}  // namespace milincert
