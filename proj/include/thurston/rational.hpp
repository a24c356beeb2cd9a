#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace thurston {

using Rat = mpq_class;

// Project-wide error type. Everything thrown on purpose is one of these;
// anything else escaping is a bug.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

// Round q to the nearest rational with denominator <= max_den using the
// continued fraction expansion. Keeps Collatz-Wielandt iteration vectors
// from growing unboundedly; any positive vector gives valid bounds, so
// rounding never affects soundness.
inline Rat rat_limit_den(const Rat& q, unsigned long max_den = 1000000000UL) {
    if (q.get_den() <= max_den)
        return q;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpz_class num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg)
        num = -num;
    while (den != 0) {
        mpz_class a = num / den;
        mpz_class r = num - a * den;
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den)
            break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        num = den; den = r;
    }
    Rat out(neg ? -p1 : p1, q1);
    out.canonicalize();
    return out;
}

} // namespace thurston
