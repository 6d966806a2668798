#ifndef HEEGNER_RATIONAL_HPP
#define HEEGNER_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heegner {

using Rational = mpq_class;
using BigInt = mpz_class;

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline BigInt floor_div(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline BigInt ceil_div(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Value reduced to [0, 1).
inline Rational mod_one(const Rational& q) {
    Rational r = q - Rational(floor_div(q));
    r.canonicalize();
    return r;
}

/// Positive generator of the subgroup a*Z + b*Z of Q (0 if both are 0).
inline Rational rat_gcd(const Rational& a, const Rational& b) {
    if (a == 0) {
        Rational r = abs(b);
        r.canonicalize();
        return r;
    }
    if (b == 0) {
        Rational r = abs(a);
        r.canonicalize();
        return r;
    }
    BigInt p1 = a.get_num(), q1 = a.get_den();
    BigInt p2 = b.get_num(), q2 = b.get_den();
    BigInt num = gcd(p1 * q2, p2 * q1);
    Rational r(num, q1 * q2);
    r.canonicalize();
    return abs(r);
}

/// Positive generator of a*Z intersected with b*Z (0 means the trivial group).
inline Rational rat_lcm(const Rational& a, const Rational& b) {
    if (a == 0 || b == 0) return 0;
    BigInt p1 = abs(a.get_num()), q1 = a.get_den();
    BigInt p2 = abs(b.get_num()), q2 = b.get_den();
    BigInt num = lcm(p1 * q2, p2 * q1);
    Rational r(num, q1 * q2);
    r.canonicalize();
    return r;
}

/// Canonical fraction string, "p" or "p/q".
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Rational rat_parse(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("invalid rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace heegner

#endif
