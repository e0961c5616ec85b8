#pragma once

// Exact integer and rational arithmetic on top of GMP.  mpq_class already
// maintains the canonical form (gcd(num,den)=1, den>=1), which is the
// invariant everything downstream relies on.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfwb {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Int to_int(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("to_int: not an integer");
    return q.get_num();
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    unsigned long n = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    if (e < 0) {
        if (b == 0) throw std::domain_error("pow_rational: 0^negative");
        b = Rational(1) / b;
    }
    Rational r(pow_int(b.get_num(), n), pow_int(b.get_den(), n));
    r.canonicalize();
    return r;
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Round to nearest integer (ties toward +inf; callers never hit ties).
inline Int round_nearest(const Rational& q) {
    Int n = q.get_num(), d = q.get_den();
    Int quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (2 * rem >= d) quot += 1;
    return quot;
}

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

// 64-bit FNV-1a, used as the transcription checksum for bundled data files.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace pfwb
