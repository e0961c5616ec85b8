#pragma once

// The real quartic field Q(sqrt2, sqrt3), written on the basis
// (1, sqrt2, sqrt3, sqrt6).  Enough for the modular-group generators and
// for singular points of the form p + q*sqrt2.

#include <array>
#include <stdexcept>
#include <string>

#include "pfwb/numeric.hpp"
#include "pfwb/rational.hpp"

namespace pfwb {

struct QuadExt {
    Rational a, b, c, d;  // a + b*sqrt2 + c*sqrt3 + d*sqrt6

    QuadExt() : a(0), b(0), c(0), d(0) {}
    QuadExt(Rational a_, Rational b_ = Rational(0), Rational c_ = Rational(0),
            Rational d_ = Rational(0))
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    QuadExt(int n) : a(n), b(0), c(0), d(0) {}

    static QuadExt sqrt2() { return QuadExt(Rational(0), Rational(1)); }
    static QuadExt sqrt3() { return QuadExt(Rational(0), Rational(0), Rational(1)); }
    static QuadExt sqrt6() { return QuadExt(Rational(0), Rational(0), Rational(0), Rational(1)); }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool is_rational() const { return b == 0 && c == 0 && d == 0; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    friend QuadExt operator-(const QuadExt& x) { return {-x.a, -x.b, -x.c, -x.d}; }
    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }

    // sqrt2*sqrt3 = sqrt6, sqrt2^2 = 2, sqrt3^2 = 3, sqrt6^2 = 6
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        Rational a = x.a * y.a + 2 * x.b * y.b + 3 * x.c * y.c + 6 * x.d * y.d;
        Rational b = x.a * y.b + x.b * y.a + 3 * (x.c * y.d + x.d * y.c);
        Rational c = x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b);
        Rational d = x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b;
        return {a, b, c, d};
    }

    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

    // Galois conjugates: flip signs of sqrt2 and/or sqrt3.
    QuadExt conj(bool flip2, bool flip3) const {
        Rational sb = flip2 ? Rational(-b) : b;
        Rational sc = flip3 ? Rational(-c) : c;
        Rational sd = (flip2 != flip3) ? Rational(-d) : d;
        return {a, sb, sc, sd};
    }

    // Multiplying all four conjugates lands in Q, which turns inversion into
    // one rational division.  (Equivalent to solving x*y = 1 as a 4x4 rational
    // system, but with the solution written out.)
    QuadExt inverse() const {
        if (is_zero()) throw std::domain_error("QuadExt: inverse of zero");
        QuadExt p = conj(true, false) * conj(false, true) * conj(true, true);
        QuadExt full = *this * p;
        if (!full.is_rational() || full.a == 0)
            throw std::logic_error("QuadExt: conjugate product not a nonzero rational");
        Rational inv = Rational(1) / full.a;
        return {p.a * inv, p.b * inv, p.c * inv, p.d * inv};
    }

    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

    PrecFloat eval(mpfr_prec_t prec) const {
        // evaluate with a few guard bits so the result is within 2^-(prec-4)
        mpfr_prec_t work = prec + 32;
        PrecFloat r2 = sqrt(PrecFloat::from_ui(2, work));
        PrecFloat r3 = sqrt(PrecFloat::from_ui(3, work));
        PrecFloat r6 = sqrt(PrecFloat::from_ui(6, work));
        PrecFloat out = PrecFloat::from_rational(a, work) + PrecFloat::from_rational(b, work) * r2 +
                        PrecFloat::from_rational(c, work) * r3 + PrecFloat::from_rational(d, work) * r6;
        PrecFloat res = PrecFloat::with_prec(prec);
        mpfr_set(res.raw(), out.raw(), MPFR_RNDN);
        return res;
    }

    double to_double() const { return eval(64).to_double(); }

    std::string str() const {
        std::string s = to_string(a);
        auto add = [&s](const Rational& q, const char* rad) {
            if (q == 0) return;
            s += (q > 0 ? "+" : "-") + to_string(rational_abs(q)) + rad;
        };
        add(b, "*sqrt2");
        add(c, "*sqrt3");
        add(d, "*sqrt6");
        return s;
    }
};

}  // namespace pfwb
