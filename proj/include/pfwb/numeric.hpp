#pragma once

// Arbitrary-precision real and complex floats on top of MPFR.
//
// Precision is carried per value; binary operations promote to the larger
// operand precision, so arithmetic never silently drops below the precision
// a value was created with.  There is no global precision state.
// Small integer literals (K(0), K(1) in generic code) come in at 64 bits and
// get promoted on first contact with a wide value.

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "pfwb/rational.hpp"

namespace pfwb {

inline mpfr_prec_t bits_for_digits(int digits) {
    // one reproducibility knob: decimal digits -> bits, rounded up to a limb
    double raw = digits * 3.3219280948873623 + 8.0;
    auto bits = static_cast<mpfr_prec_t>(raw);
    bits = ((bits + 63) / 64) * 64;
    return bits;
}

class PrecFloat {
    struct PrecTag {};
    PrecFloat(PrecTag, mpfr_prec_t prec) {
        mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
        mpfr_set_zero(v_, 1);
    }

  public:
    PrecFloat() : PrecFloat(PrecTag{}, 64) {}
    explicit PrecFloat(int n) : PrecFloat(PrecTag{}, 64) { mpfr_set_si(v_, n, MPFR_RNDN); }
    PrecFloat(const PrecFloat& o) {
        mpfr_init2(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    PrecFloat(PrecFloat&& o) noexcept {
        mpfr_init2(v_, o.precision());
        mpfr_swap(v_, o.v_);
    }
    PrecFloat& operator=(const PrecFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.precision());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    PrecFloat& operator=(PrecFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~PrecFloat() { mpfr_clear(v_); }

    static PrecFloat with_prec(mpfr_prec_t prec) { return PrecFloat(PrecTag{}, prec); }
    static PrecFloat from_double(double x, mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static PrecFloat from_int(const Int& n, mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static PrecFloat from_rational(const Rational& q, mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static PrecFloat from_ui(unsigned long n, mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_set_ui(r.v_, n, MPFR_RNDN);
        return r;
    }
    static PrecFloat pi(mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static PrecFloat zeta3(mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_zeta_ui(r.v_, 3, MPFR_RNDN);
        return r;
    }
    // 10^e at the given precision
    static PrecFloat pow10(long e, mpfr_prec_t prec) {
        PrecFloat r(PrecTag{}, prec);
        mpfr_set_ui(r.v_, 10, MPFR_RNDN);
        mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend PrecFloat operator-(const PrecFloat& a) {
        PrecFloat r(PrecTag{}, a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define PFWB_FLOAT_BINOP(op, fn)                                              \
    friend PrecFloat operator op(const PrecFloat& a, const PrecFloat& b) {    \
        PrecFloat r(PrecTag{}, std::max(a.precision(), b.precision()));       \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                      \
        return r;                                                             \
    }
    PFWB_FLOAT_BINOP(+, mpfr_add)
    PFWB_FLOAT_BINOP(-, mpfr_sub)
    PFWB_FLOAT_BINOP(*, mpfr_mul)
    PFWB_FLOAT_BINOP(/, mpfr_div)
#undef PFWB_FLOAT_BINOP

    PrecFloat& operator+=(const PrecFloat& b) { return *this = *this + b; }
    PrecFloat& operator-=(const PrecFloat& b) { return *this = *this - b; }
    PrecFloat& operator*=(const PrecFloat& b) { return *this = *this * b; }
    PrecFloat& operator/=(const PrecFloat& b) { return *this = *this / b; }

    friend bool operator<(const PrecFloat& a, const PrecFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const PrecFloat& a, const PrecFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const PrecFloat& a, const PrecFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const PrecFloat& a, const PrecFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const PrecFloat& a, const PrecFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend PrecFloat abs(const PrecFloat& a) {
        PrecFloat r(PrecTag{}, a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend PrecFloat sqrt(const PrecFloat& a) {
        PrecFloat r(PrecTag{}, a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend PrecFloat log(const PrecFloat& a) {
        PrecFloat r(PrecTag{}, a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend PrecFloat exp(const PrecFloat& a) {
        PrecFloat r(PrecTag{}, a.precision());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend PrecFloat atan2(const PrecFloat& y, const PrecFloat& x) {
        PrecFloat r(PrecTag{}, std::max(y.precision(), x.precision()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend PrecFloat hypot(const PrecFloat& a, const PrecFloat& b) {
        PrecFloat r(PrecTag{}, std::max(a.precision(), b.precision()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    PrecFloat mul_ui(unsigned long k) const {
        PrecFloat r(PrecTag{}, precision());
        mpfr_mul_ui(r.v_, v_, k, MPFR_RNDN);
        return r;
    }
    PrecFloat div_ui(unsigned long k) const {
        PrecFloat r(PrecTag{}, precision());
        mpfr_div_ui(r.v_, v_, k, MPFR_RNDN);
        return r;
    }
    PrecFloat pow_si(long e) const {
        PrecFloat r(PrecTag{}, precision());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }

    Int round_to_int() const {
        PrecFloat t(PrecTag{}, precision());
        mpfr_round(t.v_, v_);
        Int n;
        mpfr_get_z(n.get_mpz_t(), t.v_, MPFR_RNDN);
        return n;
    }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

struct PrecComplex {
    PrecFloat re, im;

    PrecComplex() = default;
    explicit PrecComplex(int n) : re(n), im(0) {}
    PrecComplex(PrecFloat r, PrecFloat i) : re(std::move(r)), im(std::move(i)) {}

    static PrecComplex zero(mpfr_prec_t prec) {
        return {PrecFloat::with_prec(prec), PrecFloat::with_prec(prec)};
    }
    static PrecComplex one(mpfr_prec_t prec) {
        return {PrecFloat::from_ui(1, prec), PrecFloat::with_prec(prec)};
    }
    static PrecComplex i_unit(mpfr_prec_t prec) {
        return {PrecFloat::with_prec(prec), PrecFloat::from_ui(1, prec)};
    }
    static PrecComplex from_double(double x, double y, mpfr_prec_t prec) {
        return {PrecFloat::from_double(x, prec), PrecFloat::from_double(y, prec)};
    }
    static PrecComplex from_rational(const Rational& q, mpfr_prec_t prec) {
        return {PrecFloat::from_rational(q, prec), PrecFloat::with_prec(prec)};
    }
    static PrecComplex from_real(PrecFloat r) {
        mpfr_prec_t p = r.precision();
        return {std::move(r), PrecFloat::with_prec(p)};
    }

    mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend bool operator==(const PrecComplex& a, const PrecComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend PrecComplex operator-(const PrecComplex& a) { return {-a.re, -a.im}; }
    friend PrecComplex operator+(const PrecComplex& a, const PrecComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend PrecComplex operator-(const PrecComplex& a, const PrecComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend PrecComplex operator*(const PrecComplex& a, const PrecComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend PrecComplex operator/(const PrecComplex& a, const PrecComplex& b) {
        PrecFloat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    PrecComplex& operator+=(const PrecComplex& b) { return *this = *this + b; }
    PrecComplex& operator-=(const PrecComplex& b) { return *this = *this - b; }
    PrecComplex& operator*=(const PrecComplex& b) { return *this = *this * b; }
    PrecComplex& operator/=(const PrecComplex& b) { return *this = *this / b; }

    PrecComplex scaled(const PrecFloat& s) const { return {re * s, im * s}; }
    PrecComplex conj() const { return {re, -im}; }

    friend PrecFloat abs(const PrecComplex& a) { return hypot(a.re, a.im); }

    PrecComplex pow_int(long e) const {
        mpfr_prec_t p = precision();
        if (e == 0) return one(p);
        PrecComplex base = *this;
        bool invert = e < 0;
        unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        PrecComplex acc = one(p);
        while (n) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        if (invert) acc = one(p) / acc;
        return acc;
    }

    std::string str(int digits = 20) const {
        return re.str(digits) + (im.sgn() < 0 ? " - " : " + ") + abs(im).str(digits) + "i";
    }
};

// principal branch: Im(log) in (-pi, pi]
inline PrecComplex log_principal(const PrecComplex& x) {
    PrecFloat mag = abs(x);
    return {log(mag), atan2(x.im, x.re)};
}

inline PrecComplex exp_complex(const PrecComplex& x) {
    mpfr_prec_t p = x.precision();
    PrecFloat ex = exp(x.re);
    PrecFloat c = PrecFloat::with_prec(p), s = PrecFloat::with_prec(p);
    mpfr_sin_cos(s.raw(), c.raw(), x.im.raw(), MPFR_RNDN);
    return {ex * c, ex * s};
}

// x^q for rational q, principal branch
inline PrecComplex pow_rational_principal(const PrecComplex& x, const Rational& q, mpfr_prec_t prec) {
    if (q == 0) return PrecComplex::one(prec);
    if (is_integer(q) && mpz_fits_slong_p(q.get_num().get_mpz_t()))
        return x.pow_int(q.get_num().get_si());
    PrecComplex lg = log_principal(x);
    return exp_complex(lg.scaled(PrecFloat::from_rational(q, prec)));
}

inline PrecComplex two_pi_i(mpfr_prec_t prec) {
    return {PrecFloat::with_prec(prec), PrecFloat::pi(prec).mul_ui(2)};
}

}  // namespace pfwb
