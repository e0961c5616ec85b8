#pragma once

// Dense univariate polynomials over an exact field, plus the handful of
// root-finding tools the singularity analysis needs: rational root
// extraction, Sturm-sequence isolation, and arithmetic in Q[x]/(m) so
// indicial equations can be solved exactly at algebraic singular points.

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfwb/rational.hpp"

namespace pfwb {

template <class K>
struct Poly {
    std::vector<K> c;  // c[i] = coefficient of x^i

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const K& k) { return Poly(std::vector<K>{k}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
    static Poly zero() { return Poly(); }

    void trim() {
        while (!c.empty() && c.back() == K(0)) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const K& leading() const {
        if (is_zero()) throw std::logic_error("Poly: leading of zero");
        return c.back();
    }
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return K(0);
        return c[i];
    }

    friend bool operator==(const Poly& p, const Poly& q) { return p.c == q.c; }

    friend Poly operator-(const Poly& p) {
        Poly r = p;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly operator+(const Poly& p, const Poly& q) {
        Poly r;
        r.c.resize(std::max(p.c.size(), q.c.size()), K(0));
        for (size_t i = 0; i < p.c.size(); ++i) r.c[i] = r.c[i] + p.c[i];
        for (size_t i = 0; i < q.c.size(); ++i) r.c[i] = r.c[i] + q.c[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly();
        Poly r;
        r.c.assign(p.c.size() + q.c.size() - 1, K(0));
        for (size_t i = 0; i < p.c.size(); ++i)
            for (size_t j = 0; j < q.c.size(); ++j) r.c[i + j] = r.c[i + j] + p.c[i] * q.c[j];
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& q) { return *this = *this + q; }
    Poly& operator-=(const Poly& q) { return *this = *this - q; }
    Poly& operator*=(const Poly& q) { return *this = *this * q; }

    Poly scaled(const K& k) const {
        Poly r = *this;
        for (auto& x : r.c) x = x * k;
        r.trim();
        return r;
    }

    Poly pow(unsigned e) const {
        Poly acc = constant(K(1)), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    K eval(const K& x) const {
        K acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // Horner into any ring R given a coefficient embedding.
    template <class R, class Conv>
    R eval_in(const R& x, Conv conv, const R& zero) const {
        R acc = zero;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + conv(*it);
        return acc;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        Poly r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * K(static_cast<int>(i));
        r.trim();
        return r;
    }

    // p(x + a)
    Poly taylor_shift(const K& a) const {
        Poly r;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            r = r * (Poly::x() + Poly::constant(a)) + Poly::constant(*it);
        }
        return r;
    }

    // x^deg * p(1/x)
    Poly reciprocal() const {
        Poly r = *this;
        std::reverse(r.c.begin(), r.c.end());
        r.trim();
        return r;
    }

    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        Poly q, r = a;
        q.c.assign(std::max<int>(a.degree() - b.degree() + 1, 0), K(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            K f = r.leading() / b.leading();
            int d = r.degree() - b.degree();
            q.c[d] = q.c[d] + f;
            for (size_t i = 0; i < b.c.size(); ++i) r.c[i + d] = r.c[i + d] - f * b.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(K(1) / leading());
    }

    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = b;
            b = r;
        }
        return a.monic();
    }
};

using RatPoly = Poly<Rational>;

// --- integer/rational specifics -------------------------------------------

// Clear denominators and divide out content: primitive integer coefficients.
inline std::vector<Int> primitive_integer_coeffs(const RatPoly& p) {
    if (p.is_zero()) return {};
    Int lcm_den(1);
    for (auto& q : p.c) {
        Int d = q.get_den();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Int> out;
    out.reserve(p.c.size());
    Int content(0);
    for (auto& q : p.c) {
        Int v = q.get_num() * (lcm_den / q.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        out.push_back(v);
    }
    if (content != 0)
        for (auto& v : out) v /= content;
    if (out.back() < 0)
        for (auto& v : out) v = -v;
    return out;
}

inline std::vector<Int> divisors_up_to(const Int& n, size_t cap = 4096) {
    Int a = abs(n);
    std::vector<Int> divs;
    if (a == 0) return divs;
    for (Int d(1); d * d <= a; ++d) {
        if (a % d == 0) {
            divs.push_back(d);
            if (d * d != a) divs.push_back(a / d);
            if (divs.size() > cap) throw std::runtime_error("divisor enumeration too large");
        }
    }
    return divs;
}

// All rational roots, with multiplicity, repeatedly deflating.
inline std::vector<Rational> rational_roots(RatPoly p) {
    std::vector<Rational> roots;
    if (p.is_zero()) return roots;
    while (!p.is_zero() && p.coeff(0) == 0 && p.degree() >= 1) {
        roots.emplace_back(0);
        p.c.erase(p.c.begin());
    }
    while (p.degree() >= 1) {
        std::vector<Int> ic = primitive_integer_coeffs(p);
        Int a0 = ic.front(), an = ic.back();
        bool found = false;
        for (const Int& num : divisors_up_to(a0)) {
            for (const Int& den : divisors_up_to(an)) {
                for (int s : {1, -1}) {
                    Rational cand = make_rational(s * num, den);
                    if (p.eval(cand) == 0) {
                        roots.push_back(cand);
                        RatPoly lin(std::vector<Rational>{-cand, Rational(1)});
                        p = p / lin;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    return roots;
}

// --- Sturm isolation --------------------------------------------------------

inline std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 1) {
        RatPoly r = -(chain[chain.size() - 2] % chain.back());
        if (r.is_zero()) break;
        chain.push_back(r);
    }
    return chain;
}

inline int sturm_sign_changes(const std::vector<RatPoly>& chain, const Rational& x) {
    int changes = 0, last = 0;
    for (auto& q : chain) {
        int s = q.is_zero() ? 0 : sign(q.eval(x));
        if (s != 0) {
            if (last != 0 && s != last) ++changes;
            last = s;
        }
    }
    return changes;
}

inline int sturm_count_interval(const std::vector<RatPoly>& chain, const Rational& lo,
                                const Rational& hi) {
    return sturm_sign_changes(chain, lo) - sturm_sign_changes(chain, hi);
}

struct RootInterval {
    Rational lo, hi;  // half-open (lo, hi], one simple real root inside
};

// Isolate all real roots of a squarefree p, then bisect to the given width.
inline std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rational& width) {
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    auto chain = sturm_chain(p);
    // Cauchy bound
    Rational bound(1);
    for (int i = 0; i < p.degree(); ++i) {
        Rational t = rational_abs(p.coeff(i) / p.leading());
        if (t > bound) bound = t;
    }
    bound += 1;
    std::vector<RootInterval> queue{{-bound, bound}};
    while (!queue.empty()) {
        RootInterval iv = queue.back();
        queue.pop_back();
        int n = sturm_count_interval(chain, iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1 && iv.hi - iv.lo <= width) {
            out.push_back(iv);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        if (p.eval(mid) == 0) {
            // nudge: mid is a root; widen by a hair so it stays interior
            Rational eps = (iv.hi - iv.lo) / 1024;
            queue.push_back({iv.lo, mid + eps});
            queue.push_back({mid + eps, iv.hi});
        } else {
            queue.push_back({iv.lo, mid});
            queue.push_back({mid, iv.hi});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

// --- Q[x]/(m): exact arithmetic at an algebraic singular point --------------

struct NFElem {
    std::shared_ptr<const RatPoly> modulus;
    RatPoly rep;

    NFElem() = default;
    NFElem(int n) : modulus(nullptr), rep(RatPoly::constant(Rational(n))) { rep.trim(); }
    NFElem(std::shared_ptr<const RatPoly> m, RatPoly r) : modulus(std::move(m)), rep(std::move(r)) {
        reduce();
    }

    static NFElem generator(std::shared_ptr<const RatPoly> m) {
        return NFElem(std::move(m), RatPoly::x());
    }
    static NFElem from_rational(std::shared_ptr<const RatPoly> m, const Rational& q) {
        return NFElem(std::move(m), RatPoly::constant(q));
    }

    void reduce() {
        if (modulus && rep.degree() >= modulus->degree()) rep = rep % *modulus;
    }
    bool is_zero() const { return rep.is_zero(); }

    static std::shared_ptr<const RatPoly> join(const NFElem& x, const NFElem& y) {
        if (x.modulus) return x.modulus;
        return y.modulus;
    }

    friend NFElem operator+(const NFElem& x, const NFElem& y) {
        return NFElem(join(x, y), x.rep + y.rep);
    }
    friend NFElem operator-(const NFElem& x, const NFElem& y) {
        return NFElem(join(x, y), x.rep - y.rep);
    }
    friend NFElem operator-(const NFElem& x) { return NFElem(x.modulus, -x.rep); }
    friend NFElem operator*(const NFElem& x, const NFElem& y) {
        return NFElem(join(x, y), x.rep * y.rep);
    }
    NFElem& operator+=(const NFElem& y) { return *this = *this + y; }
    NFElem& operator-=(const NFElem& y) { return *this = *this - y; }
    NFElem& operator*=(const NFElem& y) { return *this = *this * y; }

    friend bool operator==(const NFElem& x, const NFElem& y) { return (x - y).is_zero(); }
    friend bool operator!=(const NFElem& x, const NFElem& y) { return !(x == y); }

    NFElem inverse() const {
        if (!modulus) {
            if (rep.degree() != 0) throw std::logic_error("NFElem: no modulus");
            return NFElem(nullptr, RatPoly::constant(Rational(1) / rep.coeff(0)));
        }
        // extended Euclid: rep*u + m*v = gcd = const (m irreducible)
        RatPoly a = *modulus, b = rep;
        RatPoly u0 = RatPoly::zero(), u1 = RatPoly::constant(Rational(1));
        while (!b.is_zero() && b.degree() >= 1) {
            auto [q, r] = divrem(a, b);
            a = b;
            b = r;
            RatPoly u2 = u0 - q * u1;
            u0 = u1;
            u1 = u2;
        }
        if (b.is_zero()) throw std::domain_error("NFElem: not invertible (reducible modulus?)");
        return NFElem(modulus, u1.scaled(Rational(1) / b.coeff(0)));
    }
    friend NFElem operator/(const NFElem& x, const NFElem& y) { return x * y.inverse(); }
};

}  // namespace pfwb
