#pragma once

// Prime-field arithmetic for the finite-field sampling runs.  The modulus is
// carried per value so the field-generic templates (matrices, polynomials)
// work unchanged; integer literals produced by generic code (K(0), K(1),
// K(-2)) are held unreduced until they meet a value with a modulus.

#include <cstdint>
#include <random>
#include <stdexcept>

namespace pfwb {

struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;  // 0: unreduced literal; v holds a signed small value

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}
    Fp(int n) : v(static_cast<std::uint64_t>(static_cast<std::int64_t>(n))), p(0) {}

    static Fp of(long long n, std::uint64_t prime) {
        long long r = n % static_cast<long long>(prime);
        if (r < 0) r += static_cast<long long>(prime);
        return Fp(static_cast<std::uint64_t>(r), prime);
    }

    bool has_modulus() const { return p != 0; }
    std::int64_t literal() const { return static_cast<std::int64_t>(v); }

    Fp reduced(std::uint64_t prime) const {
        if (p != 0) {
            if (p != prime) throw std::logic_error("Fp: mixed moduli");
            return *this;
        }
        return of(literal(), prime);
    }

    bool is_zero() const { return p == 0 ? literal() == 0 : v == 0; }

    friend Fp operator+(const Fp& x, const Fp& y) {
        if (x.p == 0 && y.p == 0) return Fp(static_cast<int>(x.literal() + y.literal()));
        std::uint64_t p = x.p ? x.p : y.p;
        Fp a = x.reduced(p), b = y.reduced(p);
        return Fp((a.v + b.v) % p, p);
    }
    friend Fp operator-(const Fp& x, const Fp& y) {
        if (x.p == 0 && y.p == 0) return Fp(static_cast<int>(x.literal() - y.literal()));
        std::uint64_t p = x.p ? x.p : y.p;
        Fp a = x.reduced(p), b = y.reduced(p);
        return Fp((a.v + p - b.v) % p, p);
    }
    friend Fp operator-(const Fp& x) {
        if (x.p == 0) return Fp(static_cast<int>(-x.literal()));
        return Fp((x.p - x.v) % x.p, x.p);
    }
    friend Fp operator*(const Fp& x, const Fp& y) {
        if (x.p == 0 && y.p == 0) return Fp(static_cast<int>(x.literal() * y.literal()));
        std::uint64_t p = x.p ? x.p : y.p;
        Fp a = x.reduced(p), b = y.reduced(p);
        return Fp((static_cast<__uint128_t>(a.v) * b.v) % p, p);
    }
    Fp& operator+=(const Fp& y) { return *this = *this + y; }
    Fp& operator-=(const Fp& y) { return *this = *this - y; }
    Fp& operator*=(const Fp& y) { return *this = *this * y; }

    Fp pow(std::uint64_t e) const {
        if (p == 0) throw std::logic_error("Fp: pow on unreduced literal");
        Fp acc(1 % p, p), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Fp inverse() const {
        if (p == 0 || v == 0) throw std::domain_error("Fp: inverse of zero or literal");
        return pow(p - 2);
    }
    friend Fp operator/(const Fp& x, const Fp& y) {
        std::uint64_t p = x.p ? x.p : y.p;
        if (p == 0) throw std::domain_error("Fp: division of literals");
        return x.reduced(p) * y.reduced(p).inverse();
    }

    friend bool operator==(const Fp& x, const Fp& y) {
        if (x.p == 0 && y.p == 0) return x.literal() == y.literal();
        std::uint64_t p = x.p ? x.p : y.p;
        return x.reduced(p).v == y.reduced(p).v;
    }
    friend bool operator!=(const Fp& x, const Fp& y) { return !(x == y); }

    bool is_square() const {
        if (p == 0) throw std::logic_error("Fp: is_square on literal");
        if (v == 0) return true;
        return pow((p - 1) / 2).v == 1;
    }

    // Tonelli-Shanks; p an odd prime
    Fp sqrt() const {
        if (v == 0) return *this;
        if (!is_square()) throw std::domain_error("Fp: not a square");
        if (p % 4 == 3) return pow((p + 1) / 4);
        std::uint64_t q = p - 1, s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        Fp z(2, p);
        while (z.is_square()) z = Fp(z.v + 1, p);
        Fp c = z.pow(q);
        Fp t = pow(q);
        Fp r = pow((q + 1) / 2);
        std::uint64_t m = s;
        while (t.v != 1) {
            std::uint64_t i = 0;
            Fp t2 = t;
            while (t2.v != 1) {
                t2 *= t2;
                ++i;
            }
            Fp b = c;
            for (std::uint64_t k = 0; k + i + 1 < m; ++k) b *= b;
            r *= b;
            c = b * b;
            t *= c;
            m = i;
        }
        return r;
    }
};

inline Fp random_fp(std::mt19937_64& rng, std::uint64_t p) {
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    return Fp(dist(rng), p);
}

}  // namespace pfwb
