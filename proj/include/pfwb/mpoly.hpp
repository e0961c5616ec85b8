#pragma once

// Sparse multivariate polynomials over Q, just enough for the symmetroid
// determinant identity (variables a, z1..z5; degrees stay tiny).

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "pfwb/rational.hpp"

namespace pfwb {

template <int NVARS>
struct MPoly {
    using Expo = std::array<std::uint8_t, NVARS>;
    std::map<Expo, Rational> terms;

    MPoly() = default;
    MPoly(int n) {
        if (n != 0) terms[Expo{}] = Rational(n);
    }
    static MPoly constant(const Rational& q) {
        MPoly p;
        if (q != 0) p.terms[Expo{}] = q;
        return p;
    }
    static MPoly var(int i) {
        MPoly p;
        Expo e{};
        e[i] = 1;
        p.terms[e] = Rational(1);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Expo& e, const Rational& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (c != 0) terms[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& x, const MPoly& y) {
        MPoly r = x;
        for (auto& [e, c] : y.terms) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& x, const MPoly& y) {
        MPoly r = x;
        for (auto& [e, c] : y.terms) r.add_term(e, -c);
        return r;
    }
    friend MPoly operator-(const MPoly& x) {
        MPoly r;
        for (auto& [e, c] : x.terms) r.terms[e] = -c;
        return r;
    }
    friend MPoly operator*(const MPoly& x, const MPoly& y) {
        MPoly r;
        for (auto& [e1, c1] : x.terms)
            for (auto& [e2, c2] : y.terms) {
                Expo e{};
                for (int i = 0; i < NVARS; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MPoly& operator+=(const MPoly& y) { return *this = *this + y; }
    MPoly& operator-=(const MPoly& y) { return *this = *this - y; }
    MPoly& operator*=(const MPoly& y) { return *this = *this * y; }

    friend bool operator==(const MPoly& x, const MPoly& y) { return (x - y).is_zero(); }

    // substitute a rational value for variable i
    MPoly substitute(int var, const Rational& value) const {
        MPoly r;
        for (auto& [e, c] : terms) {
            Expo f = e;
            Rational coeff = c;
            for (int k = 0; k < f[var]; ++k) coeff *= value;
            f[var] = 0;
            r.add_term(f, coeff);
        }
        return r;
    }

    bool is_homogeneous_in(int from_var, int degree) const {
        for (auto& [e, c] : terms) {
            int total = 0;
            for (int i = from_var; i < NVARS; ++i) total += e[i];
            if (total != degree) return false;
        }
        return true;
    }
};

using ReyePoly = MPoly<6>;  // variables: a, z1, z2, z3, z4, z5

}  // namespace pfwb
