#pragma once

// Truncated power series in a nilpotent eps, used for the Frobenius
// construction: carrying a solution family x^(rho+eps) * sum c_k(eps) x^k to
// order eps^(r-1) yields all logarithmic solutions at once.

#include <stdexcept>
#include <vector>

#include "pfwb/rational.hpp"

namespace pfwb {

template <class K>
struct Jet {
    std::vector<K> a;  // a[i] = coefficient of eps^i; fixed length = order

    explicit Jet(size_t order) : a(order, K(0)) {}
    static Jet constant(size_t order, const K& c) {
        Jet j(order);
        j.a[0] = c;
        return j;
    }

    size_t order() const { return a.size(); }

    friend Jet operator+(const Jet& x, const Jet& y) {
        Jet r(x.order());
        for (size_t i = 0; i < r.order(); ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }
    friend Jet operator-(const Jet& x, const Jet& y) {
        Jet r(x.order());
        for (size_t i = 0; i < r.order(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }
    friend Jet operator-(const Jet& x) {
        Jet r(x.order());
        for (size_t i = 0; i < r.order(); ++i) r.a[i] = -x.a[i];
        return r;
    }
    friend Jet operator*(const Jet& x, const Jet& y) {
        Jet r(x.order());
        for (size_t i = 0; i < r.order(); ++i)
            for (size_t j = 0; i + j < r.order(); ++j) r.a[i + j] = r.a[i + j] + x.a[i] * y.a[j];
        return r;
    }
    Jet& operator+=(const Jet& y) { return *this = *this + y; }
    Jet& operator-=(const Jet& y) { return *this = *this - y; }
    Jet& operator*=(const Jet& y) { return *this = *this * y; }

    // division by a jet with invertible constant term
    friend Jet operator/(const Jet& x, const Jet& y) {
        if (y.a[0] == K(0)) throw std::domain_error("Jet: division by eps-multiple");
        Jet r(x.order());
        for (size_t i = 0; i < r.order(); ++i) {
            K acc = x.a[i];
            for (size_t j = 0; j < i; ++j) acc = acc - r.a[j] * y.a[i - j];
            r.a[i] = acc / y.a[0];
        }
        return r;
    }

    bool is_zero() const {
        for (auto& v : a)
            if (!(v == K(0))) return false;
        return true;
    }
};

using RJet = Jet<Rational>;

}  // namespace pfwb
