#pragma once

// Mukai vectors (r, d h, s) on a degree-2n K3 restricted to the rank-3
// sublattice, the Euler pairing -chi = 2n d d' - r s' - s r', and the basis
// whose Gram matrix is Sigma_6.

#include <array>
#include <stdexcept>
#include <string>

#include "pfwb/matrix.hpp"
#include "pfwb/rational.hpp"

namespace pfwb {

struct MukaiVector {
    Int r, d, s;
    long n;  // degree 2n context

    friend bool operator==(const MukaiVector& a, const MukaiVector& b) {
        return a.r == b.r && a.d == b.d && a.s == b.s && a.n == b.n;
    }
};

// -chi(u, v) on a K3 of degree 2n (Riemann-Roch)
inline Int mukai_pairing(const MukaiVector& u, const MukaiVector& v) {
    if (u.n != v.n) throw std::invalid_argument("mukai_pairing: context mismatch");
    return Int(2 * u.n) * u.d * v.d - u.r * v.s - u.s * v.r;
}

// ch(E) sqrt(Td) with sqrt(Td) = (1, 0, 1):
//   O_x -> (0,0,1), I_x -> (1,0,0), O_X -> (1,0,1), O_h + n O_x -> (0,1,0)
inline MukaiVector mukai_vector_of(const std::string& symbol, long n) {
    if (symbol == "O_x") return {Int(0), Int(0), Int(1), n};
    if (symbol == "I_x") return {Int(1), Int(0), Int(0), n};
    if (symbol == "O_X") return {Int(1), Int(0), Int(1), n};
    if (symbol == "O_h_plus_nO_x") return {Int(0), Int(1), Int(0), n};
    throw std::invalid_argument("mukai_vector_of: unsupported symbol " + symbol);
}

// the Sigma_6 basis ([O_x], [O_h] + 6[O_x], -[I_x]) at n = 6
inline std::array<MukaiVector, 3> ktheory_basis(long n) {
    return {mukai_vector_of("O_x", n), mukai_vector_of("O_h_plus_nO_x", n),
            MukaiVector{Int(-1), Int(0), Int(0), n}};
}

inline Mat<Int> pairing_gram(const std::array<MukaiVector, 3>& basis) {
    Mat<Int> g(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = mukai_pairing(basis[i], basis[j]);
    return g;
}

// unique integer coefficients of v in the given basis; throws when v is not
// an integral combination
inline std::array<Int, 3> decompose_in_basis(const MukaiVector& v,
                                             const std::array<MukaiVector, 3>& basis) {
    Mat<Rational> a(3, 3, Rational(0));
    for (int j = 0; j < 3; ++j) {
        a(0, j) = Rational(basis[j].r);
        a(1, j) = Rational(basis[j].d);
        a(2, j) = Rational(basis[j].s);
    }
    auto res = eliminate(a);
    if (!res.invertible) throw std::domain_error("decompose_in_basis: basis does not span");
    std::vector<Rational> rhs{Rational(v.r), Rational(v.d), Rational(v.s)};
    std::array<Int, 3> out;
    for (int i = 0; i < 3; ++i) {
        Rational acc(0);
        for (int j = 0; j < 3; ++j) acc += res.inverse(i, j) * rhs[j];
        if (!is_integer(acc)) throw std::domain_error("decompose_in_basis: non-integral coefficients");
        out[i] = acc.get_num();
    }
    return out;
}

}  // namespace pfwb
