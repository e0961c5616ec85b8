#pragma once

// The Pluecker ideal of G(3,6) in double-spin coordinates (v, w): the 36
// generators (21 complementary-minor relations, 12 off-diagonal entries of
// v.w, 3 diagonal differences), parametrized points via the complementary-
// minor identity v = +-sqrt(det w) w^-1, the rank-consequence checks, the
// finite-field rank-3 search, and the special symmetroid determinant
// identity.

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/fp.hpp"
#include "pfwb/matrix.hpp"
#include "pfwb/mpoly.hpp"
#include "pfwb/rational.hpp"

namespace pfwb {

// index set I = {{i,j} : 1 <= i < j <= 4}
struct Index2 {
    int i, j;
};

inline std::array<Index2, 6> index2_all() {
    return {Index2{1, 2}, Index2{1, 3}, Index2{1, 4}, Index2{2, 3}, Index2{2, 4}, Index2{3, 4}};
}

inline Index2 index2_dual(const Index2& idx) {
    std::array<bool, 5> used{};
    used[idx.i] = used[idx.j] = true;
    int a = 0, b = 0;
    for (int k = 1; k <= 4; ++k)
        if (!used[k]) (a == 0 ? a : b) = k;
    return {a, b};
}

// sign of the permutation (i1, i2, j1, j2) of (1,2,3,4)
inline int epsilon(const Index2& I, const Index2& J) {
    std::array<int, 4> perm{I.i, I.j, J.i, J.j};
    std::array<bool, 5> seen{};
    for (int v : perm) {
        if (v < 1 || v > 4 || seen[v]) throw std::invalid_argument("epsilon: indices overlap");
        seen[v] = true;
    }
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (perm[a] > perm[b]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

template <class K>
struct SymmetricPair {
    Mat<K> v, w;  // 4x4 symmetric
};

template <class K>
K minor2(const Mat<K>& m, const Index2& rows, const Index2& cols) {
    return m(rows.i - 1, cols.i - 1) * m(rows.j - 1, cols.j - 1) -
           m(rows.i - 1, cols.j - 1) * m(rows.j - 1, cols.i - 1);
}

// all 36 generators; zero vector iff (v,w) lies on G(3,6)
template <class K>
std::vector<K> plucker_generators(const SymmetricPair<K>& p) {
    std::vector<K> out;
    auto idx = index2_all();
    // 21 minor relations, I <= J lexicographically
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a; b < idx.size(); ++b) {
            const Index2 &I = idx[a], &J = idx[b];
            Index2 Id = index2_dual(I), Jd = index2_dual(J);
            int sign = epsilon(I, Id) * epsilon(J, Jd);
            K rel = minor2(p.v, I, J) - K(sign) * minor2(p.w, Id, Jd);
            out.push_back(rel);
        }
    Mat<K> vw = p.v * p.w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) out.push_back(vw(i, j));
    for (int i = 1; i < 4; ++i) out.push_back(vw(0, 0) - vw(i, i));
    return out;
}

template <class K>
bool on_variety(const SymmetricPair<K>& p) {
    for (auto& g : plucker_generators(p))
        if (!(g == K(0))) return false;
    return true;
}

// (+- s w^-1, w) with s^2 = det w; the Jacobi complementary-minor identity
// makes every generator vanish
template <class K>
SymmetricPair<K> generic_point(const Mat<K>& w, const K& sqrt_det, int sign) {
    auto res = eliminate(w);
    if (!res.invertible) throw std::domain_error("generic_point: w singular");
    if (!(sqrt_det * sqrt_det == res.det))
        throw std::invalid_argument("generic_point: sqrt_det^2 != det w");
    K s = sign >= 0 ? sqrt_det : -sqrt_det;
    return {res.inverse.scaled(s), w};
}

struct ConsequenceReport {
    bool det_equal = false;        // det v = det w
    bool vw_scalar_sqrt = false;   // v.w = +-sqrt(det w) id
    bool rank_not_3 = false;       // rk v != 3 and rk w != 3
    bool rank2_iff = false;        // rk v = 2 <=> rk w = 2
    bool rank1_iff = false;        // rk v <= 1 <=> rk w <= 1
    bool all() const { return det_equal && vw_scalar_sqrt && rank_not_3 && rank2_iff && rank1_iff; }
};

template <class K>
ConsequenceReport consequence_check(const SymmetricPair<K>& p) {
    if (!on_variety(p)) throw std::invalid_argument("consequence_check: input not on the variety");
    ConsequenceReport rep;
    K dv = mat_det(p.v), dw = mat_det(p.w);
    rep.det_equal = dv == dw;
    // v.w must be c*id with c^2 = det w
    Mat<K> vw = p.v * p.w;
    bool scalar = true;
    K c = vw(0, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j && !(vw(i, j) == c)) scalar = false;
            if (i != j && !(vw(i, j) == K(0))) scalar = false;
        }
    rep.vw_scalar_sqrt = scalar && (c * c == dw);
    int rv = mat_rank(p.v), rw = mat_rank(p.w);
    rep.rank_not_3 = (rv != 3) && (rw != 3);
    rep.rank2_iff = (rv == 2) == (rw == 2);
    rep.rank1_iff = (rv <= 1) == (rw <= 1);
    return rep;
}

// --- sampling ------------------------------------------------------------------

// random symmetric integer matrix with square determinant: w = g^T g
inline Mat<Rational> random_gram_rational(std::mt19937_64& rng, Int& det_sqrt) {
    std::uniform_int_distribution<long> d(-4, 4);
    for (;;) {
        Mat<Rational> g(4, 4, Rational(0));
        for (auto& v : g.a) v = Rational(d(rng));
        Rational dg = mat_det(g);
        if (dg == 0) continue;
        det_sqrt = abs(dg.get_num());  // det(g^T g) = det(g)^2
        return g.transpose() * g;
    }
}

inline Mat<Fp> random_symmetric_fp(std::mt19937_64& rng, std::uint64_t p) {
    Mat<Fp> w(4, 4, Fp(0, p));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Fp x = random_fp(rng, p);
            w(i, j) = x;
            w(j, i) = x;
        }
    return w;
}

// random symmetric rank-3 matrix over F_p: B^T diag(*,*,*,0) B with B invertible
inline Mat<Fp> random_rank3_symmetric_fp(std::mt19937_64& rng, std::uint64_t p) {
    for (;;) {
        Mat<Fp> b(4, 4, Fp(0, p));
        for (auto& v : b.a) v = random_fp(rng, p);
        if (mat_rank(b) != 4) continue;
        Mat<Fp> d(4, 4, Fp(0, p));
        for (int i = 0; i < 3; ++i) {
            Fp x = random_fp(rng, p);
            while (x.is_zero()) x = random_fp(rng, p);
            d(i, i) = x;
        }
        Mat<Fp> v = b.transpose() * d * b;
        if (mat_rank(v) == 3) return v;
    }
}

struct Rank3SearchResult {
    long trials = 0;
    long solvable_systems = 0;
    std::vector<SymmetricPair<Fp>> counterexamples;  // expected empty
};

// sample rank-3 symmetric v, solve the linear system (v.w offdiag = 0,
// diagonal equal) for symmetric w, filter by the minor relations; any pair
// found on the variety with rk v = 3 is a counterexample to consequence 3)
inline Rank3SearchResult rank3_search(std::uint64_t p, long trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Rank3SearchResult result;
    result.trials = trials;
    for (long t = 0; t < trials; ++t) {
        Mat<Fp> v = random_rank3_symmetric_fp(rng, p);
        // unknowns: w_{ij}, i <= j (10); equations: (v.w)_{ij} = 0 (i != j),
        // (v.w)_{11} - (v.w)_{kk} = 0
        auto unknown_index = [](int i, int j) {
            if (i > j) std::swap(i, j);
            static const int base[4] = {0, 4, 7, 9};
            return base[i] + (j - i);
        };
        Mat<Fp> sys(15, 10, Fp(0, p));
        int row = 0;
        auto add_vw_entry = [&](int i, int j, int target_row, const Fp& scale) {
            // (v.w)_{ij} = sum_k v_{ik} w_{kj}
            for (int k = 0; k < 4; ++k) {
                int u = unknown_index(k, j);
                sys(target_row, u) = sys(target_row, u) + scale * v(i, k);
            }
        };
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) add_vw_entry(i, j, row++, Fp(1, p));
        for (int k = 1; k < 4; ++k) {
            add_vw_entry(0, 0, row, Fp(1, p));
            add_vw_entry(k, k, row, Fp(p - 1, p));
            ++row;
        }
        auto basis = mat_nullspace(sys);
        if (basis.empty()) continue;
        ++result.solvable_systems;
        for (auto& sol : basis) {
            Mat<Fp> w(4, 4, Fp(0, p));
            bool nonzero = false;
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    Fp x = sol[unknown_index(i, j)];
                    w(i, j) = x;
                    w(j, i) = x;
                    if (!x.is_zero()) nonzero = true;
                }
            if (!nonzero) continue;
            SymmetricPair<Fp> pair{v, w};
            if (on_variety(pair) && mat_rank(v) == 3) result.counterexamples.push_back(pair);
        }
    }
    return result;
}

// --- symmetroid determinant identity ---------------------------------------------

// the five special 5x5 symmetric matrices A_1..A_5 (pencil parameter a)
inline std::vector<Mat<Rational>> reye_Asp_matrices(const Rational& a) {
    std::vector<Mat<Rational>> mats;
    for (int k = 0; k < 5; ++k) {
        Mat<Rational> m(5, 5, Rational(0));
        m(k, k) = Rational(1);
        m(k, (k + 1) % 5) = a;
        m((k + 1) % 5, k) = a;
        // A_5 has its 1 in the bottom corner and a on the (1,5)/(5,1) slots,
        // which the cyclic formula already produces for k = 4
        mats.push_back(m);
    }
    return mats;
}

// A_sp(z)_{kj} = sum_i z_i (A_k)_{ij}: the displayed cyclic bidiagonal matrix
inline Mat<ReyePoly> reye_Asp_of_z_symbolic() {
    // variables: 0 = a, 1..5 = z1..z5
    ReyePoly a = ReyePoly::var(0);
    std::vector<ReyePoly> z;
    for (int i = 1; i <= 5; ++i) z.push_back(ReyePoly::var(i));
    Mat<ReyePoly> m(5, 5, ReyePoly(0));
    for (int k = 0; k < 5; ++k) {
        m(k, k) = z[k] + a * z[(k + 1) % 5];
        m(k, (k + 1) % 5) = a * z[k];
    }
    return m;
}

template <class K>
K det_by_expansion(const Mat<K>& m, std::vector<int> cols, int row) {
    if (cols.empty()) return K(1);
    K acc(0);
    int sign = 1;
    for (size_t pick = 0; pick < cols.size(); ++pick) {
        const K& entry = m(row, cols[pick]);
        if (!(entry == K(0))) {
            std::vector<int> rest;
            for (size_t q = 0; q < cols.size(); ++q)
                if (q != pick) rest.push_back(cols[q]);
            K sub = det_by_expansion(m, rest, row + 1);
            K term = entry * sub;
            acc = acc + (sign > 0 ? term : -term);
        }
        sign = -sign;
    }
    return acc;
}

struct SymmetroidCheck {
    bool identity_holds = false;
    bool homogeneous_degree5 = false;
    bool monomial_support_matches = false;
};

// det A_sp(z) = a^5 z1..z5 + (z1 + a z2)(z2 + a z3)(z3 + a z4)(z4 + a z5)(z5 + a z1)
inline SymmetroidCheck symmetroid_identity_symbolic() {
    Mat<ReyePoly> m = reye_Asp_of_z_symbolic();
    ReyePoly det = det_by_expansion(m, {0, 1, 2, 3, 4}, 0);

    ReyePoly a = ReyePoly::var(0);
    std::vector<ReyePoly> z;
    for (int i = 1; i <= 5; ++i) z.push_back(ReyePoly::var(i));
    ReyePoly rhs = a * a * a * a * a;
    for (auto& zi : z) rhs *= zi;
    ReyePoly prod = ReyePoly(1);
    for (int k = 0; k < 5; ++k) prod *= z[k] + a * z[(k + 1) % 5];
    rhs += prod;

    SymmetroidCheck chk;
    chk.identity_holds = det == rhs;
    chk.homogeneous_degree5 = det.is_homogeneous_in(1, 5);
    // support comparison
    chk.monomial_support_matches = true;
    for (auto& [e, c] : det.terms)
        if (rhs.terms.find(e) == rhs.terms.end()) chk.monomial_support_matches = false;
    for (auto& [e, c] : rhs.terms)
        if (det.terms.find(e) == det.terms.end()) chk.monomial_support_matches = false;
    return chk;
}

// specialize a; both sides as polynomials in z only
inline bool symmetroid_identity_at(const Rational& a_value) {
    Mat<ReyePoly> m = reye_Asp_of_z_symbolic();
    ReyePoly det = det_by_expansion(m, {0, 1, 2, 3, 4}, 0).substitute(0, a_value);
    std::vector<ReyePoly> z;
    for (int i = 1; i <= 5; ++i) z.push_back(ReyePoly::var(i));
    ReyePoly rhs = ReyePoly::constant(pow_rational(a_value, 5));
    for (auto& zi : z) rhs *= zi;
    ReyePoly prod = ReyePoly(1);
    for (int k = 0; k < 5; ++k) prod *= z[k] + ReyePoly::constant(a_value) * z[(k + 1) % 5];
    rhs += prod;
    return det == rhs;
}

}  // namespace pfwb
