#pragma once

// Integer-lattice toolkit: Smith normal form with transforms, discriminant
// groups A_L = L*/L with their Q/2Z-valued forms, isometry actions on A_L,
// the Nikulin hypothesis checkers, and the rho=1 Fourier-Mukai count.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/matrix.hpp"
#include "pfwb/rational.hpp"
#include "pfwb/report.hpp"

namespace pfwb {

struct Lattice;
inline bool verify_isometry(const Lattice& l, const Mat<Int>& m);

struct Lattice {
    Mat<Int> gram;
    std::string name;

    int rank() const { return gram.rows; }
    bool is_symmetric() const {
        for (int i = 0; i < gram.rows; ++i)
            for (int j = i + 1; j < gram.cols; ++j)
                if (gram(i, j) != gram(j, i)) return false;
        return true;
    }
    bool is_even() const {
        for (int i = 0; i < gram.rows; ++i)
            if (gram(i, i) % 2 != 0) return false;
        return true;
    }
    Int det() const {
        Rational d = mat_det(mat_int_to_rational(gram));
        return d.get_num();
    }
};

// --- standard blocks ---------------------------------------------------------

inline Lattice lattice_rank1(long k) {
    Lattice l;
    l.gram = Mat<Int>(1, 1);
    l.gram(0, 0) = k;
    l.name = "<" + std::to_string(k) + ">";
    return l;
}

inline Lattice lattice_U() {
    Lattice l;
    l.gram = Mat<Int>::from_rows({{Int(0), Int(1)}, {Int(1), Int(0)}});
    l.name = "U";
    return l;
}

// E8(-1): negated E8 Cartan matrix (Bourbaki labeling; node 2 is the branch)
inline Lattice lattice_E8_minus() {
    static const int cartan[8][8] = {
        {2, 0, -1, 0, 0, 0, 0, 0},
        {0, 2, 0, -1, 0, 0, 0, 0},
        {-1, 0, 2, -1, 0, 0, 0, 0},
        {0, -1, -1, 2, -1, 0, 0, 0},
        {0, 0, 0, -1, 2, -1, 0, 0},
        {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, -1},
        {0, 0, 0, 0, 0, 0, -1, 2},
    };
    Lattice l;
    l.gram = Mat<Int>(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) l.gram(i, j) = -cartan[i][j];
    l.name = "E8(-1)";
    return l;
}

inline Lattice direct_sum(const std::vector<Lattice>& parts, const std::string& name = "") {
    int n = 0;
    for (auto& p : parts) n += p.rank();
    Lattice l;
    l.gram = Mat<Int>(n, n);
    int off = 0;
    for (auto& p : parts) {
        for (int i = 0; i < p.rank(); ++i)
            for (int j = 0; j < p.rank(); ++j) l.gram(off + i, off + j) = p.gram(i, j);
        off += p.rank();
    }
    l.name = name;
    return l;
}

inline Lattice lattice_K3() {
    return direct_sum({lattice_E8_minus(), lattice_E8_minus(), lattice_U(), lattice_U(), lattice_U()},
                      "L_K3");
}

// --- Smith normal form --------------------------------------------------------

struct SmithResult {
    Mat<Int> u, d, v;  // u * m * v = d, u and v unimodular, d_i | d_{i+1}
};

inline SmithResult smith_normal_form(Mat<Int> m) {
    int rows = m.rows, cols = m.cols;
    Mat<Int> u = Mat<Int>::identity(rows), v = Mat<Int>::identity(cols);

    auto row_op = [&](int i, int j, const Int& f) {  // row_i -= f*row_j
        for (int k = 0; k < cols; ++k) m(i, k) -= f * m(j, k);
        for (int k = 0; k < rows; ++k) u(i, k) -= f * u(j, k);
    };
    auto col_op = [&](int i, int j, const Int& f) {  // col_i -= f*col_j
        for (int k = 0; k < rows; ++k) m(k, i) -= f * m(k, j);
        for (int k = 0; k < cols; ++k) v(k, i) -= f * v(k, j);
    };
    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < cols; ++k) std::swap(m(i, k), m(j, k));
        for (int k = 0; k < rows; ++k) std::swap(u(i, k), u(j, k));
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < rows; ++k) std::swap(m(k, i), m(k, j));
        for (int k = 0; k < cols; ++k) std::swap(v(k, i), v(k, j));
    };
    auto row_neg = [&](int i) {
        for (int k = 0; k < cols; ++k) m(i, k) = -m(i, k);
        for (int k = 0; k < rows; ++k) u(i, k) = -u(i, k);
    };

    int t = 0;
    while (t < rows && t < cols) {
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (m(i, j) != 0 && (pi < 0 || abs(m(i, j)) < abs(m(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            // clear column t, then row t; swaps bring smaller remainders up
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Int q = m(i, t) / m(t, t);
                row_op(i, t, q);
                if (m(i, t) != 0) {
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Int q = m(t, j) / m(t, t);
                col_op(j, t, q);
                if (m(t, j) != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the whole remaining block for the chain
            int bi = -1, bj = -1;
            for (int i = t + 1; i < rows && bi < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) break;
            row_op(t, bi, Int(-1));  // row_t += row_bi, reintroduces column work
            (void)bj;
        }
        if (m(t, t) < 0) row_neg(t);
        ++t;
    }
    return {u, m, v};
}

// --- discriminant groups --------------------------------------------------------

struct DiscriminantGroup {
    std::vector<Int> orders;                   // d_1 | d_2 | ..., all > 1
    std::vector<std::vector<Rational>> lifts;  // generator lifts in L* (basis coords)
    std::vector<Rational> q_values;            // q(g_i) in Q mod 2Z
    Int group_order = 1;

    int min_generators() const { return static_cast<int>(orders.size()); }
};

inline Rational mod2(const Rational& q) {
    // reduce to [0, 2)
    Rational two(2);
    Rational r = q - two * Rational(round_nearest(q / two));
    if (r < 0) r += two;
    if (r >= two) r -= two;
    return r;
}

inline DiscriminantGroup discriminant_group(const Lattice& l) {
    if (l.det() == 0) throw std::domain_error("discriminant_group: degenerate lattice");
    SmithResult s = smith_normal_form(l.gram);
    Mat<Rational> ginv = mat_inverse(mat_int_to_rational(l.gram));
    Mat<Rational> uinv = mat_inverse(mat_int_to_rational(s.u));
    DiscriminantGroup d;
    int n = l.rank();
    for (int i = 0; i < n; ++i) {
        Int di = s.d(i, i);
        if (di == 1 || di == -1) continue;
        d.orders.push_back(abs(di));
        d.group_order *= abs(di);
        // lift: G^-1 U^-1 e_i ; its class has order d_i in L*/L
        std::vector<Rational> lift(n, Rational(0));
        for (int r = 0; r < n; ++r) {
            Rational acc(0);
            for (int k = 0; k < n; ++k) acc += ginv(r, k) * uinv(k, i);
            lift[r] = acc;
        }
        d.lifts.push_back(lift);
    }
    // q(g) = g^T G g mod 2
    for (auto& g : d.lifts) {
        Rational acc(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += g[i] * Rational(l.gram(i, j)) * g[j];
        d.q_values.push_back(mod2(acc));
    }
    return d;
}

// class coordinates of a dual vector: x in L* -> components of [x] on the
// generators (entries of U G x mod d_i)
inline std::vector<Int> disc_coordinates(const Lattice& l, const SmithResult& s,
                                         const std::vector<Rational>& x) {
    int n = l.rank();
    std::vector<Int> out;
    std::vector<Rational> gx(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gx[i] += Rational(l.gram(i, j)) * x[j];
    for (int i = 0; i < n; ++i) {
        Int di = s.d(i, i);
        if (di == 1 || di == -1) continue;
        Rational acc(0);
        for (int k = 0; k < n; ++k) acc += Rational(s.u(i, k)) * gx[k];
        if (!is_integer(acc)) throw std::logic_error("disc_coordinates: non-integral class");
        Int v = acc.get_num();
        Int m = abs(di);
        Int r = ((v % m) + m) % m;
        out.push_back(r);
    }
    return out;
}

// --- signatures -----------------------------------------------------------------

struct Signature {
    int positive = 0, negative = 0, zero = 0;
};

// exact inertia by symmetric (congruence) reduction over Q
inline Signature signature_of(const Mat<Int>& gram) {
    int n = gram.rows;
    Mat<Rational> a = mat_int_to_rational(gram);
    Signature sig;
    std::vector<bool> done(n, false);
    Mat<Rational> cur = a;
    // repeatedly pick a nonzero diagonal pivot (after a fixing transvection
    // if the diagonal vanishes) and split it off
    std::vector<int> alive;
    for (int i = 0; i < n; ++i) alive.push_back(i);
    while (!alive.empty()) {
        int p = -1;
        for (int i : alive)
            if (cur(i, i) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // all diagonal zero: find a nonzero off-diagonal pair and mix
            int fi = -1, fj = -1;
            for (int i : alive) {
                for (int j : alive)
                    if (i != j && cur(i, j) != 0) {
                        fi = i;
                        fj = j;
                        break;
                    }
                if (fi >= 0) break;
            }
            if (fi < 0) {
                sig.zero += static_cast<int>(alive.size());
                break;
            }
            // e_fi += e_fj makes the diagonal entry 2*cur(fi,fj) != 0
            for (int k = 0; k < n; ++k) cur(fi, k) += cur(fj, k);
            for (int k = 0; k < n; ++k) cur(k, fi) += cur(k, fj);
            continue;
        }
        Rational d = cur(p, p);
        if (d > 0) ++sig.positive;
        else ++sig.negative;
        // clear row/col p against the rest
        std::vector<int> rest;
        for (int i : alive)
            if (i != p) rest.push_back(i);
        for (int i : rest) {
            Rational f = cur(i, p) / d;
            if (f == 0) continue;
            for (int k = 0; k < n; ++k) cur(i, k) -= f * cur(p, k);
            for (int k = 0; k < n; ++k) cur(k, i) -= f * cur(k, p);
        }
        alive = rest;
    }
    (void)done;
    return sig;
}

// --- Nikulin hypothesis checkers -------------------------------------------------

struct HypothesisReport {
    bool verdict = false;
    std::vector<std::pair<std::string, bool>> hypotheses;
    std::string summary;

    void add(const std::string& text, bool ok) { hypotheses.emplace_back(text, ok); }
    void finish() {
        verdict = true;
        for (auto& [t, ok] : hypotheses) verdict = verdict && ok;
    }
};

// rk L >= 2 + l(A_L) for indefinite L: isogeny class trivial and
// O(L) -> O(A_L) surjective
inline HypothesisReport nikulin_surjectivity(const Lattice& l) {
    HypothesisReport rep;
    Signature sig = signature_of(l.gram);
    bool indefinite = sig.positive > 0 && sig.negative > 0;
    rep.add("L indefinite (signature (" + std::to_string(sig.positive) + "," +
                std::to_string(sig.negative) + "))",
            indefinite);
    DiscriminantGroup d = discriminant_group(l);
    int ell = d.min_generators();
    bool rank_ok = l.rank() >= 2 + ell;
    rep.add("rk L = " + std::to_string(l.rank()) + " >= 2 + l(A_L) = " + std::to_string(2 + ell),
            rank_ok);
    rep.finish();
    rep.summary = rep.verdict ? "isogeny class trivial; O(L) -> O(A_L) surjective"
                              : "hypotheses not satisfied";
    return rep;
}

// unique primitive embedding M -> L for even unimodular L
inline HypothesisReport nikulin_unique_embedding(const Lattice& l, const Lattice& m) {
    HypothesisReport rep;
    if (!l.is_even() || !m.is_even())
        throw std::domain_error("nikulin_unique_embedding: even lattices required");
    Int det_l = l.det();
    bool unimod = det_l == 1 || det_l == -1;
    rep.add("L unimodular (det " + det_l.get_str() + ")", unimod);
    Signature sl = signature_of(l.gram), sm = signature_of(m.gram);
    bool pos_ok = sl.positive - sm.positive > 0;
    bool neg_ok = sl.negative - sm.negative > 0;
    rep.add("l+ - m+ = " + std::to_string(sl.positive - sm.positive) + " > 0", pos_ok);
    rep.add("l- - m- = " + std::to_string(sl.negative - sm.negative) + " > 0", neg_ok);
    DiscriminantGroup dm = discriminant_group(m);
    int ell = dm.min_generators();
    bool rank_ok = l.rank() - m.rank() >= 2 + ell;
    rep.add("rk L - rk M = " + std::to_string(l.rank() - m.rank()) +
                " >= 2 + l(A_M) = " + std::to_string(2 + ell),
            rank_ok);
    rep.finish();
    rep.summary = rep.verdict ? "primitive embedding unique up to O(L)" : "hypotheses not satisfied";
    return rep;
}

// --- isometry action on the discriminant group ----------------------------------

struct DiscAction {
    std::vector<std::vector<Int>> images;  // images[i] = coordinates of M g_i
    std::vector<Int> orders;               // cyclic orders (same as the group)
    bool trivial = true;
};

inline DiscAction induced_disc_action(const Lattice& l, const Mat<Int>& m) {
    if (!verify_isometry(l, m)) throw std::domain_error("induced_disc_action: not an isometry");
    SmithResult s = smith_normal_form(l.gram);
    DiscriminantGroup d = discriminant_group(l);
    DiscAction act;
    act.orders = d.orders;
    int n = l.rank();
    for (size_t gi = 0; gi < d.lifts.size(); ++gi) {
        std::vector<Rational> mg(n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mg[i] += Rational(m(i, j)) * d.lifts[gi][j];
        std::vector<Int> coords = disc_coordinates(l, s, mg);
        std::vector<Int> self = disc_coordinates(l, s, d.lifts[gi]);
        if (coords != self) act.trivial = false;
        act.images.push_back(coords);
    }
    return act;
}

inline bool verify_isometry(const Lattice& l, const Mat<Int>& m) {
    return m.transpose() * l.gram * m == l.gram;
}

// order of the subgroup of Aut(A_L) generated by the induced actions
inline Int disc_image_order(const Lattice& l, const std::vector<Mat<Int>>& gens) {
    SmithResult s = smith_normal_form(l.gram);
    DiscriminantGroup d = discriminant_group(l);
    int n = l.rank();
    size_t k = d.lifts.size();
    using Key = std::vector<Int>;  // concatenated images of all generators

    auto action_of = [&](const Mat<Int>& m) {
        if (!verify_isometry(l, m)) throw std::domain_error("disc_image_order: not an isometry");
        std::vector<std::vector<Int>> imgs;
        for (size_t gi = 0; gi < k; ++gi) {
            std::vector<Rational> mg(n, Rational(0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) mg[i] += Rational(m(i, j)) * d.lifts[gi][j];
            imgs.push_back(disc_coordinates(l, s, mg));
        }
        return imgs;
    };
    auto flatten = [&](const std::vector<std::vector<Int>>& imgs) {
        Key key;
        for (auto& v : imgs)
            for (auto& x : v) key.push_back(x);
        return key;
    };
    // compose actions by matrix composition on class coordinates:
    // action B after action A maps g_i to B applied to A(g_i); expand A(g_i)
    // (a coordinate vector) through B's images of the generators.
    auto compose = [&](const std::vector<std::vector<Int>>& a,
                       const std::vector<std::vector<Int>>& b) {
        std::vector<std::vector<Int>> out;
        for (size_t gi = 0; gi < k; ++gi) {
            std::vector<Int> acc(k, Int(0));
            for (size_t gj = 0; gj < k; ++gj) {
                for (size_t c = 0; c < k; ++c) acc[c] += a[gi][gj] * b[gj][c];
            }
            for (size_t c = 0; c < k; ++c) acc[c] = ((acc[c] % d.orders[c]) + d.orders[c]) % d.orders[c];
            out.push_back(acc);
        }
        return out;
    };

    std::vector<std::vector<std::vector<Int>>> gen_actions;
    for (auto& g : gens) gen_actions.push_back(action_of(g));

    // identity action
    std::vector<std::vector<Int>> ident;
    for (size_t gi = 0; gi < k; ++gi) {
        std::vector<Int> row(k, Int(0));
        row[gi] = 1;
        ident.push_back(row);
    }

    std::set<Key> seen{flatten(ident)};
    std::vector<std::vector<std::vector<Int>>> frontier{ident};
    while (!frontier.empty()) {
        std::vector<std::vector<std::vector<Int>>> next;
        for (auto& el : frontier)
            for (auto& g : gen_actions) {
                auto comp = compose(el, g);
                if (seen.insert(flatten(comp)).second) next.push_back(comp);
            }
        frontier = std::move(next);
    }
    return Int(static_cast<long>(seen.size()));
}

// --- Fourier-Mukai count at Picard rank one --------------------------------------

// |FM(X)| = 2^(p(n)-1), p(n) = number of distinct primes of n, p(1) = 1
inline Int fm_count_picard_one(long n) {
    if (n < 1) throw std::invalid_argument("fm_count_picard_one: n >= 1 required");
    int p = 0;
    long m = n;
    for (long f = 2; f * f <= m; ++f)
        if (m % f == 0) {
            ++p;
            while (m % f == 0) m /= f;
        }
    if (m > 1) ++p;
    if (n == 1) p = 1;
    return pow_int(Int(2), static_cast<unsigned long>(p - 1));
}

inline Lattice lattice_from_json(const Json& j) {
    Lattice l;
    l.name = j.value("name", "");
    l.gram = mat_from_json(j.at("gram"));
    if (!l.is_symmetric()) throw std::runtime_error("lattice gram not symmetric: " + l.name);
    return l;
}

}  // namespace pfwb
