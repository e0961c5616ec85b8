#pragma once

// Exact arithmetic in the Fricke-extended groups Gamma_0(6)+ and
// Gamma_0(6)+6 via 2x2 matrices over Q(sqrt2, sqrt3), the anti-homomorphism
// R into SO(2,1) preserving Sigma_6, and the identities tying the K3
// monodromy matrices to the group generators.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/lattice.hpp"
#include "pfwb/matrix.hpp"
#include "pfwb/quadext.hpp"

namespace pfwb {

using Mat2Q23 = Mat<QuadExt>;

inline QuadExt mat2_det(const Mat2Q23& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline Mat2Q23 mat2(const QuadExt& a, const QuadExt& b, const QuadExt& c, const QuadExt& d) {
    Mat2Q23 m(2, 2, QuadExt(0));
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    if (!(mat2_det(m) == QuadExt(1))) throw std::invalid_argument("mat2: determinant must be 1");
    return m;
}

// generators of Gamma_0(6)+ as displayed: T0, S1, S2 (with S2*S1 the third
// displayed generator)
inline Mat2Q23 modgroup_generator(const std::string& name) {
    QuadExt r2 = QuadExt::sqrt2(), r3 = QuadExt::sqrt3(), r6 = QuadExt::sqrt6();
    QuadExt inv_r6 = r6.inverse();  // sqrt6/6
    QuadExt inv_r2 = r2.inverse();
    if (name == "T0") return mat2(QuadExt(1), QuadExt(1), QuadExt(0), QuadExt(1));
    if (name == "S1") return mat2(QuadExt(0), -inv_r6, r6, QuadExt(0));
    if (name == "S2") return mat2(-r2, inv_r2, QuadExt(-3) * r2, r2);
    throw std::invalid_argument("unknown generator: " + name);
}

inline Mat2Q23 mat2_inverse(const Mat2Q23& m) {
    // det = 1
    return mat2(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0));
}

// R: (a b; c d) -> [[a^2, -2ac, -c^2/6], [-ab, ad+bc, cd/6], [-6b^2, 12bd, d^2]]
inline Mat<QuadExt> r_map(const Mat2Q23& g) {
    const QuadExt &a = g(0, 0), &b = g(0, 1), &c = g(1, 0), &d = g(1, 1);
    Mat<QuadExt> r(3, 3, QuadExt(0));
    QuadExt six(6), twelve(12);
    QuadExt sixth = QuadExt(make_rational(1, 6));
    r(0, 0) = a * a;
    r(0, 1) = QuadExt(-2) * a * c;
    r(0, 2) = -(c * c) * sixth;
    r(1, 0) = -(a * b);
    r(1, 1) = a * d + b * c;
    r(1, 2) = c * d * sixth;
    r(2, 0) = -six * b * b;
    r(2, 1) = twelve * b * d;
    r(2, 2) = d * d;
    return r;
}

inline Mat<QuadExt> sigma6_quadext() {
    Mat<QuadExt> s(3, 3, QuadExt(0));
    s(0, 2) = QuadExt(1);
    s(1, 1) = QuadExt(12);
    s(2, 0) = QuadExt(1);
    return s;
}

inline bool preserves_sigma6(const Mat<QuadExt>& r) {
    return r.transpose() * sigma6_quadext() * r == sigma6_quadext();
}

// integral part extraction; throws when an entry is irrational
inline Mat<Int> quadext_to_int(const Mat<QuadExt>& m) {
    Mat<Int> out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            const QuadExt& v = m(i, j);
            if (!v.is_rational() || !is_integer(v.a))
                throw std::domain_error("quadext_to_int: entry not an integer");
            out(i, j) = v.a.get_num();
        }
    return out;
}

// report normalization: projectively, +-g act alike; when trace != 0 pick the
// representative with positive trace
inline Mat2Q23 trace_normalized(const Mat2Q23& g) {
    QuadExt tr = g(0, 0) + g(1, 1);
    if (tr.is_zero()) return g;
    double t = tr.to_double();
    if (t < 0) {
        Mat2Q23 neg = g;
        for (auto& v : neg.a) v = -v;
        return neg;
    }
    return g;
}

struct Prop2104Report {
    bool m0_ok = false, ma1_ok = false, ma2_ok = false, uxz_ok = false;
    bool antihom_ok = false;
    bool all() const { return m0_ok && ma1_ok && ma2_ok && uxz_ok && antihom_ok; }
};

// M0 = R(T0^-1), M_a1 = -R(S1), M_a2 = -R(S2 S1 S2), U_xz = R(S1 S2),
// all checked exactly over Q(sqrt2, sqrt3) against the bundled table.
inline Prop2104Report verify_prop_2_10_4(const std::map<std::string, Mat<Int>>& table) {
    Mat2Q23 t0 = modgroup_generator("T0"), s1 = modgroup_generator("S1"),
            s2 = modgroup_generator("S2");
    Prop2104Report rep;
    auto as_int = [](const Mat<QuadExt>& m) { return quadext_to_int(m); };
    rep.m0_ok = as_int(r_map(mat2_inverse(t0))) == table.at("M0");
    rep.ma1_ok = as_int(-r_map(s1)) == table.at("Ma1");
    rep.ma2_ok = as_int(-r_map(s2 * s1 * s2)) == table.at("Ma2");
    rep.uxz_ok = as_int(r_map(s1 * s2)) == table.at("Uxz");
    // anti-homomorphism spot check: R(gh) = R(h) R(g)
    rep.antihom_ok = r_map(s1 * s2) == r_map(s2) * r_map(s1) &&
                     r_map(t0 * s1) == r_map(s1) * r_map(t0);
    return rep;
}

// order of the image of the given Sigma_6-isometries in Aut(A_Sigma6)
inline Int modgroup_disc_image_order(const std::vector<Mat<Int>>& gens) {
    Lattice sigma6;
    sigma6.gram = Mat<Int>::from_rows({{Int(0), Int(0), Int(1)},
                                       {Int(0), Int(12), Int(0)},
                                       {Int(1), Int(0), Int(0)}});
    sigma6.name = "Sigma6";
    return disc_image_order(sigma6, gens);
}

}  // namespace pfwb
