#pragma once

// Integral frames Pi = T . (n_0 w_0, ..., n_{r-1} w_{r-1}) built from the
// rank-3 K3 ansatz diag(1,1,-deg/2) and the rank-4 lower-triangular ansatz
// carrying (kappa, beta, gamma, a), plus the Griffiths-transversality
// residual checks that pin the normalizations.

#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/frobenius.hpp"
#include "pfwb/matrix.hpp"
#include "pfwb/numeric.hpp"
#include "pfwb/rational.hpp"

namespace pfwb {

struct IntegralFrame {
    int rank = 0;              // 3 or 4
    Int kappa = 0;             // H^3 (rank 4) or deg (rank 3, stored as deg)
    Rational beta = Rational(0);   // -c2.H/24
    Int euler = 0;             // e(X); gamma = -zeta(3) e / (2 pi i)^3
    Rational a = Rational(0);
    Int n_scale = 1;           // N in the ansatz; the bundled problems use 1
    Mat<Int> pairing;
    std::string label;

    // exact part of the ansatz (without the n_k = (2 pi i)^-k column scales
    // and without gamma, which is transcendental)
    // rank 3: diag(1, 1, -deg/2)
    // rank 4: [[1,0,0,0],[0,1,0,0],[beta,a,kappa/2,0],[gamma,beta,0,-kappa/6]]
    CMat ansatz(mpfr_prec_t prec) const {
        CMat t = cmat(rank, rank, prec);
        auto put = [&](int i, int j, const Rational& q) {
            t(i, j) = PrecComplex::from_rational(q, prec);
        };
        if (rank == 3) {
            put(0, 0, Rational(1));
            put(1, 1, Rational(1));
            put(2, 2, -Rational(kappa) / 2);
        } else if (rank == 4) {
            put(0, 0, Rational(1));
            put(1, 1, Rational(1));
            put(2, 0, beta);
            put(2, 1, a);
            put(2, 2, Rational(kappa) / 2);
            put(3, 0, Rational(0));
            put(3, 1, beta);
            put(3, 3, -Rational(kappa) / 6);
            t(3, 0) = gamma(prec);
        } else {
            throw std::logic_error("IntegralFrame: rank must be 3 or 4");
        }
        // column scales n_k = (2 pi i)^-k and the overall N
        PrecComplex tpi = two_pi_i(prec);
        PrecComplex nk = PrecComplex::one(prec);
        for (int k = 0; k < rank; ++k) {
            for (int i = 0; i < rank; ++i) t(i, k) = t(i, k) * nk;
            nk = nk / tpi;
        }
        PrecFloat ns = PrecFloat::from_int(n_scale, prec);
        for (auto& v : t.a) v = v.scaled(ns);
        return t;
    }

    // gamma = -zeta(3) e(X) / (2 pi i)^3
    PrecComplex gamma(mpfr_prec_t prec) const {
        PrecComplex num = PrecComplex::from_real(PrecFloat::zeta3(prec) *
                                                 PrecFloat::from_int(euler, prec));
        return -(num / two_pi_i(prec).pow_int(3));
    }
};

inline IntegralFrame build_k3_frame(long deg) {
    if (deg <= 0 || deg % 2 != 0) throw std::invalid_argument("build_k3_frame: deg must be positive even");
    IntegralFrame f;
    f.rank = 3;
    f.kappa = deg;
    f.label = "k3 deg " + std::to_string(deg);
    f.pairing = Mat<Int>::from_rows({{Int(0), Int(0), Int(1)},
                                     {Int(0), Int(deg), Int(0)},
                                     {Int(1), Int(0), Int(0)}});
    return f;
}

inline IntegralFrame build_cy3_frame(long kappa, long c2h, long euler) {
    if (kappa <= 0) throw std::invalid_argument("build_cy3_frame: kappa must be positive");
    IntegralFrame f;
    f.rank = 4;
    f.kappa = kappa;
    f.beta = make_rational(-c2h, 24);
    f.euler = euler;
    f.label = "cy3 kappa " + std::to_string(kappa);
    f.pairing = Mat<Int>::from_rows({{Int(0), Int(0), Int(0), Int(1)},
                                     {Int(0), Int(0), Int(1), Int(0)},
                                     {Int(0), Int(-1), Int(0), Int(0)},
                                     {Int(-1), Int(0), Int(0), Int(0)}});
    return f;
}

// --- Griffiths transversality -------------------------------------------------

struct GriffithsResidualReport {
    // |Pi^T S Pi|, |Pi^T S Pi'|, |Pi^T S Pi'' + C_xx/(2 pi i)^2|
    double r0 = 0, r1 = 0, r2 = 0;
    double tail = 0;
};

// K3 Yukawa coupling C_xx = deg/((1 - 34x + x^2) x^2) for the bundled
// degree-12 family
struct YukawaK3 {
    RatPoly numerator{std::vector<Rational>{Rational(12)}};
    RatPoly denominator{std::vector<Rational>{Rational(0), Rational(0), Rational(1), Rational(-34),
                                              Rational(1)}};

    PrecComplex eval(const PrecComplex& x, mpfr_prec_t prec) const {
        auto conv = [prec](const Rational& q) { return PrecComplex::from_rational(q, prec); };
        PrecComplex num = numerator.eval_in(x, conv, PrecComplex::zero(prec));
        PrecComplex den = denominator.eval_in(x, conv, PrecComplex::zero(prec));
        return num / den;
    }
};

// Evaluate the three rank-3 transversality residuals at a sample point.
// jacobian_sq: (dx/dz)^2 factor for the z-chart (1 for the x-chart).
inline GriffithsResidualReport griffiths_residuals(const FrobeniusBasis& basis,
                                                   const IntegralFrame& frame,
                                                   const YukawaK3& yukawa,
                                                   const Rational& sample, int digits,
                                                   bool z_chart = false) {
    if (frame.rank != 3) throw std::invalid_argument("griffiths_residuals: rank-3 frames only");
    mpfr_prec_t prec = bits_for_digits(digits);
    PrecComplex pt = PrecComplex::from_rational(sample, prec);
    BasisEvaluation ev = eval_basis(basis, pt, digits);

    CMat t = frame.ansatz(prec);
    // Pi, theta Pi, theta^2 Pi as column vectors: rows of ev are theta^m w_k
    CMat pi = cmat_mul(t, ev.values.transpose());  // pi(i, m) = theta^m Pi_i
    // convert theta-derivatives to d/dx: f' = theta f / x ; f'' = (theta^2 f - theta f)/x^2
    std::vector<PrecComplex> Pi(3), dPi(3), ddPi(3);
    PrecComplex x = pt, x2 = pt * pt;
    for (int i = 0; i < 3; ++i) {
        Pi[i] = pi(i, 0);
        dPi[i] = pi(i, 1) / x;
        ddPi[i] = (pi(i, 2) - pi(i, 1)) / x2;
    }
    CMat sg = mat_int_to_cmat(frame.pairing, prec);
    auto pair = [&](const std::vector<PrecComplex>& u, const std::vector<PrecComplex>& v) {
        PrecComplex acc = PrecComplex::zero(prec);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += u[i] * sg(i, j) * v[j];
        return acc;
    };

    PrecComplex c_xx;
    if (!z_chart) {
        c_xx = yukawa.eval(pt, prec);
    } else {
        // x = 1/z: evaluate C_xx at x(z), times (dx/dz)^2 = z^-4
        PrecComplex xval = PrecComplex::one(prec) / pt;
        c_xx = yukawa.eval(xval, prec) / pt.pow_int(4);
    }

    GriffithsResidualReport rep;
    rep.r0 = abs(pair(Pi, Pi)).to_double();
    rep.r1 = abs(pair(Pi, dPi)).to_double();
    PrecComplex expect = c_xx / two_pi_i(prec).pow_int(2);
    rep.r2 = abs(pair(Pi, ddPi) + expect).to_double();
    rep.tail = ev.tail_rel;
    return rep;
}

}  // namespace pfwb
