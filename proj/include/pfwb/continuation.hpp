#pragma once

// High-precision analytic continuation of a fundamental solution system by
// ordinary-point Taylor re-expansion, plus the path planners for loops and
// for the 0 <-> infinity connection.  All paths leave and re-enter the real
// axis through the upper half-plane.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/frobenius.hpp"
#include "pfwb/matrix.hpp"
#include "pfwb/numeric.hpp"
#include "pfwb/theta_operator.hpp"

namespace pfwb {

using complexd = std::complex<double>;

struct PathSpec {
    std::vector<complexd> waypoints;
    bool closed = false;
    std::string description;
};

struct TransferMatrix {
    CMat entries;
    std::string from_frame, to_frame;
    double error_bound = 0;
};

// ---- conversions between derivative coefficients and theta-values ----------

// theta^m f(u) = sum_i S2(m,i) u^i i! chat_i   (chat_i = f^(i)/i!)
inline CMat theta_from_coeff_matrix(const PrecComplex& u, int r, mpfr_prec_t prec) {
    std::vector<std::vector<unsigned long>> S2(r, std::vector<unsigned long>(r, 0));
    S2[0][0] = 1;
    for (int k = 1; k < r; ++k)
        for (int i = 1; i <= k; ++i)
            S2[k][i] = S2[k - 1][i - 1] + (i < k ? i * S2[k - 1][i] : 0);
    CMat m = cmat(r, r, prec);
    std::vector<PrecComplex> upow(r, PrecComplex::one(prec));
    for (int i = 1; i < r; ++i) upow[i] = upow[i - 1] * u;
    unsigned long fact = 1;
    std::vector<unsigned long> facts(r, 1);
    for (int i = 1; i < r; ++i) {
        fact *= static_cast<unsigned long>(i);
        facts[i] = fact;
    }
    for (int mm = 0; mm < r; ++mm)
        for (int i = 0; i < r; ++i)
            if (S2[mm][i]) m(mm, i) = upow[i].scaled(PrecFloat::from_ui(S2[mm][i] * facts[i], prec));
    return m;
}

// ---- the Taylor stepper -----------------------------------------------------

class Continuator {
  public:
    Continuator(const ThetaOperator& op, std::vector<complexd> singular, int digits)
        : op_(op), dx_(op.dx_form()), singular_(std::move(singular)), digits_(digits),
          prec_(bits_for_digits(digits)) {}

    mpfr_prec_t precision() const { return prec_; }

    double distance_to_singular(const complexd& u) const {
        double best = 1e300;
        for (auto& s : singular_) best = std::min(best, std::abs(u - s));
        return best;
    }

    // Continue a fundamental system along the polyline.  state(i, k) holds
    // the Taylor coefficient f_k^(i)(u)/i! of solution k at the current
    // center; returns the state at the final waypoint.
    CMat continue_system(CMat state, const PathSpec& path, double* error_acc = nullptr) const {
        if (path.waypoints.size() < 2) return state;
        complexd u = path.waypoints.front();
        for (size_t leg = 1; leg < path.waypoints.size(); ++leg) {
            complexd target = path.waypoints[leg];
            while (u != target) {
                double reach = 0.4 * distance_to_singular(u);
                if (reach <= 1e-300) throw std::domain_error("continuation: step radius underflow");
                complexd dir = target - u;
                double len = std::abs(dir);
                complexd next = len <= reach ? target : u + dir * (reach / len);
                state = step(state, u, next, error_acc);
                u = next;
            }
        }
        return state;
    }

    // One re-expansion: extend the local series at u and evaluate Taylor
    // coefficients at `next`.  The offset is formed in MPFR from the exactly
    // representable double endpoints, so expansion centers never drift.
    CMat step(const CMat& state, const complexd& u, const complexd& next, double* error_acc) const {
        const int r = op_.order;
        const int ncols = state.cols;
        // shift d/dx-form coefficient polys to the center
        std::vector<std::vector<PrecComplex>> beta(dx_.size());
        PrecComplex uc = PrecComplex::from_double(u.real(), u.imag(), prec_);
        for (size_t i = 0; i < dx_.size(); ++i) {
            auto& b = dx_[i];
            std::vector<PrecComplex> cs(b.c.size(), PrecComplex::zero(prec_));
            for (size_t s = 0; s < b.c.size(); ++s) cs[s] = PrecComplex::from_rational(b.c[s], prec_);
            // in-place Taylor shift: cs becomes the coefficients of b(u + t)
            int d = static_cast<int>(cs.size()) - 1;
            for (int k = 0; k < d; ++k)
                for (int j = d - 1; j >= k; --j) cs[j] += uc * cs[j + 1];
            beta[i] = std::move(cs);
        }
        const std::vector<PrecComplex>& br = beta[r];
        if (br.empty() || abs(br[0]).is_zero())
            throw std::domain_error("continuation: expansion center is singular");

        PrecComplex tc =
            PrecComplex::from_double(next.real(), next.imag(), prec_) - uc;  // exact in MPFR
        double tol = std::pow(10.0, -(digits_ + 15));

        CMat out = cmat(r, ncols, prec_);
        double step_err = 0;
        for (int col = 0; col < ncols; ++col) {
            std::vector<PrecComplex> c;
            for (int i = 0; i < r; ++i) c.push_back(state(i, col));
            // recurrence from the t^m coefficient of sum_i beta_i f^(i) = 0:
            //   sum_{i,s} beta_{i,s} ff(m-s+i, i) c_{m-s+i} = 0, solved for c_{m+r}
            std::vector<PrecComplex> sums(r, PrecComplex::zero(prec_));
            std::vector<PrecComplex> tpow{PrecComplex::one(prec_)};
            std::vector<double> ref(r, 0.0), window(r, 0.0);
            for (int m = 0;; ++m) {
                PrecComplex acc = PrecComplex::zero(prec_);
                for (size_t i = 0; i < beta.size(); ++i) {
                    for (size_t s = 0; s < beta[i].size(); ++s) {
                        long idx = m - static_cast<long>(s) + static_cast<long>(i);
                        if (idx < 0 || idx >= static_cast<long>(c.size())) continue;
                        unsigned long ff = falling(idx, static_cast<int>(i));
                        if (ff == 0) continue;
                        acc += beta[i][s] * c[idx].scaled(PrecFloat::from_ui(ff, prec_));
                    }
                }
                unsigned long ffr = falling(m + r, r);
                c.push_back(-(acc / br[0].scaled(PrecFloat::from_ui(ffr, prec_))));

                // fold the new coefficient into the evaluation sums
                int mm = m + r;
                while (static_cast<int>(tpow.size()) <= mm) tpow.push_back(tpow.back() * tc);
                for (int i = 0; i < r; ++i) {
                    unsigned long bc = binom_ul(mm, i);
                    PrecComplex term = c[mm].scaled(PrecFloat::from_ui(bc, prec_)) * tpow[mm - i];
                    sums[i] += term;
                    window[i] = std::max(window[i], abs(term).to_double());
                    ref[i] = std::max(ref[i], abs(sums[i]).to_double());
                }
                if (m >= 16 && m % 8 == 7) {
                    bool done = true;
                    for (int i = 0; i < r; ++i)
                        if (window[i] >= tol * std::max(ref[i], 1e-300)) done = false;
                    if (done) break;
                    std::fill(window.begin(), window.end(), 0.0);
                }
                if (m > (1 << 15)) throw std::domain_error("continuation: series did not converge");
            }
            // initial coefficients c_0..c_{r-1} were not folded by the loop
            for (int i = 0; i < r; ++i)
                for (int mm = i; mm < r; ++mm) {
                    unsigned long bc = binom_ul(mm, i);
                    sums[i] += c[mm].scaled(PrecFloat::from_ui(bc, prec_)) * tpow[mm - i];
                }
            for (int i = 0; i < r; ++i) {
                out(i, col) = sums[i];
                step_err = std::max(step_err, tol * std::max(1.0, ref[i]));
            }
        }
        if (error_acc) *error_acc += step_err;
        return out;
    }

    static unsigned long falling(long k, int i) {
        if (k < i) return 0;
        unsigned long v = 1;
        for (int j = 0; j < i; ++j) v *= static_cast<unsigned long>(k - j);
        return v;
    }
    static unsigned long binom_ul(long n, int k) {
        unsigned long v = 1;
        for (int j = 1; j <= k; ++j) v = v * static_cast<unsigned long>(n - k + j) / j;
        return v;
    }

    const ThetaOperator& op() const { return op_; }
    const std::vector<complexd>& singular_points() const { return singular_; }

  private:
    ThetaOperator op_;
    std::vector<RatPoly> dx_;
    std::vector<complexd> singular_;
    int digits_;
    mpfr_prec_t prec_;
};

// ---- path planning ----------------------------------------------------------

// Walk along the real axis from a to b, hopping over intervening real
// singularities through the upper half-plane.
inline void real_walk_upper(std::vector<complexd>& way, const std::vector<complexd>& singular,
                            double a, double b) {
    struct Hop {
        double center, radius;
    };
    std::vector<Hop> hops;
    double lo = std::min(a, b), hi = std::max(a, b);
    for (auto& s : singular) {
        if (std::abs(s.imag()) > 1e-12) continue;
        double x = s.real();
        if (x <= lo + 1e-15 || x >= hi - 1e-15) continue;
        double gap = 1e300;
        for (auto& t : singular)
            if (std::abs(t - s) > 1e-15) gap = std::min(gap, std::abs(t - s));
        double radius = 0.35 * gap;
        radius = std::min(radius, 0.45 * (x - lo));
        radius = std::min(radius, 0.45 * (hi - x));
        hops.push_back({x, radius});
    }
    std::sort(hops.begin(), hops.end(), [](const Hop& p, const Hop& q) { return p.center < q.center; });
    if (a > b) std::reverse(hops.begin(), hops.end());
    double dir = (b >= a) ? 1.0 : -1.0;
    for (auto& h : hops) {
        double enter = h.center - dir * h.radius;
        double exit = h.center + dir * h.radius;
        way.emplace_back(enter, 0.0);
        // quarter-circle waypoints over the top
        for (double ang : {0.75, 0.5, 0.25}) {
            double theta = dir > 0 ? ang * M_PI : (1.0 - ang) * M_PI;
            way.emplace_back(h.center + h.radius * std::cos(theta), h.radius * std::sin(theta));
        }
        way.emplace_back(exit, 0.0);
    }
    way.emplace_back(b, 0.0);
}

// Lasso around one singular point: approach from the base point along the
// real axis (hopping interveners), circle counterclockwise on a regular
// octagon, then return the same way.
inline PathSpec plan_loop(const std::vector<complexd>& singular, double base, complexd target,
                          int orientation = +1) {
    double gap = 1e300;
    for (auto& s : singular)
        if (std::abs(s - target) > 1e-15) gap = std::min(gap, std::abs(s - target));
    double radius = 0.35 * gap;

    PathSpec path;
    path.closed = true;
    path.description = "loop around " + std::to_string(target.real()) +
                       (orientation > 0 ? ", counterclockwise" : ", clockwise") +
                       ", via upper half-plane";

    // entry vertex of the octagon: on the segment from target toward base
    double entry_angle = (base < target.real()) ? M_PI : 0.0;
    complexd entry = target + std::polar(radius, entry_angle);

    std::vector<complexd> others;
    for (auto& s : singular)
        if (std::abs(s - target) > 1e-15) others.push_back(s);

    std::vector<complexd> approach;
    approach.emplace_back(base, 0.0);
    real_walk_upper(approach, others, base, entry.real());

    path.waypoints = approach;
    for (int k = 1; k < 8; ++k) {
        double ang = entry_angle + orientation * 2.0 * M_PI * k / 8.0;
        path.waypoints.push_back(target + std::polar(radius, ang));
    }
    path.waypoints.push_back(entry);
    for (size_t i = approach.size(); i-- > 1;) path.waypoints.push_back(approach[i - 1]);
    return path;
}

// Path from the base point out to `far` (real, beyond all singularities),
// rising over the real axis: climb at |base|, traverse along arg = pi/2,
// descend at |far|.
inline PathSpec plan_connection(const std::vector<complexd>& singular, double base, double far) {
    PathSpec path;
    path.description = "connection path through the upper half-plane";
    path.waypoints.emplace_back(base, 0.0);
    double r0 = std::abs(base), r1 = std::abs(far);
    path.waypoints.push_back(std::polar(r0, M_PI / 4));
    path.waypoints.push_back(std::polar(r0, M_PI / 2));
    // geometric climb along the imaginary axis
    for (double rho = r0 * 4; rho < r1; rho *= 4) path.waypoints.push_back(std::polar(rho, M_PI / 2));
    path.waypoints.push_back(std::polar(r1, M_PI / 2));
    path.waypoints.push_back(std::polar(r1, M_PI / 4));
    path.waypoints.emplace_back(far, 0.0);
    (void)singular;
    return path;
}

// ---- frame-level operations -------------------------------------------------

// Fundamental-system state (Taylor coefficients) from theta-values at u.
inline CMat state_from_theta_values(const CMat& theta_values, const PrecComplex& u,
                                    mpfr_prec_t prec) {
    int r = theta_values.rows;
    CMat conv = theta_from_coeff_matrix(u, r, prec);
    return cmat_mul(cmat_inverse(conv), theta_values);
}

inline CMat theta_values_from_state(const CMat& state, const PrecComplex& u, mpfr_prec_t prec) {
    int r = state.rows;
    CMat conv = theta_from_coeff_matrix(u, r, prec);
    return cmat_mul(conv, state);
}

// Monodromy of the w-frame around `target`: continued w equals M_w . w.
inline CMat loop_monodromy_w(const Continuator& cont, const FrobeniusBasis& basis, double base,
                             complexd target, int digits, int orientation = +1,
                             double* error_out = nullptr) {
    mpfr_prec_t prec = cont.precision();
    PathSpec path = plan_loop(cont.singular_points(), base, target, orientation);
    PrecComplex u0 = PrecComplex::from_double(base, 0.0, prec);
    BasisEvaluation start = eval_basis(basis, u0, digits);
    CMat state = state_from_theta_values(start.values, u0, prec);
    double err = start.tail_rel;
    state = cont.continue_system(state, path, &err);
    CMat end_theta = theta_values_from_state(state, u0, prec);
    CMat a_t = cmat_mul(cmat_inverse(start.values), end_theta);
    if (error_out) *error_out = err;
    return a_t.transpose();
}

// Connection: continued x-chart w-frame expressed in the z-chart frame at
// x1 = 1/z1:  w_k(continued) = sum_l C_{kl} wtilde_l.
inline CMat connect_frames_w(const Continuator& cont, const FrobeniusBasis& basis_x,
                             const FrobeniusBasis& basis_z, double base_x, double base_z,
                             int digits, double* error_out = nullptr) {
    mpfr_prec_t prec = cont.precision();
    double far = 1.0 / base_z;
    PathSpec path = plan_connection(cont.singular_points(), base_x, far);
    PrecComplex u0 = PrecComplex::from_double(base_x, 0.0, prec);
    PrecComplex u1 = PrecComplex::from_double(far, 0.0, prec);
    PrecComplex z1 = PrecComplex::from_double(base_z, 0.0, prec);

    BasisEvaluation start = eval_basis(basis_x, u0, digits);
    CMat state = state_from_theta_values(start.values, u0, prec);
    double err = start.tail_rel;
    state = cont.continue_system(state, path, &err);
    CMat end_theta_x = theta_values_from_state(state, u1, prec);

    BasisEvaluation ztheta = eval_basis(basis_z, z1, digits);
    err += ztheta.tail_rel;
    // theta_x = -theta_z, so theta_x^m wtilde = (-1)^m theta_z^m wtilde
    CMat zvals = ztheta.values;
    for (int m = 1; m < zvals.rows; m += 2)
        for (int k = 0; k < zvals.cols; ++k) zvals(m, k) = -zvals(m, k);

    CMat c_t = cmat_mul(cmat_inverse(zvals), end_theta_x);
    if (error_out) *error_out = err;
    return c_t.transpose();
}

}  // namespace pfwb
