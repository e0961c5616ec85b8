#pragma once

// Frobenius bases with logarithms at a MUM point, built from the x-graded
// recursion on an eps-jet family  x^(rho+eps) sum_k c_k(eps) x^k.
// Solution m is the m-th eps-derivative at 0, then corrected by lower basis
// elements so the regular part of w_m starts at x^m (the normalization that
// pins the integral monodromy frames).

#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/jet.hpp"
#include "pfwb/matrix.hpp"
#include "pfwb/numeric.hpp"
#include "pfwb/theta_operator.hpp"

namespace pfwb {

// One solution  x^rho * sum_i (log x)^i * part[i](x)  with rational series.
struct LogSolution {
    Rational rho;
    std::vector<std::vector<Rational>> parts;  // parts[i][m]: coeff of x^m in the log^i series

    int log_depth() const { return static_cast<int>(parts.size()) - 1; }
};

// theta(f) for f = x^rho * sum_i log^i * part_i :
//   theta(x^(rho+m) log^i) = (rho+m) x^(rho+m) log^i + i x^(rho+m) log^(i-1)
inline LogSolution theta_apply(const LogSolution& f) {
    LogSolution g;
    g.rho = f.rho;
    g.parts.assign(f.parts.size(), {});
    for (size_t i = 0; i < f.parts.size(); ++i) {
        auto& src = f.parts[i];
        auto& dst = g.parts[i];
        dst.resize(src.size(), Rational(0));
        for (size_t m = 0; m < src.size(); ++m) dst[m] += (f.rho + Rational(static_cast<long>(m))) * src[m];
        if (i + 1 < f.parts.size()) {
            auto& up = f.parts[i + 1];
            for (size_t m = 0; m < up.size() && m < dst.size(); ++m)
                dst[m] += Rational(static_cast<long>(i + 1)) * up[m];
        }
    }
    return g;
}

// L(f) for L in theta form; result series valid up to the input truncation
// minus the top x-grade.
inline LogSolution operator_apply(const ThetaOperator& op, const LogSolution& f) {
    LogSolution acc;
    acc.rho = f.rho;
    acc.parts.assign(f.parts.size(), {});
    size_t n = f.parts.empty() ? 0 : f.parts[0].size();
    for (auto& p : acc.parts) p.assign(n, Rational(0));
    // cache theta powers
    std::vector<LogSolution> th{f};
    for (int k = 1; k <= op.order; ++k) th.push_back(theta_apply(th.back()));
    for (auto& [j, P] : op.terms) {
        for (int k = 0; k <= P.degree(); ++k) {
            if (P.coeff(k) == 0) continue;
            const LogSolution& tk = th[k];
            for (size_t i = 0; i < tk.parts.size(); ++i)
                for (size_t m = 0; m + j < n && m < tk.parts[i].size(); ++m)
                    acc.parts[i][m + j] += P.coeff(k) * tk.parts[i][m];
        }
    }
    return acc;
}

struct FrobeniusBasis {
    std::string chart;  // "x" or "z"
    Rational rho;
    int order = 0;
    int truncation = 0;
    std::vector<LogSolution> solutions;       // solutions[k]: log-depth k
    std::vector<bool> normalized;             // regular part of w_k starts at x^k

    // nearest other singularity; |x| below this converges (set by builder)
    double convergence_radius = 0;
};

// Is the chart origin a MUM point?  P0 must be lead*(theta-rho)^order.
inline bool mum_exponent(const ThetaOperator& op, Rational& rho_out) {
    const RatPoly& p0 = op.term(0);
    if (p0.degree() != op.order || op.order < 1) return false;
    Rational lead = p0.leading();
    Rational rho = -p0.coeff(op.order - 1) / (Rational(op.order) * lead);
    RatPoly lin(std::vector<Rational>{-rho, Rational(1)});
    if (!(lin.pow(static_cast<unsigned>(op.order)).scaled(lead) == p0)) return false;
    rho_out = rho;
    return true;
}

// P(c + eps) as a jet
inline RJet poly_jet(const RatPoly& p, const Rational& c, size_t order) {
    RJet x = RJet::constant(order, c);
    if (order >= 2) x.a[1] = Rational(1);
    RJet acc(order);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * x + RJet::constant(order, *it);
    return acc;
}

inline FrobeniusBasis frobenius_mum_basis(const ThetaOperator& op, const std::string& chart,
                                          int truncation) {
    Rational rho;
    if (!mum_exponent(op, rho))
        throw std::domain_error("frobenius_mum_basis: chart origin is not a MUM point");
    const int r = op.order;
    if (truncation < 2 * r) throw std::invalid_argument("truncation too small");
    const size_t jet_order = static_cast<size_t>(r);

    // c_k(eps) by the x-graded recursion
    std::vector<RJet> c;
    c.reserve(truncation + 1);
    c.push_back(RJet::constant(jet_order, Rational(1)));
    const int top = op.max_grade();
    for (int m = 1; m <= truncation; ++m) {
        RJet acc(jet_order);
        for (int j = 1; j <= std::min(m, top); ++j) {
            const RatPoly& pj = op.term(j);
            if (pj.is_zero()) continue;
            acc += poly_jet(pj, rho + Rational(m - j), jet_order) * c[m - j];
        }
        RJet den = poly_jet(op.term(0), rho + Rational(m), jet_order);
        if (den.a[0] == 0)
            throw std::domain_error("frobenius_mum_basis: resonance (P0(rho+k)=0 for k>0)");
        c.push_back(-(acc / den));
    }

    // factorial table
    std::vector<Rational> fact(jet_order + 1, Rational(1));
    for (size_t i = 1; i <= jet_order; ++i) fact[i] = fact[i - 1] * Rational(static_cast<long>(i));
    // s_l[m] = l! * [eps^l] c_m
    auto s = [&](int l, int m) { return fact[l] * c[m].a[l]; };

    FrobeniusBasis basis;
    basis.chart = chart;
    basis.rho = rho;
    basis.order = r;
    basis.truncation = truncation;

    // binomials
    std::vector<std::vector<long>> binom(r + 1, std::vector<long>(r + 1, 0));
    for (int i = 0; i <= r; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }

    for (int k = 0; k < r; ++k) {
        LogSolution w;
        w.rho = rho;
        w.parts.assign(k + 1, std::vector<Rational>(truncation + 1, Rational(0)));
        for (int i = 0; i <= k; ++i)
            for (int m = 0; m <= truncation; ++m)
                w.parts[i][m] = Rational(binom[k][i]) * s(k - i, m);
        basis.solutions.push_back(std::move(w));
    }

    // normalization: kill x^t (t < k) in the regular part of w_k by
    // subtracting lower basis elements (whose regular parts start at x^t)
    basis.normalized.assign(r, true);
    for (int k = 1; k < r; ++k) {
        auto& wk = basis.solutions[k];
        for (int t = 0; t < k; ++t) {
            Rational cur = wk.parts[0][t];
            if (cur == 0) continue;
            Rational lead = basis.solutions[t].parts[0][t];
            if (lead == 0) {
                basis.normalized[k] = false;
                continue;
            }
            Rational lambda = cur / lead;
            const auto& wt = basis.solutions[t];
            for (size_t i = 0; i < wt.parts.size(); ++i)
                for (int m = 0; m <= truncation; ++m) wk.parts[i][m] -= lambda * wt.parts[i][m];
        }
    }
    return basis;
}

// Transform sum_j x^j P_j(theta_x) to the z = 1/x chart:
// Q_m(theta_z) = P_(J-m)(-theta_z).
inline ThetaOperator infinity_chart(const ThetaOperator& op) {
    ThetaOperator out;
    out.order = op.order;
    out.name = op.name + "@infinity";
    int top = op.max_grade();
    for (auto& [j, p] : op.terms) {
        RatPoly q;
        q.c = p.c;
        for (size_t i = 1; i < q.c.size(); i += 2) q.c[i] = -q.c[i];
        q.trim();
        out.terms[top - j] = q;
    }
    return out;
}

// --- evaluation ---------------------------------------------------------------

struct BasisEvaluation {
    CMat values;       // values(m, k) = theta^m w_k at the point
    double tail_rel;   // relative size of the trailing 8-term window
};

// theta^m w_k for all m < r, k < r at a complex point inside the disk.
inline BasisEvaluation eval_basis(const FrobeniusBasis& basis, const PrecComplex& point,
                                  int digits) {
    mpfr_prec_t prec = bits_for_digits(digits);
    const int r = basis.order;
    const int n = basis.truncation;
    PrecComplex lg = log_principal(point);
    PrecComplex xrho = pow_rational_principal(point, basis.rho, prec);

    CMat w = cmat(r, r, prec);
    double tail_rel = 0;

    // x-powers
    std::vector<PrecComplex> xpow(n + 1, PrecComplex::one(prec));
    for (int m = 1; m <= n; ++m) xpow[m] = xpow[m - 1] * point;
    std::vector<PrecComplex> lgpow(r + 1, PrecComplex::one(prec));
    for (int i = 1; i <= r; ++i) lgpow[i] = lgpow[i - 1] * lg;

    for (int k = 0; k < r; ++k) {
        LogSolution cur = basis.solutions[k];
        for (int m = 0; m < r; ++m) {
            PrecComplex total = PrecComplex::zero(prec);
            PrecFloat tail = PrecFloat::with_prec(prec);
            PrecFloat scale = PrecFloat::with_prec(prec);
            for (size_t i = 0; i < cur.parts.size(); ++i) {
                PrecComplex sum = PrecComplex::zero(prec);
                for (int t = 0; t <= n; ++t) {
                    if (cur.parts[i][t] == 0) continue;
                    PrecComplex term = xpow[t].scaled(PrecFloat::from_rational(cur.parts[i][t], prec));
                    sum += term;
                    if (t > n - 8) tail += abs(term);
                }
                PrecComplex piece = sum * lgpow[i];
                total += piece;
                scale += abs(piece);
            }
            w(m, k) = total * xrho;
            if (!(scale.is_zero())) {
                double rel = (tail / scale).to_double();
                tail_rel = std::max(tail_rel, rel);
            }
            if (m + 1 < r) cur = theta_apply(cur);
        }
    }
    return {w, tail_rel};
}

// Build a basis whose truncation satisfies the tail rule at radius |x|:
// start at N=64 and double until the last 8 coefficients contribute
// < 10^-(digits+15) relative at the evaluation radius.
inline FrobeniusBasis frobenius_for_radius(const ThetaOperator& op, const std::string& chart,
                                           double radius, double conv_radius, int digits) {
    double target = -(digits + 15) * 2.302585092994046;  // log scale
    int n = 64;
    for (;;) {
        double q = radius / conv_radius;
        // crude geometric tail model: q^N; refined by the evaluator's window
        if (n * std::log(q) < target || n >= (1 << 15)) {
            FrobeniusBasis b = frobenius_mum_basis(op, chart, n);
            b.convergence_radius = conv_radius;
            return b;
        }
        n *= 2;
    }
}

}  // namespace pfwb
