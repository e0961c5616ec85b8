#pragma once

// Singular points and indicial data of a Fuchsian theta-form operator.
// Finite singular points away from 0 are the roots of the theta^r symbol;
// exact locations are reported in Q or Q(sqrt2,sqrt3) when the symbol factors
// there, otherwise as an isolating interval with its (irreducible-over-the-
// tried-methods) defining polynomial, and indicial equations are solved in
// Q[x]/(m) so the exponents stay exact.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfwb/poly.hpp"
#include "pfwb/quadext.hpp"
#include "pfwb/theta_operator.hpp"

namespace pfwb {

enum class SingKind { MUM, Apparent, RegularSingular, Ordinary };

struct AlgebraicPoint {
    RatPoly min_poly;      // squarefree factor vanishing at the point
    RootInterval interval; // isolating interval for this real root
};

struct SingularityRecord {
    // location: rational, quadratic, algebraic-with-interval, or infinity
    std::variant<Rational, QuadExt, AlgebraicPoint, std::monostate> location;
    bool at_infinity = false;
    int multiplicity = 1;                 // multiplicity in the theta-symbol
    std::vector<Rational> exponents;      // local exponents (indicial roots)
    bool exponents_complete = true;       // false if a factor resisted rational roots
    SingKind kind = SingKind::RegularSingular;
    bool fuchsian_ok = true;              // indicial degree equals the order

    double approx() const {
        if (at_infinity) return std::numeric_limits<double>::infinity();
        if (std::holds_alternative<Rational>(location))
            return std::get<Rational>(location).get_d();
        if (std::holds_alternative<QuadExt>(location)) return std::get<QuadExt>(location).to_double();
        const auto& ap = std::get<AlgebraicPoint>(location);
        return (ap.interval.lo.get_d() + ap.interval.hi.get_d()) / 2;
    }

    std::string location_str() const {
        if (at_infinity) return "infinity";
        if (std::holds_alternative<Rational>(location)) return to_string(std::get<Rational>(location));
        if (std::holds_alternative<QuadExt>(location)) return std::get<QuadExt>(location).str();
        const auto& ap = std::get<AlgebraicPoint>(location);
        return "root of " + poly_str(ap.min_poly) + " in (" + to_string(ap.interval.lo) + ", " +
               to_string(ap.interval.hi) + "]";
    }

    static std::string poly_str(const RatPoly& p) {
        std::string s;
        for (int i = p.degree(); i >= 0; --i) {
            if (p.coeff(i) == 0) continue;
            if (!s.empty()) s += " + ";
            s += to_string(p.coeff(i));
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }
};

// exponent extraction: rational roots of an indicial polynomial over K
template <class K, class FromRational, class ToDouble>
std::vector<Rational> indicial_rational_roots(Poly<K> p, FromRational from_q, ToDouble to_double,
                                              bool& complete) {
    std::vector<Rational> roots;
    complete = true;
    while (!p.is_zero() && p.degree() >= 1 && p.coeff(0) == K(0)) {
        roots.emplace_back(0);
        p.c.erase(p.c.begin());
    }
    if (!p.is_zero() && p.degree() == 0) return roots;
    double bound = 1.0;
    for (int i = 0; i < p.degree(); ++i) {
        double t = std::abs(to_double(p.coeff(i))) / std::max(1e-300, std::abs(to_double(p.leading())));
        if (t + 1 > bound) bound = t + 1;
    }
    long ibound = static_cast<long>(bound) + 1;
    bool progress = true;
    while (p.degree() >= 1 && progress) {
        progress = false;
        for (long den = 1; den <= 12 && !progress; ++den) {
            for (long num = -ibound * den; num <= ibound * den; ++num) {
                Rational cand = make_rational(num, den);
                K acc(0);
                K kc = from_q(cand);
                for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * kc + *it;
                if (acc == K(0)) {
                    roots.push_back(cand);
                    // deflate
                    Poly<K> lin(std::vector<K>{-kc, K(1)});
                    p = divrem(p, lin).first;
                    progress = true;
                    break;
                }
            }
        }
    }
    if (p.degree() >= 1) complete = false;
    return roots;
}

// Indicial polynomial of op at finite point c (in field K containing c):
// shift the d/dx form to t = x - c, grade by powers of t against falling
// factorials of theta_t.
template <class K, class FromRational>
Poly<K> indicial_at(const ThetaOperator& op, const K& c, FromRational from_q) {
    std::vector<RatPoly> b = op.dx_form();
    int r = op.order;
    // bt[i] = b_i(c + t) over K
    std::vector<Poly<K>> bt;
    for (auto& bi : b) {
        Poly<K> pk;
        pk.c.reserve(bi.c.size());
        for (auto& q : bi.c) pk.c.push_back(from_q(q));
        pk.trim();
        bt.push_back(pk.taylor_shift(c));
    }
    // minimal grade g over terms t^(s-i) [theta]_i from b_{i,s} t^s D^i
    int gmin = 1 << 20;
    for (int i = 0; i <= r; ++i)
        for (int s = 0; s <= bt[i].degree(); ++s)
            if (!(bt[i].coeff(s) == K(0))) gmin = std::min(gmin, s - i);
    Poly<K> ind;
    for (int i = 0; i <= r; ++i) {
        int s = i + gmin;
        if (s < 0 || s > bt[i].degree()) continue;
        K coeff = bt[i].coeff(s);
        if (coeff == K(0)) continue;
        // falling factorial lambda (lambda-1) ... (lambda-i+1)
        Poly<K> ff = Poly<K>::constant(K(1));
        for (int j = 0; j < i; ++j)
            ff *= Poly<K>(std::vector<K>{K(-j), K(1)});
        ind += ff.scaled(coeff);
    }
    return ind;
}

// exponents at infinity: indicial at z = 0 of the z-chart operator = roots
// of its P0
inline std::vector<Rational> exponents_at_infinity(const ThetaOperator& op, bool& complete,
                                                   bool& fuchsian_ok) {
    ThetaOperator zop = infinity_chart(op);
    RatPoly p0 = zop.term(0);
    fuchsian_ok = p0.degree() == op.order;
    return indicial_rational_roots(
        p0, [](const Rational& q) { return q; }, [](const Rational& q) { return q.get_d(); },
        complete);
}

inline SingKind classify_exponents(const std::vector<Rational>& exps, int order, bool is_origin) {
    if (static_cast<int>(exps.size()) == order) {
        bool all_equal = true;
        for (auto& e : exps)
            if (e != exps[0]) all_equal = false;
        if (all_equal) return SingKind::MUM;
        bool all_int = true;
        for (auto& e : exps)
            if (!is_integer(e)) all_int = false;
        if (all_int) {
            // distinct non-negative integers: apparent-singularity candidate
            std::vector<Rational> sorted = exps;
            std::sort(sorted.begin(), sorted.end());
            bool distinct = true;
            for (size_t i = 1; i < sorted.size(); ++i)
                if (sorted[i] == sorted[i - 1]) distinct = false;
            bool ordinary_pattern = true;
            for (size_t i = 0; i < sorted.size(); ++i)
                if (sorted[i] != Rational(static_cast<long>(i))) ordinary_pattern = false;
            if (distinct && sorted[0] >= 0) {
                if (ordinary_pattern) return is_origin ? SingKind::Ordinary : SingKind::Apparent;
                return SingKind::Apparent;
            }
        }
    }
    return SingKind::RegularSingular;
}

// Full Riemann-scheme data for a theta-form operator.
inline std::vector<SingularityRecord> singular_data(const ThetaOperator& op) {
    std::vector<SingularityRecord> records;
    const int r = op.order;

    // x = 0: exponents are the roots of P0
    {
        SingularityRecord rec;
        rec.location = Rational(0);
        bool complete = true;
        rec.exponents = indicial_rational_roots(
            op.term(0), [](const Rational& q) { return q; },
            [](const Rational& q) { return q.get_d(); }, complete);
        rec.exponents_complete = complete;
        rec.fuchsian_ok = op.term(0).degree() == r;
        rec.kind = classify_exponents(rec.exponents, r, /*is_origin=*/true);
        records.push_back(std::move(rec));
    }

    // finite nonzero singular points: roots of the theta symbol
    RatPoly sigma = op.theta_symbol();
    RatPoly work = sigma;
    // rational roots with multiplicity
    std::vector<std::pair<Rational, int>> rat_roots;
    for (auto& root : rational_roots(sigma)) {
        bool seen = false;
        for (auto& [v, m] : rat_roots)
            if (v == root) {
                ++m;
                seen = true;
            }
        if (!seen) rat_roots.emplace_back(root, 1);
    }
    for (auto& [root, mult] : rat_roots) {
        if (root == 0) continue;  // x=0 handled through P0
        RatPoly lin(std::vector<Rational>{-root, Rational(1)});
        for (int i = 0; i < mult; ++i) work = work / lin;
        SingularityRecord rec;
        rec.location = root;
        rec.multiplicity = mult;
        bool complete = true;
        Poly<Rational> ind = indicial_at<Rational>(op, root, [](const Rational& q) { return q; });
        rec.fuchsian_ok = ind.degree() == r;
        rec.exponents = indicial_rational_roots(
            ind, [](const Rational& q) { return q; }, [](const Rational& q) { return q.get_d(); },
            complete);
        rec.exponents_complete = complete;
        rec.kind = classify_exponents(rec.exponents, r, false);
        records.push_back(std::move(rec));
    }
    // strip x^k factor (root 0 of sigma counts toward x=0 which we have)
    while (!work.is_zero() && work.degree() >= 1 && work.coeff(0) == 0) work.c.erase(work.c.begin());

    if (work.degree() == 2) {
        // quadratic: try Q(sqrt2, sqrt3)
        Rational a = work.coeff(2), b = work.coeff(1), c0 = work.coeff(0);
        Rational disc = b * b - 4 * a * c0;
        auto try_square = [](const Rational& q) -> std::optional<Rational> {
            if (q < 0) return std::nullopt;
            Int ns, ds;
            if (mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
                mpz_perfect_square_p(q.get_den().get_mpz_t())) {
                mpz_sqrt(ns.get_mpz_t(), q.get_num().get_mpz_t());
                mpz_sqrt(ds.get_mpz_t(), q.get_den().get_mpz_t());
                return make_rational(ns, ds);
            }
            return std::nullopt;
        };
        std::optional<QuadExt> sqrt_disc;
        if (auto s = try_square(disc)) sqrt_disc = QuadExt(*s);
        else if (auto s = try_square(disc / 2)) sqrt_disc = QuadExt(Rational(0), *s);
        else if (auto s = try_square(disc / 3)) sqrt_disc = QuadExt(Rational(0), Rational(0), *s);
        else if (auto s = try_square(disc / 6))
            sqrt_disc = QuadExt(Rational(0), Rational(0), Rational(0), *s);
        if (sqrt_disc) {
            QuadExt a2 = QuadExt(2 * a);
            for (int sgn_pick : {-1, 1}) {
                QuadExt root = (QuadExt(-b) + (sgn_pick > 0 ? *sqrt_disc : -*sqrt_disc)) / a2;
                SingularityRecord rec;
                rec.location = root;
                bool complete = true;
                auto from_q = [](const Rational& q) { return QuadExt(q); };
                Poly<QuadExt> ind = indicial_at<QuadExt>(op, root, from_q);
                rec.fuchsian_ok = ind.degree() == r;
                rec.exponents = indicial_rational_roots(
                    ind, from_q, [](const QuadExt& x) { return x.to_double(); }, complete);
                rec.exponents_complete = complete;
                rec.kind = classify_exponents(rec.exponents, r, false);
                records.push_back(std::move(rec));
            }
            work = RatPoly();
        }
    }

    if (!work.is_zero() && work.degree() >= 1) {
        // algebraic points: isolate real roots, solve indicial in Q[x]/(m)
        RatPoly sf = work / gcd(work, work.derivative());
        auto intervals = isolate_real_roots(sf, make_rational(1, 1000000));
        int found = 0;
        for (auto& iv : intervals) {
            ++found;
            SingularityRecord rec;
            rec.location = AlgebraicPoint{sf, iv};
            auto modulus = std::make_shared<const RatPoly>(sf.monic());
            NFElem xi = NFElem::generator(modulus);
            auto from_q = [&](const Rational& q) { return NFElem::from_rational(modulus, q); };
            Poly<NFElem> ind = indicial_at<NFElem>(op, xi, from_q);
            rec.fuchsian_ok = ind.degree() == r;
            double mid = (iv.lo.get_d() + iv.hi.get_d()) / 2;
            bool complete = true;
            rec.exponents = indicial_rational_roots(
                ind, from_q, [mid](const NFElem& e) { return e.rep.eval_in(
                    mid, [](const Rational& q) { return q.get_d(); }, 0.0); },
                complete);
            rec.exponents_complete = complete;
            rec.kind = classify_exponents(rec.exponents, r, false);
            records.push_back(std::move(rec));
        }
        if (sf.degree() > found) {
            // complex roots of the symbol exist; out of the bundled problems'
            // range, flagged by an incomplete record
            SingularityRecord rec;
            rec.location = AlgebraicPoint{sf, RootInterval{Rational(0), Rational(0)}};
            rec.exponents_complete = false;
            records.push_back(std::move(rec));
        }
    }

    // infinity
    {
        SingularityRecord rec;
        rec.location = std::monostate{};
        rec.at_infinity = true;
        bool complete = true, fuchs = true;
        rec.exponents = exponents_at_infinity(op, complete, fuchs);
        rec.exponents_complete = complete;
        rec.fuchsian_ok = fuchs;
        rec.kind = classify_exponents(rec.exponents, r, false);
        records.push_back(std::move(rec));
    }
    return records;
}

// Fuchs relation diagnostic: sum of all exponents over the scheme equals
// (r choose 2)(#finite singular points - 1) for a theta-form operator.
inline bool fuchs_relation_holds(const ThetaOperator& op,
                                 const std::vector<SingularityRecord>& records) {
    Rational total(0);
    long finite = 0;
    for (auto& rec : records) {
        if (!rec.exponents_complete) return false;
        if (rec.kind == SingKind::Ordinary) continue;
        for (auto& e : rec.exponents) total += e;
        if (!rec.at_infinity) ++finite;
    }
    long r = op.order;
    Rational expect = Rational(r * (r - 1) / 2) * Rational(finite - 1);
    return total == expect;
}

}  // namespace pfwb
