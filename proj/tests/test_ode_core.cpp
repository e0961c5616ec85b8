#include <catch2/catch_amalgamated.hpp>

#include "pfwb/frobenius.hpp"
#include "pfwb/report.hpp"
#include "pfwb/singularities.hpp"
#include "pfwb/theta_operator.hpp"

using namespace pfwb;

namespace {
const char* k3_text =
    "theta^3 - x*(2*theta+1)*(17*theta^2+17*theta+5) + x^2*(theta+1)^3";

ThetaOperator k3() { return parse_operator(k3_text); }

ThetaOperator rodland() {
    auto dir = resolve_data_dir();
    return parse_operator_file(slurp_file(dir / "rodland.op"));
}

RatPoly poly(std::vector<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return RatPoly(c);
}
}  // namespace

TEST_CASE("parser expands the K3 operator into x-graded normal form") {
    ThetaOperator op = k3();
    REQUIRE(op.order == 3);
    REQUIRE(op.terms.size() == 3);
    REQUIRE(op.term(0) == poly({0, 0, 0, 1}));
    REQUIRE(op.term(1) == poly({-5, -27, -51, -34}));
    REQUIRE(op.term(2) == poly({1, 3, 3, 1}));
}

TEST_CASE("parser handles the trivial operator") {
    ThetaOperator op = parse_operator("theta");
    REQUIRE(op.order == 1);
    REQUIRE(op.term(0) == poly({0, 1}));
}

TEST_CASE("parser reports syntax errors with position") {
    REQUIRE_THROWS_WITH(parse_operator("theta^3 + *"), Catch::Matchers::ContainsSubstring("position"));
    REQUIRE_THROWS_AS(parse_operator("theta*x"), std::invalid_argument);
    REQUIRE_THROWS_WITH(parse_operator("(theta+1)*x"), Catch::Matchers::ContainsSubstring("x^j"));
}

TEST_CASE("rodland file parses with the x^3 reconciliation") {
    ThetaOperator op = rodland();
    REQUIRE(op.order == 4);
    REQUIRE(op.terms.size() == 6);
    REQUIRE(op.term(0) == poly({0, 0, 0, 0, 9}));
    REQUIRE(op.term(3) == poly({12, 1350, 4706, 5256, 1686}));
    REQUIRE(op.term(5) == poly({1, 4, 6, 4, 1}));
    REQUIRE(op.name == "rodland");
    // theta symbol factors as (x-3)^2 (1 - 57x - 289x^2 + x^3)
    RatPoly sigma = op.theta_symbol();
    RatPoly expect = poly({-3, 1}) * poly({-3, 1}) * poly({1, -57, -289, 1});
    REQUIRE(sigma == expect);
}

TEST_CASE("K3 riemann scheme") {
    ThetaOperator op = k3();
    REQUIRE(op.theta_symbol() == poly({1, -34, 1}));
    auto recs = singular_data(op);
    REQUIRE(recs.size() == 4);  // 0, a1, a2, infinity

    REQUIRE(recs[0].location_str() == "0");
    REQUIRE(recs[0].kind == SingKind::MUM);
    REQUIRE(recs[0].exponents == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});

    // a1 = 17 - 12 sqrt2, a2 = 17 + 12 sqrt2
    REQUIRE(std::holds_alternative<QuadExt>(recs[1].location));
    QuadExt a1 = std::get<QuadExt>(recs[1].location);
    REQUIRE(a1 == QuadExt(Rational(17), Rational(-12)));
    QuadExt a2 = std::get<QuadExt>(recs[2].location);
    REQUIRE(a2 == QuadExt(Rational(17), Rational(12)));
    for (int i : {1, 2}) {
        auto exps = recs[i].exponents;
        std::sort(exps.begin(), exps.end());
        REQUIRE(exps == std::vector<Rational>{Rational(0), make_rational(1, 2), Rational(1)});
        REQUIRE(recs[i].kind == SingKind::RegularSingular);
    }
    REQUIRE(recs[3].at_infinity);
    REQUIRE(recs[3].exponents == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
    REQUIRE(recs[3].kind == SingKind::MUM);
    REQUIRE(fuchs_relation_holds(op, recs));
}

TEST_CASE("euler operator theta^3 has singularities only at 0 and infinity") {
    ThetaOperator op = parse_operator("theta^3");
    auto recs = singular_data(op);
    REQUIRE(recs.size() == 2);
    REQUIRE(recs[0].exponents == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
    REQUIRE(recs[1].at_infinity);
}

TEST_CASE("rodland riemann scheme matches the reconciled operator") {
    ThetaOperator op = rodland();
    auto recs = singular_data(op);
    // 0, x=3 (apparent, double symbol root), three real cubic roots, infinity
    REQUIRE(recs.size() == 6);

    REQUIRE(recs[0].kind == SingKind::MUM);
    REQUIRE(recs[0].exponents.size() == 4);

    bool found3 = false;
    std::vector<double> cubic_roots;
    for (auto& rec : recs) {
        if (!rec.at_infinity && std::holds_alternative<Rational>(rec.location) &&
            std::get<Rational>(rec.location) == Rational(3)) {
            found3 = true;
            REQUIRE(rec.multiplicity == 2);
            auto exps = rec.exponents;
            std::sort(exps.begin(), exps.end());
            REQUIRE(exps == std::vector<Rational>{Rational(0), Rational(1), Rational(3), Rational(4)});
            REQUIRE(rec.kind == SingKind::Apparent);
        }
        if (std::holds_alternative<AlgebraicPoint>(rec.location)) {
            auto exps = rec.exponents;
            std::sort(exps.begin(), exps.end());
            REQUIRE(exps ==
                    std::vector<Rational>{Rational(0), Rational(1), Rational(1), Rational(2)});
            cubic_roots.push_back(rec.approx());
        }
    }
    REQUIRE(found3);
    REQUIRE(cubic_roots.size() == 3);
    std::sort(cubic_roots.begin(), cubic_roots.end());
    // alpha2 < 0 < alpha1 < 3 < alpha3
    REQUIRE(cubic_roots[0] < 0);
    REQUIRE((cubic_roots[1] > 0 && cubic_roots[1] < 3));
    REQUIRE(cubic_roots[2] > 3);

    auto& inf = recs.back();
    REQUIRE(inf.at_infinity);
    REQUIRE(inf.exponents ==
            std::vector<Rational>{Rational(1), Rational(1), Rational(1), Rational(1)});
    REQUIRE(fuchs_relation_holds(op, recs));
}

TEST_CASE("frobenius basis at the K3 MUM point: hand recursion oracle") {
    // order-1: c1 = 5 c0 from P1(0) = -5; order-2: 8 c2 = 117 c1 - c0 -> c2 = 73
    ThetaOperator op = k3();
    FrobeniusBasis basis = frobenius_mum_basis(op, "x", 10);
    REQUIRE(basis.rho == Rational(0));
    auto& w0 = basis.solutions[0];
    REQUIRE(w0.parts.size() == 1);
    REQUIRE(w0.parts[0][0] == Rational(1));
    REQUIRE(w0.parts[0][1] == Rational(5));
    REQUIRE(w0.parts[0][2] == Rational(73));

    // w1 = w0 log x + w1reg with w1reg = c x + O(x^2)
    auto& w1 = basis.solutions[1];
    REQUIRE(w1.parts.size() == 2);
    REQUIRE(w1.parts[1] == w0.parts[0]);  // log coefficient is w0
    REQUIRE(w1.parts[0][0] == Rational(0));

    // w2 = w0 log^2 + 2 w1reg log + w2reg with w2reg = c x^2 + O(x^3)
    auto& w2 = basis.solutions[2];
    REQUIRE(w2.parts.size() == 3);
    REQUIRE(w2.parts[2] == w0.parts[0]);
    for (int m = 0; m <= 10; ++m) REQUIRE(w2.parts[1][m] == 2 * w1.parts[0][m]);
    REQUIRE(w2.parts[0][0] == Rational(0));
    REQUIRE(w2.parts[0][1] == Rational(0));
    for (bool ok : basis.normalized) REQUIRE(ok);
}

TEST_CASE("z-chart frobenius basis is z(1 + O(z)) with the same structure") {
    ThetaOperator zop = infinity_chart(k3());
    FrobeniusBasis basis = frobenius_mum_basis(zop, "z", 10);
    REQUIRE(basis.rho == Rational(1));
    REQUIRE(basis.solutions[0].parts[0][0] == Rational(1));  // z * (1 + ...)
    REQUIRE(basis.solutions[1].parts[0][0] == Rational(0));
    for (bool ok : basis.normalized) REQUIRE(ok);
}

TEST_CASE("rodland frobenius basis carries log depth 3 and normalizes") {
    ThetaOperator op = rodland();
    FrobeniusBasis basis = frobenius_mum_basis(op, "x", 12);
    REQUIRE(basis.solutions.size() == 4);
    REQUIRE(basis.solutions[3].parts.size() == 4);
    for (bool ok : basis.normalized) REQUIRE(ok);
    auto& w3reg = basis.solutions[3].parts[0];
    REQUIRE(w3reg[0] == Rational(0));
    REQUIRE(w3reg[1] == Rational(0));
    REQUIRE(w3reg[2] == Rational(0));
}

TEST_CASE("operator annihilates every truncated basis solution exactly") {
    for (ThetaOperator op : {k3(), rodland()}) {
        int n = 24;
        FrobeniusBasis basis = frobenius_mum_basis(op, "x", n);
        int check_to = n - op.max_grade();
        for (auto& sol : basis.solutions) {
            LogSolution image = operator_apply(op, sol);
            for (auto& part : image.parts)
                for (int m = 0; m <= check_to; ++m) REQUIRE(part[m] == Rational(0));
        }
    }
}

TEST_CASE("non-MUM origin is rejected") {
    ThetaOperator op = parse_operator("theta^2 - theta + x");
    REQUIRE_THROWS_AS(frobenius_mum_basis(op, "x", 8), std::domain_error);
}

TEST_CASE("eval_basis recovers the leading series behavior") {
    ThetaOperator op = k3();
    int digits = 50;
    FrobeniusBasis basis = frobenius_mum_basis(op, "x", 64);
    mpfr_prec_t prec = bits_for_digits(digits);
    PrecComplex tiny = PrecComplex::from_rational(make_rational(1, 1000000), prec);
    BasisEvaluation ev = eval_basis(basis, tiny, digits);
    // w0 -> 1, theta w0 -> 5x + O(x^2)
    REQUIRE(std::abs(abs(ev.values(0, 0)).to_double() - 1.0) < 1e-5);
    PrecComplex ratio = ev.values(1, 0) / tiny;
    REQUIRE(std::abs(ratio.re.to_double() - 5.0) < 1e-3);
}

TEST_CASE("eval at 1/64: doubling the truncation leaves the value fixed") {
    ThetaOperator op = k3();
    int digits = 115;
    mpfr_prec_t prec = bits_for_digits(digits);
    PrecComplex pt = PrecComplex::from_rational(make_rational(1, 64), prec);
    double conv = 17.0 - 12.0 * std::sqrt(2.0);
    FrobeniusBasis b1 = frobenius_for_radius(op, "x", 1.0 / 64, conv, digits);
    FrobeniusBasis b2 = frobenius_mum_basis(op, "x", 2 * b1.truncation);
    CMat v1 = eval_basis(b1, pt, digits).values;
    CMat v2 = eval_basis(b2, pt, digits).values;
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) worst = std::max(worst, abs(v1(i, j) - v2(i, j)).to_double());
    REQUIRE(worst < 1e-100);
}

TEST_CASE("first N-r coefficients are stable under truncation growth") {
    ThetaOperator op = k3();
    FrobeniusBasis small = frobenius_mum_basis(op, "x", 12);
    FrobeniusBasis big = frobenius_mum_basis(op, "x", 24);
    for (int k = 0; k < 3; ++k)
        for (size_t i = 0; i < small.solutions[k].parts.size(); ++i)
            for (int m = 0; m + 3 <= 12; ++m)
                REQUIRE(small.solutions[k].parts[i][m] == big.solutions[k].parts[i][m]);
}
