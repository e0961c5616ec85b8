#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pfwb/fp.hpp"
#include "pfwb/jet.hpp"
#include "pfwb/matrix.hpp"
#include "pfwb/numeric.hpp"
#include "pfwb/poly.hpp"
#include "pfwb/quadext.hpp"
#include "pfwb/rational.hpp"

using namespace pfwb;

namespace {
QuadExt random_quadext(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    auto q = [&] { return make_rational(num(rng), den(rng)); };
    return QuadExt(q(), q(), q(), q());
}
}  // namespace

TEST_CASE("rational arithmetic is exact on random cross-multiplication identities") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 10000; ++i) {
        Rational a = make_rational(num(rng), den(rng));
        Rational b = make_rational(num(rng), den(rng));
        Rational sum = a + b;
        // (p/q + r/s) == (ps + rq)/(qs)
        Rational expect = make_rational(a.get_num() * b.get_den() + b.get_num() * a.get_den(),
                                        a.get_den() * b.get_den());
        REQUIRE(sum == expect);
    }
}

TEST_CASE("quadext basis relations") {
    QuadExt r2 = QuadExt::sqrt2(), r3 = QuadExt::sqrt3(), r6 = QuadExt::sqrt6();
    REQUIRE(r2 * r3 == r6);
    REQUIRE((QuadExt(1) + r2) * (QuadExt(1) - r2) == QuadExt(-1));
    // 1/sqrt6 stored as sqrt6/6
    QuadExt inv6 = QuadExt(Rational(0), Rational(0), Rational(0), make_rational(1, 6));
    REQUIRE(inv6 * r6 == QuadExt(1));
    REQUIRE(r6.inverse() == inv6);
}

TEST_CASE("quadext multiplication is commutative and associative on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        QuadExt x = random_quadext(rng), y = random_quadext(rng), z = random_quadext(rng);
        REQUIRE(x * y == y * x);
        REQUIRE((x * y) * z == x * (y * z));
    }
}

TEST_CASE("quadext inverse: x * inverse(x) == 1 on random nonzero elements") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        QuadExt x = random_quadext(rng);
        if (x.is_zero()) continue;
        REQUIRE(x * x.inverse() == QuadExt(1));
    }
}

TEST_CASE("quadext evaluation matches known constants") {
    mpfr_prec_t prec = 64;
    PrecFloat v = QuadExt::sqrt2().eval(prec);
    PrecFloat ref = PrecFloat::from_double(1.4142135623730950488, 64);
    REQUIRE(abs(v - ref).to_double() < 1e-15);
    REQUIRE(QuadExt().eval(prec).is_zero());

    // sqrt3 + sqrt6 against a high-precision independent evaluation
    mpfr_prec_t wide = 256;
    PrecFloat s = (QuadExt::sqrt3() + QuadExt::sqrt6()).eval(wide);
    PrecFloat oracle = sqrt(PrecFloat::from_ui(3, wide)) + sqrt(PrecFloat::from_ui(6, wide));
    REQUIRE(abs(s - oracle).to_double() < 1e-70);
    REQUIRE(std::abs(s.to_double() - 4.1815405503520555) < 1e-14);
}

TEST_CASE("qext_eval respects ring operations") {
    std::mt19937_64 rng(17);
    mpfr_prec_t prec = 192;
    for (int i = 0; i < 50; ++i) {
        QuadExt x = random_quadext(rng), y = random_quadext(rng);
        PrecFloat lhs = (x * y).eval(prec);
        PrecFloat rhs = x.eval(prec) * y.eval(prec);
        double scale = std::max(1.0, std::abs(rhs.to_double()));
        REQUIRE(abs(lhs - rhs).to_double() / scale < 1e-50);
    }
}

TEST_CASE("precfloat promotes precision instead of truncating") {
    PrecFloat narrow = PrecFloat::from_double(1.0, 64);
    PrecFloat wide = PrecFloat::from_rational(make_rational(1, 3), 384);
    PrecFloat sum = narrow + wide;
    REQUIRE(sum.precision() == 384);
    PrecComplex a = PrecComplex::from_rational(make_rational(2, 7), 384);
    PrecComplex b = PrecComplex::from_double(0.5, 0.25, 64);
    REQUIRE((a * b).precision() == 384);
}

TEST_CASE("complex log principal branch and powers") {
    mpfr_prec_t prec = 128;
    PrecComplex minus_one = PrecComplex::from_double(-1.0, 0.0, prec);
    PrecComplex lg = log_principal(minus_one);
    REQUIRE(std::abs(lg.im.to_double() - 3.14159265358979) < 1e-12);
    PrecComplex x = PrecComplex::from_double(0.3, 0.4, prec);
    PrecComplex half = pow_rational_principal(x, make_rational(1, 2), prec);
    PrecComplex sq = half * half;
    REQUIRE(abs(sq - x).to_double() < 1e-30);
}

TEST_CASE("polynomial shift, divrem, gcd") {
    RatPoly p(std::vector<Rational>{Rational(1), Rational(-34), Rational(1)});  // 1 - 34x + x^2
    RatPoly shifted = p.taylor_shift(Rational(1));
    REQUIRE(shifted.eval(Rational(0)) == p.eval(Rational(1)));
    auto [q, r] = divrem(p, RatPoly(std::vector<Rational>{Rational(-3), Rational(1)}));
    REQUIRE(q * RatPoly(std::vector<Rational>{Rational(-3), Rational(1)}) + r == p);
    RatPoly a = p * p;
    REQUIRE(gcd(a, a.derivative()).degree() == p.degree());
}

TEST_CASE("sturm isolation finds the pfaffian cubic roots in order") {
    // x^3 - 289x^2 - 57x + 1
    RatPoly cubic(std::vector<Rational>{Rational(1), Rational(-57), Rational(-289), Rational(1)});
    auto ivs = isolate_real_roots(cubic, make_rational(1, 1 << 20));
    REQUIRE(ivs.size() == 3);
    double r0 = ivs[0].lo.get_d(), r1 = ivs[1].lo.get_d(), r2 = ivs[2].lo.get_d();
    REQUIRE(r0 < 0);
    REQUIRE((r1 > 0 && r1 < 3));
    REQUIRE(r2 > 3);
    REQUIRE(std::abs(r1 - 0.0162) < 1e-3);
}

TEST_CASE("rational roots with multiplicity") {
    // (x-3)^2 (x^3 - 289x^2 - 57x + 1): the reconciled quartic symbol
    RatPoly cubic(std::vector<Rational>{Rational(1), Rational(-57), Rational(-289), Rational(1)});
    RatPoly lin(std::vector<Rational>{Rational(-3), Rational(1)});
    RatPoly sigma = lin * lin * cubic;
    auto roots = rational_roots(sigma);
    REQUIRE(roots.size() == 2);
    REQUIRE(roots[0] == Rational(3));
    REQUIRE(roots[1] == Rational(3));
}

TEST_CASE("prime field sqrt and inverse") {
    for (std::uint64_t p : {3ull, 101ull, 13ull}) {
        for (std::uint64_t v = 1; v < p; ++v) {
            Fp x(v, p);
            REQUIRE((x * x.inverse()).v == 1);
            if (x.is_square()) {
                Fp s = x.sqrt();
                REQUIRE(s * s == x);
            }
        }
    }
}

TEST_CASE("jets multiply and divide") {
    RJet a = RJet::constant(4, Rational(2));
    a.a[1] = Rational(3);
    a.a[2] = make_rational(1, 2);
    RJet b = RJet::constant(4, Rational(5));
    b.a[1] = Rational(-1);
    RJet c = a * b;
    RJet back = c / b;
    REQUIRE((back - a).is_zero());
}

TEST_CASE("matrix inverse and nullspace over Q") {
    Mat<Rational> m = Mat<Rational>::from_rows({{Rational(0), Rational(0), Rational(1)},
                                                {Rational(0), Rational(12), Rational(0)},
                                                {Rational(1), Rational(0), Rational(0)}});
    REQUIRE(mat_det(m) == Rational(-12));
    Mat<Rational> inv = mat_inverse(m);
    REQUIRE(inv * m == Mat<Rational>::identity(3));

    Mat<Rational> sing = Mat<Rational>::from_rows(
        {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
    REQUIRE(mat_rank(sing) == 1);
    auto ns = mat_nullspace(sing);
    REQUIRE(ns.size() == 1);
    REQUIRE(ns[0][0] * Rational(1) + ns[0][1] * Rational(2) == Rational(0));
}

TEST_CASE("number field arithmetic modulo the pfaffian cubic") {
    auto m = std::make_shared<const RatPoly>(
        RatPoly(std::vector<Rational>{Rational(1), Rational(-57), Rational(-289), Rational(1)}));
    NFElem x = NFElem::generator(m);
    NFElem val = x * x * x - NFElem::from_rational(m, Rational(289)) * x * x -
                 NFElem::from_rational(m, Rational(57)) * x + NFElem::from_rational(m, Rational(1));
    REQUIRE(val.is_zero());
    NFElem inv = x.inverse();
    REQUIRE(x * inv == NFElem::from_rational(m, Rational(1)));
}
