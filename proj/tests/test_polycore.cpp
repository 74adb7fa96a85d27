#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flexlocus/dual.hpp"
#include "flexlocus/fp.hpp"
#include "flexlocus/fp2.hpp"
#include "flexlocus/hypersurface.hpp"
#include "flexlocus/multipoly.hpp"
#include "flexlocus/parser.hpp"
#include "flexlocus/rational.hpp"
#include "flexlocus/univariate.hpp"

using namespace flexlocus;

namespace {
std::mt19937_64 rng(20260823);
}

TEST_CASE("prime field arithmetic") {
    Fp::Ctx ctx(10007);
    CHECK_THROWS_AS(Fp::Ctx(10008), validation_error);
    CHECK_THROWS_AS(Fp::Ctx(2), validation_error);
    for (int t = 0; t < 200; ++t) {
        Fp a = ctx.random(rng), b = ctx.random(rng), c = ctx.random(rng);
        CHECK(a + (b + c) == (a + b) + c);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == ctx.zero());
        if (!a.is_zero()) CHECK(a * a.inv() == ctx.one());
    }
    CHECK(ctx.from_int(-3) == -ctx.from_int(3));
    CHECK(ctx.from_mpq(mpq_class(1, 2)) * ctx.from_int(2) == ctx.one());
    CHECK_THROWS_AS(ctx.from_mpq(mpq_class(1, 10007)), validation_error);
}

TEST_CASE("large prime field uses 128-bit products") {
    Fp::Ctx ctx((uint64_t(1) << 61) - 1);
    Fp a = ctx.from_int(1234567890123456789LL);
    Fp b = ctx.from_int(987654321098765432LL);
    CHECK(a * b == b * a);
    CHECK((a * b) * a.inv() == b);
}

TEST_CASE("rational arithmetic") {
    Rational::Ctx ctx;
    Rational half = ctx.from_mpq(mpq_class(1, 2));
    CHECK(half + half == ctx.one());
    CHECK(half.inv() == ctx.from_int(2));
    CHECK(ctx.from_string("-3/6") == -half);
    CHECK_THROWS_AS(ctx.zero().inv(), validation_error);
}

TEST_CASE("quadratic extension") {
    Fp2::Ctx ctx(7);  // smallest non-residue mod 7 is 3
    CHECK(ctx.r == 3);
    std::mt19937_64 r2(5);
    for (int t = 0; t < 100; ++t) {
        Fp2 a = ctx.random(r2), b = ctx.random(r2);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inv() == ctx.one());
        CHECK((a + b) * (a - b) == a * a - b * b);
    }
}

TEST_CASE("dual numbers differentiate products") {
    Fp::Ctx base(101);
    Dual<Fp>::Ctx ctx(base);
    // (a + eps)(b + eps) = ab + (a+b) eps
    Dual<Fp> x(base.from_int(5), base.one());
    Dual<Fp> y(base.from_int(9), base.one());
    CHECK((x * y).re() == base.from_int(45));
    CHECK((x * y).eps() == base.from_int(14));
    Dual<Fp> nu(base.zero(), base.one());
    CHECK(!nu.is_unit());
    CHECK_THROWS_AS(nu.inv(), internal_error);
}

TEST_CASE("grevlex order") {
    // degree first
    Monomial a(3), b(3);
    a[0] = 2;           // x0^2
    b[0] = 1; b[1] = 2; // x0 x1^2
    GrevlexLess less;
    CHECK(less(a, b));
    // tie: last differing exponent larger => smaller
    Monomial c(3), d(3);
    c[0] = 1; c[2] = 1;  // x0 x2
    d[1] = 2;            // x1^2
    CHECK(less(c, d));
    auto all = monomials_of_degree(3, 2);
    CHECK(all.size() == 6);
    for (size_t i = 0; i + 1 < all.size(); ++i) CHECK(less(all[i], all[i + 1]));
}

TEST_CASE("polynomial ring axioms and parser round-trip") {
    Rational::Ctx ctx;
    auto f = parse_poly<Rational>("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3", ctx);
    auto g = parse_poly<Rational>("x0+x1", ctx);
    CHECK(f == g * g * g);
    CHECK(f == g.pow(3));
    CHECK(parse_poly<Rational>(print_poly(f), ctx) == f);
    auto h = parse_poly<Rational>("1/2*x0^2 - x1^2", ctx);
    CHECK(parse_poly<Rational>(print_poly(h), ctx) == h);
    CHECK(print_poly(parse_poly<Rational>("x0-x0", ctx, 1)) == "0");
}

TEST_CASE("euler identity") {
    Fp::Ctx ctx(10007);
    for (int d = 1; d <= 5; ++d) {
        auto f = MultiPoly<Fp>::random_homogeneous(3, ctx, d, rng);
        MultiPoly<Fp> acc(3, ctx);
        for (int i = 0; i < 3; ++i)
            acc = acc + MultiPoly<Fp>::variable(3, ctx, i) * f.partial_derivative(i);
        CHECK(acc == f.scaled(ctx.from_int(d)));
    }
}

TEST_CASE("substitute_line matches direct expansion") {
    Rational::Ctx ctx;
    auto f = parse_poly<Rational>("x0*x2-x1^2", ctx);
    std::vector<Rational> p{ctx.one(), ctx.zero(), ctx.zero()};
    std::vector<Rational> q{ctx.zero(), ctx.one(), ctx.zero()};
    Univariate<Rational> u = f.substitute_line(p, q);
    CHECK(u.coeff(0).is_zero());
    CHECK(u.coeff(1).is_zero());
    CHECK(u.coeff(2) == -ctx.one());
    CHECK(u.degree() == 2);
}

TEST_CASE("taylor system reproduces the line expansion") {
    Fp::Ctx ctx(10007);
    for (int d = 2; d <= 4; ++d) {
        auto f = MultiPoly<Fp>::random_homogeneous(3, ctx, d, rng);
        auto taylor = taylor_system(f);
        std::vector<Fp> p(3), q(3);
        for (int i = 0; i < 3; ++i) { p[i] = ctx.random(rng); q[i] = ctx.random(rng); }
        Univariate<Fp> line = f.substitute_line(p, q);
        std::vector<Fp> pq = p;
        pq.insert(pq.end(), q.begin(), q.end());
        Fp fact = ctx.one();
        for (int k = 1; k <= d; ++k) {
            fact *= ctx.from_int(k);
            CHECK(line.coeff(k) * fact == taylor[k - 1].evaluate(pq));
        }
        // bidegrees (d-k, k)
        int dx = 0, dy = 0;
        CHECK(taylor[d - 1].is_bihomogeneous(3, &dx, &dy));
        CHECK(dx == 0);
        CHECK(dy == d);
    }
}

TEST_CASE("squarefreeness detection") {
    Fp::Ctx ctx(10007);
    auto g = parse_poly<Fp>("x0+x1", ctx, 3);
    auto h = parse_poly<Fp>("x0*x2-x1^2", ctx);
    CHECK(is_squarefree(h, rng));
    CHECK(is_squarefree(g * h, rng));
    CHECK_FALSE(is_squarefree(g * g * h, rng));
    // a random dense cubic is squarefree with overwhelming probability
    for (int t = 0; t < 5; ++t) {
        auto f = MultiPoly<Fp>::random_homogeneous(3, ctx, 3, rng);
        if (f.is_zero()) continue;
        CHECK(is_squarefree(f, rng));
    }
    Fp::Ctx tiny(3);
    auto small_f = parse_poly<Fp>("x0^3+x1^3", tiny, 2);
    CHECK_THROWS_AS(is_squarefree(small_f, rng), validation_error);
}

TEST_CASE("hypersurface validation") {
    Fp::Ctx ctx(10007);
    auto g = parse_poly<Fp>("x0+x1", ctx, 3);
    auto h = parse_poly<Fp>("x0*x2-x1^2", ctx);
    CHECK_THROWS_AS(Hypersurface<Fp>(g * g, rng), validation_error);
    CHECK_THROWS_AS(Hypersurface<Fp>(parse_poly<Fp>("x0^2+x1", ctx), rng), validation_error);
    Hypersurface<Fp> V(h, rng);
    CHECK(V.n() == 2);
    CHECK(V.d() == 2);
    std::vector<Fp> p{ctx.one(), ctx.zero(), ctx.zero()};
    CHECK(V.contains(p));
    CHECK_FALSE(V.is_singular_at(p));
}

TEST_CASE("rational and modular computations agree") {
    Rational::Ctx qctx;
    Fp::Ctx pctx(10007);
    auto fq = parse_poly<Rational>("2*x0^3-5*x0*x1*x2+7*x2^3", qctx);
    auto fp = parse_poly<Fp>("2*x0^3-5*x0*x1*x2+7*x2^3", pctx);
    auto prod_q = fq * fq.partial_derivative(1);
    auto prod_p = fp * fp.partial_derivative(1);
    for (const auto& [m, c] : prod_q.terms()) CHECK(pctx.from_mpq(c.value()) == prod_p.coeff(m));
}

TEST_CASE("univariate gcd, interpolation, roots") {
    Fp::Ctx ctx(10007);
    Univariate<Fp> a(ctx, {ctx.from_int(-6), ctx.from_int(11), ctx.from_int(-6), ctx.one()});
    // (x-1)(x-2)(x-3)
    auto roots = univariate_roots(a, rng);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == ctx.from_int(1));
    CHECK(roots[1] == ctx.from_int(2));
    CHECK(roots[2] == ctx.from_int(3));
    Univariate<Fp> b(ctx, {ctx.from_int(-2), ctx.one()});
    CHECK(Univariate<Fp>::gcd(a, b).degree() == 1);

    std::vector<Fp> nodes, values;
    for (int i = 0; i < 5; ++i) {
        nodes.push_back(ctx.from_int(i));
        values.push_back(a.evaluate(nodes.back()));
    }
    auto rec = interpolate<Fp>(ctx, nodes, values);
    CHECK(rec == a);
}

TEST_CASE("normal form division") {
    Fp::Ctx ctx(10007);
    auto f = parse_poly<Fp>("x0^3+x1^3+x2^3", ctx);
    auto g = MultiPoly<Fp>::random_homogeneous(3, ctx, 5, rng);
    auto [nf, h] = normal_form(g, f);
    CHECK(g == nf + f * h);
    const auto& lm = f.leading_term().first;
    for (const auto& [m, c] : nf.terms()) CHECK_FALSE(m.divisible_by(lm));
}
