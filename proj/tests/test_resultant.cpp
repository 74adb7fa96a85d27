#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flexlocus/linalg.hpp"
#include "flexlocus/macaulay.hpp"
#include "flexlocus/oracle.hpp"
#include "flexlocus/parser.hpp"
#include "flexlocus/rational.hpp"
#include "flexlocus/resultant_interp.hpp"

using namespace flexlocus;

namespace {
std::mt19937_64 rng(926);
}

TEST_CASE("determinant and solver") {
    Rational::Ctx ctx;
    Matrix<Rational> m{{ctx.from_int(2), ctx.from_int(1)}, {ctx.from_int(5), ctx.from_int(3)}};
    CHECK(det_bareiss(m, ctx) == ctx.one());
    Matrix<Rational> sing{{ctx.from_int(1), ctx.from_int(2)}, {ctx.from_int(2), ctx.from_int(4)}};
    CHECK(det_bareiss(sing, ctx) == ctx.zero());
    auto sol = solve_linear(m, {ctx.from_int(3), ctx.from_int(8)}, ctx);
    REQUIRE(sol);
    CHECK((*sol)[0] == ctx.from_int(1));
    CHECK((*sol)[1] == ctx.from_int(1));
    auto ker = kernel_vector(Matrix<Rational>{{ctx.from_int(1), ctx.from_int(-2)}}, ctx);
    REQUIRE(ker);
    CHECK(((*ker)[0] - (*ker)[1] * ctx.from_int(2)).is_zero());
}

TEST_CASE("resultant normalization on pure powers") {
    Fp::Ctx ctx(10007);
    for (int nv = 2; nv <= 4; ++nv) {
        std::vector<MultiPoly<Fp>> sys;
        std::vector<int> dv;
        for (int i = 0; i < nv; ++i) {
            dv.push_back(i + 1);
            sys.push_back(MultiPoly<Fp>::variable(nv, ctx, i, i + 1));
        }
        CHECK(resultant_scalar(sys, DegreeVector(dv)) == ctx.one());
    }
}

TEST_CASE("linear systems give the coefficient determinant") {
    Fp::Ctx ctx(10007);
    for (int nv = 2; nv <= 4; ++nv) {
        for (int t = 0; t < 20; ++t) {
            Matrix<Fp> a(nv, std::vector<Fp>(nv, ctx.zero()));
            std::vector<MultiPoly<Fp>> sys;
            for (int i = 0; i < nv; ++i) {
                MultiPoly<Fp> li(nv, ctx);
                for (int j = 0; j < nv; ++j) {
                    a[i][j] = ctx.random(rng);
                    li.add_term(Monomial::variable(nv, j), a[i][j]);
                }
                if (li.is_zero()) li = MultiPoly<Fp>::variable(nv, ctx, 0);
                sys.push_back(li);
            }
            bool zero_row = false;
            for (int i = 0; i < nv; ++i) {
                bool z = true;
                for (int j = 0; j < nv; ++j)
                    if (!a[i][j].is_zero()) z = false;
                zero_row |= z;
            }
            if (zero_row) continue;
            CHECK(resultant_scalar(sys, DegreeVector(std::vector<int>(nv, 1))) ==
                  det_bareiss(a, ctx));
        }
    }
}

TEST_CASE("sylvester agreement over Q") {
    Rational::Ctx ctx;
    std::mt19937_64 r2(17);
    for (int t = 0; t < 30; ++t) {
        int du = 1 + int(r2() % 4), dv = 1 + int(r2() % 4);
        MultiPoly<Rational> u(2, ctx), v(2, ctx);
        while (u.is_zero() || u.total_degree() != du)
            u = MultiPoly<Rational>::random_homogeneous(2, ctx, du, r2);
        while (v.is_zero() || v.total_degree() != dv)
            v = MultiPoly<Rational>::random_homogeneous(2, ctx, dv, r2);
        std::vector<MultiPoly<Rational>> sys{u, v};
        CHECK(resultant_scalar(sys, DegreeVector({du, dv})) ==
              oracle::sylvester_resultant(u, v, du, dv));
    }
}

TEST_CASE("vanishing at planted common zeros") {
    Fp::Ctx ctx(10007);
    for (int t = 0; t < 20; ++t) {
        // plant the common zero (1 : z1 : z2)
        std::vector<Fp> z{ctx.one(), ctx.random(rng), ctx.random(rng)};
        std::vector<MultiPoly<Fp>> sys;
        std::vector<int> dv{1 + int(rng() % 2), 1 + int(rng() % 2), 1 + int(rng() % 2)};
        for (int i = 0; i < 3; ++i) {
            MultiPoly<Fp> f(3, ctx);
            while (f.is_zero() || !f.evaluate(z).is_zero()) {
                f = MultiPoly<Fp>::random_homogeneous(3, ctx, dv[i], rng);
                if (f.is_zero()) continue;
                // adjust the y0^d coefficient so f(z) = 0 (z0 = 1)
                Fp val = f.evaluate(z);
                f.add_term(Monomial::variable(3, 0, dv[i]), -val);
            }
            sys.push_back(f);
        }
        CHECK(resultant_scalar(sys, DegreeVector(dv)).is_zero());
    }
}

TEST_CASE("nonvanishing on generic systems") {
    Fp::Ctx ctx(10007);
    int nonzero = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<MultiPoly<Fp>> sys;
        std::vector<int> dv{1, 2, 2};
        for (int i = 0; i < 3; ++i)
            sys.push_back(MultiPoly<Fp>::random_homogeneous(3, ctx, dv[i], rng));
        if (!resultant_scalar(sys, DegreeVector(dv)).is_zero()) ++nonzero;
    }
    CHECK(nonzero >= 19);  // a random system is degenerate with probability ~1/p
}

TEST_CASE("gradient recovers the unique common zero") {
    // (y0, y0*y1) is degenerate with unique zero (0 : 1); the gradient of the
    // resultant with respect to the linear slot is proportional to it
    Fp::Ctx ctx(10007);
    auto l = parse_poly<Fp>("x0", ctx, 2);
    auto q = parse_poly<Fp>("x0*x1", ctx, 2);
    std::vector<MultiPoly<Fp>> sys{l, q};
    DegreeVector degs({1, 2});
    REQUIRE(resultant_scalar(sys, degs).is_zero());
    auto grad = resultant_gradient(sys, degs, 0);
    REQUIRE(grad.size() == 2);
    // basis for degree 1 in grevlex order is (y1, y0): entries (eta1, eta0)
    bool eta_is_01 = false;
    for (size_t i = 0; i < grad.size(); ++i)
        if (!grad[i].is_zero()) eta_is_01 = true;
    CHECK(eta_is_01);
    // check proportionality to (0 : 1) through the quadratic slot too
    auto grad2 = resultant_gradient(sys, degs, 1);
    // basis of degree 2: y1^2, y0*y1, y0^2; gradient entries ~ eta^a
    REQUIRE(grad2.size() == 3);
    Monomial y1sq(2); y1sq[1] = 2;
    Monomial y0y1(2); y0y1[0] = 1; y0y1[1] = 1;
    Monomial y0sq(2); y0sq[0] = 2;
    auto basis = monomials_of_degree(2, 2);
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i] == y1sq) CHECK(!grad2[i].is_zero());
        if (basis[i] == y0sq) CHECK(grad2[i].is_zero());
    }
}

TEST_CASE("gradient on a planted-zero ternary system") {
    Fp::Ctx ctx(10007);
    std::vector<Fp> z{ctx.one(), ctx.from_int(3), ctx.from_int(5)};
    std::vector<MultiPoly<Fp>> sys;
    std::vector<int> dv{1, 1, 2};
    for (int i = 0; i < 3; ++i) {
        MultiPoly<Fp> f = MultiPoly<Fp>::random_homogeneous(3, ctx, dv[i], rng);
        Fp val = f.evaluate(z);
        f.add_term(Monomial::variable(3, 0, dv[i]), -val);
        sys.push_back(f);
    }
    DegreeVector degs(dv);
    REQUIRE(resultant_scalar(sys, degs).is_zero());
    auto grad = resultant_gradient(sys, degs, 0);
    // degree-1 slot: gradient coordinates are (eta) against the grevlex basis
    auto basis = monomials_of_degree(3, 1);
    std::vector<Fp> eta(3, ctx.zero());
    for (size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < 3; ++j)
            if (basis[i] == Monomial::variable(3, j)) eta[j] = grad[i];
    bool nonzero = false;
    for (auto& e : eta)
        if (!e.is_zero()) nonzero = true;
    REQUIRE(nonzero);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK((eta[i] * z[j] - eta[j] * z[i]).is_zero());
}

TEST_CASE("poisson and descent identities") {
    Fp::Ctx ctx(10007);
    auto g0 = parse_poly<Fp>("x0^2+3*x1^2-x0*x2", ctx);
    auto g0p = parse_poly<Fp>("2*x0^2-x1*x2+x2^2", ctx);
    std::vector<MultiPoly<Fp>> ells{parse_poly<Fp>("x0-x1", ctx, 3),
                                    parse_poly<Fp>("x1-2*x2", ctx, 3)};
    CHECK(poisson_check(g0, g0p, ells));
    std::vector<MultiPoly<Fp>> dep{parse_poly<Fp>("x0-x1", ctx, 3),
                                   parse_poly<Fp>("2*x0-2*x1", ctx, 3)};
    CHECK_THROWS_AS(poisson_check(g0, g0p, dep), validation_error);

    std::vector<MultiPoly<Fp>> polys{parse_poly<Fp>("x0^2+x0*x1+x2^2", ctx),
                                     parse_poly<Fp>("x0-4*x1+x2", ctx, 3)};
    CHECK(descent_check(polys, {2, 1}, 3));
}

TEST_CASE("resultant_poly interpolation") {
    Fp::Ctx ctx(10007);
    // n=1 system linear in y with x-linear coefficients: the 2x2 determinant
    auto f0 = parse_poly<Fp>("y0*x0+y1*x1", ctx);
    auto f1 = parse_poly<Fp>("y0*x1-y1*x0", ctx);
    std::vector<MultiPoly<Fp>> sys{f0, f1};
    auto r = resultant_poly(sys, 2, DegreeVector({1, 1}), 2);
    // Res(a0 y0 + a1 y1, b0 y0 + b1 y1) = a0 b1 - a1 b0
    CHECK(r == parse_poly<Fp>("-x0^2-x1^2", ctx, 2));
    // multihomogeneity in x: bound looser than the degree is fine
    auto r2 = resultant_poly(sys, 2, DegreeVector({1, 1}), 7);
    CHECK(r2 == r);
}

TEST_CASE("resultant_poly rejects undersized fields") {
    Fp::Ctx ctx(13);
    auto f0 = parse_poly<Fp>("y0*x0+y1*x1", ctx);
    auto f1 = parse_poly<Fp>("y0*x1-y1*x0", ctx);
    std::vector<MultiPoly<Fp>> sys{f0, f1};
    CHECK_THROWS_AS(resultant_poly(sys, 2, DegreeVector({1, 1}), 20), internal_error);
}

TEST_CASE("macaulay system bookkeeping") {
    DegreeVector degs({1, 2, 3});
    CHECK(degs.critical_degree() == 4);
    CHECK(degs.slot_degree(0) == 6);
    CHECK(degs.slot_degree(1) == 3);
    CHECK(degs.slot_degree(2) == 2);
    MacaulayPlan plan(3, degs);
    CHECK(plan.cols.size() == 15);  // C(4+2, 2)
    for (int r = 0; r < int(plan.cols.size()); ++r)
        CHECK(plan.cols[r][plan.row_slot[r]] >= degs[plan.row_slot[r]]);
}
