#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "flexlocus/flex.hpp"
#include "flexlocus/oracle.hpp"
#include "flexlocus/parser.hpp"
#include "flexlocus/rational.hpp"

using namespace flexlocus;

namespace {
std::mt19937_64 rng(271828);
}

TEST_CASE("sylvester resultant basics") {
    Rational::Ctx ctx;
    auto y0 = parse_poly<Rational>("x0", ctx, 2);
    auto y1 = parse_poly<Rational>("x1", ctx, 2);
    CHECK(oracle::sylvester_resultant(y0, y1) == ctx.one());
    auto u = parse_poly<Rational>("x0^2-x1^2", ctx, 2);
    auto v = parse_poly<Rational>("x0-x1", ctx, 2);
    CHECK(oracle::sylvester_resultant(u, v).is_zero());
    // pure powers normalize to 1
    auto p3 = parse_poly<Rational>("x0^3", ctx, 2);
    auto q2 = parse_poly<Rational>("x1^2", ctx, 2);
    CHECK(oracle::sylvester_resultant(p3, q2) == ctx.one());
}

TEST_CASE("hessian oracle") {
    Rational::Ctx ctx;
    auto fermat = parse_poly<Rational>("x0^3+x1^3+x2^3", ctx);
    auto h = oracle::hessian_flex_oracle(fermat);
    CHECK(h == parse_poly<Rational>("216*x0*x1*x2", ctx));
    CHECK(h.total_degree() == 3);
    auto conic = parse_poly<Rational>("x0*x2-x1^2", ctx);
    auto hc = oracle::hessian_flex_oracle(conic);
    CHECK(hc.total_degree() == 0);
    CHECK_FALSE(hc.is_zero());
    for (int d = 3; d <= 5; ++d) {
        auto f = MultiPoly<Rational>::random_homogeneous(3, ctx, d, rng);
        if (f.is_zero()) continue;
        auto hf = oracle::hessian_flex_oracle(f);
        if (!hf.is_zero()) CHECK(hf.total_degree() == 3 * (d - 2));
    }
}

TEST_CASE("enumeration domain counts and uniqueness") {
    oracle::EnumerationDomain d1(7, 1, 2);
    CHECK(d1.count() == 57);  // 7^2 + 7 + 1
    oracle::EnumerationDomain d2(7, 2, 2);
    CHECK(d2.count() == 2451);  // 49^2 + 49 + 1
    std::set<std::string> seen;
    unsigned long long visited = 0;
    d1.for_each_point([&](const std::vector<Fp2>& q) {
        ++visited;
        // canonical: first nonzero coordinate is 1
        size_t lead = 0;
        while (lead < q.size() && q[lead].is_zero()) ++lead;
        REQUIRE(lead < q.size());
        CHECK(q[lead] == d1.ctx().one());
        std::string key;
        for (const auto& c : q) key += c.to_string() + "|";
        seen.insert(key);
    });
    CHECK(visited == d1.count());
    CHECK(seen.size() == d1.count());
}

TEST_CASE("brute force cone") {
    Fp::Ctx ctx(7);
    std::mt19937_64 r2(5);
    Hypersurface<Fp> V(parse_poly<Fp>("x0^3+x1^3+x2^3", ctx), r2);
    oracle::EnumerationDomain dom(7, 1, 2);
    // flex point: the cone Z_p^2 contains the flex line
    std::vector<Fp> flex{ctx.one(), -ctx.one(), ctx.zero()};
    CHECK_FALSE(oracle::brute_force_cone(V, flex, 2, dom).empty());
    // k = 1 at a smooth point: the tangent line minus p has p^{n-1}+...+1 - 1
    // points over F_p for a plane curve (the full tangent is a P^1)
    auto tangent = oracle::brute_force_cone(V, flex, 1, dom);
    CHECK(tangent.size() == 7);  // |P^1(F_7)| = 8, minus p itself
    // is_flex must agree with the exhaustive search over F_{31^2} at a smooth
    // point of the Fermat quartic (15^4 + 8^4 + 6^4 = 2 + 4 + 25 = 0 mod 31)
    Fp::Ctx c31(31);
    Hypersurface<Fp> W(parse_poly<Fp>("x0^4+x1^4+x2^4", c31), r2);
    oracle::EnumerationDomain dom31(31, 2, 2);
    std::vector<Fp> p31{c31.from_int(15), c31.from_int(8), c31.from_int(6)};
    REQUIRE(W.contains(p31));
    REQUIRE_FALSE(W.is_singular_at(p31));
    bool flexq = is_flex(W, p31);
    bool coneq = !oracle::brute_force_cone(W, p31, 2, dom31).empty();
    CHECK(flexq == coneq);
    // refusal on oversized domains
    Fp::Ctx c101(101);
    Hypersurface<Fp> V101(parse_poly<Fp>("x0^3+x1^3+x2^3", c101), r2);
    std::vector<Fp> flex101{c101.one(), -c101.one(), c101.zero()};
    oracle::EnumerationDomain huge(101, 2, 2);
    CHECK_THROWS_AS(oracle::brute_force_cone(V101, flex101, 2, huge), validation_error);
}
