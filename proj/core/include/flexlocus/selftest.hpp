#pragma once

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "flexlocus/flex.hpp"
#include "flexlocus/oracle.hpp"
#include "flexlocus/parser.hpp"
#include "flexlocus/rational.hpp"
#include "flexlocus/sampling.hpp"

namespace flexlocus::selftest {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

template <class K>
MultiPoly<K> random_squarefree(int nvars, const typename K::Ctx& ctx, int degree,
                               std::mt19937_64& rng) {
    for (int t = 0; t < 100; ++t) {
        MultiPoly<K> f = MultiPoly<K>::random_homogeneous(nvars, ctx, degree, rng);
        if (f.is_zero()) continue;
        if (is_squarefree(f, rng)) return f;
    }
    throw internal_error("failed to draw a squarefree polynomial");
}

inline bool crit1(std::string& detail, uint64_t seed) {
    Fp::Ctx ctx(10007);
    // pure powers, exhaustively for n <= 3, d_i <= 3
    for (int nv = 2; nv <= 4; ++nv) {
        std::vector<int> dv(nv, 1);
        while (true) {
            std::vector<MultiPoly<Fp>> sys;
            for (int i = 0; i < nv; ++i) sys.push_back(MultiPoly<Fp>::variable(nv, ctx, i, dv[i]));
            Fp r = resultant_scalar(sys, DegreeVector(dv), seed);
            if (!(r == ctx.one())) {
                detail = "pure-power resultant != 1";
                return false;
            }
            int i = 0;
            for (; i < nv; ++i) {
                if (++dv[i] <= 3) break;
                dv[i] = 1;
            }
            if (i == nv) break;
        }
    }
    // multihomogeneity: scaling slot i by lambda scales Res by lambda^(prod_{j!=i} d_j)
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 100; ++t) {
        int nv = 2 + int(rng() % 2);
        std::vector<int> dv(nv);
        for (int& d : dv) d = 1 + int(rng() % 3);
        DegreeVector degs(dv);
        std::vector<MultiPoly<Fp>> sys;
        for (int i = 0; i < nv; ++i)
            sys.push_back(MultiPoly<Fp>::random_homogeneous(nv, ctx, dv[i], rng));
        Fp base = resultant_scalar(sys, degs, seed);
        int slot = int(rng() % nv);
        Fp lambda = ctx.from_int(2 + int(rng() % 1000));
        std::vector<MultiPoly<Fp>> scaled = sys;
        scaled[slot] = scaled[slot].scaled(lambda);
        Fp expected = base;
        for (long long i = 0; i < degs.slot_degree(slot); ++i) expected *= lambda;
        if (!(resultant_scalar(scaled, degs, seed) == expected)) {
            detail = "multihomogeneity exponent mismatch";
            return false;
        }
    }
    detail = "117 pure-power systems, 100 scaling checks";
    return true;
}

inline bool crit2(std::string& detail, uint64_t seed) {
    Fp::Ctx ctx(10007);
    std::mt19937_64 rng(seed + 2);
    for (int t = 0; t < 100; ++t) {
        int du = 1 + int(rng() % 6), dv = 1 + int(rng() % 6);
        MultiPoly<Fp> u(2, ctx), v(2, ctx);
        while (u.is_zero() || u.total_degree() != du)
            u = MultiPoly<Fp>::random_homogeneous(2, ctx, du, rng);
        while (v.is_zero() || v.total_degree() != dv)
            v = MultiPoly<Fp>::random_homogeneous(2, ctx, dv, rng);
        std::vector<MultiPoly<Fp>> sys{u, v};
        Fp main_path = resultant_scalar(sys, DegreeVector({du, dv}), seed);
        Fp oracle_val = oracle::sylvester_resultant(u, v, du, dv);
        if (!(main_path == oracle_val)) {
            detail = "disagreement at instance " + std::to_string(t);
            return false;
        }
    }
    detail = "100 random Sylvester instances, exact agreement";
    return true;
}

inline bool crit3(std::string& detail, uint64_t seed) {
    Fp::Ctx ctx(10007);
    std::mt19937_64 rng(seed + 3);
    int poisson_done = 0;
    while (poisson_done < 100) {
        int nv = 2 + int(rng() % 2);
        int e = 1 + int(rng() % 3);
        MultiPoly<Fp> g0 = MultiPoly<Fp>::random_homogeneous(nv, ctx, e, rng);
        MultiPoly<Fp> g0p = MultiPoly<Fp>::random_homogeneous(nv, ctx, e, rng);
        if (g0.is_zero() || g0p.is_zero()) continue;
        std::vector<MultiPoly<Fp>> ells;
        for (int i = 0; i < nv - 1; ++i)
            ells.push_back(MultiPoly<Fp>::random_homogeneous(nv, ctx, 1, rng));
        try {
            if (!poisson_check(g0, g0p, ells, seed)) {
                detail = "poisson identity failed";
                return false;
            }
        } catch (const validation_error&) {
            continue;  // dependent linear forms; redraw
        }
        ++poisson_done;
    }
    for (int t = 0; t < 100; ++t) {
        int k = 1 + int(rng() % 2);  // k polys in k+1 variables
        std::vector<int> degs(k);
        for (int& d : degs) d = 1 + int(rng() % 3);
        int dn = 1 + int(rng() % 3);
        std::vector<MultiPoly<Fp>> polys;
        for (int i = 0; i < k; ++i)
            polys.push_back(MultiPoly<Fp>::random_homogeneous(k + 1, ctx, degs[i], rng));
        if (!descent_check(polys, degs, dn, seed)) {
            detail = "descent identity failed";
            return false;
        }
    }
    detail = "100 Poisson + 100 descent instances, exact equality";
    return true;
}

template <class K>
bool crit4_field(const typename K::Ctx& ctx, std::string& detail, uint64_t seed) {
    std::mt19937_64 rng(seed + 4);
    for (int d : {3, 4, 5}) {
        MultiPoly<K> f = random_squarefree<K>(3, ctx, d, rng);
        Hypersurface<K> V(f, rng);
        FlexPolynomial<K> fp = flex_polynomial(V, seed);
        if (fp.rho.total_degree() != 3 * d - 6) {
            detail = "deg rho != 3d-6 at d=" + std::to_string(d);
            return false;
        }
        // rho == -det H(f) / (d-1)^2 modulo f
        K denom = ctx.from_int((long long)(d - 1) * (d - 1));
        MultiPoly<K> target = oracle::hessian_flex_oracle(f).scaled(-(denom.inv()));
        if (!normal_form(fp.rho - target, f).first.is_zero()) {
            detail = "Hessian identity failed at d=" + std::to_string(d);
            return false;
        }
    }
    return true;
}

inline bool crit4(std::string& detail, uint64_t seed) {
    Rational::Ctx qctx;
    if (!crit4_field<Rational>(qctx, detail, seed)) {
        detail += " (over Q)";
        return false;
    }
    Fp::Ctx pctx(10007);
    if (!crit4_field<Fp>(pctx, detail, seed)) {
        detail += " (over F_10007)";
        return false;
    }
    detail = "deg rho = 3d-6 and Hessian identity, d in {3,4,5}, over Q and F_10007";
    return true;
}

inline bool crit5(std::string& detail, uint64_t seed) {
    Fp::Ctx ctx(13);
    std::mt19937_64 rng(seed + 5);
    MultiPoly<Fp> f = parse_poly<Fp>("x0^3+x1^3+x2^3", ctx);
    Hypersurface<Fp> V(f, rng);
    FlexPolynomial<Fp> fp = flex_polynomial(V, seed);
    Monomial xyz(3);
    xyz[0] = xyz[1] = xyz[2] = 1;
    if (fp.rho.term_count() != 1 || fp.rho.coeff(xyz).is_zero()) {
        detail = "rho not proportional to x0*x1*x2";
        return false;
    }
    oracle::EnumerationDomain dom1(13, 1, 2);
    oracle::EnumerationDomain dom2(13, 2, 2);
    int flexes = 0, disagreements = 0;
    dom1.for_each_point([&](const std::vector<Fp2>& q2) {
        std::vector<Fp> q;
        for (const Fp2& c : q2) q.push_back(c.re());
        if (!V.contains(q)) return;
        bool a = is_flex(V, q, seed);
        bool b = !oracle::brute_force_cone(V, q, 2, dom2).empty();
        if (a != b) ++disagreements;
        if (a) ++flexes;
    });
    if (disagreements != 0 || flexes != 9) {
        detail = "flex count " + std::to_string(flexes) + ", disagreements " +
                 std::to_string(disagreements);
        return false;
    }
    detail = "9 flexes over F_13, oracle agreement on every point of V";
    return true;
}

inline bool crit6(std::string& detail, uint64_t seed) {
    Fp::Ctx ctx(10007);
    std::mt19937_64 rng(seed + 6);
    for (int d : {3, 4}) {
        MultiPoly<Fp> f = random_squarefree<Fp>(4, ctx, d, rng);
        Hypersurface<Fp> V(f, rng);
        FlexPolynomial<Fp> fp = flex_polynomial(V, seed);
        if (fp.rho.total_degree() != 11 * d - 24) {
            detail = "deg rho != 11d-24 at d=" + std::to_string(d);
            return false;
        }
    }
    detail = "random cubic/quartic surface: deg rho = 9 / 20";
    return true;
}

inline bool crit7(std::string& detail, uint64_t seed) {
    Fp::Ctx ctx(10007);
    std::mt19937_64 rng(seed + 7);
    MultiPoly<Fp> f = parse_poly<Fp>("x0^3+x1^3+x2^3+x3^3", ctx);
    Hypersurface<Fp> V(f, rng);
    FlexPolynomial<Fp> fp = flex_polynomial(V, seed);
    // the three coordinate-pairing lines through (1:-1:*:*) patterns
    const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& pr : pairs) {
        std::vector<Fp> p(4, ctx.zero()), q(4, ctx.zero());
        p[pr[0]] = ctx.one();
        p[pr[1]] = -ctx.one();
        q[pr[2]] = ctx.one();
        q[pr[3]] = -ctx.one();
        if (!fp.rho.substitute_line(p, q).is_zero() || !fp.rho.evaluate(q).is_zero()) {
            detail = "rho does not vanish on a coordinate-pairing line";
            return false;
        }
    }
    DegreeReport rep = degree_report(3, 3);
    if (rep.deg_rho != 9 || rep.deg_flex_locus != 27 || !rep.deg_line_locus ||
        *rep.deg_line_locus != 27) {
        detail = "degree_report(3,3) != (9, 27, 27)";
        return false;
    }
    detail = "rho vanishes on the three rational lines; degree_report(3,3) = (9, 27, 27)";
    return true;
}

inline bool crit8(std::string& detail, uint64_t seed) {
    for (uint64_t p : {7ull, 13ull}) {
        Fp::Ctx ctx(p);
        std::mt19937_64 rng(seed + 8);
        for (const char* text : {"x0^3+x1^3+x2^3", "x0^3+x1^3+x2^3+3*x0*x1*x2"}) {
            MultiPoly<Fp> f = parse_poly<Fp>(text, ctx);
            Hypersurface<Fp> V(f, rng);
            FlexPolynomial<Fp> fp = flex_polynomial(V, seed);
            oracle::EnumerationDomain dom1(p, 1, 2);
            oracle::EnumerationDomain dom2(p, 2, 2);
            int bad = 0;
            dom1.for_each_point([&](const std::vector<Fp2>& q2) {
                std::vector<Fp> q;
                for (const Fp2& c : q2) q.push_back(c.re());
                if (!V.contains(q)) return;
                bool a = is_flex(V, q, seed);
                bool b = fp.rho.evaluate(q).is_zero();
                bool c = !oracle::brute_force_cone(V, q, 2, dom2).empty();
                if (a != b || b != c) ++bad;
            });
            if (bad != 0) {
                detail = "disagreements over F_" + std::to_string(p);
                return false;
            }
        }
    }
    detail = "is_flex <=> rho = 0 <=> cone search, exhaustive over F_7 and F_13";
    return true;
}

inline bool crit9(std::string& detail, uint64_t seed) {
    Rational::Ctx ctx;
    std::mt19937_64 rng(seed + 9);
    MultiPoly<Rational> f = parse_poly<Rational>("x1^2*x2-x0^3-x0^2*x2", ctx, 3);
    Hypersurface<Rational> V(f, rng);
    std::vector<Rational> node{ctx.zero(), ctx.zero(), ctx.one()};
    if (!V.is_singular_at(node)) {
        detail = "(0:0:1) is not singular";
        return false;
    }
    if (!is_flex(V, node, seed)) {
        detail = "singular-point shortcut failed";
        return false;
    }
    FlexPolynomial<Rational> fp = flex_polynomial(V, seed);
    if (!fp.rho.evaluate(node).is_zero()) {
        detail = "rho does not vanish at the node";
        return false;
    }
    detail = "nodal cubic: node is a flex via the shortcut and via rho";
    return true;
}

struct Crit10Data {
    std::vector<SampledFlexPoint> quartic_points;
    std::vector<SampledFlexPoint> cubic_points;
    std::vector<long long> slice_counts;     // solutions per quartic slice
    std::vector<long long> cubic_slice_counts;
    bool eliminants_nonzero = true;
};

inline bool crit10(std::string& detail, uint64_t seed, Crit10Data& data) {
    Fp::Ctx ctx(2147483647ull);
    std::mt19937_64 rng(seed + 10);

    MultiPoly<Fp> f4 = random_squarefree<Fp>(4, ctx, 4, rng);
    Hypersurface<Fp> V4(f4, rng);
    FlexPolynomial<Fp> fp4 = flex_polynomial(V4, seed);
    for (int s = 0; s < 40 && int(data.quartic_points.size()) < 5; ++s) {
        SliceResult res = slice_flex_locus(V4, fp4.rho, rng);
        data.eliminants_nonzero = data.eliminants_nonzero && res.eliminant_nonzero;
        data.slice_counts.push_back((long long)res.points.size());
        for (auto& pt : res.points)
            if (pt.smooth_on_v && int(data.quartic_points.size()) < 5)
                data.quartic_points.push_back(pt);
    }
    if (int(data.quartic_points.size()) < 5) {
        detail = "could not sample 5 smooth flex points on the quartic";
        return false;
    }
    for (const auto& pt : data.quartic_points) {
        FlexCertificate<Fp> cert = flex_line(V4, pt.point, seed);
        if (cert.unique_line != Trilean::yes || !cert.contact_order ||
            cert.contact_order->infinite || cert.contact_order->order != 4) {
            detail = "quartic certificate without unique line of contact order 4";
            return false;
        }
    }

    // a random cubic surface need not carry an F_p-rational line (the Galois
    // action on its 27 lines can be fixed-point-free), so redraw until the
    // flex locus has rational points
    bool cubic_ok = false;
    for (int draw = 0; draw < 12 && !cubic_ok; ++draw) {
        MultiPoly<Fp> f3 = random_squarefree<Fp>(4, ctx, 3, rng);
        Hypersurface<Fp> V3(f3, rng);
        FlexPolynomial<Fp> fp3 = flex_polynomial(V3, seed);
        data.cubic_points.clear();
        for (int s = 0; s < 4 && data.cubic_points.empty(); ++s) {
            SliceResult res = slice_flex_locus(V3, fp3.rho, rng);
            data.eliminants_nonzero = data.eliminants_nonzero && res.eliminant_nonzero;
            data.cubic_slice_counts.push_back((long long)res.points.size());
            for (auto& pt : res.points)
                if (pt.smooth_on_v) data.cubic_points.push_back(pt);
        }
        if (data.cubic_points.empty()) continue;
        cubic_ok = true;
        for (const auto& pt : data.cubic_points) {
            FlexCertificate<Fp> cert = flex_line(V3, pt.point, seed);
            if (cert.unique_line == Trilean::yes &&
                (!cert.contact_order || !cert.contact_order->infinite)) {
                detail = "cubic flex line not contained in the surface";
                return false;
            }
        }
    }
    if (!cubic_ok) {
        detail = "no smooth flex point sampled on any cubic surface";
        return false;
    }
    detail = "5 quartic certificates (contact 4), " + std::to_string(data.cubic_points.size()) +
             " cubic certificate(s) (contact inf), over F_2147483647";
    return true;
}

inline bool crit11(std::string& detail, const Crit10Data& data) {
    if (!data.eliminants_nonzero) {
        detail = "a slice eliminant vanished identically";
        return false;
    }
    DegreeReport rep4 = degree_report(3, 4), rep3 = degree_report(3, 3);
    for (long long c : data.slice_counts)
        if (c > rep4.deg_flex_locus) {
            detail = "quartic slice solution count exceeds deg of the flex locus";
            return false;
        }
    for (long long c : data.cubic_slice_counts)
        if (c > rep3.deg_flex_locus) {
            detail = "cubic slice solution count exceeds deg of the flex locus";
            return false;
        }
    for (const auto& pt : data.quartic_points)
        if (!pt.jacobian_rank2) {
            detail = "Jacobian of (f, rho) not of rank 2 at a sampled point";
            return false;
        }
    for (const auto& pt : data.cubic_points)
        if (!pt.jacobian_rank2) {
            detail = "Jacobian of (f, rho) not of rank 2 at a sampled point";
            return false;
        }
    detail = "finite slices within degree bound; Jacobian rank 2 at every sampled flex point";
    return true;
}

}  // namespace detail

/// Run the acceptance suite. Exact checks throughout; each criterion reports
/// one pass/fail line of detail.
inline std::vector<CriterionResult> run_all(uint64_t seed = 0x5eed) {
    using Fn = std::function<bool(std::string&, uint64_t)>;
    std::vector<std::pair<std::string, Fn>> fast = {
        {"resultant normalization and multihomogeneity", detail::crit1},
        {"sylvester oracle agreement", detail::crit2},
        {"poisson and descent identities", detail::crit3},
        {"plane-curve flex polynomial and Hessian identity", detail::crit4},
        {"fermat cubic curve flexes", detail::crit5},
        {"cubic and quartic surface rho degrees", detail::crit6},
        {"fermat cubic surface lines and degree report", detail::crit7},
        {"exhaustive flex/rho/cone agreement", detail::crit8},
        {"singular points are flexes", detail::crit9},
    };
    std::vector<CriterionResult> out;
    int idx = 1;
    for (auto& [name, fn] : fast) {
        CriterionResult r;
        r.index = idx++;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = fn(r.detail, seed);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    detail::Crit10Data data;
    {
        CriterionResult r;
        r.index = 10;
        r.name = "generic flex line certificates over F_p, p ~ 2^31";
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = detail::crit10(r.detail, seed, data);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    {
        CriterionResult r;
        r.index = 11;
        r.name = "flex scheme smoothness proxy on sampled points";
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = detail::crit11(r.detail, data);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_results(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.index << ": " << r.name << " — "
           << r.detail << "  [" << r.seconds << "s]\n";
    }
    return os.str();
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace flexlocus::selftest
