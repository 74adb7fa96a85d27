#pragma once

#include <random>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/flex.hpp"
#include "flexlocus/fp.hpp"
#include "flexlocus/hypersurface.hpp"
#include "flexlocus/linalg.hpp"
#include "flexlocus/multipoly.hpp"
#include "flexlocus/univariate.hpp"

namespace flexlocus {

namespace sampling_detail {

/// Substitute x_j -> sum_k M[j][k] u_k (M is nvars x new_nvars, not square).
template <class K>
MultiPoly<K> restrict_linear(const MultiPoly<K>& f, const Matrix<K>& m, int new_nvars) {
    const auto& ctx = f.ctx();
    const int nv = f.nvars();
    std::vector<MultiPoly<K>> images;
    images.reserve(nv);
    for (int j = 0; j < nv; ++j) {
        MultiPoly<K> lj(new_nvars, ctx);
        for (int k = 0; k < new_nvars; ++k) lj.add_term(Monomial::variable(new_nvars, k), m[j][k]);
        images.push_back(std::move(lj));
    }
    // cached powers of each image keep the expansion near-linear in term count
    std::vector<std::vector<MultiPoly<K>>> pows(nv);
    for (int j = 0; j < nv; ++j) pows[j].push_back(MultiPoly<K>::constant(new_nvars, ctx, ctx.one()));
    MultiPoly<K> acc(new_nvars, ctx);
    for (const auto& [mono, c] : f.terms()) {
        MultiPoly<K> t = MultiPoly<K>::constant(new_nvars, ctx, c);
        for (int j = 0; j < nv; ++j) {
            int e = mono[j];
            while (int(pows[j].size()) <= e) pows[j].push_back(pows[j].back() * images[j]);
            if (e) t = t * pows[j][e];
        }
        acc = acc + t;
    }
    acc.refresh_grade();
    return acc;
}

/// Sylvester-style resultant of two univariates with pinned formal degrees.
template <class K>
K sylvester_det(const Univariate<K>& u, int du, const Univariate<K>& v, int dv,
                const typename K::Ctx& ctx) {
    if (du == 0 || dv == 0) {
        // a nonzero constant has empty Sylvester matrix
        K cu = du == 0 ? u.coeff(0) : ctx.one();
        K cv = dv == 0 ? v.coeff(0) : ctx.one();
        K acc = ctx.one();
        for (int i = 0; i < dv; ++i) acc = acc * cu;
        for (int i = 0; i < du; ++i) acc = acc * cv;
        return acc;
    }
    const int n = du + dv;
    Matrix<K> s(n, std::vector<K>(n, ctx.zero()));
    for (int r = 0; r < dv; ++r)
        for (int c = 0; c <= du; ++c) s[r][r + c] = u.coeff(du - c);
    for (int r = 0; r < du; ++r)
        for (int c = 0; c <= dv; ++c) s[dv + r][r + c] = v.coeff(dv - c);
    return det_bareiss(std::move(s), ctx);
}

}  // namespace sampling_detail

/// One F_p-rational point of the flex locus hit by a random plane slice.
struct SampledFlexPoint {
    std::vector<Fp> point;
    bool smooth_on_v = false;
    bool jacobian_rank2 = false;  // rank of Jac(f, rho) at the point is 2
};

struct SliceResult {
    bool eliminant_nonzero = false;
    long long eliminant_degree = -1;
    std::vector<SampledFlexPoint> points;
};

/// Slice {f = rho = 0} in P^n by a random (n-2)-codimensional linear space
/// down to a plane curve pair, eliminate to a univariate, and pull F_p-rational
/// solutions back up. Each returned point lies on V with rho(point) = 0.
inline SliceResult slice_flex_locus(const Hypersurface<Fp>& V, const MultiPoly<Fp>& rho,
                                    std::mt19937_64& rng) {
    const int m = V.n() + 1;
    const auto& ctx = V.f().ctx();
    const int d = V.d();
    const int dr = rho.total_degree();
    if (rho.is_zero() || !rho.is_homogeneous()) throw validation_error("rho must be nonzero homogeneous");
    const long long bound = (long long)d * dr;
    if (ctx.p <= uint64_t(bound + 2)) throw validation_error("field too small for the slice eliminant");

    SliceResult out;
    // random plane x = M u, u in P^2, with both restrictions attaining full
    // degree in u2 (their u2-leading coefficients are f and rho at column 2)
    Matrix<Fp> mat;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 50) throw internal_error("could not find a usable plane slice");
        mat.assign(m, std::vector<Fp>(3, ctx.zero()));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < 3; ++j) mat[i][j] = ctx.random(rng);
        std::vector<Fp> col2(m, ctx.zero());
        for (int i = 0; i < m; ++i) col2[i] = mat[i][2];
        if (V.f().evaluate(col2).is_zero()) continue;
        if (rho.evaluate(col2).is_zero()) continue;
        break;
    }
    MultiPoly<Fp> ft = sampling_detail::restrict_linear(V.f(), mat, 3);
    MultiPoly<Fp> rt = sampling_detail::restrict_linear(rho, mat, 3);
    // dehomogenize at u0 = 1: bivariate polynomials in (u1, u2)
    MultiPoly<Fp> fa = ft.specialize_block(0, 1, {ctx.one()});
    MultiPoly<Fp> ra = rt.specialize_block(0, 1, {ctx.one()});

    auto as_univariate_u2 = [&](const MultiPoly<Fp>& g, const Fp& u1) {
        MultiPoly<Fp> spec = g.specialize_block(0, 1, {u1});
        Univariate<Fp> u(ctx);
        for (const auto& [mono, c] : spec.terms()) u = u + Univariate<Fp>::x_power(ctx, mono[0]).scaled(c);
        return u;
    };

    // eliminant of (fa, ra) with respect to u2, by evaluation-interpolation
    std::vector<Fp> nodes, values;
    for (long long t = 0; int(nodes.size()) < int(bound) + 1; ++t) {
        Fp tv = ctx.from_int(t);
        Univariate<Fp> uf = as_univariate_u2(fa, tv);
        Univariate<Fp> ur = as_univariate_u2(ra, tv);
        nodes.push_back(tv);
        values.push_back(sampling_detail::sylvester_det(uf, d, ur, dr, ctx));
    }
    Univariate<Fp> elim = interpolate<Fp>(ctx, nodes, values);
    out.eliminant_nonzero = !elim.is_zero();
    out.eliminant_degree = elim.degree();
    if (!out.eliminant_nonzero) return out;

    for (const Fp& a : univariate_roots(elim, rng)) {
        Univariate<Fp> uf = as_univariate_u2(fa, a);
        Univariate<Fp> ur = as_univariate_u2(ra, a);
        if (uf.is_zero() || ur.is_zero()) continue;
        Univariate<Fp> g = Univariate<Fp>::gcd(uf, ur);
        if (g.degree() < 1) continue;
        for (const Fp& b : univariate_roots(g, rng)) {
            std::vector<Fp> u{ctx.one(), a, b};
            std::vector<Fp> x(m, ctx.zero());
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < 3; ++j) x[i] += mat[i][j] * u[j];
            if (!V.contains(x) || !rho.evaluate(x).is_zero()) continue;
            SampledFlexPoint pt;
            pt.point = normalize_point(x);
            pt.smooth_on_v = !V.is_singular_at(pt.point);
            // rank of the 2 x (n+1) Jacobian of (f, rho)
            std::vector<Fp> jf(m, ctx.zero()), jr(m, ctx.zero());
            for (int i = 0; i < m; ++i) {
                jf[i] = V.f().partial_derivative(i).evaluate(pt.point);
                jr[i] = rho.partial_derivative(i).evaluate(pt.point);
            }
            for (int i = 0; i < m && !pt.jacobian_rank2; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (!(jf[i] * jr[j] - jf[j] * jr[i]).is_zero()) { pt.jacobian_rank2 = true; break; }
            out.points.push_back(std::move(pt));
        }
    }
    return out;
}

/// Retry random slices until at least one smooth flex point turns up.
inline std::vector<SampledFlexPoint> sample_smooth_flex_points(const Hypersurface<Fp>& V,
                                                               const MultiPoly<Fp>& rho,
                                                               std::mt19937_64& rng,
                                                               int max_slices = 20) {
    for (int s = 0; s < max_slices; ++s) {
        SliceResult res = slice_flex_locus(V, rho, rng);
        std::vector<SampledFlexPoint> smooth;
        for (auto& pt : res.points)
            if (pt.smooth_on_v) smooth.push_back(std::move(pt));
        if (!smooth.empty()) return smooth;
    }
    throw internal_error("no smooth flex point found on any slice");
}

}  // namespace flexlocus
