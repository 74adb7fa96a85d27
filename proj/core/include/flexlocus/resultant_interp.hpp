#pragma once

#include <random>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/macaulay.hpp"
#include "flexlocus/multipoly.hpp"

namespace flexlocus {

namespace interp_detail {

/// One input polynomial, regrouped as y-monomial -> coefficient polynomial in x.
template <class K>
struct GroupedPoly {
    std::vector<std::pair<Monomial, MultiPoly<K>>> parts;  // (y-monomial, x-poly)
};

template <class K>
GroupedPoly<K> group_by_y(const MultiPoly<K>& f, int nx, int ny) {
    std::map<Monomial, MultiPoly<K>, GrevlexLess> acc;
    for (const auto& [m, c] : f.terms()) {
        Monomial ymono(ny), xmono(nx);
        for (int i = 0; i < nx; ++i) xmono[i] = m[i];
        for (int i = 0; i < ny; ++i) ymono[i] = m[nx + i];
        auto it = acc.find(ymono);
        if (it == acc.end()) it = acc.emplace(ymono, MultiPoly<K>(nx, f.ctx())).first;
        it->second.add_term(xmono, c);
    }
    GroupedPoly<K> g;
    for (auto& [ym, xp] : acc) g.parts.emplace_back(ym, std::move(xp));
    return g;
}

template <class K>
K eval_resultant_at(const std::vector<GroupedPoly<K>>& grouped, const std::vector<K>& x,
                    int ny, const DegreeVector& degs, const typename K::Ctx& ctx, uint64_t seed) {
    std::vector<MultiPoly<K>> ysys;
    ysys.reserve(grouped.size());
    for (const auto& g : grouped) {
        MultiPoly<K> f(ny, ctx);
        for (const auto& [ym, xp] : g.parts) f.add_term(ym, xp.evaluate(x));
        f.refresh_grade();
        ysys.push_back(std::move(f));
    }
    return resultant_scalar(ysys, degs, seed);
}

}  // namespace interp_detail

/// Resultant in the y-variables of a system of polynomials in (x, y), as a
/// polynomial in x. The inputs live in nx + ny variables (x block first), each
/// homogeneous in y of degree degs[i]. `bound` must dominate the x-degree of
/// the result. Computed by evaluating x on a dense affine grid, tensor
/// interpolation, rehomogenization, and a random-point consistency re-check.
template <class K>
MultiPoly<K> resultant_poly(const std::vector<MultiPoly<K>>& polys, int nx,
                            const DegreeVector& degs, int bound, uint64_t seed = 0x5eed) {
    if (polys.empty()) throw validation_error("empty system");
    const auto& ctx = polys[0].ctx();
    const int ny = degs.size();
    if (int(polys.size()) != ny) throw validation_error("need one polynomial per y-degree");
    for (const auto& f : polys)
        if (f.nvars() != nx + ny) throw validation_error("system polynomial has wrong arity");
    if (bound < 0 || bound > 250) throw validation_error("x-degree bound out of supported range");
    const uint64_t ch = ctx.characteristic();
    if (ch != 0 && ch <= uint64_t(bound) + 1)
        throw internal_error("field too small for the interpolation grid");

    MultiPoly<K> zero_result(nx, ctx);
    for (const auto& f : polys)
        if (f.is_zero()) return zero_result;

    std::vector<interp_detail::GroupedPoly<K>> grouped;
    grouped.reserve(polys.size());
    for (const auto& f : polys) grouped.push_back(interp_detail::group_by_y(f, nx, ny));

    const int m = nx - 1;  // affine grid dimensions (x0 pinned to 1)
    const int w = bound + 1;
    std::vector<K> nodes(w, ctx.zero());
    for (int j = 0; j < w; ++j) nodes[j] = ctx.from_int(j);

    // evaluate on the grid
    size_t total = 1;
    for (int i = 0; i < m; ++i) total *= size_t(w);
    std::vector<K> data(total, ctx.zero());
    std::vector<int> idx(m, 0);
    std::vector<K> x(nx, ctx.zero());
    x[0] = ctx.one();
    for (size_t flat = 0; flat < total; ++flat) {
        for (int i = 0; i < m; ++i) x[1 + i] = nodes[idx[i]];
        data[flat] = interp_detail::eval_resultant_at(grouped, x, ny, degs, ctx, seed);
        for (int i = 0; i < m; ++i) {
            if (++idx[i] < w) break;
            idx[i] = 0;
        }
    }

    // tensor interpolation: values -> coefficients, one axis at a time
    size_t stride = 1;
    for (int axis = 0; axis < m; ++axis) {
        size_t lines = total / size_t(w);
        for (size_t line = 0; line < lines; ++line) {
            // base offset of this line (skip the `axis` digit)
            size_t rem = line, base = 0, s = 1;
            for (int i = 0; i < m; ++i) {
                if (i == axis) { s *= size_t(w); continue; }
                base += (rem % size_t(w)) * s;
                rem /= size_t(w);
                s *= size_t(w);
            }
            std::vector<K> vals(w, ctx.zero());
            for (int j = 0; j < w; ++j) vals[j] = data[base + size_t(j) * stride];
            Univariate<K> poly = interpolate<K>(ctx, nodes, vals);
            for (int j = 0; j < w; ++j) data[base + size_t(j) * stride] = poly.coeff(j);
        }
        stride *= size_t(w);
    }

    // collect the affine polynomial and its degree
    int maxdeg = -1;
    std::vector<std::pair<std::vector<int>, K>> affine_terms;
    for (size_t flat = 0; flat < total; ++flat) {
        if (data[flat].is_zero()) continue;
        std::vector<int> t(m);
        size_t rem = flat;
        int deg = 0;
        for (int i = 0; i < m; ++i) {
            t[i] = int(rem % size_t(w));
            rem /= size_t(w);
            deg += t[i];
        }
        if (deg > bound) throw internal_error("interpolated resultant exceeds the degree bound");
        maxdeg = std::max(maxdeg, deg);
        affine_terms.emplace_back(std::move(t), data[flat]);
    }
    if (affine_terms.empty()) return zero_result;

    // pick the homogeneous degree in [maxdeg, bound] by matching direct
    // evaluations at random points, then re-check at 10 more
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    auto rehomogenize = [&](int deg_total) {
        MultiPoly<K> r(nx, ctx);
        for (const auto& [t, c] : affine_terms) {
            Monomial mono(nx);
            int s = 0;
            for (int i = 0; i < m; ++i) { mono[1 + i] = uint8_t(t[i]); s += t[i]; }
            mono[0] = uint8_t(deg_total - s);
            r.add_term(mono, c);
        }
        r.refresh_grade();
        return r;
    };
    auto agree_at_random = [&](const MultiPoly<K>& cand, int count) {
        for (int trial = 0; trial < count; ++trial) {
            std::vector<K> z(nx, ctx.zero());
            for (int i = 0; i < nx; ++i) z[i] = ctx.random(rng);
            K direct = interp_detail::eval_resultant_at(grouped, z, ny, degs, ctx, seed);
            if (!(cand.evaluate(z) == direct)) return false;
        }
        return true;
    };
    for (int deg_total = maxdeg; deg_total <= bound; ++deg_total) {
        MultiPoly<K> cand = rehomogenize(deg_total);
        if (!agree_at_random(cand, 3)) continue;
        if (!agree_at_random(cand, 10))
            throw internal_error("interpolation consistency re-check failed");
        return cand;
    }
    throw internal_error("no homogeneous degree matches the interpolated resultant");
}

}  // namespace flexlocus
