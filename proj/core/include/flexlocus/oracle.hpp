#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/fp.hpp"
#include "flexlocus/fp2.hpp"
#include "flexlocus/hypersurface.hpp"
#include "flexlocus/multipoly.hpp"

namespace flexlocus::oracle {

namespace detail {

/// Plain Gaussian-elimination determinant, kept local on purpose: the oracles
/// must not lean on the main path's linear algebra.
template <class K>
K gauss_det(std::vector<std::vector<K>> m, const typename K::Ctx& ctx) {
    const int n = int(m.size());
    K det = ctx.one();
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int r = c; r < n; ++r)
            if (!m[r][c].is_zero()) { pr = r; break; }
        if (pr < 0) return ctx.zero();
        if (pr != c) {
            std::swap(m[pr], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        K inv = m[c][c].inv();
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            K f = m[r][c] * inv;
            for (int j = c; j < n; ++j) m[r][j] = m[r][j] - f * m[c][j];
        }
    }
    return det;
}

}  // namespace detail

/// Classical Sylvester resultant of two binary forms in (y0, y1), written as
/// u = sum a_i y0^{m-i} y1^i. Formal degrees default to the actual ones.
/// Normalized so that Res(y0^m, y1^l) = 1.
template <class K>
K sylvester_resultant(const MultiPoly<K>& u, const MultiPoly<K>& v, int du = -1, int dv = -1) {
    const auto& ctx = u.ctx();
    if (u.nvars() != 2 || v.nvars() != 2) throw validation_error("expected binary forms");
    if (!u.is_homogeneous() || !v.is_homogeneous()) throw validation_error("expected homogeneous forms");
    if (du < 0) du = u.total_degree();
    if (dv < 0) dv = v.total_degree();
    if (du < 0 || dv < 0) return ctx.zero();  // a zero form kills the resultant
    auto coeffs = [&](const MultiPoly<K>& f, int d) {
        std::vector<K> a(d + 1, ctx.zero());
        for (const auto& [mono, c] : f.terms()) a[mono[1]] = c;
        return a;
    };
    std::vector<K> a = coeffs(u, du), b = coeffs(v, dv);
    if (du == 0 || dv == 0) {
        K acc = ctx.one();
        for (int i = 0; i < dv; ++i) acc = acc * a[0];
        for (int i = 0; i < du; ++i) acc = acc * b[0];
        return acc;
    }
    const int n = du + dv;
    std::vector<std::vector<K>> s(n, std::vector<K>(n, ctx.zero()));
    for (int r = 0; r < dv; ++r)
        for (int c = 0; c <= du; ++c) s[r][r + c] = a[c];
    for (int r = 0; r < du; ++r)
        for (int c = 0; c <= dv; ++c) s[dv + r][r + c] = b[c];
    return detail::gauss_det(std::move(s), ctx);
}

/// det H(f) for a plane curve f(x0, x1, x2): 3x3 cofactor expansion of the
/// matrix of second partials. Homogeneous of degree 3(d-2).
template <class K>
MultiPoly<K> hessian_flex_oracle(const MultiPoly<K>& f) {
    if (f.nvars() != 3) throw validation_error("hessian oracle expects a plane curve");
    if (f.is_zero() || !f.is_homogeneous() || f.total_degree() < 2)
        throw validation_error("hessian oracle expects a homogeneous curve of degree >= 2");
    MultiPoly<K> h[3][3] = {
        {f.partial_derivative(0).partial_derivative(0), f.partial_derivative(0).partial_derivative(1),
         f.partial_derivative(0).partial_derivative(2)},
        {f.partial_derivative(1).partial_derivative(0), f.partial_derivative(1).partial_derivative(1),
         f.partial_derivative(1).partial_derivative(2)},
        {f.partial_derivative(2).partial_derivative(0), f.partial_derivative(2).partial_derivative(1),
         f.partial_derivative(2).partial_derivative(2)}};
    MultiPoly<K> det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                       h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                       h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    det.refresh_grade();
    return det;
}

/// Canonical enumeration of P^n(F_{p^e}), e in {1, 2}: each point exactly
/// once, first nonzero coordinate normalized to 1, lexicographic by the
/// (a + b t)-encodings of the trailing coordinates.
class EnumerationDomain {
public:
    EnumerationDomain(uint64_t prime, int ext, int n) : n_(n), ext_(ext), ctx_(prime) {
        if (ext != 1 && ext != 2) throw validation_error("extension degree must be 1 or 2");
        if (n < 1) throw validation_error("ambient dimension must be at least 1");
    }

    uint64_t prime() const { return ctx_.p; }
    int ext() const { return ext_; }
    int n() const { return n_; }
    const Fp2::Ctx& ctx() const { return ctx_; }

    /// (q^{n+1} - 1) / (q - 1) with q = p^e.
    unsigned long long count() const {
        unsigned long long q = field_size();
        unsigned long long total = 0, power = 1;
        for (int i = 0; i <= n_; ++i) {
            total += power;
            power *= q;
        }
        return total;
    }

    /// Visit every projective point once, in canonical order.
    void for_each_point(const std::function<void(const std::vector<Fp2>&)>& fn) const {
        const unsigned long long q = field_size();
        std::vector<Fp2> pt(n_ + 1, ctx_.zero());
        // leading 1 at position i, arbitrary field elements after it
        for (int lead = 0; lead <= n_; ++lead) {
            for (int i = 0; i < lead; ++i) pt[i] = ctx_.zero();
            pt[lead] = ctx_.one();
            const int tail = n_ - lead;
            std::vector<unsigned long long> code(tail, 0);
            while (true) {
                for (int i = 0; i < tail; ++i) pt[lead + 1 + i] = decode(code[i]);
                fn(pt);
                int i = tail - 1;
                for (; i >= 0; --i) {
                    if (++code[i] < q) break;
                    code[i] = 0;
                }
                if (i < 0) break;
            }
        }
    }

private:
    unsigned long long field_size() const {
        return ext_ == 1 ? ctx_.p : (unsigned long long)ctx_.p * ctx_.p;
    }
    Fp2 decode(unsigned long long c) const {
        uint64_t a = c % ctx_.p;
        uint64_t b = ext_ == 1 ? 0 : c / ctx_.p;
        return Fp2(Fp::raw(a, ctx_.p), Fp::raw(b, ctx_.p), ctx_.r);
    }

    int n_;
    int ext_;
    Fp2::Ctx ctx_;
};

/// Exhaustive search for points q != p of the cone Z_p^k over the enumeration
/// domain. Independent of the resultant machinery: the cone equations are read
/// off the Taylor coefficients of the line restriction f(p + t q).
inline std::vector<std::vector<Fp2>> brute_force_cone(const Hypersurface<Fp>& V,
                                                      const std::vector<Fp>& p, int k,
                                                      const EnumerationDomain& domain) {
    if (k < 1 || k > V.d()) throw validation_error("cone order out of range");
    if (domain.n() != V.n()) throw validation_error("domain dimension mismatch");
    if (domain.prime() != V.f().ctx().p) throw validation_error("domain characteristic mismatch");
    if (domain.count() > 10000000ull) throw validation_error("enumeration domain too large");
    if (uint64_t(V.d()) >= domain.prime())
        throw validation_error("characteristic too small for the Taylor criterion");

    const auto& f2ctx = domain.ctx();
    const int m = V.n() + 1;
    MultiPoly<Fp2> f2(m, f2ctx);
    for (const auto& [mono, c] : V.f().terms()) f2.add_term(mono, f2ctx.embed(c));
    f2.refresh_grade();
    std::vector<Fp2> p2(m, f2ctx.zero());
    for (int i = 0; i < m; ++i) p2[i] = f2ctx.embed(p[i]);
    if (!f2.evaluate(p2).is_zero()) throw validation_error("point does not lie on the hypersurface");

    std::vector<std::vector<Fp2>> hits;
    domain.for_each_point([&](const std::vector<Fp2>& q) {
        // q == p (both canonically normalized)?
        bool prop = true;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (!(p2[i] * q[j] - p2[j] * q[i]).is_zero()) { prop = false; goto decided; }
    decided:
        if (prop) return;
        // f(p + t q) = sum_j t^j f_j(p, q) / j!: the cone conditions are the
        // vanishing of the coefficients of t^1, ..., t^k
        Univariate<Fp2> line = f2.substitute_line(p2, q);
        for (int j = 1; j <= k; ++j)
            if (!line.coeff(j).is_zero()) return;
        hits.push_back(q);
    });
    return hits;
}

}  // namespace flexlocus::oracle
