#pragma once

#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/hypersurface.hpp"
#include "flexlocus/linalg.hpp"
#include "flexlocus/macaulay.hpp"
#include "flexlocus/multipoly.hpp"
#include "flexlocus/resultant_interp.hpp"

namespace flexlocus {

/// Order of contact of a line with a hypersurface at a point.
struct Contact {
    bool infinite = false;
    int order = 0;  // meaningful when !infinite

    static Contact at(int k) { return Contact{false, k}; }
    static Contact infinity() { return Contact{true, 0}; }

    bool at_least(int k) const { return infinite || order >= k; }
    bool operator==(const Contact& o) const {
        return infinite == o.infinite && (infinite || order == o.order);
    }
};

enum class Trilean { yes, no_evidence, inconclusive };

template <class K>
struct FlexCertificate {
    std::vector<K> point;
    bool on_hypersurface = false;
    bool is_flex = false;
    std::optional<std::vector<K>> line_direction;
    Trilean unique_line = Trilean::inconclusive;
    std::optional<Contact> contact_order;
};

namespace flex_detail {

template <class K>
bool proportional(const std::vector<K>& p, const std::vector<K>& q) {
    bool q_zero = true;
    for (const auto& c : q)
        if (!c.is_zero()) { q_zero = false; break; }
    if (q_zero) return true;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (!(p[i] * q[j] - p[j] * q[i]).is_zero()) return false;
    return true;
}

inline long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace flex_detail

/// Scale a projective representative so its first nonzero coordinate is 1.
template <class K>
std::vector<K> normalize_point(std::vector<K> p) {
    for (const auto& c : p) {
        if (c.is_zero()) continue;
        K inv = c.inv();
        for (auto& x : p) x = x * inv;
        break;
    }
    return p;
}

/// t-adic valuation of f(p + t q): the order of contact at p of the line
/// through p and q, infinite exactly when the line lies in V.
template <class K>
Contact contact_order(const Hypersurface<K>& V, const std::vector<K>& p, const std::vector<K>& q) {
    if (!V.contains(p)) throw validation_error("point does not lie on the hypersurface");
    if (flex_detail::proportional(p, q))
        throw validation_error("direction must not be proportional to the point");
    Univariate<K> u = V.f().substitute_line(p, q);
    auto val = u.valuation();
    if (!val) return Contact::infinity();
    return Contact::at(*val);
}

/// The k defining equations of the cone Z_p^k: f_1(p, y), ..., f_k(p, y),
/// homogeneous in y of degrees 1, ..., k.
template <class K>
std::vector<MultiPoly<K>> zero_cone_system(const Hypersurface<K>& V, const std::vector<K>& p, int k) {
    if (k < 1 || k > V.d()) throw validation_error("cone order out of range");
    std::vector<MultiPoly<K>> out;
    out.reserve(k);
    for (int j = 1; j <= k; ++j) out.push_back(V.taylor(j).specialize_block(0, V.n() + 1, p));
    return out;
}

/// The x-degree of Res^y(f_1, ..., f_n, g(y)) for g of degree e:
/// sum_{k=1..n} (d-k) * (n! e / k).
template <class K>
long long r_poly_degree(const Hypersurface<K>& V, int e) {
    std::vector<int> dv;
    for (int k = 1; k <= V.n(); ++k) dv.push_back(k);
    dv.push_back(e);
    DegreeVector degs(dv);
    long long b = 0;
    for (int k = 1; k <= V.n(); ++k) b += (long long)(V.d() - k) * degs.slot_degree(k - 1);
    return b;
}

/// R_{V,g} = Res^y(f_1(x,y), ..., f_n(x,y), g(y)): a homogeneous polynomial in
/// x that cuts the flex locus of V outside Z(g).
template <class K>
MultiPoly<K> r_poly(const Hypersurface<K>& V, const MultiPoly<K>& g, uint64_t seed = 0x5eed) {
    const int m = V.n() + 1;
    if (g.nvars() != m) throw validation_error("g must live in the x-variables of V");
    if (g.is_zero() || !g.is_homogeneous() || g.total_degree() < 1)
        throw validation_error("g must be homogeneous of positive degree");
    const int e = g.total_degree();

    std::vector<int> ymap(m);
    for (int i = 0; i < m; ++i) ymap[i] = m + i;
    MultiPoly<K> g_y = g.embed_vars(2 * m, ymap);

    std::vector<MultiPoly<K>> sys;
    sys.reserve(V.n() + 1);
    std::vector<int> dv;
    for (int k = 1; k <= V.n(); ++k) {
        sys.push_back(V.taylor(k));
        dv.push_back(k);
    }
    sys.push_back(g_y);
    dv.push_back(e);

    long long bound = r_poly_degree(V, e);
    if (bound > 250) throw validation_error("instance too large for this toolkit");
    return resultant_poly(sys, m, DegreeVector(dv), int(bound), seed);
}

/// The flex polynomial rho together with the exact witnesses of its defining
/// congruence R_{V,ell} = ell^{n!} rho + f sigma.
template <class K>
struct FlexPolynomial {
    MultiPoly<K> rho;    // grevlex normal form modulo f
    MultiPoly<K> ell;    // the linear form used
    MultiPoly<K> sigma;  // cofactor of f in the congruence
    MultiPoly<K> r;      // R_{V,ell}
    bool normal_form = true;
    long long expected_degree = 0;
};

namespace flex_detail {

template <class K>
Matrix<K> invert_matrix(Matrix<K> a, const typename K::Ctx& ctx) {
    const int n = int(a.size());
    Matrix<K> inv(n, std::vector<K>(n, ctx.zero()));
    for (int i = 0; i < n; ++i) inv[i][i] = ctx.one();
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c].is_unit()) { pr = i; break; }
        if (pr < 0) throw validation_error("matrix is singular");
        std::swap(a[pr], a[c]);
        std::swap(inv[pr], inv[c]);
        K d = a[c][c].inv();
        for (int j = 0; j < n; ++j) { a[c][j] = a[c][j] * d; inv[c][j] = inv[c][j] * d; }
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            K f = a[i][c];
            for (int j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[c][j];
                inv[i][j] = inv[i][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

template <class K>
K det_matrix(Matrix<K> a, const typename K::Ctx& ctx) {
    return det_bareiss(std::move(a), ctx);
}

/// Extraction with ell equal to the coordinate x_j: find sigma with
/// R - f*sigma divisible by x_j^{n!}, then divide.
template <class K>
std::pair<MultiPoly<K>, MultiPoly<K>> extract_rho_coordinate(const MultiPoly<K>& r_poly_val,
                                                             const MultiPoly<K>& f, int j,
                                                             long long nfact) {
    const auto& ctx = f.ctx();
    const int m = f.nvars();
    const int deg_r = r_poly_val.total_degree();
    const int d = f.total_degree();
    if (deg_r < 0) throw internal_error("R vanished identically; cannot extract rho");

    std::vector<Monomial> rows_all = monomials_of_degree(m, deg_r);
    std::vector<Monomial> rows;
    for (const auto& mono : rows_all)
        if (mono[j] < nfact) rows.push_back(mono);
    std::vector<Monomial> cols = monomials_of_degree(m, deg_r - d);

    Matrix<K> a(rows.size(), std::vector<K>(cols.size(), ctx.zero()));
    std::vector<K> rhs(rows.size(), ctx.zero());
    std::map<Monomial, int, GrevlexLess> colidx;
    for (int c = 0; c < int(cols.size()); ++c) colidx.emplace(cols[c], c);
    for (int ri = 0; ri < int(rows.size()); ++ri) {
        rhs[ri] = r_poly_val.coeff(rows[ri]);
        for (const auto& [fm, fc] : f.terms()) {
            if (!rows[ri].divisible_by(fm)) continue;
            auto it = colidx.find(rows[ri] / fm);
            if (it != colidx.end()) a[ri][it->second] = a[ri][it->second] + fc;
        }
    }
    auto sol = solve_linear(a, rhs, ctx);
    if (!sol) throw internal_error("congruence system for rho has no solution");
    MultiPoly<K> sigma(m, ctx);
    for (int c = 0; c < int(cols.size()); ++c) sigma.add_term(cols[c], (*sol)[c]);
    sigma.refresh_grade();

    MultiPoly<K> num = r_poly_val - f * sigma;
    MultiPoly<K> rho(m, ctx);
    for (const auto& [mono, coef] : num.terms()) {
        if (mono[j] < nfact) throw internal_error("extracted numerator not divisible by ell^{n!}");
        Monomial q = mono;
        q[j] = uint8_t(mono[j] - nfact);
        rho.add_term(q, coef);
    }
    rho.refresh_grade();
    return {rho, sigma};
}

}  // namespace flex_detail

/// The flex polynomial rho_V: homogeneous of degree d * sum_{k<=n} n!/k - (n+1)!,
/// uniquely determined modulo f by R_{V,ell} = ell^{n!} rho + f sigma. Returned
/// in grevlex normal form modulo f, with the exact witnesses attached.
template <class K>
FlexPolynomial<K> flex_polynomial(const Hypersurface<K>& V, uint64_t seed = 0x5eed) {
    const int n = V.n();
    const int d = V.d();
    const int m = n + 1;
    const auto& ctx = V.f().ctx();
    if (d < n)
        throw validation_error(
            "flex polynomial requires degree >= ambient dimension: below it every point of the "
            "hypersurface is a flex and the flex locus is the whole hypersurface");
    const long long nfact = flex_detail::factorial(n);

    // prefer a coordinate ell = x_j with x_j not dividing f
    int coord = -1;
    for (int j = 0; j < m; ++j) {
        if (!V.f().specialize_block(j, 1, {ctx.zero()}).is_zero()) { coord = j; break; }
    }

    MultiPoly<K> r(m, ctx), rho(m, ctx), sigma(m, ctx), ell(m, ctx);
    if (coord >= 0) {
        ell = MultiPoly<K>::variable(m, ctx, coord);
        r = r_poly(V, ell, seed);
        std::tie(rho, sigma) = flex_detail::extract_rho_coordinate(r, V.f(), coord, nfact);
    } else {
        // every coordinate divides f: move a random non-divisor linear form to x_0
        std::mt19937_64 rng(seed ^ 0xabcdef);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 50) throw internal_error("could not find a usable linear form");
            Matrix<K> b(m, std::vector<K>(m, ctx.zero()));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) b[i][j] = ctx.random(rng);
            K det = flex_detail::det_matrix(b, ctx);
            if (det.is_zero()) continue;
            // scale the second row so det(B) = 1
            K fix = det.inv();
            for (int j = 0; j < m; ++j) b[1][j] = b[1][j] * fix;
            Matrix<K> a = flex_detail::invert_matrix(b, ctx);
            MultiPoly<K> ft = V.f().apply_linear(a);
            if (ft.specialize_block(0, 1, {ctx.zero()}).is_zero()) continue;  // x_0 | f
            Hypersurface<K> Vt(ft, rng);
            MultiPoly<K> ell0 = MultiPoly<K>::variable(m, ctx, 0);
            MultiPoly<K> rt = r_poly(Vt, ell0, seed);
            auto [rhot, sigmat] = flex_detail::extract_rho_coordinate(rt, ft, 0, nfact);
            // map back through x -> Bx; det(B) = 1 so no scalar correction
            r = rt.apply_linear(b);
            rho = rhot.apply_linear(b);
            sigma = sigmat.apply_linear(b);
            for (int j = 0; j < m; ++j) ell.add_term(Monomial::variable(m, j), b[0][j]);
            ell.refresh_grade();
            break;
        }
    }

    // canonical representative: grevlex normal form modulo f
    auto [rho_nf, h] = normal_form(rho, V.f());
    sigma = sigma + ell.pow(int(nfact)) * h;

    FlexPolynomial<K> out{rho_nf, ell, sigma, r, true, 0};
    long long sum = 0;
    for (int k = 1; k <= n; ++k) sum += flex_detail::factorial(n) / k;
    out.expected_degree = (long long)d * sum - flex_detail::factorial(n + 1);

    // master invariant: R - ell^{n!} rho - f sigma = 0 exactly
    MultiPoly<K> residue = out.r - out.ell.pow(int(nfact)) * out.rho - V.f() * out.sigma;
    if (!residue.is_zero()) throw internal_error("flex congruence verification failed");
    if (!out.rho.is_zero() && out.rho.total_degree() != out.expected_degree)
        throw internal_error("flex polynomial has unexpected degree");
    return out;
}

/// Flexness test. Fast path: the scalar resultant of f_1(p,.), ..., f_n(p,.)
/// and a coordinate not vanishing at p; zero iff p is a flex. Singular points
/// short-circuit to true.
template <class K>
bool is_flex(const Hypersurface<K>& V, const std::vector<K>& p, uint64_t seed = 0x5eed) {
    if (!V.contains(p)) throw validation_error("point does not lie on the hypersurface");
    if (V.is_singular_at(p)) return true;
    const int m = V.n() + 1;
    int j = -1;
    for (int i = 0; i < m; ++i)
        if (!p[i].is_zero()) { j = i; break; }
    if (j < 0) throw validation_error("zero vector is not a projective point");
    auto sys = zero_cone_system(V, p, V.n());
    sys.push_back(MultiPoly<K>::variable(m, V.f().ctx(), j));
    std::vector<int> dv;
    for (int k = 1; k <= V.n(); ++k) dv.push_back(k);
    dv.push_back(1);
    return resultant_scalar(sys, DegreeVector(dv), seed).is_zero();
}

/// Flex-line recovery at a flex point via the gradient of the resultant
/// (unique-zero inversion). When some coefficient gradient is nonzero the
/// common zero eta of the cone system on {ell = 0} is unique, giving the flex
/// line span(p, eta) and its exact order of contact.
template <class K>
FlexCertificate<K> flex_line(const Hypersurface<K>& V, const std::vector<K>& p,
                             uint64_t seed = 0x5eed) {
    FlexCertificate<K> cert;
    cert.point = p;
    cert.on_hypersurface = V.contains(p);
    if (!cert.on_hypersurface) throw validation_error("point does not lie on the hypersurface");
    cert.is_flex = is_flex(V, p, seed);
    if (!cert.is_flex) throw validation_error("point is not a flex point");

    const int m = V.n() + 1;
    const auto& ctx = V.f().ctx();
    int j = -1;
    for (int i = 0; i < m; ++i)
        if (!p[i].is_zero()) { j = i; break; }
    auto sys = zero_cone_system(V, p, V.n());
    sys.push_back(MultiPoly<K>::variable(m, ctx, j));
    std::vector<int> dv;
    for (int k = 1; k <= V.n(); ++k) dv.push_back(k);
    dv.push_back(1);
    DegreeVector degs(dv);

    // degree-1 slots first: their gradients are eta itself
    std::vector<int> slot_order{V.n(), 0};
    for (int s = 1; s < V.n(); ++s) slot_order.push_back(s);

    for (int slot : slot_order) {
        std::vector<K> grad = resultant_gradient(sys, degs, slot, seed);
        bool nonzero = false;
        for (const auto& g : grad)
            if (!g.is_zero()) { nonzero = true; break; }
        if (!nonzero) continue;

        std::vector<Monomial> basis = monomials_of_degree(m, degs[slot]);
        std::vector<K> eta(m, ctx.zero());
        if (degs[slot] == 1) {
            for (int i = 0; i < m; ++i) {
                Monomial v = Monomial::variable(m, i);
                for (size_t b = 0; b < basis.size(); ++b)
                    if (basis[b] == v) eta[i] = grad[b];
            }
        } else {
            // ratios of gradient coordinates: eta_i ~ grad[a0 - e_k + e_i]
            std::map<Monomial, K, GrevlexLess> gm;
            for (size_t b = 0; b < basis.size(); ++b) gm.emplace(basis[b], grad[b]);
            Monomial a0(m);
            int kvar = -1;
            for (size_t b = 0; b < basis.size(); ++b) {
                if (grad[b].is_zero()) continue;
                a0 = basis[b];
                for (int i = 0; i < m; ++i)
                    if (a0[i] > 0) { kvar = i; break; }
                break;
            }
            for (int i = 0; i < m; ++i) {
                Monomial shifted = a0;
                shifted[kvar] -= 1;
                shifted[i] += 1;
                auto it = gm.find(shifted);
                if (it != gm.end()) eta[i] = it->second;
            }
        }
        bool eta_zero = true;
        for (const auto& c : eta)
            if (!c.is_zero()) { eta_zero = false; break; }
        if (eta_zero) continue;

        // sanity: eta must solve the cone system
        for (const auto& f : sys)
            if (!f.evaluate(eta).is_zero())
                throw internal_error("recovered direction does not solve the cone system");

        cert.line_direction = normalize_point(eta);
        cert.unique_line = Trilean::yes;
        cert.contact_order = contact_order(V, p, *cert.line_direction);
        if (!cert.contact_order->at_least(V.n() + 1))
            throw internal_error("flex line has contact order below n+1");
        return cert;
    }

    cert.unique_line = Trilean::inconclusive;
    return cert;
}

/// Closed-form degree data for the flex locus of a degree-d hypersurface in P^n.
struct DegreeReport {
    int n = 0;
    int d = 0;
    long long deg_rho = 0;
    long long deg_flex_locus = 0;
    std::optional<long long> deg_line_locus;  // only when d = n
};

inline DegreeReport degree_report(int n, int d) {
    if (n < 2) throw validation_error("degree report requires ambient dimension n >= 2");
    if (d < n)
        throw validation_error(
            "degree report requires d >= n: hypersurfaces of lower degree are ruled and their "
            "flex locus is the whole hypersurface");
    DegreeReport rep;
    rep.n = n;
    rep.d = d;
    long long sum = 0;
    for (int k = 1; k <= n; ++k) sum += flex_detail::factorial(n) / k;
    rep.deg_rho = (long long)d * sum - flex_detail::factorial(n + 1);
    rep.deg_flex_locus = (long long)d * rep.deg_rho;
    if (d == n) {
        // n^3 (n-1)! sum_{k=2..n-1} 1/k, an integer
        long long num = 0, den = 1;
        for (int k = 2; k <= n - 1; ++k) { num = num * k + den; den *= k; }
        long long scaled = (long long)n * n * n * flex_detail::factorial(n - 1);
        if ((scaled * num) % den != 0) throw internal_error("line locus degree is not an integer");
        rep.deg_line_locus = scaled * num / den;
    }
    return rep;
}

struct OsculationVerdict {
    bool line_found = false;
    int max_order = 0;
    int samples = 0;
};

/// Sampling helper for the osculation bound n <= mu_p <= d: probes random
/// directions; reports a contained line if one is hit, else the maximal
/// sampled contact order (always <= d for finite orders).
template <class K>
OsculationVerdict osculation_bound_check(const Hypersurface<K>& V, const std::vector<K>& p,
                                         std::mt19937_64& rng, int samples = 200) {
    if (!V.contains(p)) throw validation_error("point does not lie on the hypersurface");
    const int m = V.n() + 1;
    const auto& ctx = V.f().ctx();
    OsculationVerdict v;
    for (int t = 0; t < samples; ++t) {
        std::vector<K> q(m, ctx.zero());
        for (int i = 0; i < m; ++i) q[i] = ctx.random(rng);
        if (flex_detail::proportional(p, q)) continue;
        ++v.samples;
        Contact c = contact_order(V, p, q);
        if (c.infinite) {
            v.line_found = true;
            return v;
        }
        v.max_order = std::max(v.max_order, c.order);
    }
    return v;
}

}  // namespace flexlocus
