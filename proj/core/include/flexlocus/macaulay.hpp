#pragma once

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "flexlocus/dual.hpp"
#include "flexlocus/errors.hpp"
#include "flexlocus/linalg.hpp"
#include "flexlocus/multipoly.hpp"

namespace flexlocus {

/// Degrees (d_0, ..., d_n) of a square homogeneous system in n+1 variables.
class DegreeVector {
public:
    explicit DegreeVector(std::vector<int> d) : d_(std::move(d)) {
        for (int x : d_)
            if (x < 1) throw validation_error("system degrees must be >= 1");
    }

    int size() const { return int(d_.size()); }
    int operator[](int i) const { return d_[i]; }
    const std::vector<int>& values() const { return d_; }

    /// Critical degree: sum (d_i - 1) + 1.
    int critical_degree() const {
        int s = 1;
        for (int x : d_) s += x - 1;
        return s;
    }

    /// Degree of the resultant in the coefficients of slot i: prod_{j != i} d_j.
    long long slot_degree(int i) const {
        long long p = 1;
        for (int j = 0; j < size(); ++j)
            if (j != i) p *= d_[j];
        return p;
    }

    long long total_slot_degree() const {
        long long s = 0;
        for (int i = 0; i < size(); ++i) s += slot_degree(i);
        return s;
    }

private:
    std::vector<int> d_;
};

/// Row/column bookkeeping of the classical Macaulay matrix in the critical
/// degree. Row label x^a is assigned to the least slot i with a_i >= d_i; the
/// reduced minor M' lives on the labels admissible for two or more slots.
struct MacaulayPlan {
    int nvars;
    std::vector<int> degs;
    int delta;
    std::vector<Monomial> cols;
    std::map<Monomial, int, GrevlexLess> col_index;
    std::vector<int> row_slot;
    std::vector<Monomial> row_mult;   // cols[r] / y_slot^{d_slot}
    std::vector<int> minor_rows;      // indices into cols of the reduced minor

    MacaulayPlan(int nv, const DegreeVector& d) : nvars(nv), degs(d.values()) {
        if (d.size() != nv) throw validation_error("degree vector must have one entry per variable");
        delta = d.critical_degree();
        cols = monomials_of_degree(nv, delta);
        for (int c = 0; c < int(cols.size()); ++c) col_index.emplace(cols[c], c);
        row_slot.resize(cols.size());
        row_mult.resize(cols.size());
        for (int r = 0; r < int(cols.size()); ++r) {
            const Monomial& a = cols[r];
            int hits = 0, first = -1;
            for (int i = 0; i < nv; ++i) {
                if (a[i] >= degs[i]) {
                    ++hits;
                    if (first < 0) first = i;
                }
            }
            if (first < 0) throw internal_error("critical-degree monomial admits no slot");
            row_slot[r] = first;
            Monomial m = a;
            m[first] -= uint8_t(degs[first]);
            row_mult[r] = m;
            if (hits >= 2) minor_rows.push_back(r);
        }
    }
};

namespace macaulay_detail {

template <class T>
Matrix<T> build_matrix(const MacaulayPlan& plan, const std::vector<MultiPoly<T>>& polys,
                       const typename T::Ctx& ctx) {
    const int n = int(plan.cols.size());
    Matrix<T> m(n, std::vector<T>(n, ctx.zero()));
    for (int r = 0; r < n; ++r) {
        const MultiPoly<T>& f = polys[plan.row_slot[r]];
        for (const auto& [mono, coef] : f.terms()) {
            Monomial col = plan.row_mult[r] * mono;
            auto it = plan.col_index.find(col);
            if (it == plan.col_index.end()) throw internal_error("macaulay column lookup failed");
            m[r][it->second] = coef;
        }
    }
    return m;
}

/// det(M) / det(M') for one concrete system; nullopt when the reduced minor is
/// degenerate (or a dual pivot lacks an invertible real part).
template <class T>
std::optional<T> quotient_once(const MacaulayPlan& plan, const std::vector<MultiPoly<T>>& polys,
                               const typename T::Ctx& ctx) {
    Matrix<T> m = build_matrix(plan, polys, ctx);
    const auto& sel = plan.minor_rows;
    Matrix<T> minor(sel.size(), std::vector<T>(sel.size(), ctx.zero()));
    for (size_t i = 0; i < sel.size(); ++i)
        for (size_t j = 0; j < sel.size(); ++j)
            minor[i][j] = m[sel[i]][sel[j]];
    try {
        T dm = det_bareiss(std::move(minor), ctx);
        if (!dm.is_unit()) return std::nullopt;
        T dM = det_bareiss(std::move(m), ctx);
        return dM / dm;
    } catch (const NonUnitPivot&) {
        return std::nullopt;
    }
}

/// Random unimodular (det = 1) change of coordinates: product of a unit lower-
/// and unit upper-triangular matrix with small random off-diagonal entries.
template <class T>
Matrix<T> random_unimodular(int nv, const typename T::Ctx& ctx, std::mt19937_64& rng) {
    Matrix<T> l(nv, std::vector<T>(nv, ctx.zero()));
    Matrix<T> u(nv, std::vector<T>(nv, ctx.zero()));
    for (int i = 0; i < nv; ++i) {
        l[i][i] = ctx.one();
        u[i][i] = ctx.one();
        for (int j = 0; j < i; ++j) l[i][j] = ctx.random(rng);
        for (int j = i + 1; j < nv; ++j) u[i][j] = ctx.random(rng);
    }
    Matrix<T> a(nv, std::vector<T>(nv, ctx.zero()));
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
            for (int k = 0; k < nv; ++k) a[i][j] += l[i][k] * u[k][j];
    return a;
}

/// Quotient with retries: direct attempt, then up to `retries` unimodular
/// changes of variables (the resultant is invariant under det-1 changes).
template <class T>
std::optional<T> quotient_with_retries(const MacaulayPlan& plan,
                                       const std::vector<MultiPoly<T>>& polys,
                                       const typename T::Ctx& ctx, std::mt19937_64& rng,
                                       int retries = 5) {
    if (auto r = quotient_once(plan, polys, ctx)) return r;
    for (int t = 0; t < retries; ++t) {
        Matrix<T> a = random_unimodular<T>(plan.nvars, ctx, rng);
        std::vector<MultiPoly<T>> transformed;
        transformed.reserve(polys.size());
        for (const auto& f : polys) transformed.push_back(f.apply_linear(a));
        if (auto r = quotient_once(plan, transformed, ctx)) return r;
    }
    return std::nullopt;
}

template <class T>
void validate_system(const std::vector<MultiPoly<T>>& polys, const DegreeVector& degs) {
    const int nv = degs.size();
    if (int(polys.size()) != nv)
        throw validation_error("need exactly n+1 polynomials in n+1 variables");
    for (int i = 0; i < nv; ++i) {
        if (polys[i].nvars() != nv) throw validation_error("system polynomial has wrong arity");
        if (polys[i].is_zero()) continue;
        if (!polys[i].is_homogeneous() || polys[i].total_degree() != degs[i])
            throw validation_error("system polynomial is not homogeneous of its declared degree");
    }
}

/// Full resultant evaluation over any coefficient ring T with enough units.
/// Falls back to a Canny-style perturbation G_i = F_i + s y_i^{d_i},
/// interpolating Res(s) and reading off its value at s = 0.
template <class T>
T resultant_value(const std::vector<MultiPoly<T>>& polys, const DegreeVector& degs,
                  const typename T::Ctx& ctx, uint64_t seed) {
    validate_system(polys, degs);
    const int nv = degs.size();
    for (const auto& f : polys)
        if (f.is_zero()) return ctx.zero();
    if (nv == 1) {
        // single polynomial c * y0^{d0}: the resultant is c
        return polys[0].coeff(Monomial::variable(1, 0, degs[0]));
    }
    MacaulayPlan plan(nv, degs);
    std::mt19937_64 rng(seed);
    if (auto r = quotient_with_retries(plan, polys, ctx, rng)) return *r;

    // perturbation fallback
    const long long sdeg = degs.total_slot_degree();
    const uint64_t ch = ctx.characteristic();
    if (ch != 0 && ch < uint64_t(4 * sdeg + 8))
        throw internal_error("field too small for perturbation fallback");
    std::vector<T> nodes, values;
    long long s = 1;
    int misses = 0;
    while (int(nodes.size()) < sdeg + 1) {
        if (misses > 4 * sdeg + 20) throw internal_error("perturbation sampling failed");
        T sval = ctx.from_int(s++);
        std::vector<MultiPoly<T>> pert = polys;
        for (int i = 0; i < nv; ++i)
            pert[i].add_term(Monomial::variable(nv, i, degs[i]), sval);
        auto q = quotient_with_retries(plan, pert, ctx, rng);
        if (!q) { ++misses; continue; }
        nodes.push_back(sval);
        values.push_back(*q);
    }
    Univariate<T> res_s = interpolate<T>(ctx, nodes, values);
    return res_s.coeff(0);
}

}  // namespace macaulay_detail

/// A square homogeneous system in the y-variables together with its Macaulay
/// matrix scaffolding.
template <class K>
struct MacaulaySystem {
    std::vector<MultiPoly<K>> polys;
    DegreeVector degs;
    MacaulayPlan plan;

    MacaulaySystem(std::vector<MultiPoly<K>> p, DegreeVector d)
        : polys(std::move(p)), degs(std::move(d)), plan(degs.size(), degs) {
        macaulay_detail::validate_system(polys, degs);
    }
};

/// Normalized multivariate resultant of n+1 homogeneous polynomials in n+1
/// variables: Res(y_0^{d_0}, ..., y_n^{d_n}) = 1, and the result vanishes
/// exactly when the system has a common projective zero.
template <class K>
K resultant_scalar(const std::vector<MultiPoly<K>>& polys, const DegreeVector& degs,
                   uint64_t seed = 0x5eed) {
    if (polys.empty()) throw validation_error("empty system");
    return macaulay_detail::resultant_value(polys, degs, polys[0].ctx(), seed);
}

/// Gradient of the resultant with respect to the coefficients of slot i0,
/// evaluated at a degenerate system (Res = 0). Entries follow the grevlex
/// order of monomials_of_degree(n+1, d_{i0}). A nonzero gradient gives the
/// projective coordinates (eta^a) of the unique common zero. Computed by one
/// dual-number evaluation of the Macaulay quotient per coefficient direction.
template <class K>
std::vector<K> resultant_gradient(const std::vector<MultiPoly<K>>& polys, const DegreeVector& degs,
                                  int slot, uint64_t seed = 0x5eed) {
    macaulay_detail::validate_system(polys, degs);
    if (slot < 0 || slot >= degs.size()) throw validation_error("slot out of range");
    const auto& ctx = polys[0].ctx();
    if (!resultant_scalar(polys, degs, seed).is_zero())
        throw validation_error("resultant gradient requires a degenerate system (Res = 0)");

    using D = Dual<K>;
    typename D::Ctx dctx(ctx);
    const int nv = degs.size();
    std::vector<MultiPoly<D>> lifted;
    lifted.reserve(nv);
    for (const auto& f : polys) {
        MultiPoly<D> g(nv, dctx);
        for (const auto& [m, c] : f.terms()) g.add_term(m, dctx.embed(c));
        g.refresh_grade();
        lifted.push_back(std::move(g));
    }
    std::vector<Monomial> basis = monomials_of_degree(nv, degs[slot]);
    std::vector<K> grad;
    grad.reserve(basis.size());
    for (const Monomial& a : basis) {
        std::vector<MultiPoly<D>> sys = lifted;
        sys[slot].add_term(a, D(ctx.zero(), ctx.one()));
        if (sys[slot].is_zero() || sys[slot].total_degree() != degs[slot]) {
            // perturbed slot degenerated to zero; derivative via a plain eps entry
            sys[slot] = MultiPoly<D>::monomial_term(nv, dctx, a, D(ctx.zero(), ctx.one()));
        }
        D value = macaulay_detail::resultant_value(sys, degs, dctx, seed + 1);
        grad.push_back(value.eps());
    }
    return grad;
}

/// Exact Poisson-formula identity check for a system whose last n equations
/// are independent linear forms (unique simple common zero eta):
/// Res(g0, l) * g0'(eta) = Res(g0', l) * g0(eta).
template <class K>
bool poisson_check(const MultiPoly<K>& g0, const MultiPoly<K>& g0p,
                   const std::vector<MultiPoly<K>>& ells, uint64_t seed = 0x5eed) {
    const auto& ctx = g0.ctx();
    const int nv = g0.nvars();
    if (int(ells.size()) != nv - 1) throw validation_error("need n independent linear forms");
    if (g0p.nvars() != nv || g0.total_degree() != g0p.total_degree())
        throw validation_error("g0 and g0' must share arity and degree");

    Matrix<K> coeffs(ells.size(), std::vector<K>(nv, ctx.zero()));
    for (size_t i = 0; i < ells.size(); ++i) {
        if (ells[i].is_zero() || ells[i].total_degree() != 1 || !ells[i].is_homogeneous())
            throw validation_error("expected homogeneous linear forms");
        for (int j = 0; j < nv; ++j) coeffs[i][j] = ells[i].coeff(Monomial::variable(nv, j));
    }
    auto eta = kernel_vector(coeffs, ctx);
    if (!eta) throw validation_error("linear forms are dependent");
    // rank must be exactly n for the zero to be unique
    {
        Matrix<K> chk = coeffs;
        int rank = 0;
        for (int c = 0; c < nv && rank < int(chk.size()); ++c) {
            int pr = -1;
            for (int i = rank; i < int(chk.size()); ++i)
                if (chk[i][c].is_unit()) { pr = i; break; }
            if (pr < 0) continue;
            std::swap(chk[pr], chk[rank]);
            for (int i = 0; i < int(chk.size()); ++i) {
                if (i == rank || chk[i][c].is_zero()) continue;
                K f = chk[i][c] / chk[rank][c];
                for (int j = 0; j < nv; ++j) chk[i][j] = chk[i][j] - f * chk[rank][j];
            }
            ++rank;
        }
        if (rank != nv - 1) throw validation_error("linear forms are dependent");
    }

    std::vector<int> dvec{g0.total_degree()};
    for (size_t i = 0; i < ells.size(); ++i) dvec.push_back(1);
    DegreeVector degs(dvec);

    std::vector<MultiPoly<K>> sys0{g0};
    std::vector<MultiPoly<K>> sys1{g0p};
    for (const auto& l : ells) {
        sys0.push_back(l);
        sys1.push_back(l);
    }
    K lhs = resultant_scalar(sys0, degs, seed) * g0p.evaluate(*eta);
    K rhs = resultant_scalar(sys1, degs, seed) * g0.evaluate(*eta);
    return lhs == rhs;
}

/// Descent-of-dimension identity: Res(F_0, ..., F_{n-1}, y_n^{d_n}) equals the
/// d_n-th power of the resultant of the restrictions F_i|_{y_n = 0}.
template <class K>
bool descent_check(const std::vector<MultiPoly<K>>& polys, const std::vector<int>& degrees,
                   int dn, uint64_t seed = 0x5eed) {
    if (polys.empty()) throw validation_error("empty system");
    const auto& ctx = polys[0].ctx();
    const int nv = int(polys.size()) + 1;
    std::vector<MultiPoly<K>> full = polys;
    full.push_back(MultiPoly<K>::variable(nv, ctx, nv - 1, dn));
    std::vector<int> dfull = degrees;
    dfull.push_back(dn);
    K lhs = resultant_scalar(full, DegreeVector(dfull), seed);

    std::vector<MultiPoly<K>> restricted;
    restricted.reserve(polys.size());
    for (const auto& f : polys)
        restricted.push_back(f.specialize_block(nv - 1, 1, {ctx.zero()}));
    K rhs = resultant_scalar(restricted, DegreeVector(degrees), seed);
    K acc = ctx.one();
    for (int i = 0; i < dn; ++i) acc *= rhs;
    return lhs == acc;
}

}  // namespace flexlocus
