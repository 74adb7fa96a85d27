#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/monomial.hpp"
#include "flexlocus/univariate.hpp"

namespace flexlocus {

/// Sparse multivariate polynomial over an exact field K: a grevlex-ordered map
/// from monomials to nonzero coefficients. `grade` caches the homogeneous
/// degree when the polynomial is known homogeneous.
template <class K>
class MultiPoly {
public:
    using Ctx = typename K::Ctx;
    using TermMap = std::map<Monomial, K, GrevlexLess>;

    MultiPoly(int nvars, Ctx ctx) : nvars_(nvars), ctx_(std::move(ctx)) {}

    int nvars() const { return nvars_; }
    const Ctx& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    std::optional<int> grade() const { return grade_; }

    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return int(terms_.size()); }

    /// Total degree, or -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    /// Degree in a contiguous block of variables (e.g. the x- or y-block).
    int block_degree(int start, int len) const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (int i = start; i < start + len; ++i) s += m[i];
            d = std::max(d, s);
        }
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    /// Homogeneity in each of two blocks; used for the Taylor system's bidegrees.
    bool is_bihomogeneous(int split, int* degx = nullptr, int* degy = nullptr) const {
        if (terms_.empty()) return true;
        int dx = -1, dy = -1;
        for (const auto& [m, c] : terms_) {
            int sx = 0, sy = 0;
            for (int i = 0; i < split; ++i) sx += m[i];
            for (int i = split; i < nvars_; ++i) sy += m[i];
            if (dx < 0) { dx = sx; dy = sy; }
            if (sx != dx || sy != dy) return false;
        }
        if (degx) *degx = dx;
        if (degy) *degy = dy;
        return true;
    }

    void refresh_grade() {
        grade_ = std::nullopt;
        if (!terms_.empty() && is_homogeneous()) grade_ = terms_.begin()->first.degree();
    }

    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ctx_.zero() : it->second;
    }

    void add_term(const Monomial& m, const K& c) {
        if (c.is_zero()) return;
        if (m.nvars() != nvars_) throw internal_error("monomial arity mismatch");
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const std::pair<const Monomial, K>& leading_term() const {
        if (terms_.empty()) throw internal_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    MultiPoly operator-() const {
        MultiPoly r(nvars_, ctx_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        r.grade_ = grade_;
        return r;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check(o);
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        if (grade_ && o.grade_ && *grade_ == *o.grade_) r.grade_ = grade_;
        else r.refresh_grade();
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

    MultiPoly operator*(const MultiPoly& o) const {
        check(o);
        MultiPoly r(nvars_, ctx_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                r.add_term(ma * mb, ca * cb);
        if (grade_ && o.grade_) {
            if (!r.is_zero()) r.grade_ = *grade_ + *o.grade_;
        } else {
            r.refresh_grade();
        }
        return r;
    }

    MultiPoly scaled(const K& s) const {
        MultiPoly r(nvars_, ctx_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        r.grade_ = grade_;
        return r;
    }

    MultiPoly pow(int e) const {
        if (e < 0) throw validation_error("negative polynomial power");
        MultiPoly r = constant(nvars_, ctx_, ctx_.one());
        MultiPoly base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly partial_derivative(int var) const {
        if (var < 0 || var >= nvars_) throw validation_error("derivative variable out of range");
        MultiPoly r(nvars_, ctx_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            r.add_term(d, c * ctx_.from_int(m[var]));
        }
        r.refresh_grade();
        return r;
    }

    K evaluate(const std::vector<K>& point) const {
        return evaluate_as<K>(ctx_, point, [](const K& c) { return c; });
    }

    /// Evaluation with coefficients embedded into a larger field L.
    template <class L, class EmbedFn>
    L evaluate_as(const typename L::Ctx& lctx, const std::vector<L>& point, EmbedFn embed) const {
        if (int(point.size()) != nvars_) throw validation_error("evaluation point arity mismatch");
        // per-variable power tables up to the needed degree
        std::vector<std::vector<L>> pows(nvars_);
        for (int i = 0; i < nvars_; ++i) pows[i].push_back(lctx.one());
        L acc = lctx.zero();
        for (const auto& [m, c] : terms_) {
            L t = embed(c);
            for (int i = 0; i < nvars_; ++i) {
                while (int(pows[i].size()) <= m[i]) pows[i].push_back(pows[i].back() * point[i]);
                if (m[i]) t = t * pows[i][m[i]];
            }
            acc += t;
        }
        return acc;
    }

    /// Restriction to the parametrized line p + t q, as a univariate in t.
    Univariate<K> substitute_line(const std::vector<K>& p, const std::vector<K>& q) const {
        if (int(p.size()) != nvars_ || int(q.size()) != nvars_)
            throw validation_error("line point arity mismatch");
        Univariate<K> acc(ctx_);
        for (const auto& [m, c] : terms_) {
            Univariate<K> t = Univariate<K>::constant(ctx_, c);
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                Univariate<K> lin(ctx_, {p[i], q[i]});
                for (int k = 0; k < m[i]; ++k) t = t * lin;
            }
            acc = acc + t;
        }
        return acc;
    }

    /// Substitute scalars for the variable block [start, start+len); the result
    /// lives in the remaining nvars-len variables, in their original order.
    MultiPoly specialize_block(int start, int len, const std::vector<K>& point) const {
        if (int(point.size()) != len) throw validation_error("specialization arity mismatch");
        MultiPoly r(nvars_ - len, ctx_);
        std::vector<std::vector<K>> pows(len);
        for (int i = 0; i < len; ++i) pows[i].push_back(ctx_.one());
        for (const auto& [m, c] : terms_) {
            K factor = c;
            for (int i = 0; i < len; ++i) {
                int e = m[start + i];
                while (int(pows[i].size()) <= e) pows[i].push_back(pows[i].back() * point[i]);
                if (e) factor = factor * pows[i][e];
            }
            if (factor.is_zero()) continue;
            Monomial rm(nvars_ - len);
            int k = 0;
            for (int i = 0; i < nvars_; ++i) {
                if (i >= start && i < start + len) continue;
                rm[k++] = m[i];
            }
            r.add_term(rm, factor);
        }
        r.refresh_grade();
        return r;
    }

    /// Substitute each variable x_j by the linear form sum_k A[j][k] x_k.
    MultiPoly apply_linear(const std::vector<std::vector<K>>& a) const {
        if (int(a.size()) != nvars_) throw validation_error("linear substitution shape mismatch");
        std::vector<MultiPoly> images;
        images.reserve(nvars_);
        for (int j = 0; j < nvars_; ++j) {
            MultiPoly lj(nvars_, ctx_);
            for (int k = 0; k < nvars_; ++k) lj.add_term(Monomial::variable(nvars_, k), a[j][k]);
            images.push_back(std::move(lj));
        }
        MultiPoly r(nvars_, ctx_);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(nvars_, ctx_, c);
            for (int j = 0; j < nvars_; ++j)
                for (int e = 0; e < m[j]; ++e) t = t * images[j];
            r = r + t;
        }
        r.refresh_grade();
        return r;
    }

    /// Reindex variables into a wider ring: variable i maps to mapping[i].
    MultiPoly embed_vars(int new_nvars, const std::vector<int>& mapping) const {
        MultiPoly r(new_nvars, ctx_);
        for (const auto& [m, c] : terms_) {
            Monomial nm(new_nvars);
            for (int i = 0; i < nvars_; ++i) nm[mapping[i]] = m[i];
            r.add_term(nm, c);
        }
        r.grade_ = grade_;
        return r;
    }

    static MultiPoly constant(int nvars, const Ctx& ctx, const K& v) {
        MultiPoly r(nvars, ctx);
        r.add_term(Monomial(nvars), v);
        r.refresh_grade();
        return r;
    }

    static MultiPoly variable(int nvars, const Ctx& ctx, int i, int power = 1) {
        MultiPoly r(nvars, ctx);
        r.add_term(Monomial::variable(nvars, i, power), ctx.one());
        r.refresh_grade();
        return r;
    }

    static MultiPoly monomial_term(int nvars, const Ctx& ctx, const Monomial& m, const K& c) {
        MultiPoly r(nvars, ctx);
        r.add_term(m, c);
        r.refresh_grade();
        return r;
    }

    static MultiPoly random_homogeneous(int nvars, const Ctx& ctx, int degree, std::mt19937_64& rng) {
        MultiPoly r(nvars, ctx);
        for (const Monomial& m : monomials_of_degree(nvars, degree)) r.add_term(m, ctx.random(rng));
        r.refresh_grade();
        return r;
    }

private:
    void check(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw validation_error("mixed variable counts");
        if (!(ctx_ == o.ctx_)) throw validation_error("mixed field contexts");
    }

    int nvars_;
    Ctx ctx_;
    TermMap terms_;
    std::optional<int> grade_;
};

/// Division with remainder by a single polynomial under grevlex: returns
/// (normal form nf, cofactor h) with g = nf + f*h and no term of nf divisible
/// by the leading monomial of f.
template <class K>
std::pair<MultiPoly<K>, MultiPoly<K>> normal_form(const MultiPoly<K>& g, const MultiPoly<K>& f) {
    if (f.is_zero()) throw validation_error("normal form modulo zero polynomial");
    const auto& [lm, lc] = f.leading_term();
    K lcinv = lc.inv();
    MultiPoly<K> rem = g;
    MultiPoly<K> cof(g.nvars(), g.ctx());
    while (true) {
        // highest term of rem divisible by lm
        const auto& tm = rem.terms();
        auto it = tm.rbegin();
        for (; it != tm.rend(); ++it)
            if (it->first.divisible_by(lm)) break;
        if (it == tm.rend()) break;
        Monomial q = it->first / lm;
        K factor = it->second * lcinv;
        MultiPoly<K> mult = MultiPoly<K>::monomial_term(g.nvars(), g.ctx(), q, factor);
        rem = rem - mult * f;
        cof = cof + mult;
    }
    return {rem, cof};
}

}  // namespace flexlocus
