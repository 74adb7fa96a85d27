#pragma once

#include <random>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/multipoly.hpp"

namespace flexlocus {

/// Taylor-expansion operator: g(x,y) -> sum_i d g/d x_i * y_i, in a ring whose
/// first m variables are x and last m are y. Iterating it on f(x) produces the
/// bihomogeneous system f_1, ..., f_d with f(x+ty) = f(x) + sum f_k t^k / k!.
template <class K>
MultiPoly<K> polarization_step(const MultiPoly<K>& g, int m) {
    MultiPoly<K> r(g.nvars(), g.ctx());
    for (int i = 0; i < m; ++i) {
        MultiPoly<K> yi = MultiPoly<K>::variable(g.nvars(), g.ctx(), m + i);
        r = r + g.partial_derivative(i) * yi;
    }
    return r;
}

/// f_1, ..., f_d for homogeneous f of degree d in m variables; f_k lives in 2m
/// variables (x block then y block) and is bihomogeneous of bidegree (d-k, k).
template <class K>
std::vector<MultiPoly<K>> taylor_system(const MultiPoly<K>& f) {
    if (!f.is_homogeneous()) throw validation_error("taylor system requires homogeneous input");
    const int m = f.nvars();
    const int d = f.total_degree();
    std::vector<int> xmap(m);
    for (int i = 0; i < m; ++i) xmap[i] = i;
    MultiPoly<K> cur = f.embed_vars(2 * m, xmap);
    std::vector<MultiPoly<K>> out;
    for (int k = 1; k <= d; ++k) {
        cur = polarization_step(cur, m);
        out.push_back(cur);
    }
    return out;
}

/// Probabilistic squarefreeness test by restriction to random lines. A
/// restriction of full degree d with gcd(u, u') = 1 certifies squarefreeness;
/// a repeated factor makes every full-degree restriction fail, so `trials`
/// failures in a row are overwhelming evidence of a repeated factor.
template <class K>
bool is_squarefree(const MultiPoly<K>& f, std::mt19937_64& rng, int trials = 20) {
    if (f.is_zero() || !f.is_homogeneous())
        throw validation_error("squarefreeness test requires nonzero homogeneous input");
    const int d = f.total_degree();
    const uint64_t ch = f.ctx().characteristic();
    if (ch != 0 && ch <= uint64_t(d))
        throw validation_error("squarefreeness test unreliable in characteristic <= degree");
    if (d == 0) return true;
    const int m = f.nvars();
    for (int t = 0; t < trials; ++t) {
        std::vector<K> p(m), q(m);
        for (int i = 0; i < m; ++i) {
            p[i] = f.ctx().random(rng);
            q[i] = f.ctx().random(rng);
        }
        Univariate<K> u = f.substitute_line(p, q);
        if (u.degree() != d) continue;  // line missed the generic locus
        Univariate<K> g = Univariate<K>::gcd(u, u.derivative());
        if (g.degree() == 0) return true;
    }
    return false;
}

/// Validated hypersurface V = Z(f) in P^n: f squarefree homogeneous of degree
/// d >= 1 in n+1 variables, with the cached Taylor system f_1, ..., f_d.
template <class K>
class Hypersurface {
public:
    Hypersurface(MultiPoly<K> f, std::mt19937_64& rng) : f_(std::move(f)) {
        if (f_.is_zero()) throw validation_error("defining polynomial must be nonzero");
        if (!f_.is_homogeneous()) throw validation_error("defining polynomial must be homogeneous");
        d_ = f_.total_degree();
        if (d_ < 1) throw validation_error("degree must be at least 1");
        n_ = f_.nvars() - 1;
        if (n_ < 1) throw validation_error("need at least two homogeneous coordinates");
        if (!is_squarefree(f_, rng))
            throw validation_error("input must be squarefree: the defining polynomial of a hypersurface has no repeated factor");
        taylor_ = taylor_system(f_);
        for (int k = 1; k <= d_; ++k) {
            int dx = 0, dy = 0;
            if (!taylor_[k - 1].is_bihomogeneous(n_ + 1, &dx, &dy) || dx != d_ - k || dy != k)
                throw internal_error("taylor term has wrong bidegree");
        }
    }

    const MultiPoly<K>& f() const { return f_; }
    int n() const { return n_; }
    int d() const { return d_; }

    /// f_k in 2(n+1) variables, bihomogeneous of bidegree (d-k, k).
    const MultiPoly<K>& taylor(int k) const {
        if (k < 1 || k > d_) throw validation_error("taylor index out of range");
        return taylor_[k - 1];
    }

    bool contains(const std::vector<K>& p) const { return f_.evaluate(p).is_zero(); }

    bool is_singular_at(const std::vector<K>& p) const {
        for (int i = 0; i <= n_; ++i)
            if (!f_.partial_derivative(i).evaluate(p).is_zero()) return false;
        return true;
    }

private:
    MultiPoly<K> f_;
    int n_ = 0;
    int d_ = 0;
    std::vector<MultiPoly<K>> taylor_;
};

}  // namespace flexlocus
