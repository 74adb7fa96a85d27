#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "flexlocus/errors.hpp"
#include "flexlocus/fp.hpp"

namespace flexlocus {

/// Dense univariate polynomial, coefficients in ascending degree order.
template <class K>
class Univariate {
public:
    using Ctx = typename K::Ctx;

    explicit Univariate(Ctx ctx) : ctx_(std::move(ctx)) {}
    Univariate(Ctx ctx, std::vector<K> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) { trim(); }

    const Ctx& ctx() const { return ctx_; }
    const std::vector<K>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero

    K coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : ctx_.zero(); }

    void set_coeff(int i, const K& v) {
        if (i >= int(c_.size())) c_.resize(i + 1, ctx_.zero());
        c_[i] = v;
        trim();
    }

    K leading() const {
        if (is_zero()) throw internal_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    /// t-adic valuation: index of the lowest nonzero coefficient; nullopt for 0.
    std::optional<int> valuation() const {
        for (int i = 0; i < int(c_.size()); ++i)
            if (!c_[i].is_zero()) return i;
        return std::nullopt;
    }

    Univariate operator-() const {
        Univariate r(ctx_);
        r.c_.reserve(c_.size());
        for (const K& x : c_) r.c_.push_back(-x);
        return r;
    }

    Univariate operator+(const Univariate& o) const {
        Univariate r(ctx_);
        r.c_.assign(std::max(c_.size(), o.c_.size()), ctx_.zero());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
        r.trim();
        return r;
    }

    Univariate operator-(const Univariate& o) const { return *this + (-o); }

    Univariate operator*(const Univariate& o) const {
        Univariate r(ctx_);
        if (is_zero() || o.is_zero()) return r;
        r.c_.assign(c_.size() + o.c_.size() - 1, ctx_.zero());
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        r.trim();
        return r;
    }

    Univariate scaled(const K& s) const {
        Univariate r(ctx_);
        r.c_.reserve(c_.size());
        for (const K& x : c_) r.c_.push_back(x * s);
        r.trim();
        return r;
    }

    bool operator==(const Univariate& o) const { return c_ == o.c_; }
    bool operator!=(const Univariate& o) const { return c_ != o.c_; }

    K evaluate(const K& x) const {
        K acc = ctx_.zero();
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    Univariate derivative() const {
        Univariate r(ctx_);
        for (int i = 1; i < int(c_.size()); ++i) {
            K d = c_[i] * ctx_.from_int(i);
            r.c_.push_back(d);
        }
        r.trim();
        return r;
    }

    Univariate monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inv());
    }

    /// Euclidean division: returns (quotient, remainder).
    std::pair<Univariate, Univariate> divrem(const Univariate& d) const {
        if (d.is_zero()) throw validation_error("univariate division by zero polynomial");
        Univariate q(ctx_), r = *this;
        K linv = d.leading().inv();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            K f = r.leading() * linv;
            q.set_coeff(shift, q.coeff(shift) + f);
            for (int i = 0; i <= d.degree(); ++i)
                r.c_[i + shift] -= f * d.c_[i];
            r.trim();
        }
        return {q, r};
    }

    static Univariate gcd(Univariate a, Univariate b) {
        while (!b.is_zero()) {
            Univariate r = a.divrem(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    static Univariate x_power(const Ctx& ctx, int k) {
        Univariate r(ctx);
        r.set_coeff(k, ctx.one());
        return r;
    }

    static Univariate constant(const Ctx& ctx, const K& v) {
        Univariate r(ctx);
        r.set_coeff(0, v);
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Ctx ctx_;
    std::vector<K> c_;
};

/// Newton interpolation: the unique polynomial of degree < nodes.size()
/// through (nodes[i], values[i]). Nodes must be pairwise distinct.
template <class K>
Univariate<K> interpolate(const typename K::Ctx& ctx, const std::vector<K>& nodes,
                          const std::vector<K>& values) {
    if (nodes.size() != values.size()) throw internal_error("interpolation arity mismatch");
    const int n = int(nodes.size());
    // divided differences
    std::vector<K> dd = values;
    for (int level = 1; level < n; ++level) {
        for (int i = n - 1; i >= level; --i) {
            K denom = nodes[i] - nodes[i - level];
            if (denom.is_zero()) throw internal_error("repeated interpolation node");
            dd[i] = (dd[i] - dd[i - 1]) / denom;
        }
    }
    // expand Newton form
    Univariate<K> result(ctx);
    Univariate<K> basis = Univariate<K>::constant(ctx, ctx.one());
    for (int i = 0; i < n; ++i) {
        result = result + basis.scaled(dd[i]);
        Univariate<K> lin(ctx, {-nodes[i], ctx.one()});
        basis = basis * lin;
    }
    return result;
}

/// (base^e) mod m by square-and-multiply.
template <class K>
Univariate<K> powmod(Univariate<K> base, uint64_t e, const Univariate<K>& m) {
    Univariate<K> r = Univariate<K>::constant(base.ctx(), base.ctx().one());
    base = base.divrem(m).second;
    while (e) {
        if (e & 1) r = (r * base).divrem(m).second;
        base = (base * base).divrem(m).second;
        e >>= 1;
    }
    return r;
}

/// All roots in F_p of a nonzero univariate polynomial, without multiplicity.
/// Equal-degree splitting (Cantor-Zassenhaus) on the product of linear factors.
inline std::vector<Fp> univariate_roots(const Univariate<Fp>& u, std::mt19937_64& rng) {
    if (u.is_zero()) throw validation_error("root finding on the zero polynomial");
    const auto ctx = u.ctx();
    const uint64_t p = ctx.p;
    std::vector<Fp> roots;

    Univariate<Fp> f = u.monic();
    // squarefree part
    Univariate<Fp> d = f.derivative();
    if (!d.is_zero()) {
        Univariate<Fp> g = Univariate<Fp>::gcd(f, d);
        f = f.divrem(g).first.monic();
    } else {
        // f is a p-th power in char p; its roots equal those of one p-th "root",
        // which at our degrees (< p) cannot happen unless f is constant
        return roots;
    }

    // product of the distinct linear factors: gcd(x^p - x, f)
    Univariate<Fp> x = Univariate<Fp>::x_power(ctx, 1);
    Univariate<Fp> xp = powmod(x, p, f);
    Univariate<Fp> lin = Univariate<Fp>::gcd(xp - x, f);
    if (lin.degree() < 1) return roots;

    std::vector<Univariate<Fp>> stack{lin};
    while (!stack.empty()) {
        Univariate<Fp> g = stack.back();
        stack.pop_back();
        if (g.degree() == 1) {
            // monic x + c -> root -c
            roots.push_back(-(g.coeff(0)));
            continue;
        }
        // random split via (x + a)^((p-1)/2) - 1
        while (true) {
            Univariate<Fp> shift(ctx, {ctx.random(rng), ctx.one()});
            Univariate<Fp> w = powmod(shift, (p - 1) / 2, g);
            w.set_coeff(0, w.coeff(0) - ctx.one());
            Univariate<Fp> h = Univariate<Fp>::gcd(w, g);
            if (h.degree() >= 1 && h.degree() < g.degree()) {
                stack.push_back(h);
                stack.push_back(g.divrem(h).first.monic());
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Fp& a, const Fp& b) { return a.value() < b.value(); });
    return roots;
}

}  // namespace flexlocus
