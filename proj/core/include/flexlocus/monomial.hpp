#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "flexlocus/errors.hpp"

namespace flexlocus {

/// Exponent vector, one byte per variable (degrees stay well below 256 here).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<uint8_t> e) : e_(std::move(e)) {}

    int nvars() const { return int(e_.size()); }
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

    uint8_t operator[](int i) const { return e_[i]; }
    uint8_t& operator[](int i) { return e_[i]; }

    const std::vector<uint8_t>& exponents() const { return e_; }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) {
            int s = r.e_[i] + o.e_[i];
            if (s > 255) throw internal_error("monomial exponent overflow");
            r.e_[i] = uint8_t(s);
        }
        return r;
    }

    // componentwise divisibility
    bool divisible_by(const Monomial& o) const {
        for (int i = 0; i < nvars(); ++i)
            if (e_[i] < o.e_[i]) return false;
        return true;
    }

    Monomial operator/(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < nvars(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

    static Monomial variable(int nvars, int i, int power = 1) {
        Monomial m(nvars);
        m[i] = uint8_t(power);
        return m;
    }

private:
    std::vector<uint8_t> e_;
};

/// Graded reverse lexicographic order: compare total degrees first; on ties,
/// the monomial whose last differing exponent is larger is the smaller one.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (int i = a.nvars() - 1; i >= 0; --i) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

/// All monomials of the given total degree, listed in increasing grevlex order.
inline void monomials_of_degree_rec(int nvars, int pos, int remaining, Monomial& cur,
                                    std::vector<Monomial>& out) {
    if (pos == nvars - 1) {
        cur[pos] = uint8_t(remaining);
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[pos] = uint8_t(e);
        monomials_of_degree_rec(nvars, pos + 1, remaining - e, cur, out);
    }
}

inline std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
    if (degree > 255) throw internal_error("monomial degree overflow");
    std::vector<Monomial> out;
    Monomial cur(nvars);
    monomials_of_degree_rec(nvars, 0, degree, cur, out);
    std::sort(out.begin(), out.end(), GrevlexLess{});
    return out;
}

}  // namespace flexlocus
