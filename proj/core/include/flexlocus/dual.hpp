#pragma once

#include <random>
#include <string>

#include <gmpxx.h>

#include "flexlocus/errors.hpp"

namespace flexlocus {

/// First-order jet a + b*eps with eps^2 = 0, over a base field K.
/// Carries one exact directional derivative through any rational computation;
/// the Macaulay quotient evaluated over Dual<K> yields a resultant gradient entry.
template <class K>
class Dual {
public:
    Dual() = default;
    Dual(K a, K b) : a_(std::move(a)), b_(std::move(b)) {}

    const K& re() const { return a_; }
    const K& eps() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    // units of K[eps]/(eps^2) are exactly the elements with invertible real part
    bool is_unit() const { return a_.is_unit(); }

    Dual operator-() const { return Dual(-a_, -b_); }
    Dual operator+(const Dual& o) const { return Dual(a_ + o.a_, b_ + o.b_); }
    Dual operator-(const Dual& o) const { return Dual(a_ - o.a_, b_ - o.b_); }
    Dual operator*(const Dual& o) const { return Dual(a_ * o.a_, a_ * o.b_ + b_ * o.a_); }
    Dual operator/(const Dual& o) const { return *this * o.inv(); }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }

    bool operator==(const Dual& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Dual& o) const { return !(*this == o); }

    Dual inv() const {
        if (!a_.is_unit()) throw internal_error("non-invertible dual number");
        K ai = a_.inv();
        return Dual(ai, -(ai * b_ * ai));
    }

    std::string to_string() const { return a_.to_string() + "+" + b_.to_string() + "e"; }

    struct Ctx {
        typename K::Ctx base;

        Ctx() = default;
        explicit Ctx(typename K::Ctx b) : base(std::move(b)) {}

        Dual zero() const { return Dual(base.zero(), base.zero()); }
        Dual one() const { return Dual(base.one(), base.zero()); }
        Dual from_int(long long x) const { return Dual(base.from_int(x), base.zero()); }
        Dual from_mpq(const mpq_class& q) const { return Dual(base.from_mpq(q), base.zero()); }
        Dual embed(const K& x) const { return Dual(x, base.zero()); }
        Dual random(std::mt19937_64& rng) const { return Dual(base.random(rng), base.zero()); }
        uint64_t characteristic() const { return base.characteristic(); }
        bool operator==(const Ctx& o) const { return base == o.base; }
        std::string describe() const { return "dual(" + base.describe() + ")"; }
    };

private:
    K a_, b_;
};

}  // namespace flexlocus
