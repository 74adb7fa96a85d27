#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "flexlocus/fp.hpp"

namespace flexlocus {

/// Quadratic extension F_{p^2} = F_p[t]/(t^2 - r) with r the smallest
/// quadratic non-residue mod p. Elements are pairs a + b*t.
class Fp2 {
public:
    Fp2() = default;
    Fp2(Fp a, Fp b, uint64_t r) : a_(a), b_(b), r_(r) {}

    const Fp& re() const { return a_; }
    const Fp& im() const { return b_; }
    uint64_t nonresidue() const { return r_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_unit() const { return !is_zero(); }

    Fp2 operator-() const { return Fp2(-a_, -b_, r_); }
    Fp2 operator+(const Fp2& o) const { return Fp2(a_ + o.a_, b_ + o.b_, r_); }
    Fp2 operator-(const Fp2& o) const { return Fp2(a_ - o.a_, b_ - o.b_, r_); }
    Fp2 operator*(const Fp2& o) const {
        Fp rr = Fp::raw(r_ % a_.modulus(), a_.modulus());
        return Fp2(a_ * o.a_ + rr * (b_ * o.b_), a_ * o.b_ + b_ * o.a_, r_);
    }
    Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }

    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

    bool operator==(const Fp2& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    Fp2 inv() const {
        // (a + bt)^-1 = (a - bt) / (a^2 - r b^2)
        Fp rr = Fp::raw(r_ % a_.modulus(), a_.modulus());
        Fp norm = a_ * a_ - rr * (b_ * b_);
        Fp ninv = norm.inv();
        return Fp2(a_ * ninv, -(b_ * ninv), r_);
    }

    std::string to_string() const { return a_.to_string() + "+" + b_.to_string() + "t"; }

    struct Ctx {
        uint64_t p = 0;
        uint64_t r = 0;

        Ctx() = default;
        explicit Ctx(uint64_t prime) : p(prime) {
            Fp::Ctx validate(prime);
            (void)validate;
            r = smallest_nonresidue(prime);
        }

        static uint64_t smallest_nonresidue(uint64_t p) {
            for (uint64_t c = 2; c < p; ++c) {
                // Euler criterion
                uint64_t e = (p - 1) / 2, b = c, acc = 1;
                while (e) {
                    if (e & 1) acc = detail::mulmod_u64(acc, b, p);
                    b = detail::mulmod_u64(b, b, p);
                    e >>= 1;
                }
                if (acc == p - 1) return c;
            }
            throw validation_error("no quadratic non-residue found");
        }

        Fp2 zero() const { return Fp2(Fp::raw(0, p), Fp::raw(0, p), r); }
        Fp2 one() const { return Fp2(Fp::raw(1, p), Fp::raw(0, p), r); }
        Fp2 from_int(long long x) const { return Fp2(Fp::Ctx{p}.from_int(x), Fp::raw(0, p), r); }
        Fp2 from_mpq(const mpq_class& q) const { return Fp2(Fp::Ctx{p}.from_mpq(q), Fp::raw(0, p), r); }
        Fp2 embed(const Fp& x) const { return Fp2(x, Fp::raw(0, p), r); }
        Fp2 random(std::mt19937_64& rng) const {
            Fp::Ctx base{p};
            return Fp2(base.random(rng), base.random(rng), r);
        }
        uint64_t characteristic() const { return p; }
        bool operator==(const Ctx& o) const { return p == o.p && r == o.r; }
        std::string describe() const { return "fp2:" + std::to_string(p); }
    };

private:
    Fp a_, b_;
    uint64_t r_ = 0;
};

}  // namespace flexlocus
