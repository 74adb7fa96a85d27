#pragma once

#include <random>
#include <string>

#include <gmpxx.h>

#include "flexlocus/errors.hpp"

namespace flexlocus {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (mpq_class keeps that canonical form for us).
class Rational {
public:
    Rational() : v_(0) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    Rational(long long num, long long den) : v_(mpq_class((long)num, (long)den)) { v_.canonicalize(); }

    const mpq_class& value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw validation_error("rational division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    Rational inv() const {
        if (is_zero()) throw validation_error("rational division by zero");
        return Rational(mpq_class(1 / v_));
    }

    std::string to_string() const { return v_.get_str(); }

    struct Ctx {
        Rational zero() const { return Rational(); }
        Rational one() const { return Rational(mpq_class(1)); }
        Rational from_int(long long x) const { return Rational(mpq_class((long)x)); }
        Rational from_mpq(const mpq_class& q) const { return Rational(q); }
        Rational from_string(const std::string& s) const {
            mpq_class q(s);
            q.canonicalize();
            return Rational(q);
        }
        // small integers keep the exact linear algebra downstream tame
        Rational random(std::mt19937_64& rng) const {
            std::uniform_int_distribution<int> dist(-50, 50);
            return Rational(mpq_class(dist(rng)));
        }
        uint64_t characteristic() const { return 0; }
        bool operator==(const Ctx&) const { return true; }
        std::string describe() const { return "q"; }
    };

private:
    mpq_class v_;
};

}  // namespace flexlocus
