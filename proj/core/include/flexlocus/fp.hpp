#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include "flexlocus/errors.hpp"

namespace flexlocus {

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    if (p <= (uint64_t(1) << 32)) return (a * b) % p;
    return uint64_t((unsigned __int128)a * b % p);
}

inline uint64_t addmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

inline uint64_t invmod_u64(uint64_t a, uint64_t p) {
    if (a == 0) throw validation_error("division by zero in F_p");
    // extended Euclid on signed 128-bit to avoid overflow for large p
    __int128 t = 0, newt = 1;
    __int128 r = p, newr = a;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw validation_error("element not invertible mod p");
    if (t < 0) t += p;
    return uint64_t(t);
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit range
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    auto powmod = [&](uint64_t b, uint64_t e) {
        uint64_t r = 1;
        b %= n;
        while (e) {
            if (e & 1) r = mulmod_u64(r, b, n);
            b = mulmod_u64(b, b, n);
            e >>= 1;
        }
        return r;
    };
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

/// Element of the prime field F_p, stored as the canonical residue in [0, p).
/// The modulus rides along with the value; mixing moduli is a usage error.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(uint64_t v, uint64_t p) : v_(v % p), p_(p) {}

    uint64_t value() const { return v_; }
    uint64_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }

    Fp operator-() const { return Fp::raw(v_ == 0 ? 0 : p_ - v_, p_); }

    Fp operator+(const Fp& o) const { check(o); return Fp::raw(detail::addmod_u64(v_, o.v_, p_), p_); }
    Fp operator-(const Fp& o) const { check(o); return *this + (-o); }
    Fp operator*(const Fp& o) const { check(o); return Fp::raw(detail::mulmod_u64(v_, o.v_, p_), p_); }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inv() const { return Fp::raw(detail::invmod_u64(v_, p_), p_); }

    std::string to_string() const { return std::to_string(v_); }

    struct Ctx {
        uint64_t p = 0;

        Ctx() = default;
        explicit Ctx(uint64_t prime) : p(prime) {
            if (!detail::is_prime_u64(prime)) throw validation_error("modulus is not prime: " + std::to_string(prime));
            if (prime == 2) throw validation_error("modulus must be an odd prime");
        }

        Fp zero() const { return Fp::raw(0, p); }
        Fp one() const { return Fp::raw(1 % p, p); }
        Fp from_int(long long x) const {
            long long r = x % (long long)p;
            if (r < 0) r += (long long)p;
            return Fp::raw(uint64_t(r), p);
        }
        Fp from_mpq(const mpq_class& q) const {
            mpz_class num = q.get_num(), den = q.get_den();
            mpz_class pz(std::to_string(p));
            mpz_class nr = num % pz; if (nr < 0) nr += pz;
            mpz_class dr = den % pz;
            if (dr == 0) throw validation_error("denominator divisible by p");
            uint64_t n64 = mpz_get_ui(nr.get_mpz_t());
            uint64_t d64 = mpz_get_ui(mpz_class(dr).get_mpz_t());
            return Fp::raw(detail::mulmod_u64(n64, detail::invmod_u64(d64, p), p), p);
        }
        Fp from_string(const std::string& s) const {
            return from_mpq(mpq_class(s));
        }
        Fp random(std::mt19937_64& rng) const {
            std::uniform_int_distribution<uint64_t> dist(0, p - 1);
            return Fp::raw(dist(rng), p);
        }
        uint64_t characteristic() const { return p; }
        bool operator==(const Ctx& o) const { return p == o.p; }
        std::string describe() const { return "fp:" + std::to_string(p); }
    };

    static Fp raw(uint64_t v, uint64_t p) { Fp x; x.v_ = v; x.p_ = p; return x; }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw validation_error("mixed moduli in F_p arithmetic");
    }

    uint64_t v_;
    uint64_t p_;
};

}  // namespace flexlocus
