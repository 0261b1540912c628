#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "sparsity/rng.hpp"

namespace sparsity {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Default working modulus: the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kDefaultModulus = (1ULL << 61) - 1;

// Selects the exact-arithmetic backend for a computation. modulus == 0 means
// exact rationals; otherwise a prime field. Recorded in every output that
// depends on it.
struct FieldSpec {
    std::uint64_t modulus = kDefaultModulus;

    bool rational() const { return modulus == 0; }

    void validate() const {
        if (modulus != 0 && !is_prime_u64(modulus))
            throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not prime");
    }
};

class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p = kDefaultModulus) : p_(p) {
        if (!is_prime_u64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }
    bool is_zero(value_type a) const { return a == 0; }

    value_type add(value_type a, value_type b) const {
        value_type s = a + b;  // p < 2^63, no overflow
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const { return mul_mod(a, b, p_); }
    value_type inv(value_type a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return pow_mod(a, p_ - 2, p_);
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<value_type>(r);
    }

    value_type random(Rng& rng) const { return rng.below(p_); }

    // Size of the set random entries are drawn from (Schwartz-Zippel bounds).
    BigInt sample_space() const { return BigInt(p_); }

    std::string to_string(value_type a) const { return std::to_string(a); }

private:
    std::uint64_t p_;
};

class RationalField {
public:
    using value_type = BigRational;

    // Random entries are uniform integers in [1, 2^20].
    static constexpr std::uint64_t kRandomRange = 1ULL << 20;

    std::uint64_t modulus() const { return 0; }

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    bool is_zero(const value_type& a) const { return a == 0; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const {
        if (b == 0) throw std::domain_error("division by zero");
        return a / b;
    }

    value_type from_int(long long v) const { return value_type(v); }

    value_type random(Rng& rng) const { return value_type(rng.below(kRandomRange) + 1); }

    BigInt sample_space() const { return BigInt(kRandomRange); }

    std::string to_string(const value_type& a) const {
        return numerator(a).str() + "/" + denominator(a).str();
    }
};

// Calls fn with the concrete field selected by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    spec.validate();
    if (spec.rational()) return fn(RationalField{});
    return fn(PrimeField{spec.modulus});
}

}  // namespace sparsity
