#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "milnor/errors.hpp"

namespace milnor {

using Rational = mpq_class;

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p);

// Runtime descriptor of the coefficient field.
struct FieldSpec {
    enum class Kind { ExactRational, PrimeField };
    Kind kind = Kind::ExactRational;
    std::uint64_t p = 0;

    static FieldSpec rational() { return FieldSpec{Kind::ExactRational, 0}; }
    static FieldSpec prime(std::uint64_t p);

    bool operator==(const FieldSpec&) const = default;
    std::string describe() const;
};

// Exact rational arithmetic. Stateless; elements are GMP rationals.
struct QField {
    using Elem = Rational;

    static FieldSpec spec() { return FieldSpec::rational(); }

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    Elem from_int(long v) const { return Rational(v); }
    Elem from_ratio(long num, long den) const {
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Elem from_decimal(const std::string& digits) const { return Rational(mpz_class(digits, 10)); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const { return Rational(1) / a; }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string to_string(const Elem& a) const { return a.get_str(); }

    bool operator==(const QField&) const = default;
};

// Arithmetic in F_p for a prime p with 2^30 < p < 2^31. Elements are reduced
// residues stored in uint64.
class PFField {
public:
    using Elem = std::uint64_t;

    PFField() : p_(0) {}
    explicit PFField(std::uint64_t p) : p_(p) {
        if (p <= (1ull << 30) || p >= (1ull << 31) || !is_prime_u64(p))
            throw BadPrime("modulus " + std::to_string(p) + " is not a prime in (2^30, 2^31)");
    }

    std::uint64_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long v) const {
        long r = v % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return static_cast<Elem>(r);
    }
    Elem from_ratio(long num, long den) const { return mul(from_int(num), inv(from_int(den))); }
    Elem from_decimal(const std::string& digits) const {
        Elem r = 0;
        for (char c : digits) r = ((r * 10) + static_cast<Elem>(c - '0')) % p_;
        return r;
    }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw Error("division by zero in F_p");
        return invmod_u64(a, p_);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string to_string(Elem a) const { return std::to_string(a); }

    // Residue of an exact rational; the prime must not divide the denominator.
    Elem from_rational(const Rational& q) const;

    bool operator==(const PFField&) const = default;

private:
    std::uint64_t p_;
};

// Default certification primes: the two largest primes below 2^31. Both are
// congruent to 1 mod 3, so cube roots of unity exist as residues.
inline constexpr std::uint64_t kDefaultPrime0 = 2147483647ull;
inline constexpr std::uint64_t kDefaultPrime1 = 2147483629ull;

}  // namespace milnor
