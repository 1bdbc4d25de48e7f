#include "milnor/field.hpp"

namespace milnor {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on (a, p), p prime
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error("invmod: arguments not coprime");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a deterministic test for all n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p <= (1ull << 30) || p >= (1ull << 31) || !is_prime_u64(p))
        throw BadPrime("modulus " + std::to_string(p) + " is not a prime in (2^30, 2^31)");
    return FieldSpec{Kind::PrimeField, p};
}

std::string FieldSpec::describe() const {
    if (kind == Kind::ExactRational) return "QQ";
    return "F_" + std::to_string(p);
}

PFField::Elem PFField::from_rational(const Rational& q) const {
    mpz_class p_z(static_cast<unsigned long>(p_));
    mpz_class num_r = q.get_num() % p_z;
    mpz_class den_r = q.get_den() % p_z;
    if (den_r == 0) throw BadPrime("prime " + std::to_string(p_) + " divides a denominator");
    std::uint64_t num = mpz_class(num_r < 0 ? num_r + p_z : num_r).get_ui();
    std::uint64_t den = mpz_class(den_r).get_ui();
    return mul(num, inv(den));
}

}  // namespace milnor
