/**
 * @file numtheory.hpp
 * @brief Small elementary number theory helpers: factorization, totient,
 *        Moebius function, divisor lists, modular inverses.
 *
 * Everything here is trial-division based; moduli in this library are
 * desk-scale (well below 2^32).
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cayley {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization as (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t result = n;
    for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
    return result;
}

/// Moebius function; 0 when n has a squared prime factor.
inline int moebius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("moebius: n must be positive");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

/// All divisors of n, ascending.
inline std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors_of: n must be positive");
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Units of Z/n, ascending. For n = 1 this is {0} (the zero ring's unit).
inline std::vector<std::uint64_t> units_mod(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("units_mod: n must be positive");
    if (n == 1) return {0};
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1) out.push_back(a);
    return out;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a mod m via extended Euclid; throws when gcd(a, m) != 1.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("inv_mod: zero modulus");
    if (m == 1) return 0;
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = r - q * new_r;
        r = new_r; new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("inv_mod: element is not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

}  // namespace cayley
