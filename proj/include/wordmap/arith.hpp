#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Integer helpers shared by the field, group and analysis layers.
namespace wordmap::arith {

bool is_prime(std::uint64_t n);

/// Prime factorisation by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// 2-adic valuation; v2(0) is defined as 64.
unsigned v2(std::uint64_t n);

/// Non-negative residue of a (possibly negative) integer.
std::uint64_t mod(std::int64_t a, std::uint64_t m);

/// Absolute value as unsigned, well defined for INT64_MIN.
std::uint64_t abs_u(std::int64_t a);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m);

/// Bezout coefficients (k, l) with k*a + l*b = gcd(a, b).
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t a, std::int64_t b);

/// Euler phi.
std::uint64_t totient(std::uint64_t n);

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace wordmap::arith
