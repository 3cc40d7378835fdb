#include "wordmap/arith.hpp"

#include <algorithm>
#include <numeric>

namespace wordmap::arith {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    unsigned k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

unsigned v2(std::uint64_t n) {
  if (n == 0) return 64;
  unsigned k = 0;
  while ((n & 1u) == 0) {
    n >>= 1;
    ++k;
  }
  return k;
}

std::uint64_t mod(std::int64_t a, std::uint64_t m) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % m;
  std::uint64_t r = abs_u(a) % m;
  return r == 0 ? 0 : m - r;
}

std::uint64_t abs_u(std::int64_t a) {
  return a >= 0 ? static_cast<std::uint64_t>(a)
                : static_cast<std::uint64_t>(-(a + 1)) + 1;
}

std::pair<std::int64_t, std::int64_t> bezout(std::int64_t a, std::int64_t b) {
  // Extended Euclid on (a, b); signs are carried through unchanged.
  __int128 old_r = a, r = b;
  __int128 old_s = 1, s = 0;
  __int128 old_t = 0, t = 1;
  while (r != 0) {
    __int128 quot = old_r / r;
    __int128 tmp = r;
    r = old_r - quot * r;
    old_r = tmp;
    tmp = s;
    s = old_s - quot * s;
    old_s = tmp;
    tmp = t;
    t = old_t - quot * t;
    old_t = tmp;
  }
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  return {static_cast<std::int64_t>(old_s), static_cast<std::int64_t>(old_t)};
}

std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  a %= m;
  if (gcd(a, m) != 1) return std::nullopt;
  auto [k, l] = bezout(static_cast<std::int64_t>(a), static_cast<std::int64_t>(m));
  (void)l;
  return mod(k, m);
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [pr, k] : factorize(n)) {
    (void)k;
    r = r / pr * (pr - 1);
  }
  return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [pr, k] : factorize(n)) {
    std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) {
      pk *= pr;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace wordmap::arith
