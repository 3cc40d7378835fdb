#pragma once

// Trace polynomials over Z in s = tr x, u = tr xy, t = tr y.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "wordmap/field.hpp"

namespace wordmap {

class TracePoly {
 public:
  /// Exponents (on s, on u, on t).
  using Mono = std::array<std::uint32_t, 3>;

  TracePoly() = default;
  static TracePoly constant(long c);
  static TracePoly s();
  static TracePoly u();
  static TracePoly t();
  static TracePoly monomial(const mpz_class& c, std::uint32_t i, std::uint32_t k, std::uint32_t j);

  const std::map<Mono, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coeff(std::uint32_t i, std::uint32_t k, std::uint32_t j) const;

  unsigned deg_s() const;
  unsigned deg_u() const;
  unsigned deg_t() const;
  /// Total degree in s and t (u ignored).
  unsigned deg_st() const;
  /// Coefficient of u^k as a polynomial in s, t.
  TracePoly u_coeff(std::uint32_t k) const;

  FieldElem eval(FieldElem s, FieldElem u, FieldElem t) const;

  TracePoly& operator+=(const TracePoly& o);
  TracePoly& operator-=(const TracePoly& o);
  friend TracePoly operator+(TracePoly x, const TracePoly& y) { return x += y; }
  friend TracePoly operator-(TracePoly x, const TracePoly& y) { return x -= y; }
  friend TracePoly operator*(const TracePoly& x, const TracePoly& y);
  friend TracePoly operator*(long c, const TracePoly& x);
  TracePoly operator-() const { return -1 * *this; }
  friend bool operator==(const TracePoly& x, const TracePoly& y) { return x.terms_ == y.terms_; }

  /// Canonical text: descending total degree, then s-degree, then u-degree.
  std::string str() const;

 private:
  void add_term(const Mono& m, const mpz_class& c);
  std::map<Mono, mpz_class> terms_;
};

/// tr(x^n) as a polynomial in s.
TracePoly power_trace_poly(unsigned n);

/// tr(x^a y^b) = u * f + h.
struct FHPair {
  unsigned a = 0, b = 0;
  TracePoly f, h;
  TracePoly full() const { return TracePoly::u() * f + h; }
};

inline constexpr unsigned kSymbolicLimit = 64;

/// Symbolic f_{a,b}, h_{a,b}; requires a, b >= 1 and a + b <= kSymbolicLimit.
FHPair fh_pair(unsigned a, unsigned b);

/// (f_{a,b}(s,t), h_{a,b}(s,t)) in O(log a + log b) field operations.
std::pair<FieldElem, FieldElem> fh_eval(std::uint64_t a, std::uint64_t b, FieldElem s, FieldElem t);
/// Same values by running the two-term recurrences step by step.
std::pair<FieldElem, FieldElem> fh_eval_reference(std::uint64_t a, std::uint64_t b, FieldElem s, FieldElem t);

/// U_n(s) with U_{-1} = 0, U_0 = 1, U_{n+1} = s U_n - U_{n-1}; n >= -1.
FieldElem chebyshev_u(std::int64_t n, FieldElem s);
/// tr(x^n) for tr(x) = s.
FieldElem power_trace(std::uint64_t n, FieldElem s);

/// x^{a_1} y^{b_1} ... x^{a_k} y^{b_k} with every exponent >= 1.
struct WordSpec {
  std::vector<std::pair<unsigned, unsigned>> pairs;

  /// Accepts a_1 = 0 or b_k = 0 and folds them cyclically; any other
  /// non-positive exponent raises NonPositiveWord.
  static WordSpec from_exponents(std::vector<std::pair<long, long>> raw);
  unsigned length() const { return static_cast<unsigned>(pairs.size()); }
  unsigned total_a() const;
  unsigned total_b() const;
  std::string str() const;
};

TracePoly word_trace_poly(const WordSpec& w);

/// h_n(zeta) = zeta^{n-1} + zeta^{n-3} + ... + zeta^{1-n}.
FieldElem hn_value(FieldElem zeta, std::uint64_t n);
QuadElem hn_value(const QuadElem& zeta, std::uint64_t n);

}  // namespace wordmap
