#pragma once

// Exact arithmetic in F_q = F_{p^e} and in its quadratic extension F_{q^2}.
//
// An element of F_q is stored as its encoding  sum_i c_i p^i  over the power
// basis 1, X, ..., X^{e-1} of F_p[X]/(modulus).  The encoding doubles as a
// total order ("encoding order") used wherever a deterministic first choice
// is required.  F_{q^2} is F_q[T]/(T^2 + m1 T + m0), again with the first
// irreducible polynomial in encoding order m0 + m1 q.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "wordmap/errors.hpp"

namespace wordmap {

class FieldCtx;
class QuadExt;

class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const FieldCtx* ctx, std::uint32_t code) : ctx_(ctx), code_(code) {}

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldCtx* ctx_ptr() const { return ctx_; }
  std::uint32_t code() const { return code_; }
  bool valid() const { return ctx_ != nullptr; }

  /// Coefficients c_0..c_{e-1} in the power basis.
  std::vector<std::uint32_t> coeffs() const;

  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElem inverse() const;
  FieldElem pow(std::uint64_t n) const;
  /// Negative exponents go through the inverse.
  FieldElem pow_signed(std::int64_t n) const;
  FieldElem square() const { return *this * *this; }

  friend FieldElem operator+(FieldElem x, FieldElem y);
  friend FieldElem operator-(FieldElem x, FieldElem y);
  friend FieldElem operator*(FieldElem x, FieldElem y);
  friend FieldElem operator/(FieldElem x, FieldElem y);
  FieldElem operator-() const;
  FieldElem& operator+=(FieldElem o) { return *this = *this + o; }
  FieldElem& operator-=(FieldElem o) { return *this = *this - o; }
  FieldElem& operator*=(FieldElem o) { return *this = *this * o; }

  friend bool operator==(FieldElem x, FieldElem y);
  friend std::strong_ordering operator<=>(FieldElem x, FieldElem y);

 private:
  const FieldCtx* ctx_ = nullptr;
  std::uint32_t code_ = 0;
};

/// Element of F_{q^2} = F_q[T]/(T^2 + m1 T + m0), stored as c0 + c1 T.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(const QuadExt* ext, std::uint32_t c0, std::uint32_t c1)
      : ext_(ext), c0_(c0), c1_(c1) {}

  const QuadExt& ext() const { return *ext_; }
  FieldElem c0() const;
  FieldElem c1() const;
  /// c0 + c1 * q
  std::uint64_t code() const;

  bool is_zero() const { return c0_ == 0 && c1_ == 0; }
  bool is_one() const { return c0_ == 1 && c1_ == 0; }
  bool in_base() const { return c1_ == 0; }
  /// Only meaningful when in_base().
  FieldElem base_value() const { return c0(); }

  QuadElem inverse() const;
  QuadElem pow(std::uint64_t n) const;
  /// x -> x^q
  QuadElem frobenius() const;
  /// x + x^q, an element of F_q.
  FieldElem trace() const;
  /// x * x^q, an element of F_q.
  FieldElem norm() const;

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  QuadElem operator-() const;

  friend bool operator==(const QuadElem& x, const QuadElem& y);

 private:
  const QuadExt* ext_ = nullptr;
  std::uint32_t c0_ = 0;
  std::uint32_t c1_ = 0;
};

/// Roots of lambda^2 - t lambda + 1.
struct CharRoots {
  FieldElem t;
  QuadElem nu1;
  QuadElem nu2;
  FieldElem omega_sq;  // t^2 - 4
  bool split = false;  // roots lie in F_q
};

class FieldCtx {
 public:
  static constexpr std::uint64_t kDefaultMaxQ = std::uint64_t{1} << 16;

  FieldCtx(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus);
  ~FieldCtx();
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  bool even() const { return p_ == 2; }
  /// Non-leading coefficients c_0..c_{e-1} of the monic modulus.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return {this, 0}; }
  FieldElem one() const { return {this, 1}; }
  FieldElem elem(std::uint32_t code) const;
  FieldElem from_int(std::int64_t n) const;
  FieldElem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<FieldElem> elements() const;

  /// First element in encoding order of multiplicative order q-1.
  FieldElem primitive_element() const { return {this, gen_}; }
  /// Discrete log to the base primitive_element(); x must be nonzero.
  std::uint32_t log(FieldElem x) const;
  std::uint64_t element_order(FieldElem x) const;

  bool is_square(FieldElem x) const;
  std::optional<FieldElem> sqrt(FieldElem x) const;
  /// First non-square in encoding order (odd q only).
  FieldElem nonsquare() const;
  /// Roots of X^2 - B X + C in F_q, ordered by code.
  std::optional<std::pair<FieldElem, FieldElem>> solve_quadratic(FieldElem B, FieldElem C) const;
  /// Absolute trace F_q -> F_p.
  std::uint32_t absolute_trace(FieldElem x) const;

  CharRoots char_roots(FieldElem t) const;

  /// Lazily built F_{q^2}.
  const QuadExt& quad_ext() const;

  // Raw code arithmetic (no context checks).
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const;
  /// primitive_element()^k as a code.
  std::uint32_t exp_at(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

 private:
  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t gen_ = 1;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> sqrt_;     // kNone when not a square
  std::vector<std::uint32_t> as_root_;  // even q: mu with mu^2+mu = c
  std::uint32_t nonsquare_ = 0;
  mutable std::once_flag ext_once_;
  mutable std::unique_ptr<QuadExt> ext_;
};

class QuadExt {
 public:
  explicit QuadExt(const FieldCtx& base);

  const FieldCtx& base() const { return base_; }
  std::uint64_t order() const { return std::uint64_t{base_.q()} * base_.q(); }
  /// T^2 + m1 T + m0
  FieldElem m0() const { return base_.elem(m0_); }
  FieldElem m1() const { return base_.elem(m1_); }
  std::uint32_t m0_code() const { return m0_; }
  std::uint32_t m1_code() const { return m1_; }

  QuadElem elem(FieldElem c0, FieldElem c1) const;
  QuadElem from_code(std::uint64_t code) const;
  QuadElem embed(FieldElem x) const;
  QuadElem theta() const { return {this, 0, 1}; }
  QuadElem zero() const { return {this, 0, 0}; }
  QuadElem one() const { return {this, 1, 0}; }

  std::uint64_t element_order(const QuadElem& x) const;
  /// First element in encoding order with order q^2 - 1.
  QuadElem primitive_element() const;
  /// First element in encoding order with order q + 1 (norm one, non-split generator).
  QuadElem norm_one_generator() const;
  /// Both roots of X^2 - B X + C in F_{q^2}.
  std::pair<QuadElem, QuadElem> roots(FieldElem B, FieldElem C) const;

 private:
  friend class QuadElem;
  const FieldCtx& base_;
  std::uint32_t m0_ = 0;
  std::uint32_t m1_ = 0;
};

std::shared_ptr<const FieldCtx> make_field(std::uint64_t p, unsigned e,
                                           std::uint64_t max_q = FieldCtx::kDefaultMaxQ);

/// Field of order q (a prime power), same construction as make_field.
std::shared_ptr<const FieldCtx> make_field_q(std::uint64_t q,
                                             std::uint64_t max_q = FieldCtx::kDefaultMaxQ);

inline std::uint64_t element_order(FieldElem x) { return x.ctx().element_order(x); }
inline FieldElem primitive_element(const FieldCtx& ctx) { return ctx.primitive_element(); }
inline CharRoots char_roots(FieldElem t) { return t.ctx().char_roots(t); }

}  // namespace wordmap
