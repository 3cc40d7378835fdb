#pragma once

// SL(2,q) and PSL(2,q): matrices, conjugacy classes and enumeration.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "wordmap/field.hpp"

namespace wordmap {

/// 2x2 matrix of determinant one, rows (a b) and (c d).
struct Mat2 {
  FieldElem a, b, c, d;

  Mat2() = default;
  /// Checked constructor: throws NotInGroup unless ad - bc = 1.
  static Mat2 make(FieldElem a, FieldElem b, FieldElem c, FieldElem d);
  static Mat2 make(const FieldCtx& F, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static Mat2 identity(const FieldCtx& F);
  static Mat2 minus_identity(const FieldCtx& F);
  /// Entries are trusted to have determinant one.
  static Mat2 unchecked(FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
    Mat2 m;
    m.a = a;
    m.b = b;
    m.c = c;
    m.d = d;
    return m;
  }

  const FieldCtx& ctx() const { return a.ctx(); }
  FieldElem trace() const { return a + d; }
  FieldElem det() const { return a * d - b * c; }
  Mat2 inverse() const { return unchecked(d, -b, -c, a); }
  Mat2 operator-() const { return unchecked(-a, -b, -c, -d); }
  bool is_identity() const { return a.is_one() && d.is_one() && b.is_zero() && c.is_zero(); }
  bool is_minus_identity() const;
  bool is_central() const { return b.is_zero() && c.is_zero() && a == d; }
  /// a + b q + c q^2 + d q^3
  std::uint64_t code() const;
  std::string str() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend std::strong_ordering operator<=>(const Mat2& x, const Mat2& y);
};

Mat2 mat_pow(const Mat2& x, std::uint64_t n);
/// Negative exponents use the inverse.
Mat2 mat_pow_signed(const Mat2& x, std::int64_t n);

struct GroupParams {
  std::uint64_t q, p, e, d;
  std::uint64_t order_sl, order_psl;
  std::uint64_t exp_sl, exp_psl;
};
GroupParams group_params(const FieldCtx& F);

enum class Kind : std::uint8_t { CentralPlus, CentralMinus, Unipotent, Split, NonSplit };
const char* kind_name(Kind k);

/// Canonical conjugacy class key. Elements are SL(2,q)-conjugate iff keys agree.
struct ClassKey {
  Kind kind = Kind::CentralPlus;
  std::uint32_t trace = 0;   // code of the trace
  std::uint8_t unip_bit = 0; // odd q unipotents: 0 if the off-diagonal entry is a square

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
  std::string str() const;
};

struct ElementClass {
  Kind kind;
  FieldElem trace;
  std::uint8_t unip_bit;
  std::uint64_t class_size;
  ClassKey key() const { return {kind, trace.code(), unip_bit}; }
};

ElementClass classify(const Mat2& x);
ClassKey class_key(const Mat2& x);
std::uint64_t class_size(const FieldCtx& F, Kind kind);
std::uint64_t element_order_sl(const Mat2& x);

struct ClassInfo {
  Mat2 rep;
  ElementClass cls;
};
/// All conjugacy classes of SL(2,q), sorted by key.
std::vector<ClassInfo> enumerate_classes(const FieldCtx& F);
/// Canonical representative of the class with the given key.
Mat2 class_rep(const FieldCtx& F, const ClassKey& key);

/// Smaller of x and -x in entry-code order.
Mat2 psl_rep(const Mat2& x);

/// Indexed enumeration of SL(2,q): elements with a != 0 first (a, b, c free),
/// then a = 0 (b != 0 and d free).
std::uint64_t group_order(const FieldCtx& F);
Mat2 element_at(const FieldCtx& F, std::uint64_t index);
std::uint64_t index_of(const Mat2& x);

template <class Fn>
void for_each_element(const FieldCtx& F, Fn&& fn) {
  const std::uint32_t q = F.q();
  for (std::uint32_t a = 1; a < q; ++a) {
    const FieldElem A = F.elem(a), Ainv = A.inverse();
    for (std::uint32_t b = 0; b < q; ++b) {
      const FieldElem B = F.elem(b);
      for (std::uint32_t c = 0; c < q; ++c) {
        const FieldElem C = F.elem(c);
        fn(Mat2::unchecked(A, B, C, (F.one() + B * C) * Ainv));
      }
    }
  }
  for (std::uint32_t b = 1; b < q; ++b) {
    const FieldElem B = F.elem(b), C = -B.inverse();
    for (std::uint32_t d = 0; d < q; ++d) fn(Mat2::unchecked(F.zero(), B, C, F.elem(d)));
  }
}

}  // namespace wordmap
