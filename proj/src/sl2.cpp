#include "wordmap/sl2.hpp"

#include <algorithm>
#include <sstream>

#include "wordmap/arith.hpp"

namespace wordmap {

Mat2 Mat2::make(FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
  Mat2 m = unchecked(a, b, c, d);
  if (!m.det().is_one()) throw NotInGroup("determinant is not 1: " + m.str());
  return m;
}

Mat2 Mat2::make(const FieldCtx& F, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return make(F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d));
}

Mat2 Mat2::identity(const FieldCtx& F) { return unchecked(F.one(), F.zero(), F.zero(), F.one()); }

Mat2 Mat2::minus_identity(const FieldCtx& F) { return -identity(F); }

bool Mat2::is_minus_identity() const {
  return b.is_zero() && c.is_zero() && a == d && (a + a.ctx().one()).is_zero();
}

std::uint64_t Mat2::code() const {
  const std::uint64_t q = a.ctx().q();
  return a.code() + q * (b.code() + q * (c.code() + q * std::uint64_t{d.code()}));
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a.code() << "," << b.code() << "],[" << c.code() << "," << d.code() << "]]";
  return os.str();
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return Mat2::unchecked(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                         x.c * y.b + x.d * y.d);
}

std::strong_ordering operator<=>(const Mat2& x, const Mat2& y) {
  if (auto r = x.a <=> y.a; r != 0) return r;
  if (auto r = x.b <=> y.b; r != 0) return r;
  if (auto r = x.c <=> y.c; r != 0) return r;
  return x.d <=> y.d;
}

Mat2 mat_pow(const Mat2& x, std::uint64_t n) {
  Mat2 r = Mat2::identity(x.ctx()), base = x;
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

Mat2 mat_pow_signed(const Mat2& x, std::int64_t n) {
  if (n >= 0) return mat_pow(x, static_cast<std::uint64_t>(n));
  return mat_pow(x.inverse(), arith::abs_u(n));
}

GroupParams group_params(const FieldCtx& F) {
  GroupParams g{};
  g.q = F.q();
  g.p = F.p();
  g.e = F.e();
  g.d = F.even() ? 1 : 2;
  g.order_sl = g.q * (g.q - 1) * (g.q + 1);
  g.order_psl = g.order_sl / g.d;
  g.exp_sl = g.p * (g.q * g.q - 1) / g.d;
  g.exp_psl = g.p * (g.q * g.q - 1) / (g.d * g.d);
  return g;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::CentralPlus: return "central_plus";
    case Kind::CentralMinus: return "central_minus";
    case Kind::Unipotent: return "unipotent";
    case Kind::Split: return "split";
    case Kind::NonSplit: return "nonsplit";
  }
  return "?";
}

std::string ClassKey::str() const {
  std::ostringstream os;
  os << kind_name(kind) << ":" << trace;
  if (kind == Kind::Unipotent) os << ":" << int(unip_bit);
  return os.str();
}

std::uint64_t class_size(const FieldCtx& F, Kind kind) {
  const std::uint64_t q = F.q();
  switch (kind) {
    case Kind::CentralPlus:
    case Kind::CentralMinus: return 1;
    case Kind::Unipotent: return (q * q - 1) / (F.even() ? 1 : 2);
    case Kind::Split: return q * (q + 1);
    case Kind::NonSplit: return q * (q - 1);
  }
  return 0;
}

ElementClass classify(const Mat2& x) {
  const FieldCtx& F = x.ctx();
  const FieldElem t = x.trace();
  ElementClass r{Kind::CentralPlus, t, 0, 1};
  if (x.is_central()) {
    r.kind = x.a.is_one() ? Kind::CentralPlus : Kind::CentralMinus;
    return r;
  }
  const FieldElem omega = t * t - F.from_int(4);
  if (omega.is_zero()) {
    r.kind = Kind::Unipotent;
    if (!F.even()) {
      // x - eps*I is nilpotent; its nonzero off-diagonal entry fixes the class
      const FieldElem beta = x.b.is_zero() ? -x.c : x.b;
      r.unip_bit = F.is_square(beta) ? 0 : 1;
    }
  } else if (F.even()) {
    r.kind = F.solve_quadratic(t, F.one()) ? Kind::Split : Kind::NonSplit;
  } else {
    r.kind = F.is_square(omega) ? Kind::Split : Kind::NonSplit;
  }
  r.class_size = class_size(F, r.kind);
  return r;
}

ClassKey class_key(const Mat2& x) { return classify(x).key(); }

std::uint64_t element_order_sl(const Mat2& x) {
  const FieldCtx& F = x.ctx();
  const ElementClass c = classify(x);
  switch (c.kind) {
    case Kind::CentralPlus: return 1;
    case Kind::CentralMinus: return 2;
    case Kind::Unipotent: return c.trace == F.from_int(2) ? F.p() : 2 * F.p();
    case Kind::Split: return element_order(F.solve_quadratic(c.trace, F.one())->first);
    case Kind::NonSplit: {
      const QuadExt& E = F.quad_ext();
      return E.element_order(E.roots(c.trace, F.one()).first);
    }
  }
  return 0;
}

Mat2 class_rep(const FieldCtx& F, const ClassKey& key) {
  const FieldElem t = F.elem(key.trace);
  switch (key.kind) {
    case Kind::CentralPlus: return Mat2::identity(F);
    case Kind::CentralMinus: return Mat2::minus_identity(F);
    case Kind::Unipotent: {
      const FieldElem eps = F.even() ? F.one() : t / F.from_int(2);
      const FieldElem beta = key.unip_bit ? F.nonsquare() : F.one();
      return Mat2::unchecked(eps, beta, F.zero(), eps);
    }
    case Kind::Split: {
      const FieldElem alpha = F.solve_quadratic(t, F.one())->first;
      return Mat2::unchecked(alpha, F.zero(), F.zero(), alpha.inverse());
    }
    case Kind::NonSplit: return Mat2::unchecked(t, F.one(), -F.one(), F.zero());
  }
  return Mat2::identity(F);
}

std::vector<ClassInfo> enumerate_classes(const FieldCtx& F) {
  std::vector<ClassKey> keys;
  keys.push_back({Kind::CentralPlus, F.from_int(2).code(), 0});
  if (!F.even()) keys.push_back({Kind::CentralMinus, F.from_int(-2).code(), 0});
  const int d = F.even() ? 1 : 2;
  for (auto t : F.elements()) {
    const FieldElem omega = t * t - F.from_int(4);
    if (omega.is_zero()) {
      for (int bit = 0; bit < d; ++bit) keys.push_back({Kind::Unipotent, t.code(), std::uint8_t(bit)});
      continue;
    }
    const bool split = F.even() ? F.solve_quadratic(t, F.one()).has_value() : F.is_square(omega);
    keys.push_back({split ? Kind::Split : Kind::NonSplit, t.code(), 0});
  }
  std::sort(keys.begin(), keys.end());
  std::vector<ClassInfo> out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    Mat2 rep = class_rep(F, k);
    out.push_back({rep, classify(rep)});
  }
  return out;
}

Mat2 psl_rep(const Mat2& x) {
  Mat2 m = -x;
  return m < x ? m : x;
}

std::uint64_t group_order(const FieldCtx& F) {
  const std::uint64_t q = F.q();
  return q * (q - 1) * (q + 1);
}

Mat2 element_at(const FieldCtx& F, std::uint64_t index) {
  const std::uint64_t q = F.q();
  const std::uint64_t first = (q - 1) * q * q;
  if (index < first) {
    const FieldElem a = F.elem(static_cast<std::uint32_t>(index / (q * q) + 1));
    const FieldElem b = F.elem(static_cast<std::uint32_t>(index / q % q));
    const FieldElem c = F.elem(static_cast<std::uint32_t>(index % q));
    return Mat2::unchecked(a, b, c, (F.one() + b * c) / a);
  }
  index -= first;
  if (index >= (q - 1) * q) throw Error("bad_index", "group index out of range");
  const FieldElem b = F.elem(static_cast<std::uint32_t>(index / q + 1));
  const FieldElem d = F.elem(static_cast<std::uint32_t>(index % q));
  return Mat2::unchecked(F.zero(), b, -b.inverse(), d);
}

std::uint64_t index_of(const Mat2& x) {
  const std::uint64_t q = x.ctx().q();
  if (!x.a.is_zero()) return (x.a.code() - 1) * q * q + std::uint64_t{x.b.code()} * q + x.c.code();
  return (q - 1) * q * q + (x.b.code() - 1) * q + x.d.code();
}

}  // namespace wordmap
