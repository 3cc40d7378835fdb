#include "wordmap/field.hpp"

#include <limits>
#include <string>

#include "wordmap/arith.hpp"

namespace wordmap {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

using Poly = std::vector<std::uint32_t>;  // low -> high coefficients over F_p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly decode(std::uint64_t code, std::uint32_t p, unsigned len) {
  Poly f(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    f[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return f;
}

std::uint32_t encode(const Poly& f, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::size_t i = f.size(); i-- > 0;) code = code * p + f[i];
  return static_cast<std::uint32_t>(code);
}

// Remainder of f modulo the monic polynomial g (both trimmed, g nonconstant).
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      std::uint64_t sub = lead * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

// Multiplication in F_p[X]/(m) with m given as its full monic coefficient list.
struct PolyRing {
  std::uint32_t p;
  Poly m;  // monic, degree e

  Poly mulmod(const Poly& a, const Poly& b) const {
    if (m.size() == 2 && m[0] == 0) {
      // e = 1 with modulus X: constants only.
      if (a.empty() || b.empty()) return {};
      Poly r{static_cast<std::uint32_t>(std::uint64_t{a[0]} * b[0] % p)};
      trim(r);
      return r;
    }
    return poly_rem(poly_mul(a, b, p), m, p);
  }

  Poly powmod(Poly a, std::uint64_t n) const {
    Poly r{1};
    while (n) {
      if (n & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      n >>= 1;
    }
    return r;
  }
};

bool is_irreducible(const Poly& f, std::uint32_t p) {
  // f monic of degree e; trial division by every monic polynomial of degree <= e/2.
  const unsigned e = static_cast<unsigned>(f.size() - 1);
  for (unsigned k = 1; k <= e / 2; ++k) {
    const std::uint64_t count = arith::ipow(p, k);
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = decode(c, p, k);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(static_cast<std::uint32_t>(arith::ipow(p, e))), modulus_(std::move(modulus)) {
  Poly full = modulus_;
  full.push_back(1);
  PolyRing ring{p_, full};

  // Primitive element: first code of order q-1.
  if (q_ > 2) {
    const auto primes = arith::factorize(q_ - 1);
    for (std::uint32_t c = 1; c < q_; ++c) {
      Poly g = decode(c, p_, e_);
      trim(g);
      bool primitive = true;
      for (auto [r, k] : primes) {
        (void)k;
        if (ring.powmod(g, (q_ - 1) / r) == Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen_ = c;
        break;
      }
    }
  }

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  Poly g = decode(gen_, p_, e_);
  trim(g);
  Poly cur{1};
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    const std::uint32_t code = encode(cur, p_);
    exp_[i] = code;
    log_[code] = i;
    cur = ring.mulmod(cur, g);
  }

  sqrt_.assign(q_, kNone);
  for (std::uint32_t x = 0; x < q_; ++x) {
    const std::uint32_t s = mul(x, x);
    if (sqrt_[s] == kNone) sqrt_[s] = x;
  }
  if (p_ == 2) {
    as_root_.assign(q_, kNone);
    for (std::uint32_t mu = 0; mu < q_; ++mu) {
      const std::uint32_t c = mul(mu, mu) ^ mu;
      if (as_root_[c] == kNone) as_root_[c] = mu;
    }
  } else {
    for (std::uint32_t x = 1; x < q_; ++x) {
      if (sqrt_[x] == kNone) {
        nonsquare_ = x;
        break;
      }
    }
  }
}

FieldCtx::~FieldCtx() = default;

FieldElem FieldCtx::elem(std::uint32_t code) const {
  if (code >= q_) throw Error("bad_element", "element code " + std::to_string(code) + " out of range");
  return {this, code};
}

FieldElem FieldCtx::from_int(std::int64_t n) const {
  return {this, static_cast<std::uint32_t>(arith::mod(n, p_))};
}

FieldElem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > e_) throw Error("bad_element", "too many coefficients");
  Poly f(c.begin(), c.end());
  for (auto& v : f) v %= p_;
  return {this, encode(f, p_)};
}

std::vector<FieldElem> FieldCtx::elements() const {
  std::vector<FieldElem> out;
  out.reserve(q_);
  for (std::uint32_t c = 0; c < q_; ++c) out.emplace_back(this, c);
  return out;
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t r = 0, mult = 1;
  while (a || b) {
    std::uint32_t d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    r += d * mult;
    mult *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t r = 0, mult = 1;
  while (a) {
    std::uint32_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * mult;
    mult *= p_;
    a /= p_;
  }
  return r;
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
  if (a == 0) throw ZeroElement("inverse of zero");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t FieldCtx::log(FieldElem x) const {
  if (x.is_zero()) throw ZeroElement("log of zero");
  return log_[x.code()];
}

std::uint64_t FieldCtx::element_order(FieldElem x) const {
  if (x.is_zero()) throw ZeroElement("order of zero");
  const std::uint64_t n = q_ - 1;
  return n / arith::gcd(log_[x.code()], n);
}

bool FieldCtx::is_square(FieldElem x) const { return sqrt_[x.code()] != kNone; }

std::optional<FieldElem> FieldCtx::sqrt(FieldElem x) const {
  std::uint32_t r = sqrt_[x.code()];
  if (r == kNone) return std::nullopt;
  return FieldElem{this, r};
}

FieldElem FieldCtx::nonsquare() const {
  if (p_ == 2) throw EvenQ("every element of a binary field is a square");
  return {this, nonsquare_};
}

std::optional<std::pair<FieldElem, FieldElem>> FieldCtx::solve_quadratic(FieldElem B, FieldElem C) const {
  FieldElem r1, r2;
  if (p_ != 2) {
    FieldElem disc = B * B - from_int(4) * C;
    auto s = sqrt(disc);
    if (!s) return std::nullopt;
    FieldElem half = from_int(2).inverse();
    r1 = (B + *s) * half;
    r2 = (B - *s) * half;
  } else if (B.is_zero()) {
    r1 = r2 = *sqrt(C);
  } else {
    FieldElem c = C / (B * B);
    std::uint32_t mu = as_root_[c.code()];
    if (mu == kNone) return std::nullopt;
    r1 = B * FieldElem{this, mu};
    r2 = B - r1;
  }
  if (r2 < r1) std::swap(r1, r2);
  return std::make_pair(r1, r2);
}

std::uint32_t FieldCtx::absolute_trace(FieldElem x) const {
  FieldElem acc = x, cur = x;
  for (unsigned i = 1; i < e_; ++i) {
    cur = cur.pow(p_);
    acc += cur;
  }
  return acc.code();
}

CharRoots FieldCtx::char_roots(FieldElem t) const {
  CharRoots r;
  r.t = t;
  r.omega_sq = t * t - from_int(4);
  const QuadExt& ext = quad_ext();
  if (auto roots = solve_quadratic(t, one())) {
    r.split = true;
    r.nu1 = ext.embed(roots->first);
    r.nu2 = ext.embed(roots->second);
  } else {
    r.split = false;
    auto [a, b] = ext.roots(t, one());
    r.nu1 = a;
    r.nu2 = b;
  }
  return r;
}

const QuadExt& FieldCtx::quad_ext() const {
  std::call_once(ext_once_, [this] { ext_ = std::make_unique<QuadExt>(*this); });
  return *ext_;
}

// ---------------------------------------------------------------------------
// FieldElem

namespace {
inline void same_ctx(FieldElem x, FieldElem y) {
  if (x.ctx_ptr() != y.ctx_ptr()) throw ContextMismatch();
}
}  // namespace

std::vector<std::uint32_t> FieldElem::coeffs() const { return decode(code_, ctx_->p(), ctx_->e()); }

FieldElem operator+(FieldElem x, FieldElem y) {
  same_ctx(x, y);
  return {x.ctx_, x.ctx_->add(x.code_, y.code_)};
}
FieldElem operator-(FieldElem x, FieldElem y) {
  same_ctx(x, y);
  return {x.ctx_, x.ctx_->sub(x.code_, y.code_)};
}
FieldElem operator*(FieldElem x, FieldElem y) {
  same_ctx(x, y);
  return {x.ctx_, x.ctx_->mul(x.code_, y.code_)};
}
FieldElem operator/(FieldElem x, FieldElem y) {
  same_ctx(x, y);
  return {x.ctx_, x.ctx_->mul(x.code_, x.ctx_->inv(y.code_))};
}
FieldElem FieldElem::operator-() const { return {ctx_, ctx_->neg(code_)}; }

bool operator==(FieldElem x, FieldElem y) {
  if (x.ctx_ && y.ctx_) same_ctx(x, y);
  return x.ctx_ == y.ctx_ && x.code_ == y.code_;
}
std::strong_ordering operator<=>(FieldElem x, FieldElem y) {
  if (x.ctx_ && y.ctx_) same_ctx(x, y);
  return x.code_ <=> y.code_;
}

FieldElem FieldElem::inverse() const { return {ctx_, ctx_->inv(code_)}; }

FieldElem FieldElem::pow(std::uint64_t n) const {
  if (code_ == 0) return n == 0 ? ctx_->one() : *this;
  const std::uint64_t order = ctx_->q() - 1;
  const std::uint64_t l = ctx_->log(*this);
  const auto k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(l) * (n % order) % order);
  return {ctx_, ctx_->exp_at(k)};
}

FieldElem FieldElem::pow_signed(std::int64_t n) const {
  if (n >= 0) return pow(static_cast<std::uint64_t>(n));
  return inverse().pow(arith::abs_u(n));
}

// ---------------------------------------------------------------------------
// QuadElem

FieldElem QuadElem::c0() const { return ext_->base().elem(c0_); }
FieldElem QuadElem::c1() const { return ext_->base().elem(c1_); }
std::uint64_t QuadElem::code() const { return c0_ + std::uint64_t{c1_} * ext_->base().q(); }

namespace {
inline void same_ext(const QuadElem& x, const QuadElem& y) {
  if (&x.ext() != &y.ext()) throw ContextMismatch();
}
}  // namespace

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  same_ext(x, y);
  const FieldCtx& F = x.ext_->base();
  return {x.ext_, F.add(x.c0_, y.c0_), F.add(x.c1_, y.c1_)};
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  same_ext(x, y);
  const FieldCtx& F = x.ext_->base();
  return {x.ext_, F.sub(x.c0_, y.c0_), F.sub(x.c1_, y.c1_)};
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  same_ext(x, y);
  const FieldCtx& F = x.ext_->base();
  const std::uint32_t hi = F.mul(x.c1_, y.c1_);
  // T^2 = -m1 T - m0
  std::uint32_t c0 = F.sub(F.mul(x.c0_, y.c0_), F.mul(x.ext_->m0_code(), hi));
  std::uint32_t c1 = F.sub(F.add(F.mul(x.c0_, y.c1_), F.mul(x.c1_, y.c0_)), F.mul(x.ext_->m1_code(), hi));
  return {x.ext_, c0, c1};
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }

QuadElem QuadElem::operator-() const {
  const FieldCtx& F = ext_->base();
  return {ext_, F.neg(c0_), F.neg(c1_)};
}

bool operator==(const QuadElem& x, const QuadElem& y) {
  return x.ext_ == y.ext_ && x.c0_ == y.c0_ && x.c1_ == y.c1_;
}

QuadElem QuadElem::frobenius() const {
  const FieldCtx& F = ext_->base();
  return {ext_, F.sub(c0_, F.mul(c1_, ext_->m1_code())), F.neg(c1_)};
}

FieldElem QuadElem::trace() const {
  QuadElem s = *this + frobenius();
  return s.c0();
}

FieldElem QuadElem::norm() const {
  QuadElem n = *this * frobenius();
  return n.c0();
}

QuadElem QuadElem::inverse() const {
  if (is_zero()) throw ZeroElement("inverse of zero");
  FieldElem n_inv = norm().inverse();
  return frobenius() * ext_->embed(n_inv);
}

QuadElem QuadElem::pow(std::uint64_t n) const {
  QuadElem r = ext_->one(), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// QuadExt

QuadExt::QuadExt(const FieldCtx& base) : base_(base) {
  const std::uint64_t q = base_.q();
  for (std::uint64_t code = 0; code < q * q; ++code) {
    FieldElem m0 = base_.elem(static_cast<std::uint32_t>(code % q));
    FieldElem m1 = base_.elem(static_cast<std::uint32_t>(code / q));
    if (!base_.solve_quadratic(-m1, m0)) {
      m0_ = m0.code();
      m1_ = m1.code();
      return;
    }
  }
}

QuadElem QuadExt::elem(FieldElem c0, FieldElem c1) const {
  if (c0.ctx_ptr() != &base_ || c1.ctx_ptr() != &base_) throw ContextMismatch();
  return {this, c0.code(), c1.code()};
}

QuadElem QuadExt::from_code(std::uint64_t code) const {
  const std::uint64_t q = base_.q();
  if (code >= q * q) throw Error("bad_element", "extension code out of range");
  return {this, static_cast<std::uint32_t>(code % q), static_cast<std::uint32_t>(code / q)};
}

QuadElem QuadExt::embed(FieldElem x) const {
  if (x.ctx_ptr() != &base_) throw ContextMismatch();
  return {this, x.code(), 0};
}

std::uint64_t QuadExt::element_order(const QuadElem& x) const {
  if (x.is_zero()) throw ZeroElement("order of zero");
  std::uint64_t n = order() - 1;
  for (auto [r, k] : arith::factorize(n)) {
    for (unsigned i = 0; i < k; ++i) {
      if (x.pow(n / r).is_one()) {
        n /= r;
      } else {
        break;
      }
    }
  }
  return n;
}

QuadElem QuadExt::primitive_element() const {
  const std::uint64_t n = order() - 1;
  const auto primes = arith::factorize(n);
  for (std::uint64_t code = 1; code < order(); ++code) {
    QuadElem x = from_code(code);
    bool ok = true;
    for (auto [r, k] : primes) {
      (void)k;
      if (x.pow(n / r).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  throw Error("internal", "no primitive element in quadratic extension");
}

QuadElem QuadExt::norm_one_generator() const {
  const std::uint64_t n = base_.q() + 1;
  const auto primes = arith::factorize(n);
  for (std::uint64_t code = 1; code < order(); ++code) {
    QuadElem x = from_code(code);
    if (!x.norm().is_one()) continue;
    bool ok = true;
    for (auto [r, k] : primes) {
      (void)k;
      if (x.pow(n / r).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  throw Error("internal", "no norm-one generator");
}

std::pair<QuadElem, QuadElem> QuadExt::roots(FieldElem B, FieldElem C) const {
  if (auto r = base_.solve_quadratic(B, C)) return {embed(r->first), embed(r->second)};
  QuadElem r1;
  if (!base_.even()) {
    FieldElem two = base_.from_int(2);
    FieldElem half = two.inverse();
    FieldElem D = B * B - base_.from_int(4) * C;
    FieldElem m1h = m1() * half;
    FieldElem delta = m1h * m1h - m0();
    // D and delta are both non-squares, so D/delta is a square
    FieldElem s = *base_.sqrt(D / delta);
    QuadElem sqrtD = embed(s) * (theta() + embed(m1h));
    r1 = (embed(B) + sqrtD) * embed(half);
  } else {
    FieldElem v = B / m1();
    auto u = base_.solve_quadratic(B, v * v * m0() + C);
    r1 = elem(u->first, v);
  }
  QuadElem r2 = embed(B) - r1;
  if (r2.code() < r1.code()) std::swap(r1, r2);
  return {r1, r2};
}

// ---------------------------------------------------------------------------

std::shared_ptr<const FieldCtx> make_field(std::uint64_t p, unsigned e, std::uint64_t max_q) {
  if (!arith::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (e == 0) throw NotPrimePower("exponent must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > max_q / p) throw SizeLimitExceeded("field size exceeds limit " + std::to_string(max_q));
    q *= p;
  }
  if (q > max_q) throw SizeLimitExceeded("field size exceeds limit " + std::to_string(max_q));
  const auto pp = static_cast<std::uint32_t>(p);
  std::vector<std::uint32_t> modulus;
  if (e == 1) {
    modulus = {0};
  } else {
    for (std::uint64_t code = 0; code < q; ++code) {
      Poly f = decode(code, pp, e);
      f.push_back(1);
      if (is_irreducible(f, pp)) {
        modulus = decode(code, pp, e);
        break;
      }
    }
  }
  return std::make_shared<const FieldCtx>(pp, e, std::move(modulus));
}

std::shared_ptr<const FieldCtx> make_field_q(std::uint64_t q, std::uint64_t max_q) {
  auto pe = arith::prime_power(q);
  if (!pe) throw NotPrimePower(std::to_string(q) + " is not a prime power");
  return make_field(pe->first, pe->second, max_q);
}

}  // namespace wordmap
