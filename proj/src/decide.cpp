#include <cmath>

#include "wordmap/analysis.hpp"
#include "wordmap/arith.hpp"

namespace wordmap {

namespace {

bool divides(std::uint64_t m, std::int64_t a) { return arith::mod(a, m) == 0; }

bool coprime(std::int64_t a, std::uint64_t m) { return arith::gcd(arith::mod(a, m), m) == 1; }

// x^{a_1}: a fixed element of order 2^{k+1} whose a-th power is -id.
Mat2 minus_id_root(const FieldCtx& F, std::int64_t a) {
  const unsigned k = arith::v2(arith::abs_u(a));
  if (k == 0) return Mat2::minus_identity(F);
  const FieldElem t = traces_of_order(std::uint64_t{1} << (k + 1), F).front();
  return Mat2::unchecked(t, F.one(), -F.one(), F.zero());
}

}  // namespace

const char* target_name(Target t) {
  switch (t) {
    case Target::SLEven: return "sl_even";
    case Target::SLOddMinusId: return "sl_odd";
    case Target::PSL: return "psl";
    case Target::SLFull: return "sl_full";
  }
  return "?";
}

Target parse_target(const std::string& s) {
  if (s == "sl_even") return Target::SLEven;
  if (s == "sl_odd") return Target::SLOddMinusId;
  if (s == "psl") return Target::PSL;
  if (s == "sl_full") return Target::SLFull;
  throw InvalidTarget("unknown target '" + s + "'");
}

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::DegenerateA: return "degenerate_a";
    case Reason::DegenerateB: return "degenerate_b";
    case Reason::ObstructionI: return "obstruction_i";
    case Reason::ObstructionII: return "obstruction_ii";
    case Reason::ObstructionIII: return "obstruction_iii";
    case Reason::ObstructionIV: return "obstruction_iv";
    case Reason::MinusIdMissing: return "minus_id_missing";
  }
  return "?";
}

std::pair<std::uint64_t, unsigned> q_params(std::uint64_t q) {
  auto pp = arith::prime_power(q);
  if (!pp) throw NotPrimePower(std::to_string(q) + " is not a prime power");
  return *pp;
}

std::uint64_t exp_sl(std::uint64_t q) {
  const auto [p, e] = q_params(q);
  return p * (q * q - 1) / (p == 2 ? 1 : 2);
}

std::uint64_t exp_psl(std::uint64_t q) {
  const auto [p, e] = q_params(q);
  return p * (q * q - 1) / (p == 2 ? 1 : 4);
}

std::uint64_t degeneracy_modulus(std::uint64_t q) { return exp_psl(q); }

unsigned minus_id_K(std::uint64_t q) {
  if (q % 2 == 0) throw EvenQ("K is defined for odd q only");
  return arith::v2((q * q - 1) / 2);
}

Target effective_target(std::uint64_t q, Target t) {
  const auto [p, e] = q_params(q);
  if (p == 2) return Target::SLEven;
  if (t == Target::SLEven) throw InvalidTarget("sl_even requires q even, got q=" + std::to_string(q));
  return t;
}

WordAB normalize(std::int64_t a, std::int64_t b, std::uint64_t q, Target target) {
  const Target t = effective_target(q, target);
  WordAB w;
  w.a = a;
  w.b = b;
  w.exp = t == Target::PSL ? exp_psl(q) : exp_sl(q);
  auto fold = [&](std::int64_t x) {
    std::uint64_t r = arith::mod(x, w.exp);
    return r > w.exp / 2 ? w.exp - r : r;
  };
  w.a_norm = fold(a);
  w.b_norm = fold(b);
  return w;
}

Degeneracy is_degenerate(std::int64_t a, std::int64_t b, std::uint64_t q) {
  const std::uint64_t M = degeneracy_modulus(q);
  Degeneracy d;
  d.a_side = divides(M, a) && !coprime(b, M);
  d.b_side = divides(M, b) && !coprime(a, M);
  return d;
}

std::set<Reason> detect_obstructions(std::int64_t a, std::int64_t b, std::uint64_t q) {
  const auto [p, e] = q_params(q);
  const std::uint64_t n = q * q - 1;
  auto both = [&](std::uint64_t m) { return divides(m, a) && divides(m, b); };
  std::set<Reason> r;
  if (p == 2 && e % 2 == 1 && both(2 * n / 3)) r.insert(Reason::ObstructionI);
  if (q % 4 == 3 && both(p * n / 8)) r.insert(Reason::ObstructionII);
  if (q % 12 == 11 && both(p * n / 6)) r.insert(Reason::ObstructionIII);
  if (q % 12 == 5 && both(p * n / 12)) r.insert(Reason::ObstructionIV);
  return r;
}

Verdict decide(std::int64_t a, std::int64_t b, std::uint64_t q, Target target) {
  Verdict v;
  v.target = effective_target(q, target);
  const std::uint64_t expG = v.target == Target::PSL ? exp_psl(q) : exp_sl(q);
  if (v.target == Target::SLFull) v.K = minus_id_K(q);

  if (arith::gcd(arith::abs_u(a), arith::abs_u(b)) == 1) {
    v.shortcut = "gcd(a,b)=1";
    return v;
  }
  if (coprime(a, expG)) {
    v.shortcut = "gcd(a,exp)=1";
    return v;
  }
  if (coprime(b, expG)) {
    v.shortcut = "gcd(b,exp)=1";
    return v;
  }

  const Degeneracy d = is_degenerate(a, b, q);
  if (d.a_side) v.reasons.insert(Reason::DegenerateA);
  if (d.b_side) v.reasons.insert(Reason::DegenerateB);
  for (Reason r : detect_obstructions(a, b, q)) {
    const bool relevant = v.target == Target::SLEven   ? r == Reason::ObstructionI
                          : v.target == Target::PSL    ? r == Reason::ObstructionII
                                                       : r != Reason::ObstructionI;
    if (relevant) v.reasons.insert(r);
  }
  if (v.target == Target::SLFull) {
    const std::uint64_t twoK = std::uint64_t{1} << *v.K;
    if (divides(twoK, a) && divides(twoK, b)) v.reasons.insert(Reason::MinusIdMissing);
  }
  v.surjective = v.reasons.empty();
  return v;
}

MinusIdResult minus_id_in_image(std::int64_t a, std::int64_t b, const FieldCtx& F) {
  if (F.even()) throw EvenQ("-id = id in characteristic 2");
  MinusIdResult r;
  r.K = minus_id_K(F.q());
  const std::uint64_t twoK = std::uint64_t{1} << r.K;
  const bool a_blocked = divides(twoK, a), b_blocked = divides(twoK, b);
  r.in_image = !(a_blocked && b_blocked);
  if (!a_blocked) {
    r.witness = std::make_pair(minus_id_root(F, a), Mat2::identity(F));
  } else if (!b_blocked) {
    r.witness = std::make_pair(Mat2::identity(F), minus_id_root(F, b));
  }
  return r;
}

bool Bounds::q_exceeds_Q(std::uint64_t q) const {
  return static_cast<unsigned __int128>(q) * q > static_cast<unsigned __int128>(3) * max();
}

bool Bounds::order_exceeds_N(std::uint64_t n) const {
  using u128 = unsigned __int128;
  const u128 m = max();
  const u128 rhs = 27 * m * m * m;
  // 4 n^2 overflows only far beyond anything enumerable; saturate
  if (n > (std::uint64_t{1} << 62)) return true;
  return 4 * u128(n) * n > rhs;
}

double Bounds::Q() const { return std::sqrt(3.0 * double(max())); }

double Bounds::N() const { return 1.5 * std::sqrt(3.0) * std::pow(double(max()), 1.5); }

Bounds bounds(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw NonPositiveWord("bounds need a, b >= 1");
  return {std::uint64_t(a), std::uint64_t(b)};
}

}  // namespace wordmap
