#include "wordmap/tracepoly.hpp"

#include <algorithm>
#include <sstream>

#include "wordmap/arith.hpp"

namespace wordmap {

// ---------------------------------------------------------------------------
// TracePoly

TracePoly TracePoly::constant(long c) { return monomial(c, 0, 0, 0); }
TracePoly TracePoly::s() { return monomial(1, 1, 0, 0); }
TracePoly TracePoly::u() { return monomial(1, 0, 1, 0); }
TracePoly TracePoly::t() { return monomial(1, 0, 0, 1); }

TracePoly TracePoly::monomial(const mpz_class& c, std::uint32_t i, std::uint32_t k, std::uint32_t j) {
  TracePoly p;
  p.add_term({i, k, j}, c);
  return p;
}

void TracePoly::add_term(const Mono& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpz_class TracePoly::coeff(std::uint32_t i, std::uint32_t k, std::uint32_t j) const {
  auto it = terms_.find({i, k, j});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

unsigned TracePoly::deg_s() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0]);
  return d;
}
unsigned TracePoly::deg_u() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[1]);
  return d;
}
unsigned TracePoly::deg_t() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[2]);
  return d;
}
unsigned TracePoly::deg_st() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[2]);
  return d;
}

TracePoly TracePoly::u_coeff(std::uint32_t k) const {
  TracePoly r;
  for (const auto& [m, c] : terms_)
    if (m[1] == k) r.add_term({m[0], 0, m[2]}, c);
  return r;
}

FieldElem TracePoly::eval(FieldElem s, FieldElem u, FieldElem t) const {
  const FieldCtx& F = s.ctx();
  const std::uint32_t p = F.p();
  auto powers = [&](FieldElem x, unsigned n) {
    std::vector<FieldElem> v(n + 1, F.one());
    for (unsigned i = 1; i <= n; ++i) v[i] = v[i - 1] * x;
    return v;
  };
  const auto ps = powers(s, deg_s()), pu = powers(u, deg_u()), pt = powers(t, deg_t());
  FieldElem acc = F.zero();
  for (const auto& [m, c] : terms_) {
    const long r = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), p));
    acc += F.from_int(r) * ps[m[0]] * pu[m[1]] * pt[m[2]];
  }
  return acc;
}

TracePoly& TracePoly::operator+=(const TracePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TracePoly& TracePoly::operator-=(const TracePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

TracePoly operator*(const TracePoly& x, const TracePoly& y) {
  TracePoly r;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) r.add_term({mx[0] + my[0], mx[1] + my[1], mx[2] + my[2]}, cx * cy);
  return r;
}

TracePoly operator*(long c, const TracePoly& x) {
  TracePoly r;
  if (c == 0) return r;
  for (const auto& [m, v] : x.terms_) r.terms_.emplace(m, v * c);
  return r;
}

std::string TracePoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Mono, mpz_class>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    const auto& a = x.first;
    const auto& b = y.first;
    const unsigned da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    if (a[0] != b[0]) return a[0] > b[0];
    if (a[1] != b[1]) return a[1] > b[1];
    return a[2] > b[2];
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v) {
    const bool neg = c < 0;
    const mpz_class mag = neg ? mpz_class(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    const bool constant = m[0] == 0 && m[1] == 0 && m[2] == 0;
    if (mag != 1 || constant) factors.push_back(mag.get_str());
    // variables print in s, t, u order
    const std::pair<const char*, std::uint32_t> vars[] = {{"s", m[0]}, {"t", m[2]}, {"u", m[1]}};
    for (auto [name, e] : vars) {
      if (e == 0) continue;
      factors.push_back(e == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(e));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Chebyshev-type sequences

namespace {

TracePoly power_trace_in(const TracePoly& var, unsigned n) {
  TracePoly prev = TracePoly::constant(2), cur = var;
  if (n == 0) return prev;
  for (unsigned i = 1; i < n; ++i) {
    TracePoly next = var * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// First column of [[s,-1],[1,0]]^n, i.e. (U_n(s), U_{n-1}(s)).
std::pair<FieldElem, FieldElem> u_pair(std::uint64_t n, FieldElem s) {
  const FieldCtx& F = s.ctx();
  FieldElem r00 = F.one(), r01 = F.zero(), r10 = F.zero(), r11 = F.one();
  FieldElem b00 = s, b01 = -F.one(), b10 = F.one(), b11 = F.zero();
  while (n) {
    if (n & 1) {
      FieldElem t00 = r00 * b00 + r01 * b10, t01 = r00 * b01 + r01 * b11;
      FieldElem t10 = r10 * b00 + r11 * b10, t11 = r10 * b01 + r11 * b11;
      r00 = t00, r01 = t01, r10 = t10, r11 = t11;
    }
    n >>= 1;
    if (n) {
      FieldElem t00 = b00 * b00 + b01 * b10, t01 = b00 * b01 + b01 * b11;
      FieldElem t10 = b10 * b00 + b11 * b10, t11 = b10 * b01 + b11 * b11;
      b00 = t00, b01 = t01, b10 = t10, b11 = t11;
    }
  }
  return {r00, r10};
}

}  // namespace

TracePoly power_trace_poly(unsigned n) { return power_trace_in(TracePoly::s(), n); }

FieldElem chebyshev_u(std::int64_t n, FieldElem s) {
  if (n < -1) throw Error("bad_argument", "chebyshev index below -1");
  if (n == -1) return s.ctx().zero();
  return u_pair(static_cast<std::uint64_t>(n), s).first;
}

FieldElem power_trace(std::uint64_t n, FieldElem s) {
  if (n == 0) return s.ctx().from_int(2);
  auto [un1, un2] = u_pair(n - 1, s);
  return s * un1 - s.ctx().from_int(2) * un2;
}

// ---------------------------------------------------------------------------
// f_{a,b}, h_{a,b}

FHPair fh_pair(unsigned a, unsigned b) {
  if (a == 0 || b == 0) throw NonPositiveWord("fh_pair needs a, b >= 1");
  if (a + b > kSymbolicLimit)
    throw SymbolicSizeExceeded("a + b = " + std::to_string(a + b) + " exceeds the symbolic limit; use fh_eval");
  std::map<std::pair<unsigned, unsigned>, FHPair> memo;
  const TracePoly S = TracePoly::s(), T = TracePoly::t();
  auto rec = [&](auto&& self, unsigned i, unsigned j) -> const FHPair& {
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    FHPair r;
    r.a = i;
    r.b = j;
    if (i == 0) {
      r.h = power_trace_in(T, j);
    } else if (j == 0) {
      r.h = power_trace_in(S, i);
    } else if (i == 1 && j == 1) {
      r.f = TracePoly::constant(1);
    } else if (i >= j && i >= 2) {
      // tr(x^i y^j) = s tr(x^{i-1} y^j) - tr(x^{i-2} y^j)
      const FHPair& p1 = self(self, i - 1, j);
      const FHPair& p2 = self(self, i - 2, j);
      r.f = S * p1.f - p2.f;
      r.h = S * p1.h - p2.h;
    } else {
      const FHPair& p1 = self(self, i, j - 1);
      const FHPair& p2 = self(self, i, j - 2);
      r.f = T * p1.f - p2.f;
      r.h = T * p1.h - p2.h;
    }
    return memo.emplace(std::make_pair(i, j), std::move(r)).first->second;
  };
  return rec(rec, a, b);
}

std::pair<FieldElem, FieldElem> fh_eval(std::uint64_t a, std::uint64_t b, FieldElem s, FieldElem t) {
  if (a == 0 || b == 0) throw NonPositiveWord("fh_eval needs a, b >= 1");
  // f = U_{a-1}(s) U_{b-1}(t)
  // h = -s U_{a-1}(s) U_{b-2}(t) - t U_{a-2}(s) U_{b-1}(t) + 2 U_{a-2}(s) U_{b-2}(t)
  auto [ua1, ua2] = u_pair(a - 1, s);
  auto [ub1, ub2] = u_pair(b - 1, t);
  FieldElem f = ua1 * ub1;
  FieldElem h = -(s * ua1 * ub2) - t * ua2 * ub1 + s.ctx().from_int(2) * ua2 * ub2;
  return {f, h};
}

std::pair<FieldElem, FieldElem> fh_eval_reference(std::uint64_t a, std::uint64_t b, FieldElem s, FieldElem t) {
  if (a == 0 || b == 0) throw NonPositiveWord("fh_eval needs a, b >= 1");
  const FieldCtx& F = s.ctx();
  // Column a = 0: f = 0, h = tr(y^b).  Column a = 1: recursion in b from (1,0), (1,1).
  FieldElem tb_prev = F.from_int(2), tb = t;
  FieldElem f1_prev = F.zero(), h1_prev = s, f1 = F.one(), h1 = F.zero();
  for (std::uint64_t j = 1; j < b; ++j) {
    FieldElem tn = t * tb - tb_prev;
    tb_prev = tb, tb = tn;
    FieldElem fn = t * f1 - f1_prev, hn = t * h1 - h1_prev;
    f1_prev = f1, h1_prev = h1, f1 = fn, h1 = hn;
  }
  FieldElem f_prev = F.zero(), h_prev = tb, f = f1, h = h1;
  for (std::uint64_t i = 1; i < a; ++i) {
    FieldElem fn = s * f - f_prev, hn = s * h - h_prev;
    f_prev = f, h_prev = h, f = fn, h = hn;
  }
  return {f, h};
}

// ---------------------------------------------------------------------------
// Positive words

WordSpec WordSpec::from_exponents(std::vector<std::pair<long, long>> raw) {
  if (raw.empty()) throw NonPositiveWord("empty word");
  if (raw.size() > 1 && raw.back().second == 0) {
    // trailing x^{a_k}: move it cyclically to the front
    raw.front().first += raw.back().first;
    raw.pop_back();
  }
  if (raw.size() > 1 && raw.front().first == 0) {
    // leading y^{b_1}: move it cyclically to the back
    raw.back().second += raw.front().second;
    raw.erase(raw.begin());
  }
  WordSpec w;
  for (auto [a, b] : raw) {
    if (a < 1 || b < 1) throw NonPositiveWord("exponents must be positive after folding");
    w.pairs.emplace_back(static_cast<unsigned>(a), static_cast<unsigned>(b));
  }
  return w;
}

unsigned WordSpec::total_a() const {
  unsigned s = 0;
  for (auto [a, b] : pairs) s += a;
  return s;
}

unsigned WordSpec::total_b() const {
  unsigned s = 0;
  for (auto [a, b] : pairs) s += b;
  return s;
}

std::string WordSpec::str() const {
  std::string r;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    r += (i ? " " : "") + std::string("x^") + std::to_string(pairs[i].first) + " y^" +
         std::to_string(pairs[i].second);
  }
  return r;
}

TracePoly word_trace_poly(const WordSpec& w) {
  if (w.pairs.empty()) throw NonPositiveWord("empty word");
  for (auto [a, b] : w.pairs)
    if (a < 1 || b < 1) throw NonPositiveWord("exponents must be positive");
  if (w.total_a() + w.total_b() > kSymbolicLimit)
    throw SymbolicSizeExceeded("word too long for symbolic expansion");

  // Coordinates on the basis 1, x, y, xy of the algebra spanned by x, y.
  const TracePoly S = TracePoly::s(), T = TracePoly::t(), U = TracePoly::u();
  const TracePoly UmST = U - S * T;
  std::array<TracePoly, 4> c{TracePoly::constant(1), {}, {}, {}};
  auto times_x = [&] {
    std::array<TracePoly, 4> n{
        UmST * c[2] - c[1] - T * c[3],
        c[0] + S * c[1] + T * c[2] + U * c[3],
        S * c[2] + c[3],
        -c[2],
    };
    c = std::move(n);
  };
  auto times_y = [&] {
    std::array<TracePoly, 4> n{
        -c[2],
        -c[3],
        c[0] + T * c[2],
        c[1] + T * c[3],
    };
    c = std::move(n);
  };
  for (auto [a, b] : w.pairs) {
    for (unsigned i = 0; i < a; ++i) times_x();
    for (unsigned i = 0; i < b; ++i) times_y();
  }
  return 2 * c[0] + S * c[1] + T * c[2] + U * c[3];
}

// ---------------------------------------------------------------------------
// h_n

namespace {

FieldElem small_int(const FieldCtx& F, std::uint64_t n) { return F.from_int(static_cast<std::int64_t>(n % F.p())); }

}  // namespace

FieldElem hn_value(FieldElem zeta, std::uint64_t n) {
  const FieldCtx& F = zeta.ctx();
  if (zeta.is_zero()) throw ZeroElement("h_n at zero");
  if (n == 0) throw Error("bad_argument", "h_n needs n >= 1");
  const FieldElem z2 = zeta * zeta;
  if (z2.is_one()) {
    const FieldElem v = small_int(F, n);
    return (n % 2 == 0 && !zeta.is_one()) ? -v : v;
  }
  return (z2.pow(n) - F.one()) / (zeta.pow(n - 1) * (z2 - F.one()));
}

QuadElem hn_value(const QuadElem& zeta, std::uint64_t n) {
  const QuadExt& E = zeta.ext();
  if (zeta.is_zero()) throw ZeroElement("h_n at zero");
  if (n == 0) throw Error("bad_argument", "h_n needs n >= 1");
  const QuadElem z2 = zeta * zeta;
  if (z2.is_one()) {
    const QuadElem v = E.embed(small_int(E.base(), n));
    return (n % 2 == 0 && !zeta.is_one()) ? -v : v;
  }
  return (z2.pow(n) - E.one()) / (zeta.pow(n - 1) * (z2 - E.one()));
}

}  // namespace wordmap
