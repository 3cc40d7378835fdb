#include <algorithm>
#include <set>

#include "wordmap/analysis.hpp"
#include "wordmap/arith.hpp"
#include "wordmap/tracepoly.hpp"

namespace wordmap {

namespace {

bool trace_is_pm2(FieldElem t) {
  const FieldCtx& F = t.ctx();
  return (t * t - F.from_int(4)).is_zero();
}

bool pair_ok(const Mat2& x, const Mat2& y, FieldElem s, FieldElem u, FieldElem t) {
  return x.det().is_one() && y.det().is_one() && x.trace() == s && y.trace() == t && (x * y).trace() == u;
}

// Orders d > 2 of elements of SL(2,q) with d | m.
std::set<std::uint64_t> realized_orders(std::uint64_t m, const FieldCtx& F) {
  const std::uint64_t q = F.q(), p = F.p();
  std::set<std::uint64_t> out;
  for (std::uint64_t d : arith::divisors(m))
    if (d > 2 && (d == p || (d == 2 * p && p != 2) || (q - 1) % d == 0 || (q + 1) % d == 0)) out.insert(d);
  return out;
}

// Which of the three exceptional families of the product proposition applies.
// x^m = id only sees the realized orders dividing m, so m = 8 behaves like
// m = 4 when no element of order 8 exists.
int product_exception(std::uint64_t m, std::uint64_t n, int tau, const FieldCtx& F) {
  const std::uint64_t q = F.q();
  const auto rm = realized_orders(m, F), rn = realized_orders(n, F);
  const std::set<std::uint64_t> three{3}, four{4};
  if (F.even() && F.e() % 2 == 1 && rm == three && rn == three) return 1;
  if (q % 4 == 3 && rm == four && rn == four) return 2;
  if (q % 6 == 5 && tau == 2 && rm == three && rn == three) return 3;
  return 0;
}

// Trace values of elements whose order m' > 2 divides m, with m' realizable.
std::vector<std::pair<std::uint64_t, FieldElem>> order_traces(std::uint64_t m, const FieldCtx& F) {
  const std::uint64_t q = F.q(), p = F.p();
  std::vector<std::pair<std::uint64_t, FieldElem>> out;
  for (std::uint64_t d : arith::divisors(m)) {
    if (d <= 2) continue;
    if (d == p) {
      out.emplace_back(d, F.from_int(2));
    } else if (d == 2 * p && !F.even()) {
      out.emplace_back(d, F.from_int(-2));
    } else if ((q - 1) % d == 0 || (q + 1) % d == 0) {
      for (FieldElem t : traces_of_order(d, F)) out.emplace_back(d, t);
    }
  }
  return out;
}

}  // namespace

std::vector<FieldElem> traces_of_order(std::uint64_t m, const FieldCtx& F) {
  const std::uint64_t q = F.q();
  if (m <= 2) throw OrderNotRealized("order must exceed 2");
  std::vector<FieldElem> out;
  if ((q - 1) % m == 0) {
    const FieldElem zeta = F.primitive_element().pow((q - 1) / m);
    for (std::uint64_t j = 1; j < m; ++j)
      if (arith::gcd(j, m) == 1) out.push_back(zeta.pow(j) + zeta.pow(j).inverse());
  } else if ((q + 1) % m == 0) {
    const QuadExt& E = F.quad_ext();
    const QuadElem zeta = E.norm_one_generator().pow((q + 1) / m);
    for (std::uint64_t j = 1; j < m; ++j)
      if (arith::gcd(j, m) == 1) out.push_back(zeta.pow(j).trace());
  } else {
    throw OrderNotRealized("order " + std::to_string(m) + " divides neither q-1 nor q+1");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool for_each_lift(FieldElem s, FieldElem u, FieldElem t, const LiftVisitor& fn) {
  const FieldCtx& F = s.ctx();
  if (!trace_is_pm2(t)) {
    const Mat2 y = Mat2::unchecked(t, F.one(), -F.one(), F.zero());
    for (FieldElem beta : F.elements()) {
      auto r = F.solve_quadratic(s + t * beta, beta * beta + u * beta + F.one());
      if (!r) continue;
      for (FieldElem alpha : {r->first, r->second}) {
        const Mat2 x = Mat2::unchecked(alpha, beta, u + beta - alpha * t, s - alpha);
        if (pair_ok(x, y, s, u, t) && fn(x, y)) return true;
        if (r->first == r->second) break;
      }
    }
    return false;
  }
  if (!trace_is_pm2(s)) return for_each_lift(t, u, s, [&](const Mat2& x, const Mat2& y) { return fn(y, x); });

  const FieldElem eps = F.even() ? F.one() : t / F.from_int(2);
  const FieldElem e = F.even() ? F.one() : s / F.from_int(2);
  std::vector<FieldElem> lams{F.one()};
  if (!F.even()) lams.push_back(F.nonsquare());
  if (u == eps * s) {
    const Mat2 y = Mat2::unchecked(eps, F.zero(), F.zero(), eps);
    if (fn(Mat2::unchecked(e, F.zero(), F.zero(), e), y)) return true;
    for (FieldElem lam : lams)
      if (fn(Mat2::unchecked(e, e * lam, F.zero(), e), y)) return true;
  }
  // y = eps [[1, lam], [0, 1]]: tr xy = eps (s + gamma lam) fixes gamma
  for (FieldElem lam : lams) {
    const Mat2 y = Mat2::unchecked(eps, eps * lam, F.zero(), eps);
    const FieldElem gamma = (u / eps - s) / lam;
    for (FieldElem v : F.elements()) {
      Mat2 x;
      if (gamma.is_zero()) {
        x = Mat2::unchecked(e, v, F.zero(), e);
      } else {
        x = Mat2::unchecked(v, (v * (s - v) - F.one()) / gamma, gamma, s - v);
      }
      if (pair_ok(x, y, s, u, t) && fn(x, y)) return true;
    }
  }
  return false;
}

std::pair<Mat2, Mat2> macbeath_lift(FieldElem s, FieldElem u, FieldElem t) {
  std::optional<std::pair<Mat2, Mat2>> found;
  for_each_lift(s, u, t, [&](const Mat2& x, const Mat2& y) {
    found = std::make_pair(x, y);
    return true;
  });
  if (found) return *found;
  // Exhaustive fallback; unreachable by the lifting theorem.
  const FieldCtx& F = s.ctx();
  for_each_element(F, [&](const Mat2& y) {
    if (found || y.trace() != t) return;
    for_each_element(F, [&](const Mat2& x) {
      if (!found && pair_ok(x, y, s, u, t)) found = std::make_pair(x, y);
    });
  });
  if (!found) throw Error("internal", "no lift for trace triple");
  return *found;
}

TraceTriple trace_value_witness(std::uint64_t a, std::uint64_t b, FieldElem alpha) {
  const FieldCtx& F = alpha.ctx();
  const std::uint64_t q = F.q(), d = F.even() ? 1 : 2;
  const std::uint64_t M = degeneracy_modulus(q);
  if (a % M == 0 || b % M == 0) throw Degenerate("an exponent is a multiple of the PSL exponent");

  const FieldElem split_tr = F.primitive_element() + F.primitive_element().inverse();
  const FieldElem nonsplit_tr = F.quad_ext().norm_one_generator().trace();
  auto candidates = [&](std::uint64_t n) {
    std::vector<FieldElem> c;
    if (n % F.p() != 0) c.push_back(F.from_int(2));
    if (n % ((q - 1) / d) != 0) c.push_back(split_tr);
    if (n % ((q + 1) / d) != 0) c.push_back(nonsplit_tr);
    return c;
  };
  auto attempt = [&](FieldElem s, FieldElem t) -> std::optional<TraceTriple> {
    const auto [f, h] = fh_eval(a, b, s, t);
    if (f.is_zero()) return std::nullopt;
    return TraceTriple{s, (alpha - h) / f, t};
  };
  for (FieldElem s : candidates(a))
    for (FieldElem t : candidates(b))
      if (auto r = attempt(s, t)) return *r;
  for (FieldElem s : F.elements())
    for (FieldElem t : F.elements())
      if (auto r = attempt(s, t)) return *r;
  throw Error("internal", "f vanishes on all of F_q^2");
}

ProductWitness unipotent_product_witness(std::uint64_t m, std::uint64_t n, int tau, const FieldCtx& F) {
  const std::uint64_t q = F.q(), order = F.p() * (q * q - 1);
  if (m <= 2 || n <= 2 || order % m != 0 || order % n != 0)
    throw BadOrders("orders must exceed 2 and divide p(q^2-1)");
  if (tau != 2 && tau != -2) throw BadOrders("tau must be 2 or -2");
  const FieldElem T = F.from_int(tau);
  ProductWitness w;
  const Mat2 unip = Mat2::unchecked(F.one(), F.one(), F.zero(), F.one());
  if (T == F.from_int(2)) {
    if (m % F.p() == 0) {
      w.pair = std::make_pair(unip, Mat2::identity(F));
      return w;
    }
    if (n % F.p() == 0) {
      w.pair = std::make_pair(Mat2::identity(F), unip);
      return w;
    }
  }
  const auto xs = order_traces(m, F), ys = order_traces(n, F);
  for (const auto& [dm, s] : xs)
    for (const auto& [dn, t] : ys) {
      const bool hit = for_each_lift(s, T, t, [&](const Mat2& x, const Mat2& y) {
        if ((x * y).is_central() || !mat_pow(x, m).is_identity() || !mat_pow(y, n).is_identity()) return false;
        w.pair = std::make_pair(x, y);
        return true;
      });
      if (hit) return w;
    }
  w.exception = product_exception(m, n, tau, F);
  return w;
}

Mat2 unipotent_twist(const Mat2& g) {
  const FieldCtx& F = g.ctx();
  if (F.even()) return g;
  const FieldElem n = F.nonsquare();
  return Mat2::unchecked(g.a, g.b * n, g.c / n, g.d);
}

Mat2 Transport::apply(const Mat2& g) const {
  const Mat2 x = twisted ? unipotent_twist(g) : g;
  return h * x * h.inverse();
}

Transport conjugacy_transport(const Mat2& z_from, const Mat2& z_to) {
  const FieldCtx& F = z_from.ctx();
  const ElementClass cf = classify(z_from), ct = classify(z_to);
  if (cf.kind != ct.kind || cf.trace != ct.trace || z_from.is_central())
    throw DifferentClasses(z_from.str() + " and " + z_to.str() + " are not conjugate");
  Transport tr;
  tr.twisted = cf.unip_bit != ct.unip_bit;
  const Mat2 from = tr.twisted ? unipotent_twist(z_from) : z_from;

  // P = [v | z v] for a cyclic vector v; P_to P_from^-1 intertwines
  auto basis = [&](const Mat2& z) {
    const FieldElem o = F.one(), n = F.zero();
    for (auto [v0, v1] : {std::pair{o, n}, std::pair{n, o}, std::pair{o, o}}) {
      const FieldElem w0 = z.a * v0 + z.b * v1, w1 = z.c * v0 + z.d * v1;
      const Mat2 P = Mat2::unchecked(v0, w0, v1, w1);
      if (!P.det().is_zero()) return P;
    }
    throw Error("internal", "no cyclic vector");
  };
  const Mat2 Pf = basis(from), Pt = basis(z_to);
  const FieldElem df = Pf.det();
  const Mat2 Pf_inv = Mat2::unchecked(Pf.d / df, -Pf.b / df, -Pf.c / df, Pf.a / df);
  const Mat2 h0 = Pt * Pf_inv;
  const FieldElem delta = h0.det();

  // centralizer element c = alpha + beta z with det c = 1/delta
  const FieldElem target = delta.inverse(), s = from.trace();
  for (FieldElem alpha : F.elements()) {
    auto r = F.solve_quadratic(-(s * alpha), alpha * alpha - target);
    if (!r) continue;
    const FieldElem beta = r->first;
    const Mat2 c = Mat2::unchecked(alpha + beta * from.a, beta * from.b, beta * from.c, alpha + beta * from.d);
    tr.h = h0 * c;
    if (tr.h.det().is_one() && tr.apply(z_from) == z_to) return tr;
  }
  throw Error("internal", "no determinant-one intertwiner");
}

}  // namespace wordmap
