#include "wordmap/analysis.hpp"
#include "wordmap/arith.hpp"
#include "wordmap/tracepoly.hpp"

namespace wordmap {

namespace {

bool same_kind_trace(const Mat2& x, const Mat2& y) {
  const ElementClass cx = classify(x), cy = classify(y);
  return cx.kind == cy.kind && cx.trace == cy.trace;
}

struct Solver {
  const Mat2& z;
  const FieldCtx& F;
  std::uint64_t A, B;

  Mat2 word(const Mat2& x, const Mat2& y) const { return mat_pow(x, A) * mat_pow(y, B); }

  SolveResult accept(const Mat2& x, const Mat2& y, const char* route) const {
    if (word(x, y) != z) throw Error("internal", std::string("route ") + route + " produced a wrong witness");
    SolveResult r;
    r.witness = std::make_pair(x, y);
    r.route = route;
    return r;
  }

  // (x0, y0) with w(x0, y0) in the class of z (up to the twist); move it onto z.
  std::optional<SolveResult> transported(const Mat2& x0, const Mat2& y0, const char* route) const {
    const Mat2 w0 = word(x0, y0);
    if (w0.is_central() || !same_kind_trace(w0, z)) return std::nullopt;
    const Transport T = conjugacy_transport(w0, z);
    return accept(T.apply(x0), T.apply(y0), route);
  }

  std::optional<SolveResult> semisimple() const {
    const TraceTriple tt = trace_value_witness(A, B, z.trace());
    const auto [x0, y0] = macbeath_lift(tt.s, tt.u, tt.t);
    return transported(x0, y0, "trace_value");
  }

  std::optional<SolveResult> unipotent_explicit() const {
    const FieldElem two = F.from_int(2), tau = z.trace();
    const FieldElem a = F.from_int(std::int64_t(A % F.p())), b = F.from_int(std::int64_t(B % F.p()));
    const Mat2 id = Mat2::identity(F);
    if (tau == two) {
      if (!a.is_zero()) return transported(Mat2::unchecked(F.one(), a.inverse(), F.zero(), F.one()), id, "unipotent_root");
      if (!b.is_zero()) return transported(id, Mat2::unchecked(F.one(), F.zero(), b.inverse(), F.one()), "unipotent_root");
    } else if (!a.is_zero() && !b.is_zero()) {
      const Mat2 x = Mat2::unchecked(F.one(), -two / a, F.zero(), F.one());
      const Mat2 y = Mat2::unchecked(F.one(), F.zero(), two / b, F.one());
      return transported(x, y, "unipotent_root");
    }
    return std::nullopt;
  }

  // f(s,t) != 0 and tr(x^a) != +-tr(y^b) force a non-central product of trace tau.
  std::optional<SolveResult> trace_separation() const {
    const FieldElem tau = z.trace();
    const bool plus = tau == F.from_int(2);
    for (FieldElem s : F.elements()) {
      const FieldElem pa = power_trace(A, s);
      for (FieldElem t : F.elements()) {
        const FieldElem pb = power_trace(B, t);
        if (pa == (plus ? pb : -pb)) continue;
        const auto [f, h] = fh_eval(A, B, s, t);
        if (f.is_zero()) continue;
        const auto [x0, y0] = macbeath_lift(s, (tau - h) / f, t);
        if (auto r = transported(x0, y0, "trace_separation")) return r;
      }
    }
    return std::nullopt;
  }

  // z = x1 y1 with x1 = x^a, y1 = y^b of prescribed classes; roots found by conjugating class reps.
  std::optional<SolveResult> power_classes() const {
    const auto classes = enumerate_classes(F);
    for (const auto& c1 : classes) {
      const Mat2 X1 = mat_pow(c1.rep, A);
      for (const auto& c2 : classes) {
        const Mat2 Y1 = mat_pow(c2.rep, B);
        if (X1.is_central() || Y1.is_central()) {
          if (auto r = transported(c1.rep, c2.rep, "power_classes")) return r;
          continue;
        }
        const auto [x2, y2] = macbeath_lift(X1.trace(), z.trace(), Y1.trace());
        if (x2.is_central() || y2.is_central() || (x2 * y2).is_central()) continue;
        if (!same_kind_trace(x2, X1) || !same_kind_trace(y2, Y1)) continue;
        const Mat2 x = conjugacy_transport(X1, x2).apply(c1.rep);
        const Mat2 y = conjugacy_transport(Y1, y2).apply(c2.rep);
        if (auto r = transported(x, y, "power_classes")) return r;
      }
    }
    return std::nullopt;
  }

  std::optional<SolveResult> exhaustive() const {
    std::optional<SolveResult> found;
    for (const auto& c : enumerate_classes(F)) {
      const Mat2 X = mat_pow(c.rep, A);
      for_each_element(F, [&](const Mat2& y) {
        if (found) return;
        const Mat2 w = X * mat_pow(y, B);
        if (!w.is_central() && same_kind_trace(w, z)) found = transported(c.rep, y, "exhaustive");
      });
      if (found) break;
    }
    return found;
  }

  std::optional<Reason> explain() const {
    const std::uint64_t q = F.q();
    const Degeneracy d = is_degenerate(std::int64_t(A), std::int64_t(B), q);
    if (d.a_side) return Reason::DegenerateA;
    if (d.b_side) return Reason::DegenerateB;
    const bool plus = z.trace() == F.from_int(2);
    const bool unip = !z.is_central() && (z.trace() * z.trace() - F.from_int(4)).is_zero();
    if (!unip) return std::nullopt;
    for (Reason r : detect_obstructions(std::int64_t(A), std::int64_t(B), q)) {
      if (r == Reason::ObstructionI && F.even()) return r;
      if (r == Reason::ObstructionII) return r;
      if ((r == Reason::ObstructionIII || r == Reason::ObstructionIV) && plus) return r;
    }
    return std::nullopt;
  }
};

}  // namespace

SolveResult solve(const Mat2& z, std::int64_t a, std::int64_t b, std::uint64_t search_max_q) {
  const FieldCtx& F = z.ctx();
  const std::uint64_t q = F.q(), es = exp_sl(q);
  const Solver S{z, F, arith::mod(a, es), arith::mod(b, es)};
  const Mat2 id = Mat2::identity(F);

  if (z.is_identity()) return S.accept(id, id, "identity");
  if (auto inv = arith::inverse_mod(S.A, es)) return S.accept(mat_pow(z, *inv), id, "gcd_a");
  if (auto inv = arith::inverse_mod(S.B, es)) return S.accept(id, mat_pow(z, *inv), "gcd_b");
  if (z.is_minus_identity()) {
    const MinusIdResult m = minus_id_in_image(std::int64_t(S.A), std::int64_t(S.B), F);
    if (m.witness) return S.accept(m.witness->first, m.witness->second, "minus_id");
    SolveResult r;
    r.reason = Reason::MinusIdMissing;
    r.route = "minus_id";
    return r;
  }

  const bool unip = (z.trace() * z.trace() - F.from_int(4)).is_zero();
  if (!is_degenerate(std::int64_t(S.A), std::int64_t(S.B), q).any()) {
    if (!unip) {
      if (auto r = S.semisimple()) return *r;
    } else {
      if (auto r = S.unipotent_explicit()) return *r;
      if (auto r = S.trace_separation()) return *r;
      if (auto r = S.power_classes()) return *r;
    }
  } else if (auto r = S.power_classes()) {
    return *r;
  }
  if (q > search_max_q)
    throw SizeLimitExceeded("exhaustive witness search limited to q <= " + std::to_string(search_max_q));
  if (auto r = S.exhaustive()) return *r;
  SolveResult r;
  r.reason = S.explain();
  r.route = "exhaustive";
  return r;
}

}  // namespace wordmap
