#pragma once

// Decision procedure and explicit witnesses for w(x,y) = x^a y^b on SL(2,q), PSL(2,q).

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wordmap/sl2.hpp"

namespace wordmap {

enum class Target : std::uint8_t { SLEven, SLOddMinusId, PSL, SLFull };

const char* target_name(Target t);
/// Accepts sl_even, sl_odd, psl, sl_full; anything else raises InvalidTarget.
Target parse_target(const std::string& s);

enum class Reason : std::uint8_t {
  DegenerateA,
  DegenerateB,
  ObstructionI,
  ObstructionII,
  ObstructionIII,
  ObstructionIV,
  MinusIdMissing,
};

const char* reason_name(Reason r);

/// (p, e) for a prime power q; raises NotPrimePower.
std::pair<std::uint64_t, unsigned> q_params(std::uint64_t q);
std::uint64_t exp_sl(std::uint64_t q);
std::uint64_t exp_psl(std::uint64_t q);
/// 2(q^2-1) for even q, p(q^2-1)/4 for odd q.
std::uint64_t degeneracy_modulus(std::uint64_t q);
/// v2((q^2-1)/2), q odd.
unsigned minus_id_K(std::uint64_t q);

/// For even q every target is SL(2,q) = PSL(2,q); SL_even with odd q is rejected.
Target effective_target(std::uint64_t q, Target t);

struct WordAB {
  std::int64_t a = 0, b = 0;
  std::uint64_t a_norm = 0, b_norm = 0;
  std::uint64_t exp = 0;
};

WordAB normalize(std::int64_t a, std::int64_t b, std::uint64_t q, Target target);

struct Degeneracy {
  bool a_side = false;  // a is a multiple of the modulus, b shares a factor with it
  bool b_side = false;
  bool any() const { return a_side || b_side; }
};

Degeneracy is_degenerate(std::int64_t a, std::int64_t b, std::uint64_t q);
std::set<Reason> detect_obstructions(std::int64_t a, std::int64_t b, std::uint64_t q);

struct Verdict {
  Target target = Target::SLFull;
  bool surjective = true;
  std::set<Reason> reasons;
  std::optional<unsigned> K;
  std::string shortcut;
};

Verdict decide(std::int64_t a, std::int64_t b, std::uint64_t q, Target target);

struct MinusIdResult {
  bool in_image = false;
  unsigned K = 0;
  std::optional<std::pair<Mat2, Mat2>> witness;
};

MinusIdResult minus_id_in_image(std::int64_t a, std::int64_t b, const FieldCtx& F);

/// Thresholds for Q(a,b) = sqrt(3 max) and N(a,b) = (3 sqrt 3 / 2) max^{3/2},
/// compared in exact integer arithmetic.
struct Bounds {
  std::uint64_t a = 1, b = 1;
  std::uint64_t max() const { return a > b ? a : b; }
  bool q_exceeds_Q(std::uint64_t q) const;
  bool order_exceeds_N(std::uint64_t n) const;
  double Q() const;
  double N() const;
};

Bounds bounds(std::int64_t a, std::int64_t b);

struct TraceTriple {
  FieldElem s, u, t;
};

/// (s,u,t) with u f_{a,b}(s,t) + h_{a,b}(s,t) = alpha and f_{a,b}(s,t) != 0.
TraceTriple trace_value_witness(std::uint64_t a, std::uint64_t b, FieldElem alpha);

/// x, y in SL(2,q) with tr x = s, tr xy = u, tr y = t.
std::pair<Mat2, Mat2> macbeath_lift(FieldElem s, FieldElem u, FieldElem t);

/// Visits lifts of (s,u,t) in the order macbeath_lift uses, one pair per
/// SL(2,q)-conjugacy orbit at least; stops when fn returns true.
using LiftVisitor = std::function<bool(const Mat2&, const Mat2&)>;
bool for_each_lift(FieldElem s, FieldElem u, FieldElem t, const LiftVisitor& fn);

/// Sorted traces zeta + 1/zeta over elements zeta of order m in F_q* or the norm-one group.
std::vector<FieldElem> traces_of_order(std::uint64_t m, const FieldCtx& F);

struct ProductWitness {
  std::optional<std::pair<Mat2, Mat2>> pair;
  int exception = 0;  // 1, 2, 3 for the three exceptional families, 0 otherwise
};

/// x1, y1 with x1^m = id = y1^n, tr(x1 y1) = tau (tau = 2 or -2) and x1 y1 != +-id.
ProductWitness unipotent_product_witness(std::uint64_t m, std::uint64_t n, int tau, const FieldCtx& F);

/// Conjugation g -> h (T g T^-1) h^-1 where T is either the identity or the
/// diagonal twist diag(l, 1/l), l^2 a non-square.  Both maps preserve SL(2,q).
struct Transport {
  Mat2 h;
  bool twisted = false;
  Mat2 apply(const Mat2& g) const;
};

Mat2 unipotent_twist(const Mat2& g);

/// Requires equal kind and trace; unipotent classes with different square
/// classes are joined through the twist.
Transport conjugacy_transport(const Mat2& z_from, const Mat2& z_to);

struct SolveResult {
  std::optional<std::pair<Mat2, Mat2>> witness;
  std::optional<Reason> reason;  // set when no witness exists and a stated criterion explains it
  std::string route;
  bool found() const { return witness.has_value(); }
};

inline constexpr std::uint64_t kSolveSearchMaxQ = 32;

SolveResult solve(const Mat2& z, std::int64_t a, std::int64_t b,
                  std::uint64_t search_max_q = kSolveSearchMaxQ);

}  // namespace wordmap
