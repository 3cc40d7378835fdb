#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wordmap/analysis.hpp"
#include "wordmap/arith.hpp"
#include "wordmap/tracepoly.hpp"

using namespace wordmap;
using testing_support::all_elements;
using testing_support::brute_image;
using testing_support::random_element;
using testing_support::random_field;

namespace {

bool brute_covers(const std::vector<Mat2>& G, const std::set<std::uint64_t>& img, Target t) {
  for (const Mat2& g : G) {
    if (img.count(g.code())) continue;
    if (t == Target::SLOddMinusId && g.is_minus_identity()) continue;
    if (t == Target::PSL && img.count((-g).code())) continue;
    return false;
  }
  return true;
}

std::vector<Target> targets_for(const FieldCtx& F) {
  if (F.even()) return {Target::SLEven};
  return {Target::SLFull, Target::SLOddMinusId, Target::PSL};
}

bool verify_lift(const std::pair<Mat2, Mat2>& xy, FieldElem s, FieldElem u, FieldElem t) {
  const auto& [x, y] = xy;
  return x.det().is_one() && y.det().is_one() && x.trace() == s && y.trace() == t && (x * y).trace() == u;
}

}  // namespace

TEST_CASE("normalize") {
  const std::uint64_t e5 = exp_sl(5);
  CHECK(e5 == 60);
  CHECK(normalize(std::int64_t(e5) + 3, 1, 5, Target::SLFull).a_norm == 3);
  CHECK(normalize(std::int64_t(e5) - 3, 1, 5, Target::SLFull).a_norm == 3);
  CHECK(normalize(-5, 1, 5, Target::SLFull).a_norm == 5);
  CHECK(normalize(0, 7, 5, Target::SLFull).a_norm == 0);
  CHECK(normalize(31, 1, 5, Target::PSL).exp == 30);
  CHECK(normalize(31, 1, 5, Target::PSL).a_norm == 1);
  CHECK(normalize(3, 1, 8, Target::PSL).exp == exp_sl(8));

  // image invariance on SL(2,5) and PSL(2,5)
  auto F = make_field_q(5);
  const auto G = all_elements(*F);
  CHECK(brute_image(G, -5, 2) == brute_image(G, 5, 2));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const std::int64_t a = std::int64_t(rng() % 400) - 200, b = std::int64_t(rng() % 400) - 200;
    const WordAB w = normalize(a, b, 5, Target::SLFull);
    CHECK(w.a_norm <= w.exp / 2);
    CHECK(brute_image(G, a, b) == brute_image(G, std::int64_t(w.a_norm), std::int64_t(w.b_norm)));
  }
}

TEST_CASE("degeneracy") {
  CHECK(is_degenerate(30, 2, 5).any());
  CHECK(is_degenerate(30, 2, 5).a_side);
  CHECK_FALSE(is_degenerate(30, 7, 5).any());
  CHECK(is_degenerate(30, 3, 4).a_side);
  CHECK(is_degenerate(2, 30, 5).b_side);
  CHECK(degeneracy_modulus(5) == 30);
  CHECK(degeneracy_modulus(4) == 30);
  CHECK(degeneracy_modulus(7) == 84);
}

TEST_CASE("obstructions") {
  CHECK(detect_obstructions(42, 42, 7) == std::set<Reason>{Reason::ObstructionII});
  CHECK(detect_obstructions(42, 42, 8) == std::set<Reason>{Reason::ObstructionI});
  CHECK(detect_obstructions(10, 10, 5) == std::set<Reason>{Reason::ObstructionIV});
  CHECK(detect_obstructions(11 * 120 / 6, 11 * 120 / 6, 11).count(Reason::ObstructionIII));
  CHECK(detect_obstructions(42, 21, 7).empty());
  CHECK(detect_obstructions(42, 42, 4).empty());
  CHECK(detect_obstructions(84, -42, 7).count(Reason::ObstructionII));
}

TEST_CASE("decide examples") {
  const Verdict v = decide(42, 42, 7, Target::PSL);
  CHECK_FALSE(v.surjective);
  CHECK(v.reasons == std::set<Reason>{Reason::ObstructionII});
  const Verdict v8 = decide(42, 42, 8, Target::PSL);
  CHECK(v8.target == Target::SLEven);
  CHECK(v8.reasons == std::set<Reason>{Reason::ObstructionI});
  for (std::uint64_t q : {4u, 5u, 7u, 9u, 13u})
    for (Target t : {Target::SLFull, Target::PSL, Target::SLOddMinusId}) {
      const Verdict w = decide(1, 1, q, t);
      CHECK(w.surjective);
      CHECK(w.shortcut == "gcd(a,b)=1");
    }
  const Verdict m = decide(4, 4, 5, Target::SLFull);
  CHECK_FALSE(m.surjective);
  CHECK(m.reasons == std::set<Reason>{Reason::MinusIdMissing});
  CHECK(m.K == 2u);
  CHECK(decide(4, 4, 5, Target::SLOddMinusId).surjective);
  CHECK_THROWS_AS(decide(1, 1, 5, Target::SLEven), InvalidTarget);
  CHECK_THROWS_AS(decide(1, 1, 6, Target::SLFull), NotPrimePower);
  CHECK_THROWS_AS(parse_target("gl"), InvalidTarget);
  CHECK(parse_target("sl_odd") == Target::SLOddMinusId);
}

TEST_CASE("decide is invariant under normalization") {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 25u, 27u, 49u}) {
    auto F = make_field_q(q);
    for (Target t : targets_for(*F)) {
      const std::int64_t e = std::int64_t(t == Target::PSL ? exp_psl(q) : exp_sl(q));
      for (int i = 0; i < 300; ++i) {
        // bias towards multiples of large divisors so obstructions actually occur
        const std::int64_t unit = std::int64_t(arith::divisors(std::uint64_t(e))[rng() % arith::divisors(std::uint64_t(e)).size()]);
        const std::int64_t a = unit * std::int64_t(rng() % 7 + 1), b = unit * std::int64_t(rng() % 7 + 1);
        const Verdict v = decide(a, b, q, t);
        CHECK(v.surjective == v.reasons.empty());
        const Verdict m = decide(a % e, b % e, q, t);
        const Verdict f = decide(e - a % e, b, q, t);
        const WordAB w = normalize(a, b, q, t);
        const Verdict n = decide(std::int64_t(w.a_norm), std::int64_t(w.b_norm), q, t);
        CHECK(v.surjective == m.surjective);
        CHECK(v.surjective == f.surjective);
        CHECK(v.surjective == n.surjective);
      }
    }
  }
}

TEST_CASE("decide agrees with brute-force images") {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u}) {
    auto F = make_field_q(q);
    const auto G = all_elements(*F);
    const std::int64_t e = std::int64_t(exp_sl(q));
    std::vector<std::pair<std::int64_t, std::int64_t>> words;
    for (std::int64_t d : {std::int64_t(exp_psl(q)), std::int64_t(exp_psl(q)) / 2, e / 3, e / 4, e / 6, e / 12, std::int64_t(4), std::int64_t(8)})
      if (d > 0) words.push_back({d, d});
    for (int i = 0; i < 25; ++i) words.push_back({std::int64_t(rng() % std::uint64_t(e)), std::int64_t(rng() % std::uint64_t(e))});
    for (auto [a, b] : words) {
      const auto img = brute_image(G, a, b);
      for (Target t : targets_for(*F)) {
        INFO("q=" << q << " a=" << a << " b=" << b << " target=" << target_name(t));
        CHECK(decide(a, b, q, t).surjective == brute_covers(G, img, t));
      }
    }
  }
}

TEST_CASE("gcd rules are consistent with the theorems") {
  for (std::uint64_t q : {4u, 5u, 7u, 9u, 11u}) {
    const std::uint64_t e = exp_sl(q);
    for (std::uint64_t a = 1; a <= e; a += 7)
      for (std::uint64_t b = 1; b <= e; b += 5) {
        if (arith::gcd(a, b) == 1) CHECK(decide(std::int64_t(a), std::int64_t(b), q, Target::SLFull).surjective);
      }
    // a equal to the PSL exponent with b sharing a factor is never surjective
    const std::uint64_t M = exp_psl(q);
    CHECK_FALSE(decide(std::int64_t(M), 2, q, Target::PSL).surjective);
  }
}

TEST_CASE("-id criterion") {
  auto F5 = make_field_q(5);
  const MinusIdResult r = minus_id_in_image(4, 4, *F5);
  CHECK_FALSE(r.in_image);
  CHECK(r.K == 2);
  const MinusIdResult w = minus_id_in_image(2, 4, *F5);
  CHECK(w.in_image);
  REQUIRE(w.witness);
  CHECK((mat_pow(w.witness->first, 2) * mat_pow(w.witness->second, 4)).is_minus_identity());
  CHECK_FALSE(minus_id_in_image(8, 8, *make_field_q(7)).in_image);
  CHECK(minus_id_in_image(8, 8, *make_field_q(7)).K == 3);
  CHECK_THROWS_AS(minus_id_in_image(1, 1, *make_field_q(8)), EvenQ);

  for (std::uint64_t q : {3u, 5u, 7u, 9u}) {
    auto F = make_field_q(q);
    const auto G = all_elements(*F);
    const std::int64_t e = std::int64_t(exp_sl(q));
    std::vector<std::map<std::uint64_t, Mat2>> pw;
    for (std::int64_t a = 0; a <= e; ++a) pw.push_back(testing_support::power_values(G, a));
    for (std::int64_t a = 1; a <= e; a += (q > 5 ? 3 : 1))
      for (std::int64_t b = 1; b <= e; b += (q > 5 ? 2 : 1)) {
        bool hit = false;
        for (const auto& [c, X] : pw[a])
          if (pw[b].count((-X.inverse()).code())) {
            hit = true;
            break;
          }
        const MinusIdResult m = minus_id_in_image(a, b, *F);
        INFO("q=" << q << " a=" << a << " b=" << b);
        CHECK(m.in_image == hit);
        if (m.witness) CHECK((mat_pow(m.witness->first, a) * mat_pow(m.witness->second, b)).is_minus_identity());
      }
  }
}

TEST_CASE("bounds") {
  const Bounds b3 = bounds(3, 3);
  CHECK_FALSE(b3.q_exceeds_Q(3));
  CHECK(b3.q_exceeds_Q(4));
  CHECK(b3.Q() == doctest::Approx(3.0));
  for (std::uint64_t q = 4; q <= 64; ++q) {
    if (!arith::prime_power(q)) continue;
    CHECK(b3.q_exceeds_Q(q));
    CHECK(decide(3, 3, q, Target::PSL).surjective);
  }
  // sharpness: a = p = q = 3 sits exactly on the obstruction modulus
  CHECK(3 * (9 - 1) / 8 == 3);
  CHECK_FALSE(decide(3, 3, 3, Target::PSL).surjective);
  CHECK(decide(3, 3, 3, Target::PSL).reasons.count(Reason::ObstructionII));

  CHECK(bounds(1, 1).q_exceeds_Q(2));
  const Bounds b42 = bounds(42, 42);
  CHECK(b42.q_exceeds_Q(13));
  CHECK_FALSE(b42.q_exceeds_Q(11));
  for (std::uint64_t q = 13; q <= 64; ++q)
    if (arith::prime_power(q)) CHECK(decide(42, 42, q, Target::PSL).surjective);
  // 4 n^2 > 27 m^3 for m = 3: n > 13.5
  CHECK(b3.order_exceeds_N(14));
  CHECK_FALSE(b3.order_exceeds_N(13));
  CHECK(b3.N() == doctest::Approx(1.5 * std::sqrt(3.0) * std::pow(3.0, 1.5)));
  CHECK_THROWS_AS(bounds(0, 3), NonPositiveWord);
}

TEST_CASE("trace_value_witness") {
  auto F5 = make_field_q(5);
  const TraceTriple w = trace_value_witness(2, 2, F5->zero());
  CHECK(w.s.code() == 2);
  CHECK(w.t.code() == 2);
  CHECK(w.u.code() == 4);
  const TraceTriple one = trace_value_witness(1, 1, F5->from_int(3));
  CHECK(one.s.code() == 2);
  CHECK(one.t.code() == 2);
  CHECK(one.u.code() == 3);
  auto F7 = make_field_q(7);
  const TraceTriple w62 = trace_value_witness(6, 2, F7->one());
  CHECK(w62.s == F7->from_int(2));
  CHECK(w62.t == F7->from_int(2));
  CHECK_THROWS_AS(trace_value_witness(30, 7, F5->one()), Degenerate);

  std::mt19937_64 rng(9);
  for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u}) {
    auto F = make_field_q(q);
    const std::uint64_t M = degeneracy_modulus(q);
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t a = rng() % 5000 + 1, b = rng() % 5000 + 1;
      if (a % M == 0 || b % M == 0) continue;
      const FieldElem alpha = random_field(*F, rng);
      const TraceTriple tt = trace_value_witness(a, b, alpha);
      const auto [f, h] = fh_eval(a, b, tt.s, tt.t);
      CHECK_FALSE(f.is_zero());
      CHECK(tt.u * f + h == alpha);
      const auto [x, y] = macbeath_lift(tt.s, tt.u, tt.t);
      CHECK((mat_pow(x, a) * mat_pow(y, b)).trace() == alpha);
    }
  }
}

TEST_CASE("macbeath_lift") {
  auto F5 = make_field_q(5);
  const FieldElem two = F5->from_int(2), zero = F5->zero();
  const auto [x, y] = macbeath_lift(two, two, two);
  CHECK(x.is_identity());
  CHECK(y.is_identity());
  CHECK(verify_lift(macbeath_lift(zero, zero, zero), zero, zero, zero));
  // the pair quoted for (0,0,0) is another valid lift
  const Mat2 x0 = Mat2::make(*F5, 0, 1, -1, 0), y0 = Mat2::make(*F5, 0, 2, 2, 0);
  CHECK(verify_lift({x0, y0}, zero, zero, zero));
  // first solution in sweep order: y = y_t and x from beta = 0
  const auto l = macbeath_lift(zero, zero, zero);
  CHECK(l.second == Mat2::make(*F5, 0, 1, -1, 0));
  CHECK(l.first == Mat2::make(*F5, 2, 0, 0, 3));

  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u}) {
    auto F = make_field_q(q);
    int ok = 0;
    for (auto s : F->elements())
      for (auto u : F->elements())
        for (auto t : F->elements()) ok += verify_lift(macbeath_lift(s, u, t), s, u, t);
    CHECK(ok == int(q * q * q));
  }
  std::mt19937_64 rng(2);
  for (std::uint64_t q : {64u, 81u, 125u, 343u, 1024u}) {
    auto F = make_field_q(q);
    for (int i = 0; i < 50; ++i) {
      const FieldElem s = random_field(*F, rng), u = random_field(*F, rng), t = random_field(*F, rng);
      CHECK(verify_lift(macbeath_lift(s, u, t), s, u, t));
    }
  }
}

TEST_CASE("traces_of_order") {
  for (std::uint64_t q : {4u, 5u, 7u, 8u, 11u, 13u}) {
    auto F = make_field_q(q);
    const auto t3 = traces_of_order(3, *F);
    REQUIRE(t3.size() == 1);
    CHECK(t3[0] == F->from_int(-1));
  }
  for (std::uint64_t q : {5u, 7u, 9u, 11u, 13u}) {
    const auto t4 = traces_of_order(4, *make_field_q(q));
    REQUIRE(t4.size() == 1);
    CHECK(t4[0].is_zero());
  }
  const auto t5 = traces_of_order(5, *make_field_q(11));
  REQUIRE(t5.size() == 2);
  CHECK(t5[0].code() == 3);
  CHECK(t5[1].code() == 7);
  CHECK_THROWS_AS(traces_of_order(5, *make_field_q(7)), OrderNotRealized);
  CHECK_THROWS_AS(traces_of_order(2, *make_field_q(7)), OrderNotRealized);

  // against the traces of elements of that order
  for (std::uint64_t q : {7u, 8u, 9u, 11u, 13u}) {
    auto F = make_field_q(q);
    std::map<std::uint64_t, std::set<std::uint32_t>> seen;
    for_each_element(*F, [&](const Mat2& x) { seen[element_order_sl(x)].insert(x.trace().code()); });
    for (std::uint64_t m : arith::divisors(q * q - 1)) {
      if (m <= 2 || ((q - 1) % m != 0 && (q + 1) % m != 0)) continue;
      const auto tr = traces_of_order(m, *F);
      std::set<std::uint32_t> codes;
      for (auto t : tr) codes.insert(t.code());
      CHECK(codes == seen[m]);
      CHECK(tr.size() == arith::totient(m) / 2);
    }
  }
}

TEST_CASE("unipotent_product_witness") {
  auto F5 = make_field_q(5), F7 = make_field_q(7);
  const ProductWitness w5 = unipotent_product_witness(4, 4, 2, *F5);
  REQUIRE(w5.pair);
  const Mat2 z5 = w5.pair->first * w5.pair->second;
  CHECK(z5.trace().code() == 2);
  CHECK_FALSE(z5.is_central());
  CHECK(mat_pow(w5.pair->first, 4).is_identity());
  const ProductWitness w7 = unipotent_product_witness(4, 4, 2, *F7);
  CHECK_FALSE(w7.pair);
  CHECK(w7.exception == 2);
  const ProductWitness wp = unipotent_product_witness(7, 3, 2, *F7);
  REQUIRE(wp.pair);
  CHECK(wp.pair->second.is_identity());
  CHECK_THROWS_AS(unipotent_product_witness(2, 4, 2, *F7), BadOrders);
  CHECK_THROWS_AS(unipotent_product_witness(5, 4, 2, *F7), BadOrders);

  // existence against a brute-force search: x^m = id and (x^-1 z)^n = id
  for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u, 11u}) {
    auto F = make_field_q(q);
    const auto G = all_elements(*F);
    const std::uint64_t N = F->p() * (q * q - 1);
    for (int tau : {2, -2}) {
      const Mat2 z = Mat2::unchecked(F->from_int(tau / 2), F->one(), F->zero(), F->from_int(tau / 2));
      for (std::uint64_t m : arith::divisors(N)) {
        if (m <= 2 || m > 24) continue;
        for (std::uint64_t n : arith::divisors(N)) {
          if (n <= 2 || n > 24) continue;
          bool exists = false;
          for (const Mat2& x : G)
            if (mat_pow(x, m).is_identity() && mat_pow(x.inverse() * z, n).is_identity()) {
              exists = true;
              break;
            }
          const ProductWitness pw = unipotent_product_witness(m, n, tau, *F);
          INFO("q=" << q << " m=" << m << " n=" << n << " tau=" << tau);
          CHECK(pw.pair.has_value() == exists);
          if (pw.pair) {
            const Mat2 p = pw.pair->first * pw.pair->second;
            CHECK(p.trace() == F->from_int(tau));
            CHECK_FALSE(p.is_central());
            CHECK(mat_pow(pw.pair->first, m).is_identity());
            CHECK(mat_pow(pw.pair->second, n).is_identity());
          } else {
            CHECK(pw.exception != 0);
          }
        }
      }
    }
  }
}

TEST_CASE("conjugacy_transport") {
  auto F5 = make_field_q(5);
  const Mat2 u1 = Mat2::make(*F5, 1, 1, 0, 1), u4 = Mat2::make(*F5, 1, 4, 0, 1);
  const Transport same = conjugacy_transport(u1, u1);
  CHECK(same.apply(u1) == u1);
  const Transport t14 = conjugacy_transport(u1, u4);
  CHECK_FALSE(t14.twisted);
  CHECK(t14.h.det().is_one());
  CHECK(t14.apply(u1) == u4);
  const Mat2 u2 = Mat2::make(*F5, 1, 2, 0, 1);
  const Transport t12 = conjugacy_transport(u1, u2);
  CHECK(t12.twisted);
  CHECK(t12.apply(u1) == u2);
  CHECK_THROWS_AS(conjugacy_transport(u1, Mat2::make(*F5, 2, 0, 0, 3)), DifferentClasses);
  CHECK_THROWS_AS(conjugacy_transport(Mat2::identity(*F5), Mat2::identity(*F5)), DifferentClasses);

  auto F7 = make_field_q(7);
  const Mat2 d = Mat2::make(*F7, 3, 0, 0, 5);
  for_each_element(*F7, [&](const Mat2& g) {
    if (g.trace() != d.trace()) return;
    const Transport T = conjugacy_transport(d, g);
    CHECK(T.h.det().is_one());
    CHECK(T.apply(d) == g);
  });

  std::mt19937_64 rng(4);
  for (std::uint64_t q : {8u, 9u, 25u, 27u, 49u}) {
    auto F = make_field_q(q);
    for (int i = 0; i < 200; ++i) {
      const Mat2 z = random_element(*F, rng), g = random_element(*F, rng);
      if (z.is_central()) continue;
      const Mat2 w = g * z * g.inverse();
      const Transport T = conjugacy_transport(z, w);
      CHECK(T.h.det().is_one());
      CHECK(T.apply(z) == w);
      // the map is an automorphism of SL(2,q)
      const Mat2 x = random_element(*F, rng), y = random_element(*F, rng);
      CHECK(T.apply(x * y) == T.apply(x) * T.apply(y));
      CHECK(T.apply(x).det().is_one());
    }
  }
}

TEST_CASE("solve") {
  auto F7 = make_field_q(7);
  const Mat2 id = Mat2::identity(*F7);
  const SolveResult r = solve(id, 42, 42);
  REQUIRE(r.found());
  CHECK(r.witness->first.is_identity());
  const SolveResult ob = solve(Mat2::make(*F7, 1, 1, 0, 1), 42, 42);
  CHECK_FALSE(ob.found());
  CHECK(ob.reason == Reason::ObstructionII);
  const SolveResult mi = solve(Mat2::minus_identity(*make_field_q(5)), 4, 4);
  CHECK_FALSE(mi.found());
  CHECK(mi.reason == Reason::MinusIdMissing);

  auto F5 = make_field_q(5);
  int found = 0;
  for_each_element(*F5, [&](const Mat2& z) {
    const SolveResult s = solve(z, 2, 2);
    if (!s.found()) return;
    ++found;
    CHECK(mat_pow(s.witness->first, 2) * mat_pow(s.witness->second, 2) == z);
  });
  CHECK(found == 120);

  // partition equals the brute-force image; every miss carries a reason
  for (std::uint64_t q : {4u, 5u, 7u}) {
    auto F = make_field_q(q);
    const auto G = all_elements(*F);
    for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 3}, {10, 10}, {42, 42}, {30, 2}, {6, 10}, {-4, 8}}) {
      const auto img = brute_image(G, a, b);
      for (const Mat2& z : G) {
        const SolveResult s = solve(z, a, b);
        INFO("q=" << q << " a=" << a << " b=" << b << " z=" << z.str());
        CHECK(s.found() == bool(img.count(z.code())));
        if (s.found()) CHECK(mat_pow_signed(s.witness->first, a) * mat_pow_signed(s.witness->second, b) == z);
        else CHECK(s.reason.has_value());
      }
    }
  }
  CHECK_THROWS_AS(solve(Mat2::make(*make_field_q(43), 1, 1, 0, 1), 43 * 1848 / 8, 43 * 1848 / 8), SizeLimitExceeded);
}
