#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "wordmap/sl2.hpp"

using namespace wordmap;

namespace {

std::vector<Mat2> all_elements(const FieldCtx& F) {
  std::vector<Mat2> g;
  for_each_element(F, [&](const Mat2& x) { g.push_back(x); });
  return g;
}

std::uint64_t brute_order(const Mat2& x) {
  Mat2 y = x;
  std::uint64_t k = 1;
  while (!y.is_identity()) {
    y = y * x;
    ++k;
  }
  return k;
}

Mat2 random_element(const FieldCtx& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, group_order(F) - 1);
  return element_at(F, d(rng));
}

}  // namespace

TEST_CASE("mat_pow examples") {
  for (std::uint64_t q : {5u, 7u, 9u, 8u}) {
    auto F = make_field_q(q);
    Mat2 u = Mat2::make(*F, 1, 1, 0, 1);
    CHECK(mat_pow(u, F->p()).is_identity());
    CHECK(mat_pow(u, 0).is_identity());
  }
  auto F5 = make_field(5, 1);
  CHECK(mat_pow(Mat2::make(*F5, 0, 1, -1, 0), 2).is_minus_identity());
  Mat2 v = Mat2::make(*F5, -1, 1, 0, -1);
  CHECK(mat_pow(v, 10).is_identity());
  CHECK_FALSE(mat_pow(v, 5).is_identity());
  CHECK(element_order_sl(v) == 10);
  CHECK_THROWS_AS(Mat2::make(*F5, 1, 1, 1, 1), NotInGroup);
  Mat2 w = Mat2::make(*F5, 2, 1, 1, 1);
  CHECK(mat_pow_signed(w, -3) * mat_pow(w, 3) == Mat2::identity(*F5));
}

TEST_CASE("element orders match power scans") {
  auto F7 = make_field(7, 1);
  CHECK(element_order_sl(Mat2::identity(*F7)) == 1);
  CHECK(element_order_sl(Mat2::make(*F7, 3, 0, 0, 5)) == 6);
  auto F9 = make_field(3, 2);
  CHECK(element_order_sl(Mat2::make(*F9, 1, 1, 0, 1)) == 3);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    auto F = make_field_q(q);
    const auto gp = group_params(*F);
    for_each_element(*F, [&](const Mat2& x) {
      const std::uint64_t k = element_order_sl(x);
      CHECK(k == brute_order(x));
      CHECK(gp.exp_sl % k == 0);
      CHECK(x.det().is_one());
    });
  }
}

TEST_CASE("enumeration is a bijection onto SL(2,q)") {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 9u}) {
    auto F = make_field_q(q);
    std::set<std::uint64_t> codes;
    for (std::uint64_t i = 0; i < group_order(*F); ++i) {
      Mat2 x = element_at(*F, i);
      CHECK(x.det().is_one());
      CHECK(index_of(x) == i);
      codes.insert(x.code());
    }
    CHECK(codes.size() == group_order(*F));
    CHECK(all_elements(*F).size() == group_order(*F));
  }
}

TEST_CASE("class keys are exactly conjugacy classes") {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto F = make_field_q(q);
    auto G = all_elements(*F);
    std::map<std::uint64_t, std::size_t> orbit_id;
    std::map<std::size_t, ClassKey> orbit_key;
    std::size_t orbits = 0;
    for (const Mat2& x : G) {
      if (orbit_id.count(x.code())) continue;
      std::set<std::uint64_t> orbit;
      for (const Mat2& g : G) orbit.insert((g * x * g.inverse()).code());
      const ElementClass cls = classify(x);
      CHECK(orbit.size() == cls.class_size);
      for (auto c : orbit) orbit_id[c] = orbits;
      orbit_key[orbits] = cls.key();
      ++orbits;
    }
    std::set<ClassKey> distinct;
    for (auto& [id, k] : orbit_key) distinct.insert(k);
    CHECK(distinct.size() == orbits);
    for (const Mat2& x : G) CHECK(class_key(x) == orbit_key[orbit_id[x.code()]]);

    auto classes = enumerate_classes(*F);
    CHECK(classes.size() == orbits);
    std::uint64_t total = 0;
    for (const auto& c : classes) {
      total += c.cls.class_size;
      CHECK(c.cls.key() == class_key(c.rep));
    }
    CHECK(total == group_order(*F));
  }
}

TEST_CASE("class counts") {
  CHECK(enumerate_classes(*make_field(5, 1)).size() == 9);
  CHECK(enumerate_classes(*make_field(3, 1)).size() == 7);
  auto F4 = make_field(2, 2);
  auto c4 = enumerate_classes(*F4);
  std::uint64_t total = 0;
  int unip = 0;
  for (auto& c : c4) {
    total += c.cls.class_size;
    if (c.cls.kind == Kind::Unipotent) {
      ++unip;
      CHECK(c.cls.class_size == 15);
    }
  }
  CHECK(total == 60);
  CHECK(unip == 1);
  for (std::uint64_t q : {11u, 13u, 16u, 25u, 27u, 31u, 32u}) {
    auto F = make_field_q(q);
    auto cl = enumerate_classes(*F);
    CHECK(cl.size() == (F->even() ? q + 1 : q + 4));
    std::uint64_t sum = 0;
    for (auto& c : cl) sum += c.cls.class_size;
    CHECK(sum == group_order(*F));
  }
}

TEST_CASE("classification examples") {
  auto F5 = make_field(5, 1);
  auto u1 = classify(Mat2::make(*F5, 1, 1, 0, 1));
  CHECK(u1.kind == Kind::Unipotent);
  CHECK(u1.trace.code() == 2);
  CHECK(u1.class_size == 12);
  CHECK(class_key(Mat2::make(*F5, 1, 1, 0, 1)) == class_key(Mat2::make(*F5, 1, 4, 0, 1)));
  CHECK(class_key(Mat2::make(*F5, 1, 1, 0, 1)) != class_key(Mat2::make(*F5, 1, 2, 0, 1)));
  CHECK(classify(Mat2::minus_identity(*F5)).kind == Kind::CentralMinus);
  CHECK(classify(Mat2::minus_identity(*F5)).class_size == 1);
  for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u}) {
    auto F = make_field_q(q);
    FieldElem al = F->primitive_element();
    auto c = classify(Mat2::make(al, F->zero(), F->zero(), al.inverse()));
    CHECK(c.kind == Kind::Split);
    CHECK(c.class_size == q * (q + 1));
  }
}

TEST_CASE("trace-order dictionary") {
  for (std::uint64_t q : {5u, 7u, 9u, 11u, 13u, 3u, 4u, 8u}) {
    auto F = make_field_q(q);
    for_each_element(*F, [&](const Mat2& x) {
      if (x.is_central()) return;  // in characteristic 3 the identity has trace -1
      const std::uint64_t k = element_order_sl(x);
      const FieldElem t = x.trace();
      if (!F->even()) CHECK((k == 4) == (t.is_zero()));
      CHECK((k == 3) == (t == F->from_int(-1)));
      if (F->p() >= 5) CHECK((k == 6) == (t == F->one()));
    });
  }
}

TEST_CASE("psl_rep") {
  for (std::uint64_t q : {5u, 8u, 9u}) {
    auto F = make_field_q(q);
    for_each_element(*F, [&](const Mat2& x) {
      CHECK(psl_rep(x) == psl_rep(-x));
      CHECK(psl_rep(psl_rep(x)) == psl_rep(x));
      if (F->even()) CHECK(psl_rep(x) == x);
    });
    CHECK(psl_rep(Mat2::minus_identity(*F)).is_identity());
  }
}

TEST_CASE("determinant preserved under random operations") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {7u, 16u, 27u}) {
    auto F = make_field_q(q);
    Mat2 acc = Mat2::identity(*F);
    for (int i = 0; i < 10000; ++i) {
      Mat2 g = random_element(*F, rng);
      switch (i % 3) {
        case 0: acc = acc * g; break;
        case 1: acc = acc.inverse() * g; break;
        default: acc = mat_pow(acc, i % 17) * g; break;
      }
      REQUIRE(acc.det().is_one());
    }
    const auto gp = group_params(*F);
    CHECK(gp.order_sl == q * (q * q - 1));
  }
}
