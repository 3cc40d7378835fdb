#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "wordmap/sl2.hpp"

namespace testing_support {

inline wordmap::Mat2 random_element(const wordmap::FieldCtx& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, wordmap::group_order(F) - 1);
  return wordmap::element_at(F, d(rng));
}

inline wordmap::FieldElem random_field(const wordmap::FieldCtx& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, F.q() - 1);
  return F.elem(d(rng));
}

inline std::vector<wordmap::Mat2> all_elements(const wordmap::FieldCtx& F) {
  std::vector<wordmap::Mat2> g;
  wordmap::for_each_element(F, [&](const wordmap::Mat2& x) { g.push_back(x); });
  return g;
}

// Distinct values of x^n over the group, as element codes.
inline std::map<std::uint64_t, wordmap::Mat2> power_values(const std::vector<wordmap::Mat2>& G, std::int64_t n) {
  std::map<std::uint64_t, wordmap::Mat2> out;
  for (const auto& x : G) {
    auto v = wordmap::mat_pow_signed(x, n);
    out.emplace(v.code(), v);
  }
  return out;
}

// Image of x^a y^b by direct products of all a-th and b-th powers.
inline std::set<std::uint64_t> brute_image(const std::vector<wordmap::Mat2>& G, std::int64_t a, std::int64_t b) {
  const auto pa = power_values(G, a), pb = power_values(G, b);
  std::set<std::uint64_t> img;
  for (const auto& [ca, X] : pa)
    for (const auto& [cb, Y] : pb) img.insert((X * Y).code());
  return img;
}

}  // namespace testing_support
