#pragma once

// Exhaustive ground truth over SL(2,q): images, fibers, trace-triple counts.

#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "wordmap/analysis.hpp"
#include "wordmap/sl2.hpp"

namespace wordmap {

inline constexpr std::uint64_t kImageMaxQ = 16;
inline constexpr std::uint64_t kFiberMaxQ = 32;
inline constexpr std::uint64_t kPiMaxQ = 11;
inline constexpr std::uint64_t kDirectMaxQ = 7;

/// WORDMAP_MAX_Q overrides the built-in default when set.
std::uint64_t size_limit(std::uint64_t default_limit);
void check_size(const FieldCtx& F, std::uint64_t limit, const char* what);

inline constexpr std::size_t kMaxClasses = 256;
using ClassMask = std::bitset<kMaxClasses>;

/// Conjugacy classes of SL(2,q) together with the products r_i * C_j of each
/// class representative with each whole class.  Not thread-safe (memo tables).
class ClassTable {
 public:
  explicit ClassTable(std::shared_ptr<const FieldCtx> F, std::uint64_t max_q = size_limit(kImageMaxQ));

  const FieldCtx& field() const { return *F_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::size_t index(const ClassKey& k) const { return index_.at(k); }
  std::size_t index_of(const Mat2& g) const { return index(class_key(g)); }
  /// Class of -g for g in class i.
  std::size_t negation(std::size_t i) const { return neg_[i]; }
  std::size_t identity_index() const { return id_; }
  std::size_t minus_identity_index() const { return mid_; }
  ClassMask all() const;

  /// Classes met by x^a.
  const ClassMask& power_mask(std::int64_t a);
  /// Classes met by x^a y^b.
  ClassMask image_mask(std::int64_t a, std::int64_t b);
  bool covers(const ClassMask& img, Target t) const;

 private:
  std::shared_ptr<const FieldCtx> F_;
  std::vector<ClassInfo> classes_;
  std::map<ClassKey, std::size_t> index_;
  std::vector<std::size_t> neg_;
  std::size_t id_ = 0, mid_ = 0;
  std::uint64_t exp_ = 1;
  std::vector<std::vector<ClassMask>> prod_;
  std::unordered_map<std::uint64_t, std::size_t> power_memo_;
  std::vector<ClassMask> masks_;
  std::unordered_map<ClassMask, std::size_t> mask_ids_;
  std::unordered_map<std::uint64_t, ClassMask> image_memo_;
};

struct ImageReport {
  std::uint64_t q = 0;
  std::int64_t a = 0, b = 0;
  std::vector<ClassKey> covered, missing;
  bool id_hit = false, minus_id_hit = false;
};

ImageReport image_classes(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F,
                          std::uint64_t max_q = size_limit(kImageMaxQ));

struct ClassFiber {
  ClassKey key;
  std::uint64_t class_size = 0;
  std::uint64_t fiber = 0;
};

struct FiberReport {
  std::uint64_t q = 0;
  std::int64_t a = 0, b = 0;
  std::int64_t D = 0, A1 = 0, A2 = 0;
  std::uint64_t group_order = 0;
  std::vector<ClassFiber> classes;
  std::uint64_t S_count = 0;
  double epsilon_observed = 0, max_relative_delta = 0;
  bool conserved = false;
  bool pass = false;
};

/// Class-weighted count; the outer loop over class representatives is split
/// across `workers` threads and merged in class order.
FiberReport fiber_sizes(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F, unsigned workers = 1,
                        std::uint64_t max_q = size_limit(kFiberMaxQ));
/// Same fibers by a full |G|^2 loop (reference path).
std::vector<ClassFiber> fiber_sizes_direct(std::int64_t a, std::int64_t b, const FieldCtx& F,
                                           std::uint64_t max_q = size_limit(kDirectMaxQ));
/// Equidistribution check with the explicit constants A1, A2.
FiberReport equidist_check(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F, unsigned workers = 1,
                           std::uint64_t max_q = size_limit(kFiberMaxQ));

struct PslFiber {
  ClassKey key;  // smaller of the keys of z and -z
  std::uint64_t fiber = 0;
};

std::vector<PslFiber> psl_fibers(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F,
                                 unsigned workers = 1, std::uint64_t max_q = size_limit(kFiberMaxQ));
std::vector<PslFiber> psl_fibers_direct(std::int64_t a, std::int64_t b, const FieldCtx& F,
                                        std::uint64_t max_q = size_limit(9));

/// s^2 + u^2 + t^2 - ust - 4.
FieldElem p_value(FieldElem s, FieldElem u, FieldElem t);

using TraceCodes = std::array<std::uint32_t, 3>;  // (s, u, t)

std::uint64_t pi_fiber_size(FieldElem s, FieldElem u, FieldElem t, std::uint64_t max_q = size_limit(kPiMaxQ));
/// Counts for every triple in one pass over G x G.
std::map<TraceCodes, std::uint64_t> pi_fiber_table(const FieldCtx& F, std::uint64_t max_q = size_limit(kPiMaxQ));

struct GridMismatch {
  std::uint64_t a = 0, b = 0;
  Target target = Target::SLFull;
  bool decided = false, observed = false;
};

/// decide against the exhaustive image for every (a, b) in [0, exp_sl/2]^2 and
/// every target that applies to q.
struct GridReport {
  std::uint64_t q = 0;
  std::uint64_t pairs = 0, checks = 0;
  std::vector<GridMismatch> mismatches;
  bool report_only = false;  // q = 2, 3
};

/// Workers take interleaved rows of a, each with its own ClassTable.
GridReport verify_grid(std::uint64_t q, unsigned workers = 1, std::uint64_t max_q = size_limit(kImageMaxQ));

/// Targets meaningful for q: SL_even for even q, the other three for odd q.
std::vector<Target> targets_for(std::uint64_t q);

}  // namespace wordmap
