#include "wordmap/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <tuple>

#include "wordmap/arith.hpp"

namespace wordmap {

std::uint64_t size_limit(std::uint64_t default_limit) {
  if (const char* env = std::getenv("WORDMAP_MAX_Q"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return default_limit;
}

void check_size(const FieldCtx& F, std::uint64_t limit, const char* what) {
  if (F.q() > limit)
    throw SizeLimitExceeded(std::string(what) + ": q=" + std::to_string(F.q()) + " exceeds the limit q <= " +
                            std::to_string(limit) + " (raise with WORDMAP_MAX_Q)");
}

ClassTable::ClassTable(std::shared_ptr<const FieldCtx> F, std::uint64_t max_q) : F_(std::move(F)) {
  check_size(*F_, max_q, "image");
  classes_ = enumerate_classes(*F_);
  if (classes_.size() > kMaxClasses) throw SizeLimitExceeded("too many conjugacy classes");
  for (std::size_t i = 0; i < classes_.size(); ++i) index_[classes_[i].cls.key()] = i;
  for (const auto& c : classes_) neg_.push_back(index_of(-c.rep));
  id_ = index_of(Mat2::identity(*F_));
  mid_ = index_of(Mat2::minus_identity(*F_));
  exp_ = group_params(*F_).exp_sl;

  const std::size_t n = classes_.size();
  prod_.assign(n, std::vector<ClassMask>(n));
  for_each_element(*F_, [&](const Mat2& y) {
    const std::size_t j = index_of(y);
    for (std::size_t i = 0; i < n; ++i) prod_[i][j].set(index_of(classes_[i].rep * y));
  });
}

ClassMask ClassTable::all() const {
  ClassMask m;
  for (std::size_t i = 0; i < classes_.size(); ++i) m.set(i);
  return m;
}

const ClassMask& ClassTable::power_mask(std::int64_t a) {
  const std::uint64_t r = arith::mod(a, exp_);
  auto it = power_memo_.find(r);
  if (it == power_memo_.end()) {
    ClassMask m;
    for (const auto& c : classes_) m.set(index_of(mat_pow(c.rep, r)));
    auto [mi, fresh] = mask_ids_.try_emplace(m, masks_.size());
    if (fresh) masks_.push_back(m);
    it = power_memo_.emplace(r, mi->second).first;
  }
  return masks_[it->second];
}

ClassMask ClassTable::image_mask(std::int64_t a, std::int64_t b) {
  const std::size_t ia = mask_ids_.at(power_mask(a));
  const std::size_t ib = mask_ids_.at(power_mask(b));
  const std::uint64_t key = (std::uint64_t{ia} << 32) | ib;
  if (auto it = image_memo_.find(key); it != image_memo_.end()) return it->second;
  const ClassMask &pa = masks_[ia], &pb = masks_[ib];
  ClassMask img;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (!pa.test(i)) continue;
    for (std::size_t j = 0; j < classes_.size(); ++j)
      if (pb.test(j)) img |= prod_[i][j];
  }
  image_memo_.emplace(key, img);
  return img;
}

bool ClassTable::covers(const ClassMask& img, Target t) const {
  switch (t) {
    case Target::SLEven:
    case Target::SLFull: return img == all();
    case Target::SLOddMinusId: {
      ClassMask m = img;
      m.set(mid_);
      return m == all();
    }
    case Target::PSL:
      for (std::size_t i = 0; i < classes_.size(); ++i)
        if (!img.test(i) && !img.test(neg_[i])) return false;
      return true;
  }
  return false;
}

ImageReport image_classes(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F, std::uint64_t max_q) {
  ClassTable T(F, max_q);
  const ClassMask img = T.image_mask(a, b);
  ImageReport r;
  r.q = F->q();
  r.a = a;
  r.b = b;
  for (std::size_t i = 0; i < T.size(); ++i) (img.test(i) ? r.covered : r.missing).push_back(T.classes()[i].cls.key());
  r.id_hit = img.test(T.identity_index());
  r.minus_id_hit = img.test(T.minus_identity_index());
  return r;
}

namespace {

std::map<ClassKey, std::size_t> key_index(const std::vector<ClassInfo>& classes) {
  std::map<ClassKey, std::size_t> m;
  for (std::size_t i = 0; i < classes.size(); ++i) m[classes[i].cls.key()] = i;
  return m;
}

void summarize(FiberReport& r) {
  const std::uint64_t q = r.q, q3 = q * q * q;
  r.D = r.a + r.b - 1;
  r.A1 = 2 * (3 + r.D);
  r.A2 = 4 * r.D * r.D + 32 * r.D + 5;
  unsigned __int128 total = 0;
  r.S_count = 0;
  r.max_relative_delta = 0;
  for (const auto& c : r.classes) {
    total += static_cast<unsigned __int128>(c.class_size) * c.fiber;
    const std::uint64_t dev = c.fiber > q3 ? c.fiber - q3 : q3 - c.fiber;
    if (r.A2 >= 0 && dev <= std::uint64_t(r.A2) * q * q) {
      r.S_count += c.class_size;
      r.max_relative_delta = std::max(r.max_relative_delta, double(dev) / double(q3));
    }
  }
  const unsigned __int128 G = r.group_order;
  r.conserved = total == G * G;
  r.epsilon_observed = 1.0 - double(r.S_count) / double(r.group_order);
  const __int128 lhs = static_cast<__int128>(q) * r.S_count;
  const __int128 rhs = (static_cast<__int128>(q) - r.A1) * static_cast<__int128>(r.group_order);
  r.pass = r.conserved && lhs >= rhs;
}

}  // namespace

FiberReport fiber_sizes(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> Fp, unsigned workers,
                        std::uint64_t max_q) {
  const FieldCtx& F = *Fp;
  check_size(F, max_q, "fibers");
  const auto classes = enumerate_classes(F);
  const auto idx = key_index(classes);
  const std::uint64_t es = group_params(F).exp_sl;
  const std::uint64_t A = arith::mod(a, es), B = arith::mod(b, es);

  std::vector<Mat2> ypow;
  ypow.reserve(group_order(F));
  for_each_element(F, [&](const Mat2& y) { ypow.push_back(mat_pow(y, B)); });

  const std::size_t n = classes.size();
  std::vector<std::vector<std::uint64_t>> per_class(n, std::vector<std::uint64_t>(n, 0));
  auto work = [&](std::size_t w, std::size_t nw) {
    for (std::size_t i = w; i < n; i += nw) {
      const Mat2 X = mat_pow(classes[i].rep, A);
      auto& cnt = per_class[i];
      for (const Mat2& Y : ypow) ++cnt[idx.at(class_key(X * Y))];
    }
  };
  const std::size_t nw = std::max<unsigned>(1, workers);
  if (nw == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(work, w, nw);
    for (auto& t : pool) t.join();
  }

  std::vector<unsigned __int128> weighted(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) weighted[k] += static_cast<unsigned __int128>(classes[i].cls.class_size) * per_class[i][k];

  FiberReport r;
  r.q = F.q();
  r.a = a;
  r.b = b;
  r.group_order = group_order(F);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t size = classes[k].cls.class_size;
    if (weighted[k] % size != 0) throw Error("internal", "fiber not constant on a class");
    r.classes.push_back({classes[k].cls.key(), size, static_cast<std::uint64_t>(weighted[k] / size)});
  }
  summarize(r);
  return r;
}

FiberReport equidist_check(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F, unsigned workers,
                           std::uint64_t max_q) {
  return fiber_sizes(a, b, std::move(F), workers, max_q);
}

std::vector<ClassFiber> fiber_sizes_direct(std::int64_t a, std::int64_t b, const FieldCtx& F, std::uint64_t max_q) {
  check_size(F, max_q, "direct fibers");
  const std::uint64_t es = group_params(F).exp_sl;
  const std::uint64_t A = arith::mod(a, es), B = arith::mod(b, es);
  std::vector<Mat2> xp, yp;
  for_each_element(F, [&](const Mat2& x) {
    xp.push_back(mat_pow(x, A));
    yp.push_back(mat_pow(x, B));
  });
  std::vector<std::uint64_t> count(group_order(F), 0);
  for (const Mat2& X : xp)
    for (const Mat2& Y : yp) ++count[index_of(X * Y)];

  const auto classes = enumerate_classes(F);
  const auto idx = key_index(classes);
  std::vector<ClassFiber> out;
  for (const auto& c : classes) out.push_back({c.cls.key(), c.cls.class_size, 0});
  std::vector<bool> seen(classes.size(), false);
  for_each_element(F, [&](const Mat2& g) {
    const std::size_t k = idx.at(class_key(g));
    const std::uint64_t m = count[index_of(g)];
    if (!seen[k]) {
      out[k].fiber = m;
      seen[k] = true;
    } else if (out[k].fiber != m) {
      throw Error("internal", "fiber not constant on a class");
    }
  });
  return out;
}

std::vector<PslFiber> psl_fibers(std::int64_t a, std::int64_t b, std::shared_ptr<const FieldCtx> F, unsigned workers,
                                 std::uint64_t max_q) {
  if (F->even()) throw EvenQ("PSL(2,q) = SL(2,q) for even q");
  const FiberReport r = fiber_sizes(a, b, F, workers, max_q);
  const auto classes = enumerate_classes(*F);
  const auto idx = key_index(classes);
  std::vector<PslFiber> out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const std::size_t nk = idx.at(class_key(-classes[k].rep));
    if (nk < k) continue;
    out.push_back({classes[k].cls.key(), (r.classes[k].fiber + r.classes[nk].fiber) / 4});
  }
  return out;
}

std::vector<PslFiber> psl_fibers_direct(std::int64_t a, std::int64_t b, const FieldCtx& F, std::uint64_t max_q) {
  if (F.even()) throw EvenQ("PSL(2,q) = SL(2,q) for even q");
  check_size(F, max_q, "direct PSL fibers");
  const std::uint64_t es = group_params(F).exp_sl;
  const std::uint64_t A = arith::mod(a, es), B = arith::mod(b, es);
  std::vector<Mat2> psl;
  for_each_element(F, [&](const Mat2& x) {
    if (psl_rep(x) == x) psl.push_back(x);
  });
  std::vector<Mat2> xp, yp;
  for (const Mat2& x : psl) {
    xp.push_back(mat_pow(x, A));
    yp.push_back(mat_pow(x, B));
  }
  auto psl_key = [](const Mat2& g) { return std::min(class_key(g), class_key(-g)); };
  std::map<ClassKey, std::uint64_t> hits, size;
  for (const Mat2& x : psl) ++size[psl_key(x)];
  for (const Mat2& X : xp)
    for (const Mat2& Y : yp) ++hits[psl_key(X * Y)];
  std::vector<PslFiber> out;
  for (const auto& [k, s] : size) out.push_back({k, hits[k] / s});
  return out;
}

FieldElem p_value(FieldElem s, FieldElem u, FieldElem t) {
  return s * s + u * u + t * t - u * s * t - s.ctx().from_int(4);
}

std::map<TraceCodes, std::uint64_t> pi_fiber_table(const FieldCtx& F, std::uint64_t max_q) {
  check_size(F, max_q, "pi fibers");
  std::vector<Mat2> G;
  for_each_element(F, [&](const Mat2& x) { G.push_back(x); });
  std::map<TraceCodes, std::uint64_t> table;
  for (const Mat2& x : G) {
    const std::uint32_t s = x.trace().code();
    for (const Mat2& y : G) ++table[{s, (x * y).trace().code(), y.trace().code()}];
  }
  return table;
}

std::uint64_t pi_fiber_size(FieldElem s, FieldElem u, FieldElem t, std::uint64_t max_q) {
  const FieldCtx& F = s.ctx();
  check_size(F, max_q, "pi fibers");
  std::uint64_t n = 0;
  for_each_element(F, [&](const Mat2& x) {
    if (x.trace() != s) return;
    for_each_element(F, [&](const Mat2& y) {
      if (y.trace() == t && (x * y).trace() == u) ++n;
    });
  });
  return n;
}

std::vector<Target> targets_for(std::uint64_t q) {
  if (q % 2 == 0) return {Target::SLEven};
  return {Target::SLFull, Target::SLOddMinusId, Target::PSL};
}

GridReport verify_grid(std::uint64_t q, unsigned workers, std::uint64_t max_q) {
  auto F = make_field_q(q);
  check_size(*F, max_q, "verify_grid");
  const std::uint64_t lim = exp_sl(q) / 2;
  const auto ts = targets_for(q);
  workers = std::max(1u, std::min<unsigned>(workers, unsigned(lim + 1)));

  std::vector<std::vector<GridMismatch>> found(workers);
  auto job = [&](unsigned w) {
    ClassTable T(F, max_q);
    for (std::uint64_t a = w; a <= lim; a += workers)
      for (std::uint64_t b = 0; b <= lim; ++b) {
        const ClassMask img = T.image_mask(std::int64_t(a), std::int64_t(b));
        for (Target t : ts) {
          const bool d = decide(std::int64_t(a), std::int64_t(b), q, t).surjective;
          const bool o = T.covers(img, t);
          if (d != o) found[w].push_back({a, b, t, d, o});
        }
      }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& th : pool) th.join();
  }

  GridReport r;
  r.q = q;
  r.pairs = (lim + 1) * (lim + 1);
  r.checks = r.pairs * ts.size();
  r.report_only = q <= 3;
  for (auto& v : found) r.mismatches.insert(r.mismatches.end(), v.begin(), v.end());
  std::sort(r.mismatches.begin(), r.mismatches.end(), [](const GridMismatch& x, const GridMismatch& y) {
    return std::tie(x.a, x.b, x.target) < std::tie(y.a, y.b, y.target);
  });
  return r;
}

}  // namespace wordmap
