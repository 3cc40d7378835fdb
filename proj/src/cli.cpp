#include "wordmap/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "wordmap/analysis.hpp"
#include "wordmap/errors.hpp"
#include "wordmap/oracle.hpp"
#include "wordmap/tracepoly.hpp"

namespace wordmap::cli {
namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kScanMaxPoints = 10'000'000;

struct Common {
  std::string format = "human";
  std::string output;
  unsigned workers = 1;
  std::uint64_t max_q = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "human, json (one record per line) or csv")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  sub->add_option("--output", c.output, "write to this file instead of stdout");
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--max-q", c.max_q, "override the size limit (same as WORDMAP_MAX_Q)");
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s, const char* flag) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const std::int64_t v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    const std::int64_t a = std::stoll(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(s);
    const std::int64_t b = std::stoll(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(s);
    if (a > b) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + ": expected N or A..B with A <= B, got '" + s + "'");
  }
}

bool is_prime_power(std::uint64_t q) {
  try {
    q_params(q);
    return true;
  } catch (const NotPrimePower&) {
    return false;
  }
}

// --q or --q-range; in a range, non prime powers are skipped.
std::vector<std::uint64_t> q_list(std::optional<std::uint64_t> q, const std::string& range) {
  if (q && !range.empty()) throw UsageError("--q and --q-range are mutually exclusive");
  if (q) {
    q_params(*q);
    return {*q};
  }
  if (range.empty()) throw UsageError("--q or --q-range is required");
  const auto [lo, hi] = parse_range(range, "--q-range");
  if (lo < 2) throw UsageError("--q-range: q must be at least 2");
  std::vector<std::uint64_t> out;
  for (std::int64_t v = lo; v <= hi; ++v)
    if (is_prime_power(std::uint64_t(v))) out.push_back(std::uint64_t(v));
  return out;
}

FieldElem parse_elem(const FieldCtx& F, std::int64_t v) {
  if (v < 0 || F.e() == 1) return F.from_int(v);
  return F.elem(std::uint32_t(v));
}

json header(std::optional<std::uint64_t> q, std::optional<std::int64_t> a, std::optional<std::int64_t> b,
            std::optional<Target> target) {
  json r;
  r["version"] = kVersion;
  r["q"] = nullptr;
  r["p"] = nullptr;
  r["e"] = nullptr;
  r["a"] = a ? json(*a) : json(nullptr);
  r["b"] = b ? json(*b) : json(nullptr);
  r["a_norm"] = nullptr;
  r["b_norm"] = nullptr;
  r["target"] = target ? json(target_name(*target)) : json(nullptr);
  if (q) {
    const auto [p, e] = q_params(*q);
    r["q"] = *q;
    r["p"] = p;
    r["e"] = e;
    if (a && b) {
      const WordAB w = normalize(*a, *b, *q, target.value_or(Target::SLFull));
      r["a_norm"] = w.a_norm;
      r["b_norm"] = w.b_norm;
    }
  }
  return r;
}

json mat_json(const Mat2& m) {
  return json::array({json::array({m.a.code(), m.b.code()}), json::array({m.c.code(), m.d.code()})});
}

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_null()) return s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_string(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i].get<std::string>();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

// Buffers everything; written once at the end so --output can be atomic.
class Sink {
 public:
  explicit Sink(const Common& c) : format_(c.format) {}
  bool human() const { return format_ == "human"; }
  std::ostream& text() { return buf_; }

  void record(const json& r, const std::vector<std::string>& csv_columns) {
    if (format_ == "json") {
      buf_ << r.dump() << '\n';
    } else if (format_ == "csv") {
      if (!csv_header_) {
        for (std::size_t i = 0; i < csv_columns.size(); ++i) buf_ << (i ? "," : "") << csv_columns[i];
        buf_ << '\n';
        csv_header_ = true;
      }
      for (std::size_t i = 0; i < csv_columns.size(); ++i)
        buf_ << (i ? "," : "") << csv_cell(r.value(csv_columns[i], json(nullptr)));
      buf_ << '\n';
    }
  }

  void flush(const std::string& path, std::ostream& out) const {
    const std::string data = buf_.str();
    if (path.empty()) {
      out << data;
      return;
    }
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw UsageError("--output: cannot open " + tmp);
      f << data;
      f.close();
      if (!f) throw UsageError("--output: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
      std::remove(tmp.c_str());
      throw UsageError("--output: cannot rename onto " + path);
    }
  }

 private:
  std::string format_;
  std::ostringstream buf_;
  bool csv_header_ = false;
};

const std::vector<std::string> kBaseColumns = {"q", "p", "e", "a", "b", "a_norm", "b_norm", "target"};

std::vector<std::string> columns(std::initializer_list<std::string> extra) {
  std::vector<std::string> c = kBaseColumns;
  c.insert(c.end(), extra);
  c.push_back("version");
  return c;
}

json verdict_json(std::uint64_t q, std::int64_t a, std::int64_t b, const Verdict& v) {
  json r = header(q, a, b, v.target);
  r["surjective"] = v.surjective;
  json reasons = json::array();
  for (Reason x : v.reasons) reasons.push_back(reason_name(x));
  r["reasons"] = reasons;
  r["K"] = v.K ? json(*v.K) : json(nullptr);
  r["shortcut"] = v.shortcut.empty() ? json(nullptr) : json(v.shortcut);
  r["degenerate"] = is_degenerate(a, b, q).any();
  return r;
}

std::string verdict_text(std::uint64_t q, std::int64_t a, std::int64_t b, const Verdict& v) {
  std::ostringstream os;
  os << "q=" << q << " a=" << a << " b=" << b << " target=" << target_name(v.target) << ": "
     << (v.surjective ? "surjective" : "not surjective");
  if (!v.reasons.empty()) {
    os << " (";
    bool first = true;
    for (Reason x : v.reasons) {
      os << (first ? "" : ", ") << reason_name(x);
      first = false;
    }
    os << ")";
  }
  if (!v.shortcut.empty()) os << " [" << v.shortcut << "]";
  return os.str();
}

template <class Job>
void parallel_for(std::size_t n, unsigned workers, Job job) {
  workers = unsigned(std::max<std::size_t>(1, std::min<std::size_t>(workers, n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) job(i);
    });
  for (auto& t : pool) t.join();
}

// ---- subcommands ----

struct WordOpts {
  std::optional<std::uint64_t> q;
  std::string q_range;
  std::int64_t a = 0, b = 0;
  std::string target = "sl_full";
};

int cmd_decide(const WordOpts& o, Sink& sink) {
  if (!o.q) throw UsageError("--q is required");
  const Verdict v = decide(o.a, o.b, *o.q, parse_target(o.target));
  if (sink.human())
    sink.text() << verdict_text(*o.q, o.a, o.b, v) << '\n';
  else
    sink.record(verdict_json(*o.q, o.a, o.b, v), columns({"surjective", "reasons", "K", "shortcut", "degenerate"}));
  return 0;
}

int cmd_verify(const WordOpts& o, bool all_normalized, bool have_ab, const Common& c, Sink& sink) {
  if (all_normalized == have_ab) throw UsageError("verify: give either --all-normalized or both -a and -b");
  bool failed = false;
  std::uint64_t total_mismatch = 0;
  const auto cols = columns({"kind", "pairs", "checks", "mismatches", "report_only", "decide", "oracle"});
  for (std::uint64_t q : q_list(o.q, o.q_range)) {
    if (all_normalized) {
      const GridReport g = verify_grid(q, c.workers);
      const bool counts = !g.report_only;
      if (counts && !g.mismatches.empty()) failed = true;
      if (counts) total_mismatch += g.mismatches.size();
      if (sink.human()) {
        sink.text() << "q=" << q << " pairs=" << g.pairs << " checks=" << g.checks
                    << " mismatches=" << g.mismatches.size() << (g.report_only ? " (report only)" : "") << '\n';
        for (const auto& m : g.mismatches)
          sink.text() << "  mismatch a=" << m.a << " b=" << m.b << " target=" << target_name(m.target)
                      << " decide=" << m.decided << " oracle=" << m.observed << '\n';
      } else {
        json r = header(q, std::nullopt, std::nullopt, std::nullopt);
        r["kind"] = "summary";
        r["pairs"] = g.pairs;
        r["checks"] = g.checks;
        r["mismatches"] = g.mismatches.size();
        r["report_only"] = g.report_only;
        sink.record(r, cols);
        for (const auto& m : g.mismatches) {
          json x = header(q, std::int64_t(m.a), std::int64_t(m.b), m.target);
          x["kind"] = "mismatch";
          x["decide"] = m.decided;
          x["oracle"] = m.observed;
          x["report_only"] = g.report_only;
          sink.record(x, cols);
        }
      }
      continue;
    }
    ClassTable T(make_field_q(q));
    const ClassMask img = T.image_mask(o.a, o.b);
    for (Target t : targets_for(q)) {
      const bool d = decide(o.a, o.b, q, t).surjective, ob = T.covers(img, t);
      if (d != ob && q > 3) {
        failed = true;
        ++total_mismatch;
      }
      if (sink.human()) {
        sink.text() << "q=" << q << " a=" << o.a << " b=" << o.b << " target=" << target_name(t)
                    << " decide=" << (d ? "surjective" : "not surjective")
                    << " oracle=" << (ob ? "surjective" : "not surjective") << (d == ob ? "" : "  MISMATCH")
                    << '\n';
      } else {
        json r = header(q, o.a, o.b, t);
        r["kind"] = "pair";
        r["decide"] = d;
        r["oracle"] = ob;
        r["mismatches"] = d == ob ? 0 : 1;
        r["report_only"] = q <= 3;
        sink.record(r, cols);
      }
    }
  }
  if (sink.human()) sink.text() << "total mismatches: " << total_mismatch << '\n';
  return failed ? 1 : 0;
}

int cmd_fibers(const WordOpts& o, bool psl, const Common& c, Sink& sink) {
  if (!o.q) throw UsageError("--q is required");
  auto F = make_field_q(*o.q);
  const double q = double(*o.q), q3 = q * q * q;
  const auto cols = columns({"class", "class_size", "fiber", "deviation"});
  if (psl) {
    const auto rows = psl_fibers(o.a, o.b, F, c.workers);
    for (const auto& pf : rows) {
      const double dev = (double(pf.fiber) - q3 / 2) / (q * q);
      if (sink.human()) {
        sink.text() << pf.key.str() << " fiber=" << pf.fiber << '\n';
      } else {
        json r = header(*o.q, o.a, o.b, Target::PSL);
        r["class"] = pf.key.str();
        r["class_size"] = nullptr;
        r["fiber"] = pf.fiber;
        r["deviation"] = dev;
        sink.record(r, cols);
      }
    }
    return 0;
  }
  const FiberReport rep = equidist_check(o.a, o.b, F, c.workers);
  if (sink.human()) {
    sink.text() << "q=" << rep.q << " a=" << rep.a << " b=" << rep.b << " |G|=" << rep.group_order << " D=" << rep.D
                << " A1=" << rep.A1 << " A2=" << rep.A2 << " S=" << rep.S_count
                << " conserved=" << (rep.conserved ? "yes" : "no") << " pass=" << (rep.pass ? "yes" : "no") << '\n';
    for (const auto& cf : rep.classes)
      sink.text() << "  " << cf.key.str() << " size=" << cf.class_size << " fiber=" << cf.fiber << '\n';
    return 0;
  }
  if (c.format == "csv") {
    for (const auto& cf : rep.classes) {
      json r = header(*o.q, o.a, o.b, Target::SLFull);
      r["class"] = cf.key.str();
      r["class_size"] = cf.class_size;
      r["fiber"] = cf.fiber;
      r["deviation"] = (double(cf.fiber) - q3) / (q * q);
      sink.record(r, cols);
    }
    return 0;
  }
  json r = header(*o.q, o.a, o.b, Target::SLFull);
  r["group_order"] = rep.group_order;
  r["D"] = rep.D;
  r["A1"] = rep.A1;
  r["A2"] = rep.A2;
  r["S_count"] = rep.S_count;
  r["epsilon_observed"] = rep.epsilon_observed;
  r["max_relative_delta"] = rep.max_relative_delta;
  r["conserved"] = rep.conserved;
  r["pass"] = rep.pass;
  json cls = json::array();
  for (const auto& cf : rep.classes)
    cls.push_back({{"class", cf.key.str()}, {"class_size", cf.class_size}, {"fiber", cf.fiber}});
  r["classes"] = cls;
  sink.record(r, {});
  return 0;
}

int cmd_tracepoly(std::int64_t a, std::int64_t b, const std::string& word, Sink& sink) {
  json r = header(std::nullopt, std::nullopt, std::nullopt, std::nullopt);
  std::string P;
  if (!word.empty()) {
    std::vector<long> e;
    std::stringstream ss(word);
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        e.push_back(std::stol(tok));
      } catch (const std::logic_error&) {
        throw UsageError("--word: bad exponent '" + tok + "'");
      }
    }
    if (e.empty() || e.size() % 2) throw UsageError("--word: expected a1,b1,...,ak,bk");
    std::vector<std::pair<long, long>> raw;
    for (std::size_t i = 0; i < e.size(); i += 2) raw.emplace_back(e[i], e[i + 1]);
    const WordSpec w = WordSpec::from_exponents(raw);
    P = word_trace_poly(w).str();
    r["word"] = w.str();
  } else {
    if (a < 1 || b < 1) throw NonPositiveWord("tracepoly needs a, b >= 1");
    const FHPair fh = fh_pair(unsigned(a), unsigned(b));
    P = fh.full().str();
    r["a"] = a;
    r["b"] = b;
    r["f"] = fh.f.str();
    r["h"] = fh.h.str();
  }
  r["P"] = P;
  if (sink.human())
    sink.text() << "P = " << P << '\n';
  else
    sink.record(r, columns({"word", "f", "h", "P"}));
  return 0;
}

int cmd_lift(std::optional<std::uint64_t> q, std::int64_t s, std::int64_t u, std::int64_t t, Sink& sink) {
  if (!q) throw UsageError("--q is required");
  auto F = make_field_q(*q);
  const FieldElem S = parse_elem(*F, s), U = parse_elem(*F, u), T = parse_elem(*F, t);
  const auto [x, y] = macbeath_lift(S, U, T);
  const bool ok = x.trace() == S && (x * y).trace() == U && y.trace() == T;
  if (sink.human()) {
    sink.text() << "x = " << x.str() << "\ny = " << y.str() << "\nverified: " << (ok ? "yes" : "no") << '\n';
  } else {
    json r = header(*q, std::nullopt, std::nullopt, std::nullopt);
    r["s"] = S.code();
    r["u"] = U.code();
    r["t"] = T.code();
    r["x"] = mat_json(x);
    r["y"] = mat_json(y);
    r["verified"] = ok;
    sink.record(r, columns({"s", "u", "t", "x", "y", "verified"}));
  }
  return ok ? 0 : 1;
}

int cmd_solve(const WordOpts& o, const std::vector<std::int64_t>& zv, const Common& c, Sink& sink) {
  if (!o.q) throw UsageError("--q is required");
  if (zv.size() != 4) throw UsageError("--z: expected four entries a,b,c,d");
  auto F = make_field_q(*o.q);
  const Mat2 z = Mat2::make(parse_elem(*F, zv[0]), parse_elem(*F, zv[1]), parse_elem(*F, zv[2]), parse_elem(*F, zv[3]));
  const SolveResult res = solve(z, o.a, o.b, c.max_q ? c.max_q : size_limit(kSolveSearchMaxQ));
  if (sink.human()) {
    sink.text() << "z = " << z.str() << '\n';
    if (res.found())
      sink.text() << "x = " << res.witness->first.str() << "\ny = " << res.witness->second.str()
                  << "\nroute: " << res.route << '\n';
    else
      sink.text() << "not in image: " << (res.reason ? reason_name(*res.reason) : "no witness") << '\n';
  } else {
    json r = header(*o.q, o.a, o.b, Target::SLFull);
    r["z"] = mat_json(z);
    r["found"] = res.found();
    r["route"] = res.route.empty() ? json(nullptr) : json(res.route);
    r["x"] = res.found() ? mat_json(res.witness->first) : json(nullptr);
    r["y"] = res.found() ? mat_json(res.witness->second) : json(nullptr);
    r["reason"] = res.reason ? json(reason_name(*res.reason)) : json(nullptr);
    sink.record(r, columns({"z", "found", "route", "x", "y", "reason"}));
  }
  return 0;
}

int cmd_scan(const WordOpts& o, const std::string& a_range, const std::string& b_range, const Common& c,
             Sink& sink) {
  const auto [a0, a1] = parse_range(a_range, "--a-range");
  const auto [b0, b1] = parse_range(b_range, "--b-range");
  const Target requested = parse_target(o.target);
  const auto qs = q_list(o.q, o.q_range);
  const std::uint64_t per_q = std::uint64_t(a1 - a0 + 1) * std::uint64_t(b1 - b0 + 1);
  if (per_q > kScanMaxPoints || per_q * qs.size() > kScanMaxPoints)
    throw SizeLimitExceeded("scan grid exceeds " + std::to_string(kScanMaxPoints) + " points");

  struct Job {
    std::uint64_t q;
    std::int64_t a, b;
    std::uint64_t folded = 1;  // raw pairs sharing this normalized pair
  };
  std::vector<Job> jobs;
  for (std::uint64_t q : qs) {
    const Target t = effective_target(q, requested);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> seen;
    for (std::int64_t a = a0; a <= a1; ++a)
      for (std::int64_t b = b0; b <= b1; ++b) {
        const WordAB w = normalize(a, b, q, t);
        auto [it, fresh] = seen.emplace(std::pair{w.a_norm, w.b_norm}, jobs.size());
        if (fresh)
          jobs.push_back({q, a, b});
        else
          ++jobs[it->second].folded;
      }
  }
  std::vector<Verdict> out(jobs.size());
  parallel_for(jobs.size(), c.workers, [&](std::size_t i) {
    out[i] = decide(jobs[i].a, jobs[i].b, jobs[i].q, requested);
  });
  const auto cols = columns({"surjective", "reasons", "K", "shortcut", "degenerate", "folded"});
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (sink.human()) {
      sink.text() << verdict_text(jobs[i].q, jobs[i].a, jobs[i].b, out[i]) << '\n';
    } else {
      json r = verdict_json(jobs[i].q, jobs[i].a, jobs[i].b, out[i]);
      r["folded"] = jobs[i].folded;
      sink.record(r, cols);
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word maps x^a y^b on SL(2,q) and PSL(2,q)", "wordmap"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common c;
  WordOpts w;
  bool all_normalized = false, psl = false;
  std::string word, a_range, b_range;
  std::int64_t s = 0, u = 0, t = 0;
  std::vector<std::int64_t> z;

  auto add_q = [&](CLI::App* sub, bool range) {
    sub->add_option("--q", w.q, "field order (prime power)");
    if (range) sub->add_option("--q-range", w.q_range, "A..B, non prime powers skipped");
  };
  auto add_ab = [&](CLI::App* sub, bool required) {
    auto* oa = sub->add_option("-a", w.a, "exponent of x");
    auto* ob = sub->add_option("-b", w.b, "exponent of y");
    if (required) {
      oa->required();
      ob->required();
    }
    return std::pair{oa, ob};
  };

  auto* decide_cmd = app.add_subcommand("decide", "decide surjectivity of x^a y^b");
  add_q(decide_cmd, false);
  add_ab(decide_cmd, true);
  decide_cmd->add_option("--target", w.target, "sl_full, sl_odd, psl, sl_even");
  add_common(decide_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify", "compare decide with the exhaustive oracle");
  add_q(verify_cmd, true);
  auto [va, vb] = add_ab(verify_cmd, false);
  verify_cmd->add_flag("--all-normalized", all_normalized, "every (a,b) with a, b <= exp/2");
  add_common(verify_cmd, c);

  auto* fibers_cmd = app.add_subcommand("fibers", "fiber sizes |w^-1(g)| per conjugacy class");
  add_q(fibers_cmd, false);
  add_ab(fibers_cmd, true);
  fibers_cmd->add_flag("--psl", psl, "fibers of the induced map on PSL(2,q)");
  add_common(fibers_cmd, c);

  auto* tp_cmd = app.add_subcommand("tracepoly", "trace polynomial of x^a y^b or of a positive word");
  auto [ta, tb] = add_ab(tp_cmd, false);
  tp_cmd->add_option("--word", word, "a1,b1,...,ak,bk");
  add_common(tp_cmd, c);

  auto* lift_cmd = app.add_subcommand("lift", "x, y with prescribed traces (tr x, tr xy, tr y)");
  add_q(lift_cmd, false);
  lift_cmd->add_option("--s", s, "tr x")->required();
  lift_cmd->add_option("--u", u, "tr xy")->required();
  lift_cmd->add_option("--t", t, "tr y")->required();
  add_common(lift_cmd, c);

  auto* solve_cmd = app.add_subcommand("solve", "find x, y with x^a y^b = z");
  add_q(solve_cmd, false);
  add_ab(solve_cmd, true);
  solve_cmd->add_option("--z", z, "entries a,b,c,d")->delimiter(',')->required();
  add_common(solve_cmd, c);

  auto* scan_cmd = app.add_subcommand("scan", "verdicts over a grid of (q, a, b)");
  add_q(scan_cmd, true);
  scan_cmd->add_option("--a-range", a_range, "A..B")->required();
  scan_cmd->add_option("--b-range", b_range, "A..B")->required();
  scan_cmd->add_option("--target", w.target, "sl_full, sl_odd, psl, sl_even");
  add_common(scan_cmd, c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c.max_q) ::setenv("WORDMAP_MAX_Q", std::to_string(c.max_q).c_str(), 1);
    Sink sink(c);
    int rc = 0;
    if (decide_cmd->parsed()) {
      rc = cmd_decide(w, sink);
    } else if (verify_cmd->parsed()) {
      const bool have_a = va->count() > 0, have_b = vb->count() > 0;
      if (have_a != have_b) throw UsageError("verify: -a and -b go together");
      rc = cmd_verify(w, all_normalized, have_a, c, sink);
    } else if (fibers_cmd->parsed()) {
      rc = cmd_fibers(w, psl, c, sink);
    } else if (tp_cmd->parsed()) {
      const bool have_ab = ta->count() > 0 && tb->count() > 0;
      if (have_ab == !word.empty()) throw UsageError("tracepoly: give either -a and -b or --word");
      rc = cmd_tracepoly(w.a, w.b, word, sink);
    } else if (lift_cmd->parsed()) {
      rc = cmd_lift(w.q, s, u, t, sink);
    } else if (solve_cmd->parsed()) {
      rc = cmd_solve(w, z, c, sink);
    } else if (scan_cmd->parsed()) {
      rc = cmd_scan(w, a_range, b_range, c, sink);
    }
    sink.flush(c.output, out);
    return rc;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace wordmap::cli
