// Copyright 2026 The klein-ovoid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "klein_ovoid/errors.hpp"
#include "klein_ovoid/mpoly.hpp"
#include "klein_ovoid/ovoid.hpp"
#include "klein_ovoid/surface.hpp"

namespace klein {

struct FiredRule {
  std::string id;
  std::string detail;
};

enum class Verdict { kExcluded, kCandidateCase, kInconclusive };

inline std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kExcluded: return "excluded";
    case Verdict::kCandidateCase: return "candidate";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

inline constexpr int kHeadCase = 0;  // d1 = d2 = 1

struct ClassReport {
  DegreeStats stats;
  int d = 0;
  BoundReport bounds;
  bool threshold_ok = false;
  std::vector<FiredRule> fired_rules;
  std::vector<int> matched_cases;
  Verdict verdict = Verdict::kInconclusive;
  std::string reason;  // rule id, or why nothing was decided
  std::vector<std::string> notes;
  std::optional<bool> q4_section;
};

struct ClassifyOptions {
  std::uint64_t q4_check_max_q = 64;
};

namespace detail {

inline bool IsPowerOf(int n, std::uint64_t p) {
  if (n < 1) return false;
  std::uint64_t v = static_cast<std::uint64_t>(n);
  while (v % p == 0) v /= p;
  return v == 1;
}

inline std::string Show(int v) { return v == kDegNegInf ? "-inf" : std::to_string(v); }

inline std::string Show(const std::optional<int>& h) { return h ? std::to_string(*h) : "inf"; }

struct RuleInput {
  std::uint64_t p;
  int d1, d2, i1, i2, j1, j2;
  std::optional<int> h;
  MPoly f1, f2;
};

inline RuleInput MakeRuleInput(const OvoidSpec& s) {
  auto [f1, f2] = NormalizeB01(s.f1, s.f2);
  RuleInput in{s.field.p(), f1.degree(), f2.degree(), kDegNegInf, kDegNegInf,
               kDegNegInf, kDegNegInf, std::nullopt, f1, f2};
  for (const auto& [m, c] : f1.terms()) {
    in.i1 = std::max<int>(in.i1, m[0]);
    in.j1 = std::max<int>(in.j1, m[1]);
  }
  for (const auto& [m, c] : f2.terms()) {
    in.i2 = std::max<int>(in.i2, m[0]);
    in.j2 = std::max<int>(in.j2, m[1]);
    if (m[1] == 0 && m[0] > 0 && m[0] < in.d2) in.h = std::max(in.h.value_or(0), static_cast<int>(m[0]));
  }
  return in;
}

// Propositions that hold for any f1.
inline void GeneralRules(const RuleInput& in, std::vector<FiredRule>& out) {
  if (in.f1.is_zero() || in.f2.is_zero()) return;
  const int d = std::max(in.d1, in.d2);
  auto tag = [&] { return "d1=" + Show(in.d1) + " d2=" + Show(in.d2); };
  if (in.d1 == in.d2) {
    Elem a = in.f1.coeff({0, static_cast<std::uint64_t>(d)});
    Elem b = in.f2.coeff({static_cast<std::uint64_t>(d), 0});
    if (a == 0 || b == 0) out.push_back({"prop-degrees-1", tag() + " a_{0,d} b_{d,0} = 0"});
  }
  if (in.d1 > in.d2) {
    for (int i = 1; i <= d; ++i) {
      if (in.f1.coeff({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(d - i)}) != 0) {
        out.push_back({"prop-degrees-2", tag() + " a_{" + std::to_string(i) + "," + std::to_string(d - i) + "} != 0"});
        break;
      }
    }
  }
  if (in.d2 > in.d1) {
    for (int i = 0; i < d; ++i) {
      if (in.f2.coeff({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(d - i)}) != 0) {
        out.push_back({"prop-degrees-3", tag() + " b_{" + std::to_string(i) + "," + std::to_string(d - i) + "} != 0"});
        break;
      }
    }
  }
  if (!(in.j2 == 1 && in.j1 == 0) && in.j2 > in.j1) {
    out.push_back({"prop-jbar", "j1=" + Show(in.j1) + " j2=" + Show(in.j2)});
  }
  if (!(in.i1 == 1 && in.i2 == 0) && in.i1 > in.i2) {
    out.push_back({"prop-ibar", "i1=" + Show(in.i1) + " i2=" + Show(in.i2)});
  }
}

// Propositions for f1 = Y + sum a_i X^i.
inline void ShapedRules(const RuleInput& in, const DegreeStats& st, std::vector<FiredRule>& out) {
  if (in.f2.is_zero()) return;
  const std::uint64_t p = in.p;
  const int d1 = st.d1, d2 = st.d2, j1 = st.j1, j2 = st.j2;
  const auto& h = st.h;
  auto tag = [&] { return "d1=" + Show(d1) + " d2=" + Show(d2) + " h=" + Show(h); };
  if (p == 2) {
    if (d2 > d1 && j2 == 1) out.push_back({"prop-p2-j2-one", tag()});
    if (d2 > d1 && d1 == 1) out.push_back({"prop-p2-d1-one", tag()});
    if (d2 > d1 && d1 > 1 && j1 == 1 && j2 == 0) {
      if (d2 + 1 > 2 * d1) out.push_back({"prop-p2-d2-high", tag()});
      if (d2 + 1 <= 2 * d1 && d2 % 2 == 0) out.push_back({"prop-p2-d2-even", tag()});
    }
    if (d2 > d1 && !(1 < d1 && d2 <= 2 * d1 - 1 && d2 % 2 == 1 && j2 == 0)) {
      out.push_back({"thm-p2", tag() + " j2=" + Show(j2)});
    }
    return;
  }
  if (d2 > d1 && j1 == 1 && j2 == 1) out.push_back({"prop-podd-j2-one", tag()});
  if (d2 > d1 && d1 == 1 && j1 == 1 && j2 == 0) {
    bool other_b = false;
    for (const auto& [m, c] : in.f2.terms()) {
      if (!(m[0] == d2 && m[1] == 0)) other_b = true;
    }
    const bool a1 = in.f1.coeff({1, 0}) != 0;
    // The stated "a_{d1} = 0" contradicts its own proof and case 5; read as != 0.
    if (!IsPowerOf(d2, p) || other_b || (!h && a1)) out.push_back({"prop-podd-d1-one", tag()});
  }
  if (d2 > d1 && d1 > 1 && j1 == 1 && j2 == 0) {
    const bool case4 = d2 == 2 * d1 - 1 && d2 <= 11;
    if (p > 3) {
      const bool listed = h && ((p == 5 && d1 == 2 && d2 == 5 && *h == 3) || (p == 7 && d1 == 2 && d2 == 7 && *h == 3) ||
                                (p == 7 && d1 == 3 && d2 == 7 && *h == 5));
      if (!listed && !case4) out.push_back({"prop-pgt3", tag()});
    } else {
      const bool e2 = h && *h + 1 < 2 * d1 && 2 * d1 < d2 && IsPowerOf(d2, 3) && d1 % 3 == 0;
      const bool e3 = h && *h + 1 == 2 * d1 && 2 * d1 < d2 && IsPowerOf(d2, 3) && (d1 - 1) % 3 == 0;
      if (!case4 && !e2 && !e3) out.push_back({"prop-p3", tag()});
    }
  }
}

}  // namespace detail

// Rule ids: prop-degrees-{1,2,3}, prop-jbar, prop-ibar (any f1); prop-p2-j2-one,
// prop-p2-d1-one, prop-p2-d2-high, prop-p2-d2-even, thm-p2 (p = 2);
// prop-podd-j2-one, prop-podd-d1-one, prop-pgt3, prop-p3 (p odd). The shaped
// rules are skipped when f1 is not Y + sum a_i X^i.
inline std::vector<FiredRule> structural_rules(const OvoidSpec& s) {
  std::vector<FiredRule> out;
  const auto in = detail::MakeRuleInput(s);
  detail::GeneralRules(in, out);
  if (InShape(s.f1)) detail::ShapedRules(in, degree_stats(s.f1, s.f2), out);
  return out;
}

// All classification cases whose side conditions hold; 0 is d1 = d2 = 1.
inline std::vector<int> main_theorem_cases(const OvoidSpec& s) {
  const auto st = degree_stats(s.f1, s.f2);
  const auto [f1, f2] = NormalizeB01(s.f1, s.f2);
  const std::uint64_t p = s.field.p();
  const int d1 = st.d1, d2 = st.d2;
  const auto& h = st.h;
  std::vector<int> cases;
  if (d1 == 1 && d2 == 1) cases.push_back(kHeadCase);
  if (f2.is_zero() || st.j2 != 0) return cases;
  auto pow3 = detail::IsPowerOf(d2, 3);
  if (p == 2 && 1 < d1 && d1 < d2 && d2 <= 2 * d1 - 1 && d2 % 2 == 1) cases.push_back(1);
  if (p == 3 && h && *h + 1 < 2 * d1 && 2 * d1 < d2 && pow3 && d1 % 3 == 0) cases.push_back(2);
  if (p == 3 && h && *h + 1 == 2 * d1 && 2 * d1 < d2 && pow3 && (d1 - 1) % 3 == 0) cases.push_back(3);
  if (p >= 3 && d1 > 1 && d2 == 2 * d1 - 1 && d2 <= 11) cases.push_back(4);
  if (p >= 3 && !h && d1 == 1 && detail::IsPowerOf(d2, p) && f1.coeff({1, 0}) == 0) cases.push_back(5);
  if (p > 3 && h &&
      ((p == 5 && d1 == 2 && d2 == 5 && *h == 3) || (p == 7 && d1 == 2 && d2 == 7 && *h == 3) ||
       (p == 7 && d1 == 3 && d2 == 7 && *h == 5))) {
    cases.push_back(6);
  }
  return cases;
}

inline ClassReport classify(const OvoidSpec& s, const ClassifyOptions& opt = {}) {
  KLEIN_ENFORCE(InShape(s.f1), ErrorCode::kBadShape, "f1 must have the form Y + sum a_i X^i");
  ClassReport r;
  r.stats = degree_stats(s.f1, s.f2);
  r.d = std::max(r.stats.d1, r.stats.d2);
  r.bounds = bounds(s.field.q(), r.d);
  r.threshold_ok = r.bounds.main_ok;
  r.fired_rules = structural_rules(s);
  r.matched_cases = main_theorem_cases(s);
  if (std::count(r.matched_cases.begin(), r.matched_cases.end(), 5)) {
    r.notes.push_back("case 5: defer to Q(4,q) classification");
    if (s.field.q() <= opt.q4_check_max_q) r.q4_section = q4_section_check(s);
  }
  if (!r.threshold_ok) {
    r.verdict = Verdict::kInconclusive;
    r.reason = "q below 6.3(d+1)^(13/3)";
  } else if (!r.fired_rules.empty()) {
    r.verdict = Verdict::kExcluded;
    r.reason = r.fired_rules.front().id;
  } else if (!r.matched_cases.empty()) {
    r.verdict = Verdict::kCandidateCase;
    r.reason = "matches a known-ovoid case";
  } else {
    r.verdict = Verdict::kExcluded;
    r.reason = "no-case-matches";
  }
  return r;
}

enum class SearchMode { kExhaustive, kRandom };

struct SearchOptions {
  int d1_max = 1;
  int d2_max = 1;
  SearchMode mode = SearchMode::kExhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  bool prefilter = true;
  unsigned threads = 1;
  double max_space = 1e8;
  ClassifyOptions classify;
};

struct SearchHit {
  std::uint64_t index = 0;  // coefficient-space index, or draw number in random mode
  OvoidSpec spec;
  VerifyResult verify;
  ClassReport report;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
};

// Coefficient slots: a_i for 1 <= i <= d1_max, then b_{i,j} with
// 1 <= i+j <= d2_max, (i,j) != (0,1), in ascending graded-lex order. All
// exponents stay below q so distinct specs are distinct maps.
struct SearchSpace {
  std::vector<std::uint64_t> a_exps;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> b_monos;

  SearchSpace(const Field& F, int d1_max, int d2_max) {
    const std::uint64_t q = F.q();
    for (int i = 1; i <= d1_max; ++i) {
      if (static_cast<std::uint64_t>(i) < q) a_exps.push_back(i);
    }
    std::vector<Mono> ms;
    for (int t = 1; t <= d2_max; ++t) {
      for (int i = 0; i <= t; ++i) {
        const int j = t - i;
        if (i == 0 && j == 1) continue;
        if (static_cast<std::uint64_t>(i) >= q || static_cast<std::uint64_t>(j) >= q) continue;
        ms.push_back(MPoly::MakeMono({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
      }
    }
    std::sort(ms.begin(), ms.end(), GrlexLess{});
    for (const auto& m : ms) b_monos.push_back({m[0], m[1]});
  }

  std::size_t slots() const { return a_exps.size() + b_monos.size(); }

  OvoidSpec Make(const Field& F, const std::vector<Elem>& c) const {
    MPoly f1 = MPoly::Var(F, 2, 1), f2(F, 2);
    for (std::size_t k = 0; k < a_exps.size(); ++k) f1.add_term(MPoly::MakeMono({a_exps[k], 0}), c[k]);
    for (std::size_t k = 0; k < b_monos.size(); ++k) {
      f2.add_term(MPoly::MakeMono({b_monos[k].first, b_monos[k].second}), c[a_exps.size() + k]);
    }
    return MakeSpec(f1, f2);
  }

  // Mixed radix, first slot most significant.
  std::vector<Elem> Decode(std::uint64_t q, std::uint64_t idx) const {
    std::vector<Elem> c(slots());
    for (std::size_t k = c.size(); k-- > 0;) {
      c[k] = idx % q;
      idx /= q;
    }
    return c;
  }
};

inline SearchResult search(const Field& F, const SearchOptions& opt) {
  const std::uint64_t q = F.q();
  const SearchSpace space(F, opt.d1_max, opt.d2_max);
  std::uint64_t total = 0;
  std::vector<std::vector<Elem>> draws;
  if (opt.mode == SearchMode::kExhaustive) {
    const double size = std::pow(static_cast<double>(q), static_cast<double>(space.slots()));
    KLEIN_ENFORCE(size <= opt.max_space, ErrorCode::kTooLarge,
                  "coefficient space of " + std::to_string(size) + " specs exceeds the exhaustive limit");
    total = static_cast<std::uint64_t>(std::llround(size));
  } else {
    std::mt19937_64 rng(opt.seed);
    draws.resize(opt.samples);
    for (auto& d : draws) {
      d.resize(space.slots());
      for (auto& c : d) c = rng() % q;
    }
    total = opt.samples;
  }

  std::atomic<std::uint64_t> next{0}, pruned{0};
  std::mutex mu;
  std::vector<SearchHit> hits;
  const std::uint64_t chunk = 256;
  auto worker = [&] {
    std::vector<SearchHit> local;
    std::uint64_t local_pruned = 0;
    for (;;) {
      const std::uint64_t start = next.fetch_add(chunk);
      if (start >= total) break;
      const std::uint64_t stop = std::min(total, start + chunk);
      for (std::uint64_t idx = start; idx < stop; ++idx) {
        OvoidSpec s = space.Make(F, opt.mode == SearchMode::kExhaustive ? space.Decode(q, idx) : draws[idx]);
        if (opt.prefilter && !structural_rules(s).empty()) {
          ++local_pruned;
          continue;
        }
        VerifyResult v = verify_pairwise(s);
        if (!v.is_ovoid) continue;
        local.push_back({idx, s, v, classify(s, opt.classify)});
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    pruned += local_pruned;
    for (auto& h : local) hits.push_back(std::move(h));
  };
  const unsigned nt = ResolveThreads(opt.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return SearchResult{std::move(hits), total, pruned.load()};
}

}  // namespace klein
