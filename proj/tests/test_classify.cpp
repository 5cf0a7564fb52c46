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

#include <set>

#include "catch_amalgamated.hpp"
#include "klein_ovoid/classify.hpp"

using klein::Elem;
using klein::ErrorCode;
using klein::Field;
using klein::MPoly;
using klein::OvoidSpec;
using klein::Verdict;

namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const klein::Error& e) {
    return e.code();
  }
  FAIL("expected a klein::Error");
  return ErrorCode::kParseError;
}

MPoly X(const Field& F, std::uint64_t e = 1) { return MPoly::Var(F, 2, 0, e); }
MPoly Y(const Field& F, std::uint64_t e = 1) { return MPoly::Var(F, 2, 1, e); }

std::set<std::string> RuleIds(const OvoidSpec& s) {
  std::set<std::string> ids;
  for (const auto& r : klein::structural_rules(s)) ids.insert(r.id);
  return ids;
}

}  // namespace

TEST_CASE("structural_rules examples") {
  Field F7 = Field::Create(7, 1);
  auto a = RuleIds(klein::MakeSpec(Y(F7) - X(F7, 2), X(F7, 2) * Y(F7)));
  CHECK(a.count("prop-podd-j2-one"));

  Field F5 = Field::Create(5, 1);
  auto b = RuleIds(klein::MakeSpec(Y(F5), Y(F5, 2)));
  CHECK(b.count("prop-jbar"));

  for (auto [p, ell] : std::vector<std::pair<int, unsigned>>{{3, 1}, {5, 1}, {3, 2}}) {
    CHECK(klein::structural_rules(klein::family("elliptic_odd", Field::Create(p, ell))).empty());
  }
  CHECK(klein::structural_rules(klein::family("elliptic_even", Field::Create(2, 2))).empty());
}

TEST_CASE("degree propositions") {
  Field F5 = Field::Create(5, 1);
  // d1 = d2 = 2 with b_{2,0} = 0
  CHECK(RuleIds(klein::MakeSpec(Y(F5) + X(F5, 2), X(F5) * Y(F5))).count("prop-degrees-1"));
  // d1 = 3 > d2 = 1 with a_{3,0} != 0
  CHECK(RuleIds(klein::MakeSpec(Y(F5) + X(F5, 3), X(F5))).count("prop-degrees-2"));
  // d2 = 3 > d1 = 1 with b_{1,2} != 0
  CHECK(RuleIds(klein::MakeSpec(Y(F5), X(F5) * Y(F5, 2) + X(F5, 3))).count("prop-degrees-3"));
  // d2 > d1, only b_{d,0}: no degree rule
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F5), X(F5, 5))).count("prop-degrees-3"));
  // i1 > i2 and (i1, i2) != (1, 0)
  CHECK(RuleIds(klein::MakeSpec(Y(F5) + X(F5, 2), Y(F5, 2))).count("prop-ibar"));
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F5) + X(F5), Y(F5, 2))).count("prop-ibar"));
}

TEST_CASE("characteristic 2 rules") {
  Field F8 = Field::Create(2, 3);
  // d2 > d1 = 1
  CHECK(RuleIds(klein::MakeSpec(Y(F8), X(F8, 3))).count("prop-p2-d1-one"));
  // d1 = 2, d2 = 5 > 2 d1 - 1
  auto hi = RuleIds(klein::MakeSpec(Y(F8) + X(F8, 2), X(F8, 5)));
  CHECK(hi.count("prop-p2-d2-high"));
  CHECK(hi.count("thm-p2"));
  // d1 = 3, d2 = 4 even
  auto ev = RuleIds(klein::MakeSpec(Y(F8) + X(F8, 3), X(F8, 4)));
  CHECK(ev.count("prop-p2-d2-even"));
  // j2 = 1
  CHECK(RuleIds(klein::MakeSpec(Y(F8) + X(F8, 2), X(F8, 3) + X(F8) * Y(F8))).count("prop-p2-j2-one"));
  // the case 1 window: nothing from the p = 2 set
  auto ok = RuleIds(klein::MakeSpec(Y(F8) + X(F8, 2), X(F8, 3)));
  CHECK_FALSE(ok.count("thm-p2"));
  CHECK_FALSE(ok.count("prop-p2-d2-high"));
  CHECK_FALSE(ok.count("prop-p2-d2-even"));
}

TEST_CASE("odd characteristic shaped rules") {
  Field F3 = Field::Create(3, 1), F5 = Field::Create(5, 1), F7 = Field::Create(7, 1);
  // d1 = 1, d2 not a power of p
  CHECK(RuleIds(klein::MakeSpec(Y(F5), X(F5, 2))).count("prop-podd-d1-one"));
  // d1 = 1, d2 = p, extra b term
  CHECK(RuleIds(klein::MakeSpec(Y(F5), X(F5, 5) + X(F5, 2))).count("prop-podd-d1-one"));
  // d1 = 1, d2 = p, h infinite and a_1 != 0
  CHECK(RuleIds(klein::MakeSpec(Y(F5) + X(F5), X(F5, 5))).count("prop-podd-d1-one"));
  // d1 = 1, d2 = p, a_1 = 0: the case 5 shape survives
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F5), X(F5, 5))).count("prop-podd-d1-one"));

  // p > 3, not one of the listed exceptions
  CHECK(RuleIds(klein::MakeSpec(Y(F5) + X(F5, 2), X(F5, 4))).count("prop-pgt3"));
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F5) + X(F5, 2), X(F5, 5) + X(F5, 3))).count("prop-pgt3"));
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F7) + X(F7, 3), X(F7, 7) + X(F7, 5))).count("prop-pgt3"));
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F7) + X(F7, 3), X(F7, 5))).count("prop-pgt3"));  // d2 = 2 d1 - 1

  // p = 3
  CHECK(RuleIds(klein::MakeSpec(Y(F3) + X(F3, 2), X(F3, 4))).count("prop-p3"));
  CHECK_FALSE(RuleIds(klein::MakeSpec(Y(F3) + X(F3, 2), X(F3, 3))).count("prop-p3"));
}

TEST_CASE("main theorem golden table") {
  struct Row {
    std::string name;
    int p;
    unsigned ell;
    std::vector<int> cases;
  };
  const std::vector<Row> rows = {
      {"fisher_thas_walker", 2, 3, {1}},  {"fisher_thas_walker", 2, 5, {1}}, {"fisher_thas_walker", 5, 1, {4}},
      {"fisher_thas_walker", 11, 1, {4}}, {"kantor_payne", 3, 3, {4}},       {"ganley", 3, 3, {2}},
      {"law_penttila", 3, 2, {3}},        {"law_penttila", 3, 3, {3}},       {"kantor_p5", 5, 1, {6}},
      {"kantor_p5", 5, 2, {6}},           {"elliptic_odd", 3, 1, {0, 5}},    {"elliptic_odd", 7, 1, {0, 5}},
      {"elliptic_even", 2, 2, {0}},       {"kantor_monomial", 3, 2, {5}},    {"kantor_monomial", 5, 2, {5}},
  };
  for (const auto& r : rows) {
    Field F = Field::Create(r.p, r.ell);
    INFO(r.name << " over " << F.describe());
    auto s = klein::family(r.name, F);
    auto rep = klein::classify(s);
    CHECK(rep.matched_cases == r.cases);
    CHECK(rep.fired_rules.empty());
    CHECK(rep.verdict == Verdict::kInconclusive);
    CHECK_FALSE(rep.threshold_ok);
    CHECK(rep.reason == "q below 6.3(d+1)^(13/3)");
    const bool five = std::count(r.cases.begin(), r.cases.end(), 5) > 0;
    CHECK(std::count(rep.notes.begin(), rep.notes.end(), "case 5: defer to Q(4,q) classification") == (five ? 1 : 0));
    if (five) CHECK(rep.q4_section == std::optional<bool>(true));
  }
}

TEST_CASE("classify examples") {
  auto lp = klein::classify(klein::family("law_penttila", Field::Create(3, 2)));
  CHECK(lp.stats.d1 == 4);
  CHECK(lp.stats.d2 == 9);
  CHECK(lp.stats.h == 7);
  CHECK(lp.matched_cases == std::vector<int>{3});
  CHECK(lp.verdict == Verdict::kInconclusive);

  auto kp5 = klein::classify(klein::family("kantor_p5", Field::Create(5, 1)));
  CHECK(kp5.stats.d1 == 2);
  CHECK(kp5.stats.d2 == 5);
  CHECK(kp5.stats.h == 3);

  Field F3 = Field::Create(3, 1);
  CHECK(CodeOf([&] { klein::classify(klein::MakeSpec(X(F3) * Y(F3), X(F3))); }) == ErrorCode::kBadShape);
  // the general rules still run outside the shape
  CHECK(RuleIds(klein::MakeSpec(X(F3) * Y(F3) + Y(F3), Y(F3, 2))).count("prop-jbar"));
}

TEST_CASE("verdicts above the threshold") {
  Field F = Field::Create(3001, 1);  // 3001 > 6.3 * 4^(13/3)
  auto ex = klein::classify(klein::MakeSpec(Y(F), Y(F, 2)));
  CHECK(ex.threshold_ok);
  CHECK(ex.verdict == Verdict::kExcluded);
  CHECK(ex.reason == ex.fired_rules.front().id);

  auto cand = klein::classify(klein::MakeSpec(Y(F) + X(F, 2), X(F, 3)));
  CHECK(cand.threshold_ok);
  CHECK(cand.fired_rules.empty());
  CHECK(cand.matched_cases == std::vector<int>{4});
  CHECK(cand.verdict == Verdict::kCandidateCase);

  auto head = klein::classify(klein::family("elliptic_odd", F));
  CHECK(head.verdict == Verdict::kCandidateCase);
  CHECK_FALSE(head.q4_section.has_value());  // q beyond the Q(4,q) check limit

  // d1 = 1 and d2 = 3 is no power of p
  auto none = klein::classify(klein::MakeSpec(Y(F), X(F, 3)));
  CHECK(none.fired_rules.size() == 1);
  CHECK(none.fired_rules.front().id == "prop-podd-d1-one");
}

TEST_CASE("classify ignores term insertion order") {
  Field F = Field::Create(3, 3);
  auto s = klein::family("ganley", F);
  MPoly f2r(F, 2);
  std::vector<std::pair<klein::Mono, Elem>> terms(s.f2.terms().rbegin(), s.f2.terms().rend());
  for (const auto& [m, c] : terms) f2r.add_term(m, c);
  auto a = klein::classify(s), b = klein::classify(klein::MakeSpec(s.f1, f2r));
  CHECK(a.matched_cases == b.matched_cases);
  CHECK(a.fired_rules.size() == b.fired_rules.size());
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("search finds the linear ovoids at q=3") {
  Field F = Field::Create(3, 1);
  klein::SearchOptions opt;
  opt.d1_max = 1;
  opt.d2_max = 1;
  auto r = klein::search(F, opt);
  CHECK(r.examined == 9);
  REQUIRE(r.hits.size() == 3);  // monic irreducible quadratics over F_3
  for (const auto& h : r.hits) {
    const Elem b = F.neg(h.spec.f1.coeff({1, 0})), c = h.spec.f2.coeff({1, 0});
    bool irreducible = true;
    for (Elem t = 0; t < 3; ++t) irreducible = irreducible && F.add(F.add(F.mul(t, t), F.mul(b, t)), c) != 0;
    CHECK(irreducible);
    CHECK(klein::verify_by_generators(h.spec).is_ovoid);
  }
}

TEST_CASE("search soundness and prefilter at q in {2,3}") {
  for (auto p : {2, 3}) {
    Field F = Field::Create(p, 1);
    klein::SearchOptions on;
    on.d1_max = 3;
    on.d2_max = 3;
    klein::SearchOptions off = on;
    off.prefilter = false;
    auto a = klein::search(F, on), b = klein::search(F, off);
    INFO("q=" << p);
    REQUIRE(a.hits.size() == b.hits.size());
    for (std::size_t i = 0; i < a.hits.size(); ++i) CHECK(a.hits[i].index == b.hits[i].index);
    for (const auto& h : b.hits) {
      CHECK(klein::structural_rules(h.spec).empty());
      CHECK(klein::verify_by_generators(h.spec).is_ovoid);
    }
    CHECK(b.pruned == 0);
    CHECK(a.pruned > 0);
  }
}

TEST_CASE("structural rules can fire on ovoids at small q") {
  // The rules predict an absolutely irreducible component; rational points
  // follow only for q large, so small fields admit these ovoids.
  Field F3 = Field::Create(3, 1);
  auto s3 = klein::MakeSpec(X(F3, 2) * Y(F3) + Y(F3), X(F3) * Y(F3, 2) + X(F3));
  CHECK(klein::verify_pairwise(s3).is_ovoid);
  CHECK(klein::verify_by_generators(s3).is_ovoid);
  CHECK(RuleIds(s3) == std::set<std::string>{"prop-degrees-1", "prop-ibar", "prop-jbar"});

  Field F4 = Field::Create(2, 2);
  auto s4 = klein::MakeSpec(Y(F4) + X(F4) + X(F4, 2), Y(F4, 2) + X(F4));
  CHECK(klein::verify_pairwise(s4).is_ovoid);
  CHECK(klein::verify_by_generators(s4).is_ovoid);
  CHECK_FALSE(RuleIds(s4).empty());
  klein::SearchOptions on;
  on.d1_max = 2;
  on.d2_max = 2;
  klein::SearchOptions off = on;
  off.prefilter = false;
  CHECK(klein::search(F4, on).hits.size() < klein::search(F4, off).hits.size());
}

TEST_CASE("search is deterministic") {
  Field F = Field::Create(5, 1);
  klein::SearchOptions opt;
  opt.d1_max = 4;
  opt.d2_max = 4;
  opt.mode = klein::SearchMode::kRandom;
  opt.seed = 42;
  opt.samples = 100000;
  auto a = klein::search(F, opt);
  opt.threads = 3;
  auto b = klein::search(F, opt);
  REQUIRE(a.hits.size() == b.hits.size());
  for (std::size_t i = 0; i < a.hits.size(); ++i) {
    CHECK(a.hits[i].index == b.hits[i].index);
    CHECK(a.hits[i].spec.f2 == b.hits[i].spec.f2);
  }
  for (const auto& h : a.hits) CHECK(klein::verify_by_hypersurface(h.spec).is_ovoid);
  opt.seed = 43;
  opt.samples = 1000;
  auto c = klein::search(F, opt);
  CHECK(c.examined == 1000);

  klein::SearchOptions big;
  big.d1_max = 4;
  big.d2_max = 6;
  CHECK(CodeOf([&] { klein::search(Field::Create(7, 1), big); }) == ErrorCode::kTooLarge);
}
