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

#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "klein_ovoid/ovoid.hpp"
#include "klein_ovoid/quadric.hpp"
#include "oracles.hpp"

using klein::Elem;
using klein::ErrorCode;
using klein::Field;
using klein::ProjPoint;

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

const ProjPoint kE0 = {1, 0, 0, 0, 0, 0};
const ProjPoint kE1 = {0, 1, 0, 0, 0, 0};
const ProjPoint kE5 = {0, 0, 0, 0, 0, 1};

std::vector<Field> SmallFields() { return {Field::Create(2, 1), Field::Create(3, 1), Field::Create(2, 2)}; }

// Points of the line PR by brute force over (a,b) != (0,0), normalized.
std::set<ProjPoint> LinePointsBrute(const Field& F, const ProjPoint& P, const ProjPoint& R) {
  std::set<ProjPoint> out;
  for (Elem a = 0; a < F.q(); ++a)
    for (Elem b = 0; b < F.q(); ++b) {
      if (a == 0 && b == 0) continue;
      std::array<Elem, 6> v{};
      for (int i = 0; i < 6; ++i) v[i] = F.add(F.mul(a, P[i]), F.mul(b, R[i]));
      out.insert(klein::MakePoint(F, v));
    }
  return out;
}

}  // namespace

TEST_CASE("on_quadric examples") {
  Field F = Field::Create(3, 1);
  CHECK(klein::on_quadric(F, kE0));
  CHECK(klein::on_quadric(F, kE5));
  CHECK_FALSE(klein::on_quadric(F, {1, 0, 0, 0, 0, 1}));
}

TEST_CASE("bilinear examples") {
  std::mt19937_64 rng(1);
  for (const Field& F : {Field::Create(2, 1), Field::Create(3, 1)}) {
    CHECK(klein::bilinear(F, kE0, kE5) == 1);
    for (const auto& P : klein::enumerate_points(F)) CHECK(klein::bilinear(F, P, P) == 0);
    for (int k = 0; k < 200; ++k) {
      ProjPoint P, R;
      for (auto& x : P) x = rng() % F.q();
      for (auto& x : R) x = rng() % F.q();
      CHECK(klein::bilinear(F, P, R) == klein::bilinear(F, R, P));
    }
  }
}

TEST_CASE("collinear_on_quadric examples") {
  Field F = Field::Create(3, 1);
  CHECK(klein::collinear_on_quadric(F, kE0, kE1));
  for (const auto& X : LinePointsBrute(F, kE0, kE1)) CHECK(klein::on_quadric(F, X));
  CHECK(LinePointsBrute(F, kE0, kE1).size() == 4);
  CHECK_FALSE(klein::collinear_on_quadric(F, kE0, kE5));
  CHECK(CodeOf([&] { klein::collinear_on_quadric(F, kE0, {1, 0, 0, 0, 0, 1}); }) == ErrorCode::kNotOnQuadric);
  CHECK(CodeOf([&] { klein::collinear_on_quadric(F, kE0, kE0); }) == ErrorCode::kSamePoint);

  auto spec = klein::family("elliptic_odd", F, {});
  auto pts = klein::build_points(spec);
  REQUIRE(pts.size() == 10);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) CHECK_FALSE(klein::collinear_on_quadric(F, pts[i], pts[j]));
}

TEST_CASE("collinearity matches the whole line lying on Q") {
  for (const Field& F : SmallFields()) {
    auto pts = klein::enumerate_points(F);
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); j += (F.q() == 4 ? 7 : 1)) {
        bool all = true;
        for (const auto& X : LinePointsBrute(F, pts[i], pts[j])) all = all && klein::on_quadric(F, X);
        REQUIRE(klein::collinear_on_quadric(F, pts[i], pts[j]) == all);
      }
  }
}

TEST_CASE("enumerate_points counts") {
  const std::vector<std::pair<Field, std::size_t>> cases = {
      {Field::Create(2, 1), 35}, {Field::Create(3, 1), 130}, {Field::Create(2, 2), 357}};
  for (const auto& [F, n] : cases) {
    auto pts = klein::enumerate_points(F);
    CHECK(pts.size() == n);
    CHECK(pts.size() == (F.q() * F.q() + 1) * (F.q() * F.q() + F.q() + 1));
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == n);
    if (F.q() <= 3) CHECK(oracle::CountQuadricBrute(oracle::NaiveField(F.p(), F.ell(), F.modulus())) == n);
  }
  CHECK(klein::enumerate_points(Field::Create(5, 1)).size() == 26 * 31);
  CHECK(CodeOf([] { klein::enumerate_points(Field::Create(2, 4)); }) == ErrorCode::kTooLarge);
}

TEST_CASE("enumerate_generators counts and incidence") {
  const std::vector<std::pair<Field, std::size_t>> cases = {
      {Field::Create(2, 1), 30}, {Field::Create(3, 1), 80}, {Field::Create(2, 2), 170}};
  for (const auto& [F, n] : cases) {
    auto gens = klein::enumerate_generators(F);
    REQUIRE(gens.size() == n);
    std::size_t latin = 0;
    for (const auto& g : gens) {
      if (g.family == klein::Family::kLatin) ++latin;
      auto pp = klein::plane_points(F, g);
      CHECK(pp.size() == F.q() * F.q() + F.q() + 1);
      for (const auto& P : pp) CHECK(klein::on_quadric(F, P));
    }
    CHECK(latin == n / 2);
    const auto& ref = *std::find_if(gens.begin(), gens.end(), [](const auto& g) {
      return g.basis == std::array<ProjPoint, 3>{kE0, kE1, ProjPoint{0, 0, 1, 0, 0, 0}};
    });
    CHECK(ref.family == klein::Family::kLatin);
  }
  CHECK(CodeOf([] { klein::enumerate_generators(Field::Create(5, 1)); }) == ErrorCode::kTooLarge);
}

TEST_CASE("generator intersections at q=2") {
  Field F = Field::Create(2, 1);
  auto gens = klein::enumerate_generators(F);
  for (size_t i = 0; i < gens.size(); ++i) {
    auto a = klein::plane_points(F, gens[i]);
    std::set<ProjPoint> sa(a.begin(), a.end());
    for (size_t j = i + 1; j < gens.size(); ++j) {
      std::size_t common = 0;
      for (const auto& P : klein::plane_points(F, gens[j])) common += sa.count(P);
      if (gens[i].family == gens[j].family) {
        CHECK(common == 1);
      } else {
        CHECK((common == 0 || common == F.q() + 1));
      }
    }
  }
}

TEST_CASE("klein_line examples") {
  Field F = Field::Create(3, 1);
  auto l0 = klein::klein_line(F, kE0);
  CHECK(l0.rows == std::array<klein::Row4, 2>{klein::Row4{1, 0, 0, 0}, klein::Row4{0, 1, 0, 0}});
  auto l5 = klein::klein_line(F, kE5);
  CHECK(l5.rows == std::array<klein::Row4, 2>{klein::Row4{0, 0, 1, 0}, klein::Row4{0, 0, 0, 1}});
  CHECK(CodeOf([&] { klein::klein_line(F, {1, 0, 0, 0, 0, 1}); }) == ErrorCode::kNotOnQuadric);
}

TEST_CASE("klein_line is a bijection") {
  for (const Field& F : SmallFields()) {
    if (F.q() > 3) continue;
    std::set<klein::PG3Line> lines;
    for (const auto& P : klein::enumerate_points(F)) {
      auto L = klein::klein_line(F, P);
      REQUIRE(klein::plucker(F, L) == P);
      CHECK(klein::line_points(F, L).size() == F.q() + 1);
      lines.insert(L);
    }
    const auto q = F.q();
    CHECK(lines.size() == (q * q + 1) * (q * q + q + 1));
    // every line of PG(3,q) is hit: count via pairs of points
    const auto n3 = (q * q * q * q - 1) / (q - 1);
    CHECK(lines.size() == n3 * (n3 - 1) / ((q + 1) * q));
  }
}
