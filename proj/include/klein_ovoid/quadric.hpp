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
#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "klein_ovoid/errors.hpp"
#include "klein_ovoid/gf.hpp"

namespace klein {

// Homogeneous coordinates, first nonzero entry equal to 1.
using ProjPoint = std::array<Elem, 6>;
using Row4 = std::array<Elem, 4>;

enum class Family { kLatin, kGreek };

struct GeneratorPlane {
  std::array<ProjPoint, 3> basis;  // reduced echelon rows
  Family family = Family::kLatin;

  bool operator<(const GeneratorPlane& o) const { return basis < o.basis; }
  bool operator==(const GeneratorPlane& o) const { return basis == o.basis; }
};

struct PG3Line {
  std::array<Row4, 2> rows;  // reduced echelon

  bool operator<(const PG3Line& o) const { return rows < o.rows; }
  bool operator==(const PG3Line& o) const { return rows == o.rows; }
};

namespace detail {

template <size_t N>
bool NormalizeInPlace(const Field& F, std::array<Elem, N>& v) {
  size_t k = 0;
  while (k < N && v[k] == 0) ++k;
  if (k == N) return false;
  if (v[k] != 1) {
    Elem inv = F.inv(v[k]);
    for (size_t i = k; i < N; ++i) v[i] = F.mul(v[i], inv);
  }
  return true;
}

// Reduced row echelon form; returns the nonzero rows.
template <size_t N>
std::vector<std::array<Elem, N>> Rref(const Field& F, std::vector<std::array<Elem, N>> m) {
  size_t r = 0;
  for (size_t c = 0; c < N && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Elem inv = F.inv(m[r][c]);
    for (auto& x : m[r]) x = F.mul(x, inv);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Elem f = m[i][c];
      for (size_t j = 0; j < N; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  m.resize(r);
  return m;
}

// All normalized combinations of the given rows (points of their span).
template <size_t N>
std::vector<std::array<Elem, N>> SpanPoints(const Field& F, const std::vector<std::array<Elem, N>>& rows) {
  const size_t k = rows.size();
  const std::uint64_t q = F.q();
  std::vector<std::array<Elem, N>> out;
  std::vector<Elem> coef(k, 0);
  for (size_t lead = 0; lead < k; ++lead) {
    std::uint64_t free = 1;
    for (size_t i = lead + 1; i < k; ++i) free *= q;
    for (std::uint64_t idx = 0; idx < free; ++idx) {
      std::fill(coef.begin(), coef.end(), 0);
      coef[lead] = 1;
      std::uint64_t t = idx;
      for (size_t i = k; i-- > lead + 1;) {
        coef[i] = t % q;
        t /= q;
      }
      std::array<Elem, N> v{};
      for (size_t i = 0; i < k; ++i) {
        if (coef[i] == 0) continue;
        for (size_t j = 0; j < N; ++j) v[j] = F.add(v[j], F.mul(coef[i], rows[i][j]));
      }
      NormalizeInPlace(F, v);
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline ProjPoint MakePoint(const Field& F, std::array<Elem, 6> v) {
  for (auto x : v) KLEIN_ENFORCE(F.contains(x), ErrorCode::kParseError, "coordinate out of range");
  KLEIN_ENFORCE(detail::NormalizeInPlace(F, v), ErrorCode::kParseError, "zero vector is not a point");
  return v;
}

inline Elem quadric_form(const Field& F, const ProjPoint& x) {
  return F.add(F.add(F.mul(x[0], x[5]), F.mul(x[1], x[4])), F.mul(x[2], x[3]));
}

inline bool on_quadric(const Field& F, const ProjPoint& P) { return quadric_form(F, P) == 0; }

// Polarization of the quadratic form; same formula in every characteristic.
inline Elem bilinear(const Field& F, const ProjPoint& u, const ProjPoint& v) {
  Elem s = 0;
  for (int i = 0; i < 6; ++i) s = F.add(s, F.mul(u[i], v[5 - i]));
  return s;
}

inline bool collinear_on_quadric(const Field& F, const ProjPoint& P, const ProjPoint& R) {
  KLEIN_ENFORCE(on_quadric(F, P) && on_quadric(F, R), ErrorCode::kNotOnQuadric,
                "collinearity is defined for points of the quadric");
  KLEIN_ENFORCE(P != R, ErrorCode::kSamePoint, "points coincide");
  return bilinear(F, P, R) == 0;
}

inline constexpr std::uint64_t kPointsMaxQ = 13;
inline constexpr std::uint64_t kGeneratorsMaxQ = 4;

// All points of the quadric in lexicographic order.
inline std::vector<ProjPoint> enumerate_points(const Field& F, std::uint64_t max_q = kPointsMaxQ) {
  KLEIN_ENFORCE(F.q() <= max_q, ErrorCode::kTooLarge,
                "point enumeration limited to q <= " + std::to_string(max_q));
  std::vector<ProjPoint> all;
  std::vector<ProjPoint> basis(6);
  for (int i = 0; i < 6; ++i) {
    basis[i] = ProjPoint{};
    basis[i][i] = 1;
  }
  for (const auto& P : detail::SpanPoints(F, basis)) {
    if (on_quadric(F, P)) all.push_back(P);
  }
  return all;
}

inline std::vector<ProjPoint> plane_points(const Field& F, const GeneratorPlane& g) {
  return detail::SpanPoints(F, std::vector<ProjPoint>(g.basis.begin(), g.basis.end()));
}

inline std::size_t SpanRank(const Field& F, std::vector<ProjPoint> rows) {
  return detail::Rref(F, std::move(rows)).size();
}

// Every plane contained in the quadric. The latin family holds the plane
// <e0,e1,e2> and every plane meeting it in exactly one point.
inline std::vector<GeneratorPlane> enumerate_generators(const Field& F,
                                                        std::uint64_t max_q = kGeneratorsMaxQ) {
  KLEIN_ENFORCE(F.q() <= max_q, ErrorCode::kTooLarge,
                "generator enumeration limited to q <= " + std::to_string(max_q));
  const auto pts = enumerate_points(F, max_q);
  const size_t n = pts.size();
  std::set<std::array<ProjPoint, 3>> planes;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (bilinear(F, pts[i], pts[j]) != 0) continue;
      for (size_t k = j + 1; k < n; ++k) {
        if (bilinear(F, pts[i], pts[k]) != 0 || bilinear(F, pts[j], pts[k]) != 0) continue;
        auto r = detail::Rref(F, std::vector<ProjPoint>{pts[i], pts[j], pts[k]});
        if (r.size() != 3) continue;
        planes.insert({r[0], r[1], r[2]});
      }
    }
  }
  std::vector<ProjPoint> ref = {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}};
  std::vector<GeneratorPlane> out;
  for (const auto& b : planes) {
    std::vector<ProjPoint> stack = ref;
    stack.insert(stack.end(), b.begin(), b.end());
    const size_t rank = SpanRank(F, stack);
    out.push_back({b, (rank == 3 || rank == 5) ? Family::kLatin : Family::kGreek});
  }
  return out;
}

// (x0..x5) = (p01, p02, p03, p12, p31, p23).
inline ProjPoint plucker(const Field& F, const PG3Line& L) {
  const auto& u = L.rows[0];
  const auto& v = L.rows[1];
  auto p = [&](int i, int j) { return F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i])); };
  return MakePoint(F, {p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(3, 1), p(2, 3)});
}

inline PG3Line klein_line(const Field& F, const ProjPoint& P) {
  KLEIN_ENFORCE(on_quadric(F, P), ErrorCode::kNotOnQuadric, "point is not on the Klein quadric");
  Elem M[4][4] = {};
  auto set = [&](int i, int j, Elem v) {
    M[i][j] = v;
    M[j][i] = F.neg(v);
  };
  set(0, 1, P[0]);
  set(0, 2, P[1]);
  set(0, 3, P[2]);
  set(1, 2, P[3]);
  set(3, 1, P[4]);
  set(2, 3, P[5]);
  std::vector<Row4> rows;
  for (auto& r : M) rows.push_back({r[0], r[1], r[2], r[3]});
  auto red = detail::Rref(F, rows);
  KLEIN_ENFORCE(red.size() == 2, ErrorCode::kNotOnQuadric, "Pluecker matrix does not have rank 2");
  return PG3Line{{red[0], red[1]}};
}

inline std::vector<Row4> line_points(const Field& F, const PG3Line& L) {
  return detail::SpanPoints(F, std::vector<Row4>{L.rows[0], L.rows[1]});
}

}  // namespace klein
