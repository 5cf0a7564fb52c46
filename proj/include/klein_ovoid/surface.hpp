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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "klein_ovoid/errors.hpp"
#include "klein_ovoid/gf.hpp"
#include "klein_ovoid/mpoly.hpp"
#include "klein_ovoid/ovoid.hpp"

namespace klein {

struct Hypersurface {
  MPoly F;  // in X0..X4
  int d = 0;
  OvoidSpec spec;
};

// F = (X1-X3)(f2~(X3,X4,X0) - f2~(X1,X2,X0)) + (X2-X4)(f1~(X3,X4,X0) - f1~(X1,X2,X0)).
inline Hypersurface build_surface(const OvoidSpec& s) {
  const Field& F = s.field;
  const int d = std::max({1, s.f1.degree(), s.f2.degree()});
  auto lift = [&](const MPoly& f, int a, int b) { return homogenize(f, d).embed(5, {a, b, 0}); };
  auto X = [&](int i) { return MPoly::Var(F, 5, i); };
  MPoly S = (X(1) - X(3)) * (lift(s.f2, 3, 4) - lift(s.f2, 1, 2)) +
            (X(2) - X(4)) * (lift(s.f1, 3, 4) - lift(s.f1, 1, 2));
  return Hypersurface{S, d, s};
}

struct AffineCount {
  std::uint64_t count = 0;
  std::optional<std::array<Elem, 4>> witness;  // (x1, x2, x3, x4) with X0 = 1
};

inline constexpr std::uint64_t kSurfaceMaxQ = 13;

namespace detail {

// Expanded terms of F with X0 = 1, evaluated through per-variable power tables.
struct CompiledAffine {
  struct Term {
    Elem c;
    std::array<std::uint16_t, 4> e;
  };
  std::vector<Term> terms;
  std::vector<std::vector<Elem>> pw;  // pw[e][x]

  CompiledAffine(const Field& F, const MPoly& f) {
    std::uint16_t maxe = 0;
    for (const auto& [m, c] : f.terms()) {
      terms.push_back({c, {m[1], m[2], m[3], m[4]}});
      for (int i = 1; i < 5; ++i) maxe = std::max(maxe, m[i]);
    }
    pw.assign(maxe + 1, std::vector<Elem>(F.q()));
    for (Elem x = 0; x < F.q(); ++x) {
      Elem v = 1;
      for (std::uint16_t e = 0; e <= maxe; ++e) {
        pw[e][x] = v;
        v = F.mul(v, x);
      }
    }
  }

  template <typename A>
  Elem Eval(const A& ar, const std::array<Elem, 4>& x) const {
    Elem acc = 0;
    for (const auto& t : terms) {
      Elem v = t.c;
      for (int i = 0; i < 4; ++i) v = ar.mul(v, pw[t.e[i]][x[i]]);
      acc = ar.add(acc, v);
    }
    return acc;
  }
};

}  // namespace detail

// Affine points (X0 = 1) of S with (x1,x2) != (x3,x4). Strata over x1 run in
// parallel; the witness is the lexicographically least point.
inline AffineCount count_affine_off_subspace(const Hypersurface& S, std::uint64_t max_q = kSurfaceMaxQ,
                                             unsigned threads = 1) {
  const Field& F = S.spec.field;
  const std::uint64_t q = F.q();
  KLEIN_ENFORCE(q <= max_q, ErrorCode::kTooLarge, "surface enumeration limited to q <= " + std::to_string(max_q));
  const detail::CompiledAffine comp(F, S.F);
  std::vector<AffineCount> strata(q);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&](auto ar) {
    for (;;) {
      const std::uint64_t x1 = next.fetch_add(1);
      if (x1 >= q) return;
      AffineCount& out = strata[x1];
      std::array<Elem, 4> x{x1, 0, 0, 0};
      for (x[1] = 0; x[1] < q; ++x[1]) {
        for (x[2] = 0; x[2] < q; ++x[2]) {
          for (x[3] = 0; x[3] < q; ++x[3]) {
            if (x[0] == x[2] && x[1] == x[3]) continue;
            if (comp.Eval(ar, x) != 0) continue;
            if (out.count++ == 0) out.witness = x;
          }
        }
      }
    }
  };
  const unsigned nt = ResolveThreads(threads);
  WithArith(F, [&](auto ar) {
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back([&, ar] { worker(ar); });
    worker(ar);
    for (auto& th : pool) th.join();
  });
  AffineCount total;
  for (const auto& s : strata) {
    total.count += s.count;
    if (!total.witness && s.witness) total.witness = s.witness;
  }
  return total;
}

inline VerifyResult verify_by_hypersurface(const OvoidSpec& s, std::uint64_t max_q = kSurfaceMaxQ,
                                           unsigned threads = 1) {
  const std::uint64_t q = s.field.q();
  KLEIN_ENFORCE(q <= max_q, ErrorCode::kTooLarge, "surface enumeration limited to q <= " + std::to_string(max_q));
  auto c = count_affine_off_subspace(build_surface(s), max_q, threads);
  VerifyResult r;
  r.method = Method::kHypersurface;
  r.is_ovoid = c.count == 0;
  r.points_checked = q * q * q * q - q * q;
  if (c.witness) {
    const auto& w = *c.witness;
    r.witness = {{w[0], w[1]}, {w[2], w[3]}};
  }
  return r;
}

struct BoundReport {
  std::uint64_t q = 0;
  int r = 3;
  int delta = 0;
  double cm_threshold = 0;  // 2(r+1) delta^2
  bool cm_ok = false;       // q > cm_threshold
  double cm_error = 0;      // (delta-1)(delta-2) q^(r-1/2) + 5 delta^(13/3) q^(r-1)
  double cm_lo = 0, cm_hi = 0;
  double lw_main_threshold = 0;  // 6.3 (d+1)^(13/3)
  bool main_ok = false;
  double implied_min_points = 0;  // q^r - E
  bool more_than_q2 = false;
};

inline double lw_main_threshold(int d) { return 6.3 * std::pow(static_cast<double>(d + 1), 13.0 / 3.0); }

inline double cm_threshold(int r, int delta) { return 2.0 * (r + 1) * static_cast<double>(delta) * delta; }

inline double cm_error(std::uint64_t q, int r, int delta) {
  const double Q = static_cast<double>(q), D = delta;
  return (D - 1) * (D - 2) * std::pow(Q, r - 0.5) + 5 * std::pow(D, 13.0 / 3.0) * std::pow(Q, r - 1);
}

inline BoundReport bounds(std::uint64_t q, int d, int r = 3) {
  BoundReport b;
  b.q = q;
  b.r = r;
  b.delta = d + 1;
  b.cm_threshold = cm_threshold(r, b.delta);
  b.cm_ok = static_cast<double>(q) > b.cm_threshold;
  b.cm_error = cm_error(q, r, b.delta);
  const double qr = std::pow(static_cast<double>(q), r);
  b.cm_lo = qr - b.cm_error;
  b.cm_hi = qr + b.cm_error;
  b.lw_main_threshold = lw_main_threshold(d);
  b.main_ok = static_cast<double>(q) > b.lw_main_threshold;
  b.implied_min_points = b.cm_lo;
  b.more_than_q2 = b.cm_ok && b.cm_lo > static_cast<double>(q) * static_cast<double>(q);
  return b;
}

inline BoundReport bounds(const Hypersurface& S) { return bounds(S.spec.field.q(), S.d); }

struct CmCheck {
  std::uint64_t count = 0;
  double lo = 0, hi = 0;
  bool inside = false;
};

inline constexpr std::uint64_t kCmMaxQ = 7;

// Exact affine zero count of F in AG(n, q), n = nvars <= 4, against the
// interval for r = n - 1, delta = deg F. F must be absolutely irreducible.
inline CmCheck cm_empirical_report(const MPoly& f, std::uint64_t max_q = kCmMaxQ) {
  const Field& F = f.field();
  const std::uint64_t q = F.q();
  const int n = f.nvars();
  KLEIN_ENFORCE(q <= max_q && n <= 4, ErrorCode::kTooLarge, "exact count needs q <= 7 and at most 4 variables");
  CmCheck c;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  std::vector<Elem> x(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = n; i-- > 0;) {
      x[i] = t % q;
      t /= q;
    }
    if (f.eval(x) == 0) ++c.count;
  }
  const int r = n - 1, delta = f.degree();
  const double E = cm_error(q, r, delta);
  const double qr = std::pow(static_cast<double>(q), r);
  c.lo = qr - E;
  c.hi = qr + E;
  c.inside = static_cast<double>(c.count) >= c.lo && static_cast<double>(c.count) <= c.hi;
  return c;
}

inline bool cm_empirical_check(const MPoly& f, std::uint64_t max_q = kCmMaxQ) {
  return cm_empirical_report(f, max_q).inside;
}

// [sum a_i (X1^i - X3^i)]^2 - 4 (X1 - X3) [sum b_i0 (X1^i - X3^i)] in (X1, X3).
inline MPoly discriminant_delta(const OvoidSpec& s) {
  const Field& F = s.field;
  KLEIN_ENFORCE(F.p() != 2, ErrorCode::kEvenCharacteristic, "discriminant needs odd characteristic");
  KLEIN_ENFORCE(InShape(s.f1), ErrorCode::kBadShape, "f1 must have the form Y + sum a_i X^i");
  auto [f1, f2] = NormalizeB01(s.f1, s.f2);
  for (const auto& [m, c] : f2.terms()) {
    KLEIN_ENFORCE(m[1] == 0, ErrorCode::kBadShape, "f2 must be univariate in X");
  }
  const MPoly U = MPoly::Var(F, 2, 0), V = MPoly::Var(F, 2, 1);
  auto diff = [&](const MPoly& f, bool skip_y) {
    MPoly out(F, 2);
    for (const auto& [m, c] : f.terms()) {
      if (skip_y && m[1] != 0) continue;
      out = out + (U.pow(m[0]) - V.pow(m[0])).scale(c);
    }
    return out;
  };
  const MPoly A = diff(f1, true), B = diff(f2, false);
  return A * A - (U - V) * B.scale(F.from_int(4));
}

struct DeltaReport {
  MPoly delta;
  bool square_in_closure = false;
};

inline DeltaReport delta_square_report(const OvoidSpec& s) {
  DeltaReport r;
  r.delta = discriminant_delta(s);
  KLEIN_ENFORCE(!r.delta.is_zero(), ErrorCode::kZeroPolynomial, "discriminant vanishes identically");
  r.square_in_closure = is_square_closure(r.delta);
  return r;
}

}  // namespace klein
