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
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "klein_ovoid/errors.hpp"
#include "klein_ovoid/gf.hpp"
#include "klein_ovoid/mpoly.hpp"
#include "klein_ovoid/quadric.hpp"

namespace klein {

using FamilyParams = std::map<std::string, std::uint64_t>;

struct Provenance {
  std::string family;
  FamilyParams params;
};

struct OvoidSpec {
  Field field;
  MPoly f1;
  MPoly f2;
  std::optional<Provenance> provenance;
};

inline OvoidSpec MakeSpec(const MPoly& f1, const MPoly& f2) {
  KLEIN_ENFORCE(f1.nvars() == 2 && f2.nvars() == 2, ErrorCode::kInvalidSpec,
                "f1 and f2 must be bivariate");
  KLEIN_ENFORCE(f1.field() == f2.field(), ErrorCode::kFieldMismatch, "f1 and f2 over different fields");
  KLEIN_ENFORCE(f1.coeff(Mono{}) == 0 && f2.coeff(Mono{}) == 0, ErrorCode::kInvalidSpec,
                "f_i(0,0) must vanish");
  return OvoidSpec{f1.field(), f1, f2, std::nullopt};
}

enum class Method { kPairwise, kGenerators, kHypersurface };

inline std::string MethodName(Method m) {
  switch (m) {
    case Method::kPairwise: return "pairwise";
    case Method::kGenerators: return "generators";
    case Method::kHypersurface: return "hypersurface";
  }
  return "?";
}

using AffinePoint = std::pair<Elem, Elem>;

struct VerifyResult {
  bool is_ovoid = false;
  std::optional<std::pair<AffinePoint, AffinePoint>> witness;
  std::uint64_t points_checked = 0;
  Method method = Method::kPairwise;
};

struct VerifyOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  std::function<void(std::uint64_t, std::uint64_t)> progress;  // (rows done, rows total)
};

inline unsigned ResolveThreads(unsigned t) {
  if (t != 0) return t;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Values of f on the affine plane, indexed x*q + y.
inline std::vector<Elem> EvalGrid(const MPoly& f) {
  const Field& F = f.field();
  const std::uint64_t q = F.q();
  std::vector<Elem> out(q * q, 0);
  std::map<std::uint16_t, std::vector<Elem>> powers;
  auto pw = [&](std::uint16_t e) -> const std::vector<Elem>& {
    auto it = powers.find(e);
    if (it != powers.end()) return it->second;
    std::vector<Elem> v(q);
    for (Elem x = 0; x < q; ++x) v[x] = F.pow_u(x, e);
    return powers.emplace(e, std::move(v)).first->second;
  };
  for (const auto& [m, c] : f.terms()) {
    const auto& px = pw(m[0]);
    const auto& py = pw(m[1]);
    for (Elem x = 0; x < q; ++x) {
      Elem cx = F.mul(c, px[x]);
      if (cx == 0) continue;
      Elem* row = &out[x * q];
      for (Elem y = 0; y < q; ++y) row[y] = F.add(row[y], F.mul(cx, py[y]));
    }
  }
  return out;
}

inline std::vector<ProjPoint> build_points(const OvoidSpec& s) {
  const Field& F = s.field;
  const std::uint64_t q = F.q();
  const auto g1 = EvalGrid(s.f1);
  const auto g2 = EvalGrid(s.f2);
  std::vector<ProjPoint> pts;
  pts.reserve(q * q + 1);
  for (Elem x = 0; x < q; ++x) {
    for (Elem y = 0; y < q; ++y) {
      Elem a = g1[x * q + y], b = g2[x * q + y];
      Elem last = F.neg(F.add(F.mul(x, b), F.mul(y, a)));
      pts.push_back({1, x, y, a, b, last});
    }
  }
  pts.push_back({0, 0, 0, 0, 0, 1});
  return pts;
}

// (x1-x2)(f2(P2)-f2(P1)) + (y1-y2)(f1(P2)-f1(P1)).
inline Elem pair_expression(const OvoidSpec& s, AffinePoint P1, AffinePoint P2) {
  const Field& F = s.field;
  Elem d1 = F.sub(s.f1.eval({P2.first, P2.second}), s.f1.eval({P1.first, P1.second}));
  Elem d2 = F.sub(s.f2.eval({P2.first, P2.second}), s.f2.eval({P1.first, P1.second}));
  return F.add(F.mul(F.sub(P1.first, P2.first), d2), F.mul(F.sub(P1.second, P2.second), d1));
}

namespace detail {

template <typename A>
std::uint64_t FirstViolation(const A& ar, std::uint64_t q, const Elem* g1, const Elem* g2,
                             std::uint64_t n, std::uint64_t i) {
  const Elem xi = i / q, yi = i % q, a = g1[i], b = g2[i];
  for (std::uint64_t j = i + 1; j < n; ++j) {
    const Elem xj = j / q, yj = j % q;
    Elem v = ar.add(ar.mul(ar.sub(xi, xj), ar.sub(g2[j], b)), ar.mul(ar.sub(yi, yj), ar.sub(g1[j], a)));
    if (v == 0) return j;
  }
  return n;
}

inline void AtomicMin(std::atomic<std::uint64_t>& a, std::uint64_t v) {
  std::uint64_t cur = a.load();
  while (v < cur && !a.compare_exchange_weak(cur, v)) {
  }
}

}  // namespace detail

// Scans unordered pairs of affine points in lexicographic order. The witness
// is the lexicographically least violating pair for any thread count.
inline VerifyResult verify_pairwise(const OvoidSpec& s, const VerifyOptions& opt = {}) {
  const Field& F = s.field;
  const std::uint64_t q = F.q();
  const std::uint64_t n = q * q;
  const auto g1 = EvalGrid(s.f1);
  const auto g2 = EvalGrid(s.f2);
  const std::uint64_t none = UINT64_MAX;
  std::atomic<std::uint64_t> next{0}, best{none}, done{0};
  std::mutex progress_mu;

  auto worker = [&](auto ar) {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= n || i * n >= best.load()) return;
      std::uint64_t j = detail::FirstViolation(ar, q, g1.data(), g2.data(), n, i);
      if (j < n) detail::AtomicMin(best, i * n + j);
      std::uint64_t d = done.fetch_add(1) + 1;
      if (opt.progress && (d % 4096 == 0 || d == n)) {
        std::lock_guard<std::mutex> lock(progress_mu);
        opt.progress(d, n);
      }
    }
  };
  const unsigned nt = ResolveThreads(opt.threads);
  WithArith(F, [&](auto ar) {
    if (nt == 1) {
      worker(ar);
      return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back([&, ar] { worker(ar); });
    for (auto& th : pool) th.join();
  });

  VerifyResult r;
  r.method = Method::kPairwise;
  const std::uint64_t b = best.load();
  if (b == none) {
    r.is_ovoid = true;
    r.points_checked = n * (n - 1) / 2;
    return r;
  }
  const std::uint64_t i = b / n, j = b % n;
  r.is_ovoid = false;
  r.witness = {{i / q, i % q}, {j / q, j % q}};
  // rows before i contribute n-1-r pairs each
  r.points_checked = i * (n - 1) - i * (i - 1) / 2 + (j - i);
  return r;
}

// Every generator plane must meet the point set exactly once. Each entry of
// planes holds the points of one generator.
inline VerifyResult verify_by_generators(const OvoidSpec& s, const std::vector<std::vector<ProjPoint>>& planes) {
  const auto pts = build_points(s);
  const std::set<ProjPoint> set(pts.begin(), pts.end());
  VerifyResult r;
  r.method = Method::kGenerators;
  r.is_ovoid = set.size() == pts.size();
  for (const auto& plane : planes) {
    int meet = 0;
    for (const auto& P : plane) {
      ++r.points_checked;
      if (set.count(P)) ++meet;
    }
    if (meet != 1) r.is_ovoid = false;
  }
  return r;
}

inline std::vector<std::vector<ProjPoint>> generator_point_sets(const Field& F,
                                                                std::uint64_t max_q = kGeneratorsMaxQ) {
  std::vector<std::vector<ProjPoint>> out;
  for (const auto& g : enumerate_generators(F, max_q)) out.push_back(plane_points(F, g));
  return out;
}

inline VerifyResult verify_by_generators(const OvoidSpec& s, std::uint64_t max_q = kGeneratorsMaxQ) {
  KLEIN_ENFORCE(s.field.q() <= max_q, ErrorCode::kTooLarge,
                "generator verification limited to q <= " + std::to_string(max_q));
  return verify_by_generators(s, generator_point_sets(s.field, max_q));
}

// Catalogue order.
inline const std::vector<std::string>& FamilyNames() {
  static const std::vector<std::string> names = {
      "elliptic_odd",     "elliptic_even",      "kantor_monomial", "penttila_williams_q4",
      "thas_payne",       "ree_tits_slice",     "tits",            "fisher_thas_walker",
      "kantor_payne",     "law_penttila",       "ganley",          "thas_flock",
      "kantor_p5",        "penttila_williams_flock"};
  return names;
}

namespace detail {

struct FamilyBuilder {
  const Field& F;
  const FamilyParams& given;
  Provenance prov;

  void Require(bool ok, const std::string& cond) {
    KLEIN_ENFORCE(ok, ErrorCode::kRestrictionViolated,
                  prov.family + " over " + F.describe() + " needs " + cond);
  }

  Elem Param(const std::string& name, const std::function<Elem()>& fallback) {
    auto it = given.find(name);
    Elem v = it != given.end() ? it->second : fallback();
    prov.params[name] = v;
    return v;
  }

  Elem Nonsquare(const std::string& name) {
    Elem n = Param(name, [&] { return F.witness(WitnessKind::kNonsquare); });
    Require(F.contains(n) && !F.is_square(n), name + " a non-square of F_q");
    return n;
  }

  MPoly Poly(const std::vector<std::tuple<std::uint64_t, std::uint64_t, Elem>>& terms) {
    std::vector<std::pair<std::vector<std::uint64_t>, Elem>> t;
    for (auto [i, j, c] : terms) t.push_back({{i, j}, c});
    return MPoly::Build(F, 2, t);
  }
};

inline std::uint64_t IPow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace detail

// Builds the (f1, f2) pair for the named family; parameters default to the
// smallest valid witnesses and may be overridden through params.
inline OvoidSpec family(const std::string& name, const Field& F, const FamilyParams& params = {}) {
  const auto& names = FamilyNames();
  KLEIN_ENFORCE(std::find(names.begin(), names.end(), name) != names.end(), ErrorCode::kUnknownFamily,
                "unknown family '" + name + "'");
  detail::FamilyBuilder b{F, params, {name, {}}};
  const std::uint64_t p = F.p(), q = F.q();
  const unsigned ell = F.ell();
  const Elem one = 1, m1 = F.neg(1);
  const MPoly Y = b.Poly({{0, 1, one}});
  MPoly f1 = Y, f2(F, 2);

  if (name == "elliptic_odd") {
    b.Require(q % 2 == 1, "q odd");
    Elem n = b.Nonsquare("n");
    f2 = b.Poly({{1, 0, F.neg(n)}});
  } else if (name == "elliptic_even") {
    b.Require(q % 2 == 0, "q even");
    Elem a = b.Param("a", [&] {
      for (Elem x = 2; x < q; ++x) {
        if (F.abs_trace(x) == 1) return x;
      }
      b.Require(false, "an element a != 1 with tr(a) = 1");
      return Elem{0};
    });
    b.Require(F.contains(a) && a != 1 && F.abs_trace(a) == 1, "a != 1 with tr(a) = 1");
    f2 = b.Poly({{1, 0, a}, {0, 1, one}});
  } else if (name == "kantor_monomial") {
    b.Require(q % 2 == 1 && ell > 1, "q odd and ell > 1");
    Elem k = b.Param("k", [] { return Elem{1}; });
    b.Require(k > 0 && k < ell, "sigma = p^k with 0 < k < ell");
    Elem n = b.Nonsquare("n");
    f2 = b.Poly({{detail::IPow(p, k), 0, F.neg(n)}});
  } else if (name == "penttila_williams_q4") {
    b.Require(p == 3 && ell == 5, "p = 3 and ell = 5");
    f2 = b.Poly({{9, 0, m1}, {0, 81, m1}});
  } else if (name == "thas_payne") {
    b.Require(p == 3 && ell > 2, "p = 3 and ell > 2");
    Elem n = b.Nonsquare("n");
    // (n^-1 x)^(1/9) = frob^(ell-2)(n^-1) x^(3^(ell-2)); y^(1/3) = y^(3^(ell-1))
    Elem c = F.frobenius(F.inv(n), ell - 2);
    f2 = b.Poly({{1, 0, F.neg(n)}, {detail::IPow(3, ell - 2), 0, F.neg(c)}, {0, detail::IPow(3, ell - 1), m1}});
  } else if (name == "ree_tits_slice") {
    b.Require(p == 3 && ell > 1 && ell % 2 == 1, "p = 3, ell > 1 odd");
    const std::uint64_t sigma = detail::IPow(3, (ell + 1) / 2);
    b.prov.params["sigma"] = sigma;
    f2 = b.Poly({{2 * sigma + 3, 0, m1}, {0, sigma, m1}});
  } else if (name == "tits") {
    b.Require(p == 2 && ell > 1 && ell % 2 == 1, "p = 2, ell > 1 odd");
    const std::uint64_t sigma = detail::IPow(2, (ell + 1) / 2);
    b.prov.params["sigma"] = sigma;
    f2 = b.Poly({{sigma + 1, 0, one}, {0, sigma, one}});
  } else if (name == "fisher_thas_walker") {
    b.Require(q % 3 == 2, "q = -1 mod 3");
    f1 = b.Poly({{0, 1, one}, {2, 0, m1}});
    f2 = b.Poly({{3, 0, F.inv(F.from_int(3))}});
  } else if (name == "kantor_payne") {
    b.Require((p % 5 == 2 || p % 5 == 3) && ell % 2 == 1, "p = +-2 mod 5 and ell odd");
    Elem beta = b.Param("beta", [] { return Elem{1}; });
    Elem gamma = b.Param("gamma", [&] { return F.div(F.mul(beta, beta), F.from_int(5)); });
    b.Require(F.contains(beta) && F.contains(gamma) && F.mul(beta, beta) == F.mul(F.from_int(5), gamma),
              "beta^2 = 5 gamma");
    f1 = b.Poly({{0, 1, one}, {3, 0, F.neg(beta)}});
    f2 = b.Poly({{5, 0, gamma}});
  } else if (name == "law_penttila") {
    b.Require(p == 3, "p = 3");
    Elem n = b.Nonsquare("n");
    Elem n2 = F.mul(n, n), n3 = F.mul(n2, n);
    f1 = b.Poly({{0, 1, one}, {4, 0, m1}, {2, 0, F.neg(n)}});
    f2 = b.Poly({{9, 0, F.neg(F.inv(n))}, {7, 0, one}, {3, 0, n2}, {1, 0, F.neg(n3)}});
  } else if (name == "ganley") {
    b.Require(p == 3 && ell > 2, "p = 3 and ell > 2");
    Elem n1 = b.Nonsquare("n1");
    Elem n2 = b.Nonsquare("n2");
    Elem d = b.Param("d", [&] {
      auto r = F.sqrt(F.mul(n1, n2));
      b.Require(r.has_value(), "d^2 = n1 n2");
      Elem root = *r;
      return std::min(root, F.neg(root));
    });
    b.Require(F.contains(d) && F.mul(d, d) == F.mul(n1, n2), "d^2 = n1 n2");
    f1 = b.Poly({{0, 1, one}, {3, 0, F.neg(d)}});
    f2 = b.Poly({{9, 0, F.neg(n1)}, {1, 0, F.neg(F.mul(n1, F.mul(n2, n2)))}});
  } else if (name == "thas_flock") {
    auto irreducible = [&](Elem bb, Elem cc) {
      for (Elem t = 0; t < q; ++t) {
        if (F.add(F.add(F.mul(t, t), F.mul(bb, t)), cc) == 0) return false;
      }
      return true;
    };
    std::optional<std::pair<Elem, Elem>> bc;
    if (params.count("b") || params.count("c")) {
      bc = {params.count("b") ? params.at("b") : 0, params.count("c") ? params.at("c") : 0};
    } else {
      for (Elem bb = 0; bb < q && !bc; ++bb) {
        for (Elem cc = 0; cc < q && !bc; ++cc) {
          if (irreducible(bb, cc)) bc = {bb, cc};
        }
      }
    }
    b.Require(bc && F.contains(bc->first) && F.contains(bc->second) && irreducible(bc->first, bc->second),
              "t^2 + b t + c irreducible");
    b.prov.params["b"] = bc->first;
    b.prov.params["c"] = bc->second;
    f1 = b.Poly({{0, 1, one}, {1, 0, F.neg(bc->first)}});
    f2 = b.Poly({{1, 0, bc->second}});
  } else if (name == "kantor_p5") {
    b.Require(p == 5, "p = 5");
    Elem n = b.Nonsquare("n");
    f1 = b.Poly({{0, 1, one}, {2, 0, m1}});
    f2 = b.Poly({{3, 0, F.inv(F.from_int(3))}, {5, 0, F.neg(n)}, {1, 0, F.neg(F.inv(n))}});
  } else if (name == "penttila_williams_flock") {
    b.Require(p == 3 && ell == 5, "p = 3 and ell = 5");
    f1 = b.Poly({{0, 1, one}, {27, 0, one}});
    f2 = b.Poly({{9, 0, m1}});
  }
  OvoidSpec s = MakeSpec(f1, f2);
  s.provenance = b.prov;
  return s;
}

inline constexpr std::uint64_t kSpreadMaxQ = 13;

inline std::vector<PG3Line> ovoid_to_spread(const OvoidSpec& s, std::uint64_t max_q = kSpreadMaxQ) {
  KLEIN_ENFORCE(s.field.q() <= max_q, ErrorCode::kTooLarge,
                "spread export limited to q <= " + std::to_string(max_q));
  KLEIN_ENFORCE(verify_pairwise(s).is_ovoid, ErrorCode::kNotAnOvoid, "spec does not define an ovoid");
  std::vector<PG3Line> lines;
  for (const auto& P : build_points(s)) lines.push_back(klein_line(s.field, P));
  return lines;
}

struct SpreadCheck {
  bool disjoint = false;
  bool covers = false;
  std::uint64_t points_covered = 0;
};

inline SpreadCheck check_spread(const Field& F, const std::vector<PG3Line>& lines) {
  const std::uint64_t q = F.q();
  std::set<Row4> seen;
  SpreadCheck c;
  c.disjoint = true;
  for (const auto& L : lines) {
    for (const auto& P : line_points(F, L)) {
      if (!seen.insert(P).second) c.disjoint = false;
    }
  }
  c.points_covered = seen.size();
  c.covers = c.points_covered == (q * q + 1) * (q + 1);
  return c;
}

// f1 = Y exactly and the pair condition holds.
inline bool q4_section_check(const OvoidSpec& s, const VerifyOptions& opt = {}) {
  MPoly Y = MPoly::Var(s.field, 2, 1);
  if (s.f1 != Y) return false;
  return verify_pairwise(s, opt).is_ovoid;
}

}  // namespace klein
