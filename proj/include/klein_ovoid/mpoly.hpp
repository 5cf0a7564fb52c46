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

#include <array>
#include <climits>
#include <initializer_list>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "klein_ovoid/errors.hpp"
#include "klein_ovoid/gf.hpp"

namespace klein {

inline constexpr int kMaxVars = 6;
inline constexpr int kDegNegInf = INT_MIN;  // degree of the zero polynomial
inline constexpr std::uint64_t kMaxExponent = UINT16_MAX;

using Mono = std::array<std::uint16_t, kMaxVars>;

inline int MonoDegree(const Mono& m) {
  int s = 0;
  for (auto e : m) s += e;
  return s;
}

// Graded lexicographic, X0 > X1 > ... within a degree.
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = MonoDegree(a), db = MonoDegree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

inline std::vector<std::string> DefaultVarNames(int nvars) {
  switch (nvars) {
    case 1: return {"X"};
    case 2: return {"X", "Y"};
    case 3: return {"X", "Y", "T"};
    default: {
      std::vector<std::string> v;
      for (int i = 0; i < nvars; ++i) v.push_back("X" + std::to_string(i));
      return v;
    }
  }
}

class MPoly {
 public:
  using Terms = std::map<Mono, Elem, GrlexLess>;

  MPoly() = default;
  MPoly(Field f, int nvars) : f_(std::move(f)), nvars_(nvars) {
    KLEIN_ENFORCE(nvars >= 1 && nvars <= kMaxVars, ErrorCode::kBadArity,
                  "nvars must be in 1.." + std::to_string(kMaxVars));
  }

  // Duplicate exponents are summed, zero results dropped.
  static MPoly Build(const Field& f, int nvars,
                     const std::vector<std::pair<std::vector<std::uint64_t>, Elem>>& terms) {
    MPoly r(f, nvars);
    for (const auto& [exps, c] : terms) {
      KLEIN_ENFORCE(static_cast<int>(exps.size()) == nvars, ErrorCode::kBadArity,
                    "exponent vector length differs from nvars");
      KLEIN_ENFORCE(f.contains(c), ErrorCode::kFieldMismatch, "coefficient not in field");
      r.add_term(MakeMono(exps), c);
    }
    return r;
  }

  static MPoly Build(const Field& f, int nvars,
                     const std::vector<std::pair<std::vector<std::uint64_t>, FieldElement>>& terms) {
    std::vector<std::pair<std::vector<std::uint64_t>, Elem>> raw;
    for (const auto& [e, c] : terms) {
      KLEIN_ENFORCE(c.field() == f, ErrorCode::kFieldMismatch, "coefficient from another field");
      raw.emplace_back(e, c.value());
    }
    return Build(f, nvars, raw);
  }

  static MPoly Constant(const Field& f, int nvars, Elem c) {
    MPoly r(f, nvars);
    r.add_term(Mono{}, c);
    return r;
  }

  static MPoly Var(const Field& f, int nvars, int i, std::uint64_t e = 1) {
    KLEIN_ENFORCE(i >= 0 && i < nvars, ErrorCode::kBadArity, "variable index out of range");
    MPoly r(f, nvars);
    Mono m{};
    m[i] = CheckExp(e);
    r.add_term(m, 1);
    return r;
  }

  static Mono MakeMono(const std::vector<std::uint64_t>& exps) {
    KLEIN_ENFORCE(exps.size() <= kMaxVars, ErrorCode::kBadArity, "too many variables");
    Mono m{};
    for (size_t i = 0; i < exps.size(); ++i) m[i] = CheckExp(exps[i]);
    return m;
  }

  static std::uint16_t CheckExp(std::uint64_t e) {
    KLEIN_ENFORCE(e <= kMaxExponent, ErrorCode::kExponentOverflow,
                  "exponent " + std::to_string(e) + " exceeds 65535");
    return static_cast<std::uint16_t>(e);
  }

  void add_term(const Mono& m, Elem c) {
    if (c == 0) return;
    for (int i = nvars_; i < kMaxVars; ++i) {
      KLEIN_ENFORCE(m[i] == 0, ErrorCode::kBadArity, "exponent in unused variable slot");
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second = f_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }

  const Field& field() const { return f_; }
  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree() const { return terms_.empty() ? kDegNegInf : MonoDegree(terms_.rbegin()->first); }

  int degree_in(int v) const {
    int d = kDegNegInf;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m[v]);
    return d;
  }

  Elem coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  Elem coeff(std::initializer_list<std::uint64_t> e) const { return coeff(MakeMono(std::vector<std::uint64_t>(e))); }

  const std::pair<const Mono, Elem>& lead() const {
    KLEIN_ENFORCE(!terms_.empty(), ErrorCode::kZeroPolynomial, "zero polynomial has no lead term");
    return *terms_.rbegin();
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = degree();
    for (const auto& [m, c] : terms_) {
      if (MonoDegree(m) != d) return false;
    }
    return true;
  }

  std::set<int> used_vars() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_) {
      for (int i = 0; i < nvars_; ++i) {
        if (m[i] != 0) s.insert(i);
      }
    }
    return s;
  }

  MPoly operator+(const MPoly& o) const {
    Same(o);
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  MPoly operator-() const {
    MPoly r(f_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, f_.neg(c));
    return r;
  }

  MPoly operator-(const MPoly& o) const { return *this + (-o); }

  MPoly operator*(const MPoly& o) const {
    Same(o);
    MPoly r(f_, nvars_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        Mono m{};
        for (int i = 0; i < kMaxVars; ++i) m[i] = CheckExp(std::uint64_t{ma[i]} + mb[i]);
        r.add_term(m, f_.mul(ca, cb));
      }
    }
    return r;
  }

  MPoly scale(Elem c) const {
    MPoly r(f_, nvars_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, f_.mul(v, c));
    return r;
  }

  MPoly pow(unsigned n) const {
    MPoly r = Constant(f_, nvars_, 1), b = *this;
    while (n != 0) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n != 0) b = b * b;
    }
    return r;
  }

  bool operator==(const MPoly& o) const {
    return f_ == o.f_ && nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  Elem eval(const std::vector<Elem>& pt) const {
    KLEIN_ENFORCE(static_cast<int>(pt.size()) == nvars_, ErrorCode::kBadArity,
                  "point length differs from nvars");
    Elem acc = 0;
    for (const auto& [m, c] : terms_) {
      Elem t = c;
      for (int i = 0; i < nvars_ && t != 0; ++i) {
        if (m[i] != 0) t = f_.mul(t, f_.pow_u(pt[i], m[i]));
      }
      acc = f_.add(acc, t);
    }
    return acc;
  }

  FieldElement eval(const std::vector<FieldElement>& pt) const {
    std::vector<Elem> raw;
    for (const auto& x : pt) {
      KLEIN_ENFORCE(x.field() == f_, ErrorCode::kFieldMismatch, "point from another field");
      raw.push_back(x.value());
    }
    return f_.element(eval(raw));
  }

  // Moves variable i to slot var_map[i] of a polynomial in new_nvars variables.
  MPoly embed(int new_nvars, const std::vector<int>& var_map) const {
    KLEIN_ENFORCE(static_cast<int>(var_map.size()) == nvars_, ErrorCode::kBadArity,
                  "variable map length differs from nvars");
    MPoly r(f_, new_nvars);
    for (const auto& [m, c] : terms_) {
      Mono nm{};
      for (int i = 0; i < nvars_; ++i) {
        KLEIN_ENFORCE(var_map[i] >= 0 && var_map[i] < new_nvars, ErrorCode::kBadArity,
                      "variable map target out of range");
        nm[var_map[i]] = CheckExp(std::uint64_t{nm[var_map[i]]} + m[i]);
      }
      r.add_term(nm, c);
    }
    return r;
  }

  // Sets variable v to the constant c.
  MPoly specialize(int v, Elem c) const {
    MPoly r(f_, nvars_);
    for (const auto& [m, k] : terms_) {
      Mono nm = m;
      nm[v] = 0;
      r.add_term(nm, f_.mul(k, f_.pow_u(c, m[v])));
    }
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    auto vn = names.empty() ? DefaultVarNames(nvars_) : names;
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vn[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      std::string coef = f_.to_string(c);
      if (f_.is_composite_text(c)) coef = "(" + coef + ")";
      std::string term;
      if (mono.empty()) {
        term = coef;
      } else if (c == 1) {
        term = mono;
      } else {
        term = coef + "*" + mono;
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out;
  }

 private:
  void Same(const MPoly& o) const {
    KLEIN_ENFORCE(f_ == o.f_, ErrorCode::kFieldMismatch, "polynomials over different fields");
    KLEIN_ENFORCE(nvars_ == o.nvars_, ErrorCode::kBadArity, "polynomials in different rings");
  }

  Field f_;
  int nvars_ = 1;
  Terms terms_;
};

// X^i Y^j -> X^i Y^j T^(d-i-j); T is placed at new_var_position.
inline MPoly homogenize(const MPoly& f, int d, int new_var_position = 2) {
  KLEIN_ENFORCE(f.nvars() == 2, ErrorCode::kBadArity, "homogenize expects a bivariate polynomial");
  KLEIN_ENFORCE(new_var_position >= 0 && new_var_position <= 2, ErrorCode::kBadArity,
                "new variable position must be 0, 1 or 2");
  KLEIN_ENFORCE(f.is_zero() || d >= f.degree(), ErrorCode::kDegreeTooSmall,
                "target degree " + std::to_string(d) + " below deg f");
  std::vector<int> slot;
  for (int i = 0; i < 3; ++i) {
    if (i != new_var_position) slot.push_back(i);
  }
  MPoly r(f.field(), 3);
  for (const auto& [m, c] : f.terms()) {
    Mono nm{};
    nm[slot[0]] = m[0];
    nm[slot[1]] = m[1];
    nm[new_var_position] = MPoly::CheckExp(static_cast<std::uint64_t>(d - MonoDegree(m)));
    r.add_term(nm, c);
  }
  return r;
}

inline MPoly tangent_cone_origin(const MPoly& f) {
  KLEIN_ENFORCE(!f.is_zero(), ErrorCode::kZeroPolynomial, "tangent cone of zero");
  KLEIN_ENFORCE(f.coeff(Mono{}) == 0, ErrorCode::kNonVanishingAtOrigin,
                "polynomial does not vanish at the origin");
  const int low = MonoDegree(f.terms().begin()->first);
  MPoly r(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (MonoDegree(m) == low) r.add_term(m, c);
  }
  return r;
}

// Division by a single divisor; the remainder is zero iff g divides f.
inline std::pair<MPoly, MPoly> divide(const MPoly& f, const MPoly& g) {
  KLEIN_ENFORCE(!g.is_zero(), ErrorCode::kZeroPolynomial, "division by zero polynomial");
  const Field& F = f.field();
  const auto& [lm, lc] = g.lead();
  const Elem lc_inv = F.inv(lc);
  MPoly quo(F, f.nvars()), rem(F, f.nvars()), p = f;
  while (!p.is_zero()) {
    auto [pm, pc] = p.lead();
    bool divisible = true;
    Mono t{};
    for (int i = 0; i < kMaxVars; ++i) {
      if (pm[i] < lm[i]) {
        divisible = false;
        break;
      }
      t[i] = static_cast<std::uint16_t>(pm[i] - lm[i]);
    }
    if (!divisible) {
      rem.add_term(pm, pc);
      p.add_term(pm, F.neg(pc));
      continue;
    }
    MPoly term(F, f.nvars());
    term.add_term(t, F.mul(pc, lc_inv));
    quo = quo + term;
    p = p - term * g;
  }
  return {quo, rem};
}

inline bool has_nonrepeated_factor(const MPoly& f, const MPoly& g) {
  KLEIN_ENFORCE(!f.is_zero() && !g.is_zero(), ErrorCode::kZeroPolynomial,
                "factor test needs nonzero polynomials");
  if (!divide(f, g).second.is_zero()) return false;
  return !divide(f, g * g).second.is_zero();
}

namespace detail {

// Dense univariate helpers, low-to-high.
using UPoly = std::vector<Elem>;

inline void UTrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly UMul(const Field& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  UTrim(r);
  return r;
}

inline std::pair<UPoly, UPoly> UDivMod(const Field& F, UPoly a, const UPoly& b) {
  UTrim(a);
  UPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  const Elem inv = F.inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    size_t s = a.size() - b.size();
    Elem c = F.mul(a.back(), inv);
    q[s] = c;
    for (size_t i = 0; i < b.size(); ++i) a[s + i] = F.sub(a[s + i], F.mul(c, b[i]));
    UTrim(a);
  }
  UTrim(q);
  return {q, a};
}

inline UPoly UMonic(const Field& F, UPoly a) {
  UTrim(a);
  if (a.empty()) return a;
  Elem inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

inline UPoly UGcd(const Field& F, UPoly a, UPoly b) {
  UTrim(a);
  UTrim(b);
  while (!b.empty()) {
    UPoly r = UDivMod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return UMonic(F, a);
}

inline UPoly UDeriv(const Field& F, const UPoly& a) {
  UPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), a[i]));
  UTrim(r);
  return r;
}

inline bool UIsOne(const UPoly& a) { return a.size() == 1 && a[0] == 1; }

inline Elem UEval(const Field& F, const UPoly& a, Elem x) {
  Elem r = 0;
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

// Musser's algorithm with p-th root extraction when the derivative vanishes.
inline void USquarefree(const Field& F, const UPoly& f, std::uint64_t mult,
                        std::vector<std::pair<UPoly, std::uint64_t>>& out) {
  UPoly c = UGcd(F, f, UDeriv(F, f));
  UPoly w = UDivMod(F, f, c).first;
  std::uint64_t i = 1;
  while (!UIsOne(w) && !w.empty()) {
    UPoly y = UGcd(F, w, c);
    UPoly z = UDivMod(F, w, y).first;
    if (z.size() > 1) out.emplace_back(UMonic(F, z), i * mult);
    ++i;
    w = y;
    c = UDivMod(F, c, y).first;
  }
  if (c.size() > 1) {
    const std::uint64_t p = F.p();
    UPoly root((c.size() - 1) / p + 1, 0);
    for (size_t k = 0; k < c.size(); k += p) root[k / p] = F.frobenius(c[k], F.ell() - 1);
    USquarefree(F, UMonic(F, root), mult * p, out);
  }
}

}  // namespace detail

struct SquarefreeFactor {
  MPoly factor;
  int multiplicity;
};

inline constexpr std::uint64_t kRootSplitMaxQ = 1 << 16;

// f = lc(f) * prod factor^multiplicity. F_q-rational linear factors are split
// off each squarefree part when q <= 2^16.
inline std::vector<SquarefreeFactor> squarefree_decompose(const MPoly& f) {
  KLEIN_ENFORCE(!f.is_zero(), ErrorCode::kZeroPolynomial, "squarefree decomposition of zero");
  auto vars = f.used_vars();
  KLEIN_ENFORCE(vars.size() <= 1, ErrorCode::kBadShape, "squarefree decomposition needs a univariate input");
  if (vars.empty()) return {};
  const int v = *vars.begin();
  const Field& F = f.field();
  detail::UPoly u(f.degree_in(v) + 1, 0);
  for (const auto& [m, c] : f.terms()) u[m[v]] = c;
  std::vector<std::pair<detail::UPoly, std::uint64_t>> parts;
  detail::USquarefree(F, detail::UMonic(F, u), 1, parts);

  std::vector<std::pair<detail::UPoly, std::uint64_t>> split;
  for (auto& [g, e] : parts) {
    detail::UPoly rest = g;
    if (F.q() <= kRootSplitMaxQ) {
      for (Elem r = 0; r < F.q() && rest.size() > 2; ++r) {
        if (detail::UEval(F, rest, r) != 0) continue;
        detail::UPoly lin = {F.neg(r), 1};
        split.emplace_back(lin, e);
        rest = detail::UDivMod(F, rest, lin).first;
      }
    }
    split.emplace_back(rest, e);
  }
  std::sort(split.begin(), split.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
  });
  std::vector<SquarefreeFactor> out;
  for (const auto& [g, e] : split) {
    MPoly m(F, f.nvars());
    for (size_t i = 0; i < g.size(); ++i) {
      Mono mono{};
      mono[v] = MPoly::CheckExp(i);
      m.add_term(mono, g[i]);
    }
    out.push_back({m, static_cast<int>(e)});
  }
  return out;
}

namespace detail {

inline bool AllEven(const std::vector<SquarefreeFactor>& fs) {
  for (const auto& s : fs) {
    if (s.multiplicity % 2 != 0) return false;
  }
  return true;
}

}  // namespace detail

// Square-up-to-constant test by extracting a grlex square root. Works for any
// input shape; characteristic 2 reduces to an even-exponent check.
inline bool is_square_closure_direct(const MPoly& f) {
  KLEIN_ENFORCE(!f.is_zero(), ErrorCode::kZeroPolynomial, "square test of zero");
  const Field& F = f.field();
  if (F.p() == 2) {
    for (const auto& [m, c] : f.terms()) {
      for (auto e : m) {
        if (e % 2 != 0) return false;
      }
    }
    return true;
  }
  const auto [lm, lc] = f.lead();
  MPoly h = f.scale(F.inv(lc));
  Mono gm{};
  for (int i = 0; i < kMaxVars; ++i) {
    if (lm[i] % 2 != 0) return false;
    gm[i] = static_cast<std::uint16_t>(lm[i] / 2);
  }
  MPoly g(F, f.nvars());
  g.add_term(gm, 1);
  const Elem inv2 = F.inv(2);
  MPoly r = h - g * g;
  Mono last = gm;
  while (!r.is_zero()) {
    auto [rm, rc] = r.lead();
    Mono t{};
    for (int i = 0; i < kMaxVars; ++i) {
      if (rm[i] < gm[i]) return false;
      t[i] = static_cast<std::uint16_t>(rm[i] - gm[i]);
    }
    if (!GrlexLess{}(t, last)) return false;
    MPoly term(F, f.nvars());
    term.add_term(t, F.mul(rc, inv2));
    r = r - (g + g + term) * term;
    g = g + term;
    last = t;
  }
  return true;
}

// True iff f = c * g^2 over the algebraic closure. Univariate input uses the
// squarefree decomposition; homogeneous bivariate input is dehomogenized at its
// second variable; any other shape falls back to the direct root extraction.
inline bool is_square_closure(const MPoly& f) {
  KLEIN_ENFORCE(!f.is_zero(), ErrorCode::kZeroPolynomial, "square test of zero");
  auto vars = f.used_vars();
  if (vars.size() <= 1) return detail::AllEven(squarefree_decompose(f));
  if (vars.size() == 2 && f.is_homogeneous()) {
    const int hv = *vars.rbegin();
    MPoly g = f.specialize(hv, 1);
    const int cof = f.degree() - g.degree();
    if (cof % 2 != 0) return false;
    return detail::AllEven(squarefree_decompose(g));
  }
  return is_square_closure_direct(f);
}

struct DegreeStats {
  int d1 = kDegNegInf;
  int d2 = kDegNegInf;
  int i1 = kDegNegInf, i2 = kDegNegInf;
  int j1 = kDegNegInf, j2 = kDegNegInf;
  std::set<int> gamma;
  std::optional<int> h;  // nullopt is infinity
};

// f1 = Y + sum a_i X^i with i >= 1.
inline bool InShape(const MPoly& f1) {
  if (f1.nvars() != 2 || f1.coeff({0, 1}) != 1) return false;
  for (const auto& [m, c] : f1.terms()) {
    if (m[0] == 0 && m[1] == 1) continue;
    if (m[1] != 0 || m[0] == 0) return false;
  }
  return true;
}

// Moves a b_{0,1} Y term of f2 into f1: (f1 + bX, f2 - bY) leaves the pair
// condition unchanged term for term.
inline std::pair<MPoly, MPoly> NormalizeB01(const MPoly& f1, const MPoly& f2) {
  const Elem b = f2.coeff({0, 1});
  if (b == 0) return {f1, f2};
  const Field& F = f1.field();
  MPoly g1 = f1, g2 = f2;
  g1.add_term(MPoly::MakeMono({1, 0}), b);
  g2.add_term(MPoly::MakeMono({0, 1}), F.neg(b));
  return {g1, g2};
}

inline DegreeStats degree_stats(const MPoly& f1_in, const MPoly& f2_in) {
  KLEIN_ENFORCE(f1_in.nvars() == 2 && f2_in.nvars() == 2, ErrorCode::kBadArity,
                "degree stats expect bivariate polynomials");
  KLEIN_ENFORCE(f1_in.field() == f2_in.field(), ErrorCode::kFieldMismatch,
                "f1 and f2 over different fields");
  KLEIN_ENFORCE(InShape(f1_in), ErrorCode::kBadShape, "f1 must have the form Y + sum a_i X^i");
  auto [f1, f2] = NormalizeB01(f1_in, f2_in);
  DegreeStats s;
  s.d1 = 1;
  for (const auto& [m, c] : f1.terms()) {
    if (m[1] == 0) s.d1 = std::max<int>(s.d1, m[0]);
    s.i1 = std::max<int>(s.i1, m[0]);
    s.j1 = std::max<int>(s.j1, m[1]);
  }
  s.d2 = f2.degree();
  for (const auto& [m, c] : f2.terms()) {
    s.i2 = std::max<int>(s.i2, m[0]);
    s.j2 = std::max<int>(s.j2, m[1]);
    if (m[1] == 0 && m[0] > 0 && m[0] < s.d2) s.gamma.insert(m[0]);
  }
  if (!s.gamma.empty()) s.h = *s.gamma.rbegin();
  return s;
}

}  // namespace klein
