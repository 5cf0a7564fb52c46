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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klein_ovoid/errors.hpp"

namespace klein {

// Packed element: sum of digit_i * p^i, digits in [0, p).
using Elem = std::uint64_t;

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 MulMod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 AddMod(u64 a, u64 b, u64 m) { return a >= m - b ? a - (m - b) : a + b; }

inline u64 SubMod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 PowMod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = MulMod(r, b, m);
    b = MulMod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool IsPrime(u64 n) {
  if (n < 2) return false;
  for (u64 s : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % s == 0) return n == s;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Dense polynomials over F_p, low-to-high, no trailing zeros.
using PPoly = std::vector<u64>;

inline void Trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly PMod(PPoly a, const PPoly& m, u64 p) {
  Trim(a);
  const u64 lead_inv = PowMod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    u64 c = MulMod(a.back(), lead_inv, p);
    size_t s = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      a[s + i] = SubMod(a[s + i], MulMod(c, m[i], p), p);
    }
    Trim(a);
  }
  return a;
}

inline PPoly PMulMod(const PPoly& a, const PPoly& b, const PPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = AddMod(r[i + j], MulMod(a[i], b[j], p), p);
    }
  }
  return PMod(std::move(r), m, p);
}

inline PPoly PGcd(PPoly a, PPoly b, u64 p) {
  Trim(a);
  Trim(b);
  while (!b.empty()) {
    PPoly r = PMod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree n is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= n/2.
inline bool IsIrreducible(const PPoly& f, u64 p) {
  const size_t n = f.size() - 1;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  PPoly x = {0, 1};
  PPoly h = x;
  for (size_t i = 1; i <= n / 2; ++i) {
    PPoly base = h, acc = {1};
    for (u64 e = p; e != 0; e >>= 1) {
      if (e & 1) acc = PMulMod(acc, base, f, p);
      base = PMulMod(base, base, f, p);
    }
    h = acc;
    PPoly g = h;
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = SubMod(g[1], 1, p);
    Trim(g);
    if (g.empty()) return false;
    if (PGcd(f, g, p).size() > 1) return false;
  }
  return true;
}

inline std::optional<u64> CheckedPow(u64 p, unsigned ell) {
  u64 q = 1;
  for (unsigned i = 0; i < ell; ++i) {
    if (q > UINT64_MAX / p) return std::nullopt;
    q *= p;
  }
  return q;
}

inline const std::map<std::pair<u64, unsigned>, PPoly>& ModulusTable() {
  static const std::map<std::pair<u64, unsigned>, PPoly> table = {
      {{2, 1}, {0, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},
      {{3, 1}, {0, 1}},
      {{3, 2}, {1, 0, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 1, 0, 0, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 1, 0, 0, 0, 0, 1}},
      {{5, 1}, {0, 1}},
      {{5, 2}, {2, 0, 1}},
      {{5, 3}, {1, 1, 0, 1}},
      {{5, 4}, {2, 0, 0, 0, 1}},
      {{5, 5}, {1, 4, 0, 0, 0, 1}},
      {{5, 6}, {2, 1, 0, 0, 0, 0, 1}},
      {{7, 1}, {0, 1}},
      {{7, 2}, {1, 0, 1}},
      {{7, 3}, {2, 0, 0, 1}},
      {{7, 4}, {1, 1, 0, 0, 1}},
      {{7, 5}, {3, 1, 0, 0, 0, 1}},
      {{7, 6}, {2, 0, 0, 0, 0, 0, 1}},
      {{11, 1}, {0, 1}},
      {{11, 2}, {1, 0, 1}},
      {{11, 3}, {4, 1, 0, 1}},
      {{11, 4}, {2, 1, 0, 0, 1}},
      {{11, 5}, {2, 0, 0, 0, 0, 1}},
      {{11, 6}, {2, 1, 0, 0, 0, 0, 1}},
      {{13, 1}, {0, 1}},
      {{13, 2}, {2, 0, 1}},
      {{13, 3}, {2, 0, 0, 1}},
      {{13, 4}, {2, 0, 0, 0, 1}},
      {{13, 5}, {2, 4, 0, 0, 0, 1}},
      {{13, 6}, {2, 0, 0, 0, 0, 0, 1}},
  };
  return table;
}

}  // namespace detail

// Least monic irreducible of degree ell, lower coefficients read as a base-p
// integer with the t^(ell-1) coefficient most significant.
inline detail::PPoly SearchModulus(std::uint64_t p, unsigned ell) {
  detail::PPoly m(ell + 1, 0);
  m[ell] = 1;
  for (;;) {
    if (detail::IsIrreducible(m, p)) return m;
    size_t i = 0;
    while (i < ell && ++m[i] == p) m[i++] = 0;
    KLEIN_ENFORCE(i < ell, ErrorCode::kReducibleModulus, "no irreducible found");
  }
}

inline detail::PPoly DefaultModulus(std::uint64_t p, unsigned ell) {
  auto it = detail::ModulusTable().find({p, ell});
  if (it != detail::ModulusTable().end()) return it->second;
  return SearchModulus(p, ell);
}

// Full operation tables for small fields, used by the hot loops.
struct FieldTables {
  std::size_t q = 0;
  std::vector<std::uint16_t> add, sub, mul;
  std::vector<std::uint16_t> neg, inv;
};

inline constexpr std::uint64_t kTableMaxQ = 1024;
inline constexpr std::uint64_t kLogMaxQ = 1 << 16;

enum class WitnessKind { kNonsquare, kTraceOneNotOne };

class FieldElement;

class Field {
 public:
  Field() = default;

  static Field Create(std::uint64_t p, unsigned ell,
                      std::optional<std::vector<std::uint64_t>> modulus = std::nullopt) {
    KLEIN_ENFORCE(detail::IsPrime(p), ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
    KLEIN_ENFORCE(ell >= 1, ErrorCode::kBadModulus, "ell must be positive");
    auto q = detail::CheckedPow(p, ell);
    KLEIN_ENFORCE(q.has_value(), ErrorCode::kUnsupportedSize, "q must be below 2^64");
    detail::PPoly m;
    if (modulus) {
      m = *modulus;
      KLEIN_ENFORCE(m.size() == ell + 1 && m.back() == 1, ErrorCode::kBadModulus,
                    "modulus must be monic of degree ell");
      for (auto c : m) KLEIN_ENFORCE(c < p, ErrorCode::kBadModulus, "modulus coefficient out of range");
      KLEIN_ENFORCE(detail::IsIrreducible(m, p), ErrorCode::kReducibleModulus,
                    "modulus is reducible over F_p");
    } else {
      m = DefaultModulus(p, ell);
    }
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->ell = ell;
    impl->q = *q;
    impl->modulus = std::move(m);
    impl->pw.resize(ell + 1, 1);
    for (unsigned i = 1; i <= ell; ++i) impl->pw[i] = impl->pw[i - 1] * p;
    Field f;
    f.impl_ = impl;
    if (impl->q <= kLogMaxQ && impl->q > 2) f.BuildLogs(*impl);
    if (impl->q <= kTableMaxQ) f.BuildTables(*impl);
    return f;
  }

  std::uint64_t p() const { return impl_->p; }
  unsigned ell() const { return impl_->ell; }
  std::uint64_t q() const { return impl_->q; }
  const std::vector<std::uint64_t>& modulus() const { return impl_->modulus; }
  bool valid() const { return impl_ != nullptr; }
  const FieldTables* tables() const { return impl_->tables.get(); }

  bool operator==(const Field& o) const {
    if (impl_ == o.impl_) return true;
    if (!impl_ || !o.impl_) return false;
    return impl_->p == o.impl_->p && impl_->ell == o.impl_->ell &&
           impl_->modulus == o.impl_->modulus;
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  // Digit access.
  std::vector<std::uint64_t> digits(Elem a) const {
    std::vector<std::uint64_t> d(ell());
    for (unsigned i = 0; i < ell(); ++i) {
      d[i] = a % p();
      a /= p();
    }
    return d;
  }

  Elem from_digits(const std::vector<std::uint64_t>& d) const {
    KLEIN_ENFORCE(d.size() <= ell(), ErrorCode::kParseError, "too many digits");
    Elem r = 0;
    for (size_t i = d.size(); i-- > 0;) {
      KLEIN_ENFORCE(d[i] < p(), ErrorCode::kParseError, "digit out of range");
      r = r * p() + d[i];
    }
    return r;
  }

  Elem from_int(std::int64_t k) const {
    __int128 r = static_cast<__int128>(k) % static_cast<__int128>(p());
    if (r < 0) r += p();
    return static_cast<Elem>(r);
  }

  bool contains(Elem a) const { return a < q(); }

  Elem add(Elem a, Elem b) const {
    if (ell() == 1) return detail::AddMod(a, b, p());
    if (tables()) return tables()->add[a * q() + b];
    Elem r = 0;
    for (unsigned i = 0; i < ell(); ++i) {
      std::uint64_t s = (a % p() + b % p()) % p();
      r += s * impl_->pw[i];
      a /= p();
      b /= p();
    }
    return r;
  }

  Elem neg(Elem a) const {
    if (ell() == 1) return a == 0 ? 0 : p() - a;
    Elem r = 0;
    for (unsigned i = 0; i < ell(); ++i) {
      std::uint64_t d = a % p();
      r += (d == 0 ? 0 : p() - d) * impl_->pw[i];
      a /= p();
    }
    return r;
  }

  Elem sub(Elem a, Elem b) const {
    if (ell() == 1) return detail::SubMod(a, b, p());
    if (tables()) return tables()->sub[a * q() + b];
    return add(a, neg(b));
  }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!impl_->log.empty()) {
      return impl_->exp[impl_->log[a] + impl_->log[b]];
    }
    if (ell() == 1) return detail::MulMod(a, b, p());
    return MulGeneric(*impl_, a, b);
  }

  Elem inv(Elem a) const {
    KLEIN_ENFORCE(a != 0, ErrorCode::kDivisionByZero, "inverse of zero");
    if (!impl_->log.empty()) {
      auto l = impl_->log[a];
      return impl_->exp[l == 0 ? 0 : (q() - 1) - l];
    }
    return pow_u(a, q() - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow_u(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    e %= (q() - 1);
    if (e == 0) e = q() - 1;
    Elem r = 1;
    while (e != 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Negative exponent means inverse-then-power.
  Elem pow(Elem a, std::int64_t e) const {
    if (e >= 0) return pow_u(a, static_cast<std::uint64_t>(e));
    Elem ia = inv(a);
    return pow_u(ia, static_cast<std::uint64_t>(-(e + 1)) + 1);
  }

  Elem frobenius(Elem x, std::uint64_t k) const {
    k %= ell();
    for (std::uint64_t i = 0; i < k; ++i) x = pow_u(x, p());
    return x;
  }

  Elem abs_trace(Elem x) const {
    Elem s = 0;
    for (unsigned i = 0; i < ell(); ++i) {
      s = add(s, x);
      x = pow_u(x, p());
    }
    return s;
  }

  bool is_square(Elem x) const {
    if (x == 0 || p() == 2) return true;
    return pow_u(x, (q() - 1) / 2) == 1;
  }

  // Tonelli-Shanks for odd q; x^(q/2) in characteristic 2.
  std::optional<Elem> sqrt(Elem x) const {
    if (x == 0) return Elem{0};
    if (p() == 2) return frobenius(x, ell() - 1);
    if (!is_square(x)) return std::nullopt;
    std::uint64_t s = 0, m = q() - 1;
    while ((m & 1) == 0) {
      m >>= 1;
      ++s;
    }
    Elem z = witness(WitnessKind::kNonsquare);
    Elem c = pow_u(z, m);
    Elem t = pow_u(x, m);
    Elem r = pow_u(x, (m + 1) / 2);
    while (t != 1) {
      std::uint64_t i = 0;
      Elem tt = t;
      while (tt != 1) {
        tt = mul(tt, tt);
        ++i;
      }
      Elem b = c;
      for (std::uint64_t j = 0; j + i + 1 < s; ++j) b = mul(b, b);
      s = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }

  // Smallest element in packed-integer order (highest digit most significant).
  Elem witness(WitnessKind kind) const {
    if (kind == WitnessKind::kNonsquare) {
      KLEIN_ENFORCE(p() != 2, ErrorCode::kNoWitness, "no nonsquares in even characteristic");
      for (Elem a = 1; a < q(); ++a) {
        if (!is_square(a)) return a;
      }
    } else {
      KLEIN_ENFORCE(p() == 2, ErrorCode::kNoWitness, "trace witness needs even q");
      for (Elem a = 2; a < q(); ++a) {
        if (abs_trace(a) == 1) return a;
      }
    }
    Throw(ErrorCode::kNoWitness, "no element satisfies the predicate in F_" + std::to_string(q()));
  }

  // "2*t^2+t+1" style; plain integer in prime fields.
  std::string to_string(Elem a) const {
    if (ell() == 1) return std::to_string(a);
    auto d = digits(a);
    std::string out;
    for (size_t i = d.size(); i-- > 0;) {
      if (d[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += std::to_string(d[i]);
        continue;
      }
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  bool is_composite_text(Elem a) const {
    if (ell() == 1) return false;
    auto d = digits(a);
    return std::count_if(d.begin(), d.end(), [](auto x) { return x != 0; }) > 1;
  }

  std::string describe() const {
    std::string s = "F_" + std::to_string(q());
    if (ell() > 1) {
      s += " mod ";
      detail::PPoly m = modulus();
      std::string poly;
      for (size_t i = m.size(); i-- > 0;) {
        if (m[i] == 0) continue;
        if (!poly.empty()) poly += "+";
        if (i == 0 || m[i] != 1) poly += std::to_string(m[i]);
        if (i > 0 && m[i] != 1) poly += "*";
        if (i > 0) poly += i > 1 ? "t^" + std::to_string(i) : "t";
      }
      s += poly;
    }
    return s;
  }

  FieldElement element(Elem v) const;

 private:
  struct Impl {
    std::uint64_t p = 0;
    unsigned ell = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
    std::vector<std::uint64_t> pw;
    std::vector<std::uint32_t> exp, log;
    std::unique_ptr<FieldTables> tables;
  };

  static Elem MulGeneric(const Impl& f, Elem a, Elem b) {
    const std::uint64_t p = f.p;
    const unsigned ell = f.ell;
    std::vector<std::uint64_t> da(ell), db(ell), r(2 * ell, 0);
    for (unsigned i = 0; i < ell; ++i) {
      da[i] = a % p;
      a /= p;
      db[i] = b % p;
      b /= p;
    }
    for (unsigned i = 0; i < ell; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < ell; ++j) {
        r[i + j] = detail::AddMod(r[i + j], detail::MulMod(da[i], db[j], p), p);
      }
    }
    for (unsigned k = 2 * ell - 1; k >= ell; --k) {
      std::uint64_t c = r[k];
      if (c == 0) continue;
      for (unsigned t = 0; t <= ell; ++t) {
        r[k - ell + t] = detail::SubMod(r[k - ell + t], detail::MulMod(c, f.modulus[t], p), p);
      }
    }
    Elem out = 0;
    for (unsigned i = ell; i-- > 0;) out = out * p + r[i];
    return out;
  }

  void BuildLogs(Impl& f) {
    const std::uint64_t n = f.q - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        primes.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) primes.push_back(m);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
      Elem r = 1;
      while (e != 0) {
        if (e & 1) r = f.ell == 1 ? detail::MulMod(r, a, f.p) : MulGeneric(f, r, a);
        a = f.ell == 1 ? detail::MulMod(a, a, f.p) : MulGeneric(f, a, a);
        e >>= 1;
      }
      return r;
    };
    Elem g = 2;
    for (; g < f.q; ++g) {
      bool primitive = true;
      for (auto r : primes) {
        if (slow_pow(g, n / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
    f.exp.assign(2 * n, 0);
    f.log.assign(f.q, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      f.exp[i] = f.exp[i + n] = static_cast<std::uint32_t>(x);
      f.log[x] = static_cast<std::uint32_t>(i);
      x = f.ell == 1 ? detail::MulMod(x, g, f.p) : MulGeneric(f, x, g);
    }
  }

  void BuildTables(Impl& f) {
    auto t = std::make_unique<FieldTables>();
    const std::size_t q = f.q;
    t->q = q;
    t->add.resize(q * q);
    t->sub.resize(q * q);
    t->mul.resize(q * q);
    t->neg.resize(q);
    t->inv.resize(q);
    // tables() is still null here, so add/sub/mul take the digit paths.
    for (std::size_t a = 0; a < q; ++a) {
      t->neg[a] = static_cast<std::uint16_t>(neg(a));
      t->inv[a] = a == 0 ? 0 : static_cast<std::uint16_t>(inv(a));
      for (std::size_t b = 0; b < q; ++b) {
        t->add[a * q + b] = static_cast<std::uint16_t>(add(a, b));
        t->sub[a * q + b] = static_cast<std::uint16_t>(sub(a, b));
        t->mul[a * q + b] = static_cast<std::uint16_t>(mul(a, b));
      }
    }
    f.tables = std::move(t);
  }

  std::shared_ptr<Impl> impl_;
};

// Value type carrying its field; cross-field arithmetic throws.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field f, Elem v) : f_(std::move(f)), v_(v) {
    KLEIN_ENFORCE(f_.contains(v_), ErrorCode::kParseError, "element out of range");
  }

  const Field& field() const { return f_; }
  Elem value() const { return v_; }
  std::vector<std::uint64_t> digits() const { return f_.digits(v_); }

  FieldElement operator+(const FieldElement& o) const { return {Same(o), f_.add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {Same(o), f_.sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {Same(o), f_.mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {Same(o), f_.div(v_, o.v_)}; }
  FieldElement operator-() const { return {f_, f_.neg(v_)}; }
  FieldElement inv() const { return {f_, f_.inv(v_)}; }
  FieldElement pow(std::int64_t e) const { return {f_, f_.pow(v_, e)}; }
  FieldElement frobenius(std::uint64_t k) const { return {f_, f_.frobenius(v_, k)}; }
  FieldElement abs_trace() const { return {f_, f_.abs_trace(v_)}; }
  bool is_square() const { return f_.is_square(v_); }

  bool operator==(const FieldElement& o) const { return f_ == o.f_ && v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const { return f_.to_string(v_); }

 private:
  const Field& Same(const FieldElement& o) const {
    KLEIN_ENFORCE(f_ == o.f_, ErrorCode::kFieldMismatch, "operands live in different fields");
    return f_;
  }

  Field f_;
  Elem v_ = 0;
};

inline FieldElement Field::element(Elem v) const { return FieldElement(*this, v); }

// Arithmetic policies for templated hot loops.
struct TableArith {
  const std::uint16_t* add_;
  const std::uint16_t* sub_;
  const std::uint16_t* mul_;
  std::size_t q;

  explicit TableArith(const FieldTables& t)
      : add_(t.add.data()), sub_(t.sub.data()), mul_(t.mul.data()), q(t.q) {}
  Elem add(Elem a, Elem b) const { return add_[a * q + b]; }
  Elem sub(Elem a, Elem b) const { return sub_[a * q + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q + b]; }
};

struct GenericArith {
  const Field* f;

  explicit GenericArith(const Field& field) : f(&field) {}
  Elem add(Elem a, Elem b) const { return f->add(a, b); }
  Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
  Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
};

template <typename Fn>
decltype(auto) WithArith(const Field& f, Fn&& fn) {
  if (const FieldTables* t = f.tables()) return fn(TableArith(*t));
  return fn(GenericArith(f));
}

}  // namespace klein
