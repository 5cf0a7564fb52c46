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

// Slow, independent reference implementations used as test oracles.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

// Schoolbook F_p[t]/(m) on explicit digit vectors; packs like the library
// (digit i has weight p^i) so values can be compared directly.
struct NaiveField {
  u64 p;
  unsigned ell;
  std::vector<u64> mod;
  u64 q;

  NaiveField(u64 p_, unsigned ell_, std::vector<u64> mod_) : p(p_), ell(ell_), mod(std::move(mod_)) {
    q = 1;
    for (unsigned i = 0; i < ell; ++i) q *= p;
  }

  std::vector<u64> Unpack(u64 a) const {
    std::vector<u64> d(ell);
    for (unsigned i = 0; i < ell; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }

  u64 Pack(const std::vector<u64>& d) const {
    u64 r = 0;
    for (unsigned i = ell; i-- > 0;) r = r * p + d[i];
    return r;
  }

  static u64 MulP(u64 a, u64 b, u64 p) { return static_cast<u64>((unsigned __int128)a * b % p); }

  u64 Add(u64 a, u64 b) const {
    auto x = Unpack(a), y = Unpack(b);
    for (unsigned i = 0; i < ell; ++i) x[i] = static_cast<u64>(((unsigned __int128)x[i] + y[i]) % p);
    return Pack(x);
  }

  u64 Neg(u64 a) const {
    auto x = Unpack(a);
    for (auto& v : x) v = (p - v) % p;
    return Pack(x);
  }

  u64 Sub(u64 a, u64 b) const { return Add(a, Neg(b)); }

  u64 Mul(u64 a, u64 b) const {
    auto x = Unpack(a), y = Unpack(b);
    std::vector<u64> r(2 * ell, 0);
    for (unsigned i = 0; i < ell; ++i)
      for (unsigned j = 0; j < ell; ++j) r[i + j] = static_cast<u64>(((unsigned __int128)r[i + j] + MulP(x[i], y[j], p)) % p);
    for (unsigned k = 2 * ell - 1; k >= ell; --k) {
      u64 c = r[k];
      r[k] = 0;
      for (unsigned t = 0; t < ell; ++t) r[k - ell + t] = static_cast<u64>(((unsigned __int128)r[k - ell + t] + p - MulP(c, mod[t], p)) % p);
    }
    r.resize(ell);
    return Pack(r);
  }

  u64 Pow(u64 a, u64 e) const {
    u64 r = 1;
    for (u64 i = 0; i < e; ++i) r = Mul(r, a);
    return r;
  }

  // Inverse by exhaustive search.
  u64 Inv(u64 a) const {
    for (u64 b = 1; b < q; ++b)
      if (Mul(a, b) == 1) return b;
    return 0;
  }

  bool IsSquareBrute(u64 a) const {
    for (u64 b = 0; b < q; ++b)
      if (Mul(b, b) == a) return true;
    return false;
  }
};

// Remainder of monic-divisor long division over F_p.
inline std::vector<u64> PolyRem(std::vector<u64> a, const std::vector<u64>& m, u64 p) {
  while (a.size() >= m.size()) {
    u64 c = a.back();
    size_t s = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[s + i] = (a[s + i] + p - (c * m[i]) % p) % p;
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Trial division by every monic polynomial of degree <= ell/2.
inline bool IrreducibleBrute(const std::vector<u64>& f, u64 p) {
  const size_t n = f.size() - 1;
  for (size_t d = 1; d <= n / 2; ++d) {
    u64 count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (u64 v = 0; v < count; ++v) {
      std::vector<u64> g(d + 1, 0);
      g[d] = 1;
      u64 t = v;
      for (size_t i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      if (PolyRem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Points of X0X5+X1X4+X2X3=0 by scanning every vector of F_q^6.
inline u64 CountQuadricBrute(const NaiveField& F) {
  u64 count = 0;
  std::array<u64, 6> v{};
  u64 total = 1;
  for (int i = 0; i < 6; ++i) total *= F.q;
  for (u64 idx = 1; idx < total; ++idx) {
    u64 t = idx;
    for (int i = 5; i >= 0; --i) {
      v[i] = t % F.q;
      t /= F.q;
    }
    int k = 0;
    while (v[k] == 0) ++k;
    if (v[k] != 1) continue;
    u64 s = F.Add(F.Add(F.Mul(v[0], v[5]), F.Mul(v[1], v[4])), F.Mul(v[2], v[3]));
    if (s == 0) ++count;
  }
  return count;
}

}  // namespace oracle
