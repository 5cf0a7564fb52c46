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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "klein_ovoid/classify.hpp"
#include "klein_ovoid/errors.hpp"
#include "klein_ovoid/gf.hpp"
#include "klein_ovoid/mpoly.hpp"
#include "klein_ovoid/ovoid.hpp"
#include "klein_ovoid/quadric.hpp"
#include "klein_ovoid/surface.hpp"

namespace klein::io {

using nlohmann::json;

inline constexpr const char* kSpecSchema = "klein-ovoid/spec@1";

template <typename Fn>
auto Parse(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    Throw(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

inline json FieldToJson(const Field& F) {
  return {{"p", F.p()}, {"ell", F.ell()}, {"modulus", F.modulus()}};
}

inline Field FieldFromJson(const json& j) {
  return Parse("field", [&] {
    std::optional<std::vector<std::uint64_t>> mod;
    if (j.contains("modulus") && !j.at("modulus").is_null()) mod = j.at("modulus").get<std::vector<std::uint64_t>>();
    return Field::Create(j.at("p").get<std::uint64_t>(), j.at("ell").get<unsigned>(), mod);
  });
}

// Little-endian digit list.
inline json ElemToJson(const Field& F, Elem a) { return F.digits(a); }

inline Elem ElemFromJson(const Field& F, const json& j) {
  return Parse("element", [&] {
    if (j.is_number_integer()) {
      return F.from_int(j.get<std::int64_t>());
    }
    return F.from_digits(j.get<std::vector<std::uint64_t>>());
  });
}

inline json PolyToJson(const MPoly& f) {
  json terms = json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    std::vector<std::uint64_t> e(it->first.begin(), it->first.begin() + f.nvars());
    terms.push_back({{"e", e}, {"c", ElemToJson(f.field(), it->second)}});
  }
  return {{"vars", f.nvars()}, {"terms", terms}};
}

inline MPoly PolyFromJson(const Field& F, const json& j) {
  return Parse("polynomial", [&] {
    const int n = j.at("vars").get<int>();
    std::vector<std::pair<std::vector<std::uint64_t>, Elem>> terms;
    for (const auto& t : j.at("terms")) {
      terms.emplace_back(t.at("e").get<std::vector<std::uint64_t>>(), ElemFromJson(F, t.at("c")));
    }
    return MPoly::Build(F, n, terms);
  });
}

inline json SpecToJson(const OvoidSpec& s) {
  json j = {{"schema", kSpecSchema},
            {"field", FieldToJson(s.field)},
            {"f1", PolyToJson(s.f1)},
            {"f2", PolyToJson(s.f2)},
            {"f1_text", s.f1.to_string()},
            {"f2_text", s.f2.to_string()}};
  if (s.provenance) {
    json params = json::object();
    for (const auto& [k, v] : s.provenance->params) params[k] = v;
    j["provenance"] = {{"family", s.provenance->family}, {"params", params}};
  }
  return j;
}

inline OvoidSpec SpecFromJson(const json& j) {
  return Parse("spec", [&] {
    if (j.contains("schema")) {
      KLEIN_ENFORCE(j.at("schema") == kSpecSchema, ErrorCode::kParseError, "unsupported spec schema");
    }
    Field F = FieldFromJson(j.at("field"));
    OvoidSpec s = MakeSpec(PolyFromJson(F, j.at("f1")), PolyFromJson(F, j.at("f2")));
    if (j.contains("provenance")) {
      Provenance p;
      p.family = j.at("provenance").at("family").get<std::string>();
      for (auto& [k, v] : j.at("provenance").at("params").items()) p.params[k] = v.get<std::uint64_t>();
      s.provenance = p;
    }
    return s;
  });
}

inline json PointToJson(const Field& F, const ProjPoint& P) {
  json j = json::array();
  for (auto x : P) j.push_back(ElemToJson(F, x));
  return j;
}

inline json LineToJson(const Field& F, const PG3Line& L) {
  json j = json::array();
  for (const auto& r : L.rows) {
    json row = json::array();
    for (auto x : r) row.push_back(ElemToJson(F, x));
    j.push_back(row);
  }
  return j;
}

inline json VerifyToJson(const Field& F, const VerifyResult& v) {
  json j = {{"method", MethodName(v.method)}, {"is_ovoid", v.is_ovoid}, {"points_checked", v.points_checked}};
  if (v.witness) {
    const auto& [a, b] = *v.witness;
    j["witness"] = {{ElemToJson(F, a.first), ElemToJson(F, a.second)}, {ElemToJson(F, b.first), ElemToJson(F, b.second)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json DegreeInt(int v) { return v == kDegNegInf ? json("-inf") : json(v); }

inline json StatsToJson(const DegreeStats& s) {
  return {{"d1", DegreeInt(s.d1)}, {"d2", DegreeInt(s.d2)}, {"i1", DegreeInt(s.i1)}, {"i2", DegreeInt(s.i2)},
          {"j1", DegreeInt(s.j1)}, {"j2", DegreeInt(s.j2)}, {"gamma", s.gamma},
          {"h", s.h ? json(*s.h) : json("inf")}};
}

inline json BoundsToJson(const BoundReport& b) {
  return {{"q", b.q},
          {"r", b.r},
          {"delta", b.delta},
          {"cm_threshold", b.cm_threshold},
          {"cm_ok", b.cm_ok},
          {"cm_error", b.cm_error},
          {"cm_interval", {b.cm_lo, b.cm_hi}},
          {"lw_main_threshold", b.lw_main_threshold},
          {"main_ok", b.main_ok},
          {"implied_min_points", b.implied_min_points},
          {"more_than_q2", b.more_than_q2}};
}

inline json ReportToJson(const ClassReport& r) {
  json fired = json::array();
  for (const auto& f : r.fired_rules) fired.push_back({{"id", f.id}, {"detail", f.detail}});
  json j = {{"stats", StatsToJson(r.stats)},
            {"d", r.d},
            {"threshold_ok", r.threshold_ok},
            {"lw_main_threshold", r.bounds.lw_main_threshold},
            {"fired_rules", fired},
            {"matched_cases", r.matched_cases},
            {"verdict", VerdictName(r.verdict)},
            {"reason", r.reason},
            {"notes", r.notes}};
  j["q4_section"] = r.q4_section ? json(*r.q4_section) : json(nullptr);
  return j;
}

// One compact JSON object per hit, newline terminated.
inline std::string SearchToJsonl(const Field& F, const SearchResult& r) {
  std::string out;
  for (const auto& h : r.hits) {
    json line = {{"index", h.index},
                 {"spec", SpecToJson(h.spec)},
                 {"verify", VerifyToJson(F, h.verify)},
                 {"report", ReportToJson(h.report)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace klein::io
