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

// klein-ovoid: verify, build and classify candidate ovoids of Q+(5,q).

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "klein_ovoid/classify.hpp"
#include "klein_ovoid/io/json_io.hpp"

namespace {

using klein::Elem;
using klein::ErrorCode;
using klein::Field;
using klein::OvoidSpec;
using nlohmann::json;
namespace io = klein::io;

constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

constexpr std::uint64_t kPairwiseGuardQ = 64;
constexpr std::uint64_t kUnguarded = UINT64_MAX;

struct Global {
  unsigned threads = 0;
  bool force = false;
  std::uint64_t seed = 0;
};

unsigned EnvThreads() {
  const char* v = std::getenv("KLEIN_OVOID_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    return static_cast<unsigned>(std::stoul(v));
  } catch (const std::exception&) {
    klein::Throw(ErrorCode::kParseError, "KLEIN_OVOID_THREADS must be a non-negative integer");
  }
}

// Path, "-" for stdin, or inline JSON.
json ReadJson(const std::string& src) {
  std::string text;
  if (!src.empty() && src.front() == '{') {
    text = src;
  } else if (src == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(src);
    KLEIN_ENFORCE(in.good(), ErrorCode::kParseError, "cannot read '" + src + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return io::Parse("input", [&] { return json::parse(text); });
}

void WriteFile(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  KLEIN_ENFORCE(out.good(), ErrorCode::kParseError, "cannot write '" + path + "'");
  out << body;
}

void Emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void Guard(const Global& g, std::uint64_t q, std::uint64_t limit, const std::string& what) {
  if (g.force || q <= limit) return;
  klein::Throw(ErrorCode::kTooLarge,
               what + " at q = " + std::to_string(q) + " exceeds q <= " + std::to_string(limit) + "; pass --force");
}

std::optional<std::vector<std::uint64_t>> ParseModulus(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      klein::Throw(ErrorCode::kParseError, "bad modulus coefficient '" + tok + "'");
    }
  }
  return out;
}

klein::FamilyParams ParseParams(const std::vector<std::string>& kv) {
  klein::FamilyParams out;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    KLEIN_ENFORCE(eq != std::string::npos && eq > 0, ErrorCode::kParseError, "--param expects name=value, got '" + s + "'");
    try {
      out[s.substr(0, eq)] = std::stoull(s.substr(eq + 1));
    } catch (const std::exception&) {
      klein::Throw(ErrorCode::kParseError, "bad value in '" + s + "'");
    }
  }
  return out;
}

klein::VerifyResult RunMethod(const Global& g, const OvoidSpec& s, const std::string& m) {
  const std::uint64_t q = s.field.q();
  if (m == "pairwise") {
    Guard(g, q, kPairwiseGuardQ, "pairwise verification");
    klein::VerifyOptions opt;
    opt.threads = g.threads;
    if (q > kPairwiseGuardQ) {
      opt.progress = [](std::uint64_t d, std::uint64_t n) {
        if (d % (1 << 16) == 0 || d == n) std::cerr << "pairwise: row " << d << " / " << n << "\n";
      };
    }
    return klein::verify_pairwise(s, opt);
  }
  if (m == "generators") {
    Guard(g, q, klein::kGeneratorsMaxQ, "generator verification");
    return klein::verify_by_generators(s, kUnguarded);
  }
  Guard(g, q, klein::kSurfaceMaxQ, "hypersurface verification");
  return klein::verify_by_hypersurface(s, kUnguarded, g.threads);
}

int CmdVerify(const Global& g, const std::string& spec_src, const std::string& method) {
  const OvoidSpec s = io::SpecFromJson(ReadJson(spec_src));
  std::vector<std::string> methods = {method};
  if (method == "all") methods = {"pairwise", "generators", "hypersurface"};
  std::vector<klein::VerifyResult> results;
  for (const auto& m : methods) results.push_back(RunMethod(g, s, m));
  json out = {{"field", s.field.describe()}, {"results", json::array()}};
  for (const auto& r : results) out["results"].push_back(io::VerifyToJson(s.field, r));
  for (const auto& r : results) {
    if (r.is_ovoid == results.front().is_ovoid) continue;
    std::cerr << "verifiers disagree\nspec: " << io::SpecToJson(s).dump() << "\nresults: " << out["results"].dump()
              << "\n";
    std::abort();
  }
  out["is_ovoid"] = results.front().is_ovoid;
  Emit(out);
  std::cerr << (results.front().is_ovoid ? "ovoid" : "not an ovoid") << " over " << s.field.describe() << "\n";
  return 0;
}

int CmdFamily(const std::string& name, std::uint64_t p, unsigned ell, const std::string& modulus,
              const std::vector<std::string>& params, const std::string& emit) {
  const Field F = Field::Create(p, ell, ParseModulus(modulus));
  const json j = io::SpecToJson(klein::family(name, F, ParseParams(params)));
  if (!emit.empty()) WriteFile(emit, j.dump(2) + "\n");
  Emit(j);
  return 0;
}

// Smallest admissible field for each family, trying q in increasing order.
int CmdGallery(const Global& g, bool verify) {
  std::vector<std::pair<std::uint64_t, unsigned>> fields;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    std::uint64_t q = p;
    for (unsigned ell = 1; q <= 243; ++ell, q *= p) fields.push_back({p, ell});
  }
  std::sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) {
    return std::pow(double(a.first), a.second) < std::pow(double(b.first), b.second);
  });
  json rows = json::array();
  std::cerr << std::left << std::setw(26) << "family" << std::setw(6) << "q" << std::setw(5) << "d1" << std::setw(5)
            << "d2" << std::setw(5) << "h" << "f1 ; f2\n";
  for (const auto& name : klein::FamilyNames()) {
    for (const auto& [p, ell] : fields) {
      const Field F = Field::Create(p, ell);
      std::optional<OvoidSpec> s;
      try {
        s = klein::family(name, F);
      } catch (const klein::Error& e) {
        if (e.code() == ErrorCode::kRestrictionViolated || e.code() == ErrorCode::kNoWitness) continue;
        throw;
      }
      const auto st = klein::degree_stats(s->f1, s->f2);
      json row = {{"family", name},
                  {"q", F.q()},
                  {"p", p},
                  {"ell", ell},
                  {"f1", s->f1.to_string()},
                  {"f2", s->f2.to_string()},
                  {"d1", st.d1},
                  {"d2", st.d2},
                  {"h", st.h ? json(*st.h) : json("inf")}};
      if (verify && (g.force || F.q() <= kPairwiseGuardQ)) {
        klein::VerifyOptions opt;
        opt.threads = g.threads;
        row["is_ovoid"] = klein::verify_pairwise(*s, opt).is_ovoid;
      }
      rows.push_back(row);
      std::cerr << std::setw(26) << name << std::setw(6) << F.q() << std::setw(5) << st.d1 << std::setw(5) << st.d2
                << std::setw(5) << (st.h ? std::to_string(*st.h) : "inf") << s->f1.to_string() << " ; "
                << s->f2.to_string() << "\n";
      break;
    }
  }
  Emit(rows);
  return 0;
}

int CmdSpread(const Global& g, const std::string& spec_src, const std::string& out_path) {
  const OvoidSpec s = io::SpecFromJson(ReadJson(spec_src));
  Guard(g, s.field.q(), klein::kSpreadMaxQ, "spread export");
  const auto lines = klein::ovoid_to_spread(s, kUnguarded);
  const auto check = klein::check_spread(s.field, lines);
  json L = json::array();
  for (const auto& l : lines) L.push_back(io::LineToJson(s.field, l));
  json out = {{"field", io::FieldToJson(s.field)},
              {"lines", L},
              {"disjoint", check.disjoint},
              {"covers", check.covers},
              {"points_covered", check.points_covered}};
  if (!out_path.empty()) WriteFile(out_path, out.dump(2) + "\n");
  Emit(out);
  std::cerr << lines.size() << " lines, " << check.points_covered << " points covered\n";
  return 0;
}

int CmdSurface(const Global& g, const std::string& what, const std::string& spec_src, std::uint64_t q_max) {
  const OvoidSpec s = io::SpecFromJson(ReadJson(spec_src));
  const auto S = klein::build_surface(s);
  json out = {{"field", s.field.describe()}, {"d", S.d}, {"F", S.F.to_string({"X0", "X1", "X2", "X3", "X4"})}};
  if (what == "count") {
    Guard(g, s.field.q(), q_max, "surface enumeration");
    const auto c = klein::count_affine_off_subspace(S, kUnguarded, g.threads);
    out["count"] = c.count;
    if (c.witness) {
      json w = json::array({io::ElemToJson(s.field, 1)});
      for (auto x : *c.witness) w.push_back(io::ElemToJson(s.field, x));
      out["witness"] = w;
    } else {
      out["witness"] = nullptr;
    }
  } else if (what == "delta") {
    const auto r = klein::delta_square_report(s);
    out["delta"] = r.delta.to_string({"X1", "X3"});
    out["square_in_closure"] = r.square_in_closure;
  } else {
    out["bounds"] = io::BoundsToJson(klein::bounds(S));
  }
  Emit(out);
  return 0;
}

int CmdClassify(const std::string& spec_src) {
  const OvoidSpec s = io::SpecFromJson(ReadJson(spec_src));
  const auto r = klein::classify(s);
  Emit(io::ReportToJson(r));
  std::cerr << klein::VerdictName(r.verdict) << ": " << r.reason << "\n";
  return 0;
}

struct SearchArgs {
  std::uint64_t p = 3;
  unsigned ell = 1;
  std::string modulus;
  int d1 = 1, d2 = 1;
  std::string mode = "exhaustive";
  std::uint64_t samples = 1000;
  bool no_prefilter = false;
  std::string out;
};

int CmdSearch(const Global& g, const SearchArgs& a) {
  const Field F = Field::Create(a.p, a.ell, ParseModulus(a.modulus));
  klein::SearchOptions opt;
  opt.d1_max = a.d1;
  opt.d2_max = a.d2;
  opt.mode = a.mode == "random" ? klein::SearchMode::kRandom : klein::SearchMode::kExhaustive;
  opt.seed = g.seed;
  opt.samples = a.samples;
  opt.prefilter = !a.no_prefilter;
  opt.threads = g.threads;
  if (g.force) opt.max_space = std::numeric_limits<double>::infinity();
  const auto r = klein::search(F, opt);
  const std::string body = io::SearchToJsonl(F, r);
  if (a.out.empty()) {
    std::cout << body;
  } else {
    WriteFile(a.out, body);
  }
  std::cerr << r.hits.size() << " ovoids among " << r.examined << " specs (" << r.pruned << " pruned)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ovoids of the Klein quadric Q+(5,q): verification, families, classification"};
  app.require_subcommand(1);
  Global g;
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "worker threads, 0 = all cores (default: $KLEIN_OVOID_THREADS or 0)");
  app.add_flag("--force", g.force, "lift the size guards");
  app.add_option("--seed", g.seed, "seed for random search");

  std::string spec, method = "pairwise";
  auto* verify = app.add_subcommand("verify", "check the pair condition of a spec");
  verify->add_option("--spec", spec, "spec JSON file, '-' or inline JSON")->required();
  verify->add_option("--method", method)->check(CLI::IsMember({"pairwise", "generators", "hypersurface", "all"}));

  std::string name, modulus, emit;
  std::uint64_t p = 0;
  unsigned ell = 1;
  std::vector<std::string> params;
  auto* fam = app.add_subcommand("family", "build a known family");
  fam->add_option("--name", name)->required();
  fam->add_option("--p", p)->required();
  fam->add_option("--ell", ell);
  fam->add_option("--modulus", modulus, "comma separated, constant term first");
  fam->add_option("--param", params, "name=value overrides");
  fam->add_option("--emit", emit, "also write the spec here");

  bool gallery_verify = false;
  auto* gallery = app.add_subcommand("gallery", "every family at its smallest admissible q");
  gallery->add_flag("--verify", gallery_verify, "run the pairwise check on each row");

  std::string out;
  auto* spread = app.add_subcommand("spread", "export a verified ovoid as a line spread of PG(3,q)");
  spread->add_option("--spec", spec)->required();
  spread->add_option("--out", out);

  std::string what;
  std::uint64_t q_max = klein::kSurfaceMaxQ;
  auto* surface = app.add_subcommand("surface", "the hypersurface S_{f1,f2}");
  surface->add_option("what", what)->required()->check(CLI::IsMember({"count", "delta", "bounds"}));
  surface->add_option("--spec", spec)->required();
  surface->add_option("--q-max", q_max);

  auto* classify = app.add_subcommand("classify", "structural rules and classification cases");
  classify->add_option("--spec", spec)->required();

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "enumerate specs and report the ovoids found (JSONL)");
  search->add_option("--p", sa.p)->required();
  search->add_option("--ell", sa.ell);
  search->add_option("--modulus", sa.modulus);
  search->add_option("--d1", sa.d1);
  search->add_option("--d2", sa.d2);
  search->add_option("--mode", sa.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--samples", sa.samples);
  search->add_flag("--no-prefilter", sa.no_prefilter);
  search->add_option("--out", sa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    g.threads = threads ? *threads : EnvThreads();
    if (*verify) return CmdVerify(g, spec, method);
    if (*fam) return CmdFamily(name, p, ell, modulus, params, emit);
    if (*gallery) return CmdGallery(g, gallery_verify);
    if (*spread) return CmdSpread(g, spec, out);
    if (*surface) return CmdSurface(g, what, spec, q_max);
    if (*classify) return CmdClassify(spec);
    if (*search) return CmdSearch(g, sa);
  } catch (const klein::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kTooLarge ? kExitGuard : kExitInput;
  }
  return 0;
}
