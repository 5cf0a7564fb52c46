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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"

namespace {

const std::string kBin = KLEIN_OVOID_BIN;
const std::string kGolden = KLEIN_GOLDEN_DIR;

struct Run {
  int code;
  std::string out;
};

Run Exec(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + kBin + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string G(const std::string& name) { return kGolden + "/" + name; }

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("klein_cli_" + std::to_string(::getpid()) + "_" + name)).string();
}

}  // namespace

TEST_CASE("family output matches golden") {
  auto r = Exec("family --name elliptic_odd --p 3 --ell 1");
  CHECK(r.code == 0);
  CHECK(r.out == Slurp(G("family_elliptic_odd_3.json")));
  CHECK(r.out.find("\"f2_text\": \"X\"") != std::string::npos);
  CHECK(r.out.find("\"n\": 2") != std::string::npos);
  CHECK(Exec("family --name law_penttila --p 3 --ell 2").out == Slurp(G("spec_law_penttila_9.json")));
}

TEST_CASE("family --emit writes the same spec") {
  const auto path = TempPath("emit.json");
  auto r = Exec("family --name fisher_thas_walker --p 5 --emit '" + path + "'");
  CHECK(r.code == 0);
  CHECK(Slurp(path) == r.out);
  CHECK(r.out == Slurp(G("spec_fisher_thas_walker_5.json")));
  std::filesystem::remove(path);
}

TEST_CASE("verify --method all matches golden") {
  auto r = Exec("verify --spec '" + G("family_elliptic_odd_3.json") + "' --method all");
  CHECK(r.code == 0);
  CHECK(r.out == Slurp(G("verify_all_elliptic_odd_3.json")));
}

TEST_CASE("verify --method all agrees on elliptic_even at q=4") {
  const auto path = TempPath("ee4.json");
  REQUIRE(Exec("family --name elliptic_even --p 2 --ell 2 --emit '" + path + "'").code == 0);
  auto r = Exec("verify --spec '" + path + "' --method all");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"is_ovoid\": false") == std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("non-ovoid verdicts exit 0") {
  const std::string spec =
      R"({"field":{"p":3,"ell":1},"f1":{"vars":2,"terms":[{"e":[0,1],"c":[1]}]},"f2":{"vars":2,"terms":[]}})";
  auto r = Exec("verify --spec '" + spec + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"is_ovoid\": false") != std::string::npos);
  CHECK(r.out.find("[[[0],[0]],[[1],[0]]]") == std::string::npos);  // pretty printed
  CHECK(r.out.find("\"points_checked\": 3") != std::string::npos);
}

TEST_CASE("gallery matches golden") {
  auto r = Exec("gallery");
  CHECK(r.code == 0);
  CHECK(r.out == Slurp(G("gallery.json")));
  std::size_t rows = 0;
  for (std::size_t pos = 0; (pos = r.out.find("\"family\"", pos)) != std::string::npos; ++pos) ++rows;
  CHECK(rows == 14);
}

TEST_CASE("classify and surface match golden") {
  CHECK(Exec("classify --spec '" + G("spec_law_penttila_9.json") + "'").out == Slurp(G("classify_law_penttila_9.json")));
  CHECK(Exec("surface delta --spec '" + G("spec_fisher_thas_walker_5.json") + "'").out ==
        Slurp(G("surface_delta_fisher_thas_walker_5.json")));
  auto b = Exec("surface bounds --spec '" + G("spec_fisher_thas_walker_5.json") + "'");
  CHECK(b.code == 0);
  CHECK(b.out.find("\"lw_main_threshold\": 2560.1") != std::string::npos);
  auto c = Exec("surface count --spec '" + G("family_elliptic_odd_3.json") + "'");
  CHECK(c.code == 0);
  CHECK(c.out.find("\"count\": 0") != std::string::npos);
}

TEST_CASE("search output matches golden and is deterministic") {
  CHECK(Exec("search --p 3 --d1 1 --d2 1").out == Slurp(G("search_q3_d1_d2.jsonl")));
  const std::string args = "search --p 3 --d1 2 --d2 2 --mode random --samples 5000 --no-prefilter";
  auto a = Exec("--seed 7 --threads 1 " + args);
  auto b = Exec("--seed 7 --threads 4 " + args);
  auto c = Exec("--seed 7 " + args, "KLEIN_OVOID_THREADS=2");
  CHECK(a.code == 0);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const auto path = TempPath("s.jsonl");
  CHECK(Exec("--seed 7 " + args + " --out '" + path + "'").code == 0);
  CHECK(Slurp(path) == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("spread export") {
  const auto path = TempPath("lines.json");
  auto r = Exec("spread --spec '" + G("family_elliptic_odd_3.json") + "' --out '" + path + "'");
  CHECK(r.code == 0);
  CHECK(Slurp(path) == r.out);
  CHECK(r.out.find("\"disjoint\": true") != std::string::npos);
  CHECK(r.out.find("\"points_covered\": 40") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(Exec("family --name tits --p 2 --ell 2").code == 2);
  CHECK(Exec("family --name nope --p 3").code == 2);
  CHECK(Exec("family --name elliptic_odd --p 4").code == 2);
  CHECK(Exec("frobnicate").code == 2);
  CHECK(Exec("").code == 2);
  CHECK(Exec("verify --spec '{not json'").code == 2);
  CHECK(Exec("verify --spec /nonexistent/spec.json").code == 2);
  CHECK(Exec("verify --spec '" + G("family_elliptic_odd_3.json") + "' --method bogus").code == 2);
  CHECK(Exec("classify --spec '" + G("family_elliptic_odd_3.json") + "'", "KLEIN_OVOID_THREADS=x").code == 2);
  CHECK(Exec("--help").code == 0);

  const auto path = TempPath("big.json");
  REQUIRE(Exec("family --name elliptic_odd --p 67 --emit '" + path + "'").code == 0);
  CHECK(Exec("verify --spec '" + path + "'").code == 3);
  CHECK(Exec("verify --spec '" + path + "' --method generators").code == 3);
  CHECK(Exec("surface count --spec '" + path + "'").code == 3);
  CHECK(Exec("spread --spec '" + path + "'").code == 3);
  CHECK(Exec("--force verify --spec '" + path + "'").code == 0);
  std::filesystem::remove(path);
  CHECK(Exec("search --p 7 --d1 4 --d2 6").code == 3);
}
