// Copyright 2026 The conekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = CONEKIT_CLI_PATH;
const std::string kData = CONEKIT_TEST_DATA;

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / ("conekit_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const std::string& out = "/dev/null") {
  std::string cmd = "\"" + kCli + "\" " + args + " > \"" + out + "\" 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("membership in the orthant exits 0 with a combination") {
  auto dir = scratch();
  auto out = dir / "member.json";
  CHECK(run("cone member --exact \"" + kData + "/orthant_member.json\"", out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"] == "yes");
  CHECK(j["certificate"]["cert"]["type"] == "combination");
}

TEST_CASE("the transpose map is not completely positive") {
  auto dir = scratch();
  auto out = dir / "cp.json";
  CHECK(run("map cp \"" + kData + "/transpose_map.json\"", out.string()) == 1);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"] == "no");
  CHECK(j["certificate"]["type"] == "cp_witness");
  CHECK(j["certificate"].contains("z"));
}

TEST_CASE("TFT duality check exits 0") {
  auto dir = scratch();
  auto out = dir / "tft.json";
  CHECK(run("tft verify --k 2 --m 2", out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["verdict"] == "yes");
}

TEST_CASE("bad input exits 3") {
  CHECK(run("cone member \"" + kData + "/float_input.json\"") == 3);
  CHECK(run("cone member \"" + kData + "/truncated.json\"") == 3);
  CHECK(run("cone member /nonexistent/file.json") == 3);
  CHECK(run("cone frobnicate") == 3);
}

TEST_CASE("stored reports verify and tampered ones are rejected") {
  auto dir = scratch();
  auto rep = dir / "report.json";
  CHECK(run("cone dual \"" + kData + "/square_cone.json\" --out \"" + rep.string() + "\"") == 0);
  CHECK_FALSE(fs::exists(rep.string() + ".tmp"));
  CHECK(run("verify \"" + rep.string() + "\"") == 0);
  auto j = nlohmann::json::parse(slurp(rep));
  j["verdict"] = "no";
  auto bad = dir / "tampered.json";
  std::ofstream(bad) << j.dump();
  CHECK(run("verify \"" + bad.string() + "\"") == 1);
  std::ofstream(dir / "garbage.json") << "not json";
  CHECK(run("verify \"" + (dir / "garbage.json").string() + "\"") == 3);
}

TEST_CASE("help lists the input schemas") {
  auto dir = scratch();
  auto out = dir / "help.txt";
  CHECK(run("--help", out.string()) == 0);
  auto text = slurp(out);
  CHECK(text.find("cone member") != std::string::npos);
  CHECK(text.find("CONEKIT_THREADS") != std::string::npos);
}

TEST_CASE("float mode and options flow into the report") {
  auto dir = scratch();
  auto out = dir / "float.json";
  CHECK(run("cone member --float --seed 7 \"" + kData + "/orthant_member.json\"", out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["mode"] == "float");
  CHECK(j["seed"] == 7);
}
