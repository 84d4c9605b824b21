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

// conekit command line. Talks to the library only through conekit.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conekit.h"

namespace {

constexpr int kExitError = 3;

using Json = nlohmann::json;

struct Flags {
  bool exact = true;
  bool float_mode = false;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> budget;
  std::optional<int> restarts;
  std::optional<int> samples;
  std::optional<std::size_t> dd_cap;
  std::vector<std::size_t> levels;
  std::optional<std::size_t> k, m, l, d;
  std::string out;
  std::string input;
  int indent = 2;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/** Writes through a temporary file and a rename, so readers never see a partial report. */
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text << "\n";
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

ck_options make_options(const Flags& f) {
  ck_options o;
  ck_options_default(&o);
  o.exact = f.float_mode ? 0 : 1;
  if (f.tol) o.tol = *f.tol;
  if (f.seed) o.seed = *f.seed;
  if (f.budget) o.budget = *f.budget;
  if (f.restarts) o.restarts = *f.restarts;
  if (f.samples) o.samples = *f.samples;
  if (f.dd_cap) o.dd_cap = *f.dd_cap;
  return o;
}

/** Input document with the level/index flags folded in. */
std::string build_inputs(const std::string& command, const Flags& f) {
  Json in = Json::object();
  bool needs_file = command.rfind("tft ", 0) != 0;
  if (!f.input.empty() || needs_file) {
    std::string text = read_input(f.input);
    try {
      in = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw std::runtime_error(std::string("input: ") + e.what());
    }
    if (!in.is_object()) throw std::runtime_error("input: expected a JSON object");
  }
  if (!f.levels.empty()) in["levels"] = f.levels;
  if (f.k) in["k"] = *f.k;
  if (f.m) in["m"] = *f.m;
  if (f.l) in["l"] = *f.l;
  if (f.d && command.rfind("tft ", 0) == 0) in["m"] = *f.d * *f.d;
  return in.dump();
}

int run(const std::string& command, const Flags& f) {
  std::string inputs;
  try {
    inputs = build_inputs(command, f);
  } catch (const std::exception& e) {
    std::cerr << "conekit: " << e.what() << "\n";
    return kExitError;
  }
  ck_options opt = make_options(f);
  ck_report* rep = nullptr;
  if (ck_run(command.c_str(), inputs.c_str(), &opt, &rep) != CK_OK) {
    std::cerr << "conekit: " << command << ": " << ck_last_error() << "\n";
    return kExitError;
  }
  char* text = nullptr;
  int code = kExitError;
  if (ck_report_to_json(rep, f.indent, &text) == CK_OK) {
    try {
      write_output(f.out, text);
      code = ck_report_exit_code(rep);
    } catch (const std::exception& e) {
      std::cerr << "conekit: " << e.what() << "\n";
    }
  } else {
    std::cerr << "conekit: " << ck_last_error() << "\n";
  }
  ck_string_free(text);
  ck_report_free(rep);
  return code;
}

int verify(const Flags& f) {
  std::string text;
  try {
    text = read_input(f.input);
  } catch (const std::exception& e) {
    std::cerr << "conekit: " << e.what() << "\n";
    return kExitError;
  }
  int ok = 0;
  char* reason = nullptr;
  if (ck_verify_report_json(text.c_str(), &ok, &reason) != CK_OK) {
    std::cerr << "conekit: verify: " << ck_last_error() << "\n";
    return kExitError;
  }
  std::cout << (ok ? "verified" : "REJECTED") << ": " << (reason ? reason : "") << "\n";
  ck_string_free(reason);
  return ok ? 0 : 1;
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("input", f.input, "Input JSON file (\"-\" for stdin)");
  app->add_flag("--exact,!--float", f.exact, "Rational arithmetic (default) or float mode");
  app->add_option("--tol", f.tol, "Float tolerance");
  app->add_option("--seed", f.seed, "Random seed");
  app->add_option("--budget", f.budget, "Search budget (rounds)");
  app->add_option("--restarts", f.restarts, "Restarts for heuristic searches");
  app->add_option("--samples", f.samples, "Morphism samples per level pair");
  app->add_option("--dd-cap", f.dd_cap, "Cap on the pointed dimension in double description");
  app->add_option("--levels", f.levels, "Levels to materialize")->delimiter(',');
  app->add_option("--k", f.k, "Level k");
  app->add_option("--m", f.m, "TFT base dimension m");
  app->add_option("--l", f.l, "Second level l");
  app->add_option("--d", f.d, "Hermitian dimension (TFT uses m = d*d)");
  app->add_option("--out", f.out, "Write the report here instead of stdout");
  app->add_option("--indent", f.indent, "JSON indent (-1 for compact)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("conekit ") + ck_version() +
               ": convex cones, conic systems and completely positive maps"};
  char* schema = nullptr;
  std::string footer;
  if (ck_schema_text(&schema) == CK_OK) footer = schema;
  ck_string_free(schema);
  footer += "\nCONEKIT_THREADS caps the worker threads.\n";
  app.footer(footer);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ck_version()));

  Flags flags;
  std::string chosen;
  std::map<std::string, CLI::App*> groups;
  for (std::size_t i = 0; i < ck_command_count(); ++i) {
    std::string name = ck_command_name(i);
    auto space = name.find(' ');
    std::string group = name.substr(0, space), verb = name.substr(space + 1);
    if (!groups.count(group)) {
      groups[group] = app.add_subcommand(group, group + " commands");
      groups[group]->require_subcommand(1);
    }
    auto* sub = groups[group]->add_subcommand(verb, name);
    add_common(sub, flags);
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto* ver = app.add_subcommand("verify", "Replay the certificate of a stored report");
  ver->add_option("report", flags.input, "Report JSON file (\"-\" for stdin)");
  ver->callback([&chosen] { chosen = "verify"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  flags.float_mode = !flags.exact;
  if (chosen == "verify") return verify(flags);
  return run(chosen, flags);
}
