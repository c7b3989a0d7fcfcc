// Copyright 2026 The PAPA Tomography Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end. Talks to the library only through papa.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "papa/papa.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;

struct Options {
  std::string config;
  std::string out;
  int64_t seed = -1;
  int jobs = 1;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  text = os.str();
  return true;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int report(papa_status status) {
  std::cerr << "papa: " << papa_status_name(status) << ": " << papa_last_error() << '\n';
  return kExitFailure;
}

// Writes text to path, or to stdout when path is empty.
bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "papa: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

// Owns a string handed back by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { papa_string_free(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

bool load_config(const Options& opt, std::string& text) {
  if (opt.config.empty()) {
    std::cerr << "papa: --config is required\n";
    return false;
  }
  if (!read_file(opt.config, text)) {
    std::cerr << "papa: cannot read config '" << opt.config << "'\n";
    return false;
  }
  return true;
}

int run_simulate(const Options& opt) {
  std::string config;
  if (!load_config(opt, config)) return kExitFailure;
  LibString json;
  if (papa_status s = papa_simulate_run(config.c_str(), opt.seed, json.out()); s != PAPA_OK) return report(s);
  return write_output(opt.out, json.str()) ? kExitOk : kExitFailure;
}

int run_reconstruct(const Options& opt) {
  std::string config;
  if (!load_config(opt, config)) return kExitFailure;
  LibString json;
  int converged = 0;
  if (papa_status s = papa_reconstruct_run(config.c_str(), json.out(), &converged); s != PAPA_OK) return report(s);
  if (!write_output(opt.out, json.str())) return kExitFailure;
  return converged ? kExitOk : 2;
}

int run_batch(const Options& opt, const char* kind) {
  std::string config;
  if (!load_config(opt, config)) return kExitFailure;
  LibString json, csv;
  int exit_code = kExitOk;
  if (papa_status s = papa_experiment_run(config.c_str(), kind, opt.jobs, opt.seed, json.out(), csv.out(), &exit_code);
      s != PAPA_OK) {
    return report(s);
  }
  std::string path = opt.out;
  if (path.empty()) {
    LibString configured;
    if (papa_status s = papa_experiment_output_path(config.c_str(), configured.out()); s != PAPA_OK) return report(s);
    path = configured.str();
  }
  const std::string body = ends_with(path, ".json") ? json.str() : csv.str();
  if (!write_output(path, body)) return kExitFailure;
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise process tomography: simulation, reconstruction and benchmark sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", papa_version());

  Options opt;
  auto add_common = [&](CLI::App* sub, bool batch) {
    sub->add_option("--config", opt.config, "JSON config file")->required();
    sub->add_option("--out", opt.out, "Output path; .json selects JSON, anything else CSV. Defaults to the config output_path, then stdout");
    sub->add_option("--seed", opt.seed, "Override the config seed")->check(CLI::NonNegativeNumber);
    if (batch) sub->add_option("--jobs", opt.jobs, "Cases run in parallel")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "Simulate a noisy gate and its pairwise tomography data");
  add_common(simulate, false);
  auto* reconstruct = app.add_subcommand("reconstruct", "Fit the pairwise model to tomography data");
  add_common(reconstruct, false);
  auto* fig2 = app.add_subcommand("bench-fig2", "Seven-process benchmark");
  add_common(fig2, true);
  auto* sweep_cr = app.add_subcommand("sweep-cr", "Cross-resonance over-rotation and ZZ sweep");
  add_common(sweep_cr, true);
  auto* sweep_tol = app.add_subcommand("sweep-tol", "Solver tolerance sweep");
  add_common(sweep_tol, true);
  auto* diff_map = app.add_subcommand("diff-map", "Entry-wise Choi difference for one pair");
  add_common(diff_map, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFailure;
  }

  if (*simulate) return run_simulate(opt);
  if (*reconstruct) return run_reconstruct(opt);
  if (*fig2) return run_batch(opt, "fig2_bench");
  if (*sweep_cr) return run_batch(opt, "cr_sweep");
  if (*sweep_tol) return run_batch(opt, "tol_sweep");
  if (*diff_map) return run_batch(opt, "diff_map");
  return kExitFailure;
}
