// Copyright 2026 The prolearn Authors. All rights reserved.
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


// Command-line front end.
//
//   prolearn run <config>            streaming risk traces
//   prolearn learnability <config>   frozen prospective-learnability test
//   prolearn reproduce fig3a|fig3b   built-in streaming presets
//   prolearn validate <config>       print the resolved config
//
// Exit status: 0 on success, 1 for configuration or usage errors, 2 for
// runtime and solver errors.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prolearn/errors.hpp"
#include "prolearn/harness.hpp"

namespace {

using prolearn::ConfigError;
using prolearn::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr const char* kOutDirEnv = "PROLEARN_OUT_DIR";
constexpr const char* kFallbackOutDir = "prolearn_out";

struct Overrides {
  std::string seed_list;
  std::string out_dir;
  std::optional<int> workers;
  std::optional<std::size_t> mc_risk;
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if (item.front() == '-') throw std::invalid_argument(item);
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--seed-list: '" + item + "' is not a non-negative integer");
    }
    if (used != item.size()) {
      throw ConfigError("--seed-list: '" + item + "' is not a non-negative integer");
    }
    seeds.push_back(v);
  }
  if (seeds.empty()) throw ConfigError("--seed-list: no seeds given");
  return seeds;
}

// Applies command-line overrides, then re-validates through the config
// parser so that derived fields stay consistent.
ExperimentConfig apply(ExperimentConfig cfg, const Overrides& o) {
  if (!o.seed_list.empty()) cfg.seeds = parse_seed_list(o.seed_list);
  if (o.workers) cfg.workers = *o.workers;
  if (o.mc_risk) {
    if (*o.mc_risk == 0) throw ConfigError("--mc-risk: must be positive");
    cfg.risk.monte_carlo = true;
    cfg.risk.mc_samples = *o.mc_risk;
  }
  if (!o.out_dir.empty()) {
    cfg.output_dir = o.out_dir;
  } else if (cfg.output_dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    cfg.output_dir = (env != nullptr && *env != '\0') ? env : kFallbackOutDir;
  }
  return prolearn::parse_config(cfg.to_json());
}

void print_streaming_summary(const prolearn::RunResult& result) {
  const auto& cfg = result.config;
  std::printf("%-22s %12s %12s\n", "learner", "final_median", "mean_median");
  for (const auto& l : cfg.learners) {
    const auto med = prolearn::median_trace(result, l.id);
    double mean = 0.0;
    for (double r : med) mean += r;
    if (!med.empty()) mean /= static_cast<double>(med.size());
    std::printf("%-22s %12.6f %12.6f\n", l.id.c_str(), med.empty() ? 0.0 : med.back(),
                mean);
  }
}

void print_reports(const prolearn::RunResult& result) {
  std::printf("%-22s %-8s %10s %8s\n", "learner", "ref", "score", "verdict");
  for (const auto& r : result.reports) {
    std::printf("%-22s %-8s %10.6f %8s\n", r.learner.c_str(),
                std::string(prolearn::to_string(r.reference)).c_str(), r.score,
                r.verdict ? "pass" : "fail");
  }
}

enum class Mode { kRun, kLearnability };

int execute(ExperimentConfig cfg, Mode mode) {
  cfg.protocol =
      mode == Mode::kRun ? prolearn::Protocol::kStreaming : prolearn::Protocol::kFrozen;
  const auto result = mode == Mode::kRun ? prolearn::run_streaming(cfg)
                                         : prolearn::run_learnability(cfg);
  const auto paths = prolearn::write_outputs(result, cfg.output_dir);
  if (mode == Mode::kRun) {
    print_streaming_summary(result);
  } else {
    print_reports(result);
  }
  std::printf("wrote %zu files to %s (%.2f s)\n", paths.size(), cfg.output_dir.c_str(),
              result.wall_seconds);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prolearn: prospective learning simulations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PROLEARN_VERSION);

  Overrides o;
  auto add_overrides = [&o](CLI::App* sub) {
    sub->add_option("--seed-list", o.seed_list, "Comma-separated seeds, e.g. 1,2,3");
    sub->add_option("--out-dir", o.out_dir,
                    std::string("Output directory (default: config, then $") +
                        kOutDirEnv + ", then " + kFallbackOutDir + ")");
    sub->add_option("--workers", o.workers, "Concurrent runs")->check(CLI::PositiveNumber);
    sub->add_option("--mc-risk", o.mc_risk,
                    "Score risk on n Monte-Carlo samples instead of analytically");
  };

  std::string config_path;
  std::string preset;

  auto* run = app.add_subcommand("run", "Streaming protocol risk traces");
  run->add_option("config", config_path, "Config file")->required();
  add_overrides(run);

  auto* learn = app.add_subcommand("learnability", "Frozen prospective-learnability test");
  learn->add_option("config", config_path, "Config file")->required();
  add_overrides(learn);

  auto* repro = app.add_subcommand("reproduce", "Built-in streaming presets");
  repro->add_option("preset", preset, "fig3a or fig3b")
      ->required()
      ->check(CLI::IsMember({"fig3a", "fig3b"}));
  add_overrides(repro);

  auto* validate = app.add_subcommand("validate", "Validate a config and print it resolved");
  validate->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*validate) {
      const auto cfg = prolearn::parse_config_file(config_path);
      std::cout << cfg.to_json();
      return kExitOk;
    }
    if (*repro) {
      return execute(apply(prolearn::preset_config(preset), o), Mode::kRun);
    }
    const auto cfg = apply(prolearn::parse_config_file(config_path), o);
    return execute(cfg, *run ? Mode::kRun : Mode::kLearnability);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}
