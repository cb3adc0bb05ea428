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

#include "prolearn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "prolearn/errors.hpp"
#include "prolearn/parallel.hpp"

namespace prolearn {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string_view to_string(Protocol p) {
  return p == Protocol::kStreaming ? "streaming" : "frozen";
}

namespace {

// Reads the members of one JSON object, remembering which keys were used so
// that leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail("", "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  template <typename T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!obj_.contains(key)) return fallback;
    return as<T>(obj_.at(key), key);
  }

  template <typename T>
  T require(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) fail(key, "is required");
    return as<T>(obj_.at(key), key);
  }

  const json* raw(const std::string& key) {
    used_.insert(key);
    return obj_.contains(key) ? &obj_.at(key) : nullptr;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.count(key)) fail(key, "unknown key");
    }
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : (key.empty() ? path_ : path_ + "." + key);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError("config field '" + field(key) + "': " + msg);
  }

 private:
  template <typename T>
  T as(const json& v, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) fail(key, "expected a number");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) fail(key, "expected an integer");
        if constexpr (std::is_unsigned_v<T>) {
          if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
            fail(key, "must be non-negative");
          }
        }
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail(key, "expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(key, "expected a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      fail(key, e.what());
    }
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

Vec2 read_vec2(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("config field '" + field + "': expected a 2-vector of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<PhaseSpec> preset_phases(const std::string& scenario) {
  if (scenario == "fig3a") {
    return {{"A", presets::task_a()}, {"B", presets::fig3a_task_b()}};
  }
  if (scenario == "fig3b") {
    return {{"A", presets::task_a()}, {"B", presets::fig3b_task_b()}};
  }
  if (scenario == "constant") return {{"A", presets::task_a()}};
  return {};
}

PhaseSpec read_phase(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  PhaseSpec p;
  p.name = r.require<std::string>("name");
  const json* mp = r.raw("mu_pos");
  const json* mn = r.raw("mu_neg");
  if (!mp || !mn) r.fail(mp ? "mu_neg" : "mu_pos", "is required");
  p.task.mu_pos = read_vec2(*mp, r.field("mu_pos"));
  p.task.mu_neg = read_vec2(*mn, r.field("mu_neg"));
  p.task.sigma = r.get<double>("sigma", 1.0);
  p.task.prior_pos = r.get<double>("prior_pos", 0.5);
  const auto conv = r.get<std::string>("label_convention", "normal");
  if (conv == "normal") {
    p.task.label_convention = LabelConvention::kNormal;
  } else if (conv == "flipped") {
    p.task.label_convention = LabelConvention::kFlipped;
  } else {
    r.fail("label_convention", "must be 'normal' or 'flipped'");
  }
  r.reject_unknown();
  if (p.name.empty() || p.name.find_first_of(",\n\"") != std::string::npos) {
    r.fail("name", "must be non-empty without commas, quotes or newlines");
  }
  if (!(p.task.sigma > 0.0)) r.fail("sigma", "sigma must be positive");
  if (!(p.task.prior_pos >= 0.0 && p.task.prior_pos <= 1.0)) {
    r.fail("prior_pos", "must lie in [0, 1]");
  }
  return p;
}

void read_solver(ObjectReader& r, SolverOptions& s) {
  s.lambda = r.get<double>("lambda", s.lambda);
  s.grad_tol = r.get<double>("grad_tol", s.grad_tol);
  s.max_iterations = r.get<int>("max_iterations", s.max_iterations);
  if (!(s.lambda > 0.0)) r.fail("lambda", "must be positive");
  if (!(s.grad_tol > 0.0)) r.fail("grad_tol", "must be positive");
  if (s.max_iterations < 1) r.fail("max_iterations", "must be at least 1");
}

LearnerConfig read_learner(const json& v, const std::string& path) {
  LearnerConfig cfg;
  if (v.is_string()) {
    cfg.kind = learner_kind_from_string(v.get<std::string>());
    cfg.id = std::string(to_string(cfg.kind));
    return cfg;
  }
  ObjectReader r(v, path);
  const auto type = r.require<std::string>("type");
  try {
    cfg.kind = learner_kind_from_string(type);
  } catch (const ConfigError& e) {
    r.fail("type", e.what());
  }
  cfg.id = r.get<std::string>("id", std::string(to_string(cfg.kind)));
  switch (cfg.kind) {
    case LearnerKind::kOgd:
      cfg.eta = r.get<double>("eta", cfg.eta);
      if (!(cfg.eta > 0.0)) r.fail("eta", "must be positive");
      break;
    case LearnerKind::kFtl:
      read_solver(r, cfg.solver);
      break;
    case LearnerKind::kOracleProspective:
      read_solver(r, cfg.solver);
      cfg.oracle_period = r.get<TimeStep>("period", 0);
      cfg.oracle_phases = r.get<std::size_t>("phases", 0);
      if (cfg.oracle_period < 0) r.fail("period", "period must be positive");
      break;
    case LearnerKind::kAdaptiveProspective: {
      read_solver(r, cfg.solver);
      auto& a = cfg.adaptive;
      a.window = r.get<int>("window", a.window);
      a.threshold = r.get<double>("threshold", a.threshold);
      a.agreement = r.get<double>("agreement", a.agreement);
      if (a.window < 1) r.fail("window", "must be positive");
      if (!(a.threshold > 0.0 && a.threshold < 1.0)) r.fail("threshold", "must lie in (0, 1)");
      if (!(a.agreement > 0.0 && a.agreement <= 1.0)) r.fail("agreement", "must lie in (0, 1]");
      a.solver = cfg.solver;
      break;
    }
    case LearnerKind::kReference:
      break;
  }
  r.reject_unknown();
  if (cfg.id.empty() || cfg.id.find_first_of(",\n\"/\\") != std::string::npos) {
    r.fail("id", "must be non-empty without commas, quotes, slashes or newlines");
  }
  return cfg;
}

ojson learner_to_json(const LearnerConfig& c) {
  ojson j;
  j["type"] = std::string(to_string(c.kind));
  j["id"] = c.id;
  auto solver = [&] {
    j["lambda"] = c.solver.lambda;
    j["grad_tol"] = c.solver.grad_tol;
    j["max_iterations"] = c.solver.max_iterations;
  };
  switch (c.kind) {
    case LearnerKind::kOgd:
      j["eta"] = c.eta;
      break;
    case LearnerKind::kFtl:
      solver();
      break;
    case LearnerKind::kOracleProspective:
      solver();
      j["period"] = c.oracle_period;
      j["phases"] = c.oracle_phases;
      break;
    case LearnerKind::kAdaptiveProspective:
      solver();
      j["window"] = c.adaptive.window;
      j["threshold"] = c.adaptive.threshold;
      j["agreement"] = c.adaptive.agreement;
      break;
    case LearnerKind::kReference:
      break;
  }
  return j;
}

}  // namespace

TaskSequence ExperimentConfig::sequence() const {
  std::vector<GaussianClassTask> tasks;
  std::vector<std::string> names;
  for (const auto& p : phases) {
    tasks.push_back(p.task);
    names.push_back(p.name);
  }
  return TaskSequence(std::move(tasks), period, std::move(names));
}

std::string ExperimentConfig::to_json() const {
  ojson j;
  j["scenario"] = scenario;
  j["period"] = period;
  auto ph = ojson::array();
  for (const auto& p : phases) {
    ph.push_back({{"name", p.name},
                  {"mu_pos", {p.task.mu_pos[0], p.task.mu_pos[1]}},
                  {"mu_neg", {p.task.mu_neg[0], p.task.mu_neg[1]}},
                  {"sigma", p.task.sigma},
                  {"prior_pos", p.task.prior_pos},
                  {"label_convention",
                   p.task.label_convention == LabelConvention::kFlipped ? "flipped"
                                                                         : "normal"}});
  }
  j["phases"] = ph;
  j["horizon"] = horizon;
  j["samples_per_step"] = samples_per_step;
  auto ls = ojson::array();
  for (const auto& l : learners) ls.push_back(learner_to_json(l));
  j["learners"] = ls;
  j["seeds"] = seeds;
  j["protocol"] = std::string(to_string(protocol));
  j["evaluation"] = {{"epsilon", evaluation.epsilon},
                     {"delta", evaluation.delta},
                     {"t_prime", evaluation.t_prime},
                     {"horizon_T", evaluation.horizon_T},
                     {"n_trials", evaluation.n_trials},
                     {"reference", std::string(to_string(evaluation.reference))},
                     {"two_sided_weak", evaluation.two_sided_weak},
                     {"t_prime_grid", t_prime_grid}};
  j["risk"] = {{"mode", risk.monte_carlo ? "monte_carlo" : "analytic"},
               {"mc_samples", risk.mc_samples}};
  j["output_dir"] = output_dir;
  j["workers"] = workers;
  j["plot_stride"] = plot_stride;
  return j.dump(2) + "\n";
}

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ...".
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ObjectReader r(root, "");
  ExperimentConfig cfg;

  cfg.scenario = r.get<std::string>("scenario", cfg.scenario);
  if (cfg.scenario != "fig3a" && cfg.scenario != "fig3b" &&
      cfg.scenario != "constant" && cfg.scenario != "custom") {
    r.fail("scenario", "must be one of fig3a, fig3b, constant, custom");
  }
  cfg.period = r.get<TimeStep>("period", cfg.period);
  if (cfg.period <= 0) r.fail("period", "period must be positive");

  std::vector<PhaseSpec> given;
  if (const json* ph = r.raw("phases")) {
    if (!ph->is_array() || ph->empty()) r.fail("phases", "expected a non-empty array");
    for (std::size_t i = 0; i < ph->size(); ++i) {
      given.push_back(read_phase((*ph)[i], "phases[" + std::to_string(i) + "]"));
    }
  }
  if (cfg.scenario == "custom") {
    if (given.empty()) r.fail("phases", "is required for scenario 'custom'");
    cfg.phases = std::move(given);
  } else {
    cfg.phases = preset_phases(cfg.scenario);
    if (!given.empty() && given != cfg.phases) {
      r.fail("phases", "can only be changed for scenario 'custom'");
    }
  }

  cfg.horizon = r.get<TimeStep>("horizon", cfg.horizon);
  if (cfg.horizon <= 0) r.fail("horizon", "horizon must be positive");
  cfg.samples_per_step = r.get<int>("samples_per_step", cfg.samples_per_step);
  if (cfg.samples_per_step < 1) r.fail("samples_per_step", "must be at least 1");

  const json* ls = r.raw("learners");
  if (!ls) r.fail("learners", "is required");
  if (!ls->is_array() || ls->empty()) r.fail("learners", "must be a non-empty list");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < ls->size(); ++i) {
    const std::string path = "learners[" + std::to_string(i) + "]";
    LearnerConfig lc;
    try {
      lc = read_learner((*ls)[i], path);
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      if (what.rfind("config field", 0) == 0) throw;
      throw ConfigError("config field '" + path + "': " + what);
    }
    if (!ids.insert(lc.id).second) {
      throw ConfigError("config field '" + path + ".id': duplicate learner id '" + lc.id + "'");
    }
    cfg.learners.push_back(lc);
  }

  if (const json* s = r.raw("seeds")) {
    if (!s->is_array() || s->empty()) r.fail("seeds", "must be a non-empty list");
    cfg.seeds.clear();
    for (const auto& v : *s) {
      if (!v.is_number_unsigned()) r.fail("seeds", "seeds must be non-negative integers");
      cfg.seeds.push_back(v.get<std::uint64_t>());
    }
  }

  const auto protocol = r.get<std::string>("protocol", "streaming");
  if (protocol == "streaming") {
    cfg.protocol = Protocol::kStreaming;
  } else if (protocol == "frozen") {
    cfg.protocol = Protocol::kFrozen;
  } else {
    r.fail("protocol", "must be 'streaming' or 'frozen'");
  }

  auto& ev = cfg.evaluation;
  if (const json* e = r.raw("evaluation")) {
    ObjectReader er(*e, "evaluation");
    ev.epsilon = er.get<double>("epsilon", ev.epsilon);
    ev.delta = er.get<double>("delta", ev.delta);
    ev.t_prime = er.get<TimeStep>("t_prime", ev.t_prime);
    ev.horizon_T = er.get<TimeStep>("horizon_T", 0);
    ev.n_trials = er.get<int>("n_trials", ev.n_trials);
    try {
      ev.reference = reference_kind_from_string(er.get<std::string>("reference", "strong"));
    } catch (const ConfigError& err) {
      er.fail("reference", err.what());
    }
    ev.two_sided_weak = er.get<bool>("two_sided_weak", false);
    cfg.t_prime_grid = er.get<std::vector<TimeStep>>("t_prime_grid", {});
    er.reject_unknown();
    if (!(ev.epsilon > 0.0)) er.fail("epsilon", "epsilon must be positive");
    if (!(ev.delta > 0.0 && ev.delta < 1.0)) er.fail("delta", "delta must lie in (0, 1)");
    if (ev.t_prime < 0) er.fail("t_prime", "must be non-negative");
    if (ev.horizon_T != 0 && ev.horizon_T <= ev.t_prime) {
      er.fail("horizon_T", "horizon_T must exceed t_prime");
    }
    if (ev.n_trials < 1) er.fail("n_trials", "must be at least 1");
    for (std::size_t i = 0; i < cfg.t_prime_grid.size(); ++i) {
      if (cfg.t_prime_grid[i] < 0 || (i > 0 && cfg.t_prime_grid[i] <= cfg.t_prime_grid[i - 1])) {
        er.fail("t_prime_grid", "must be ascending and non-negative");
      }
    }
  }
  ev.samples_per_step = cfg.samples_per_step;
  ev.horizon_T = ev.resolved_horizon(cfg.sequence());
  ev.base_seed = cfg.seeds.front();

  if (const json* rm = r.raw("risk")) {
    ObjectReader rr(*rm, "risk");
    const auto mode = rr.get<std::string>("mode", "analytic");
    if (mode == "analytic") {
      cfg.risk.monte_carlo = false;
    } else if (mode == "monte_carlo") {
      cfg.risk.monte_carlo = true;
    } else {
      rr.fail("mode", "must be 'analytic' or 'monte_carlo'");
    }
    cfg.risk.mc_samples = rr.get<std::size_t>("mc_samples", cfg.risk.mc_samples);
    if (cfg.risk.mc_samples < 1) rr.fail("mc_samples", "must be at least 1");
    rr.reject_unknown();
  }

  cfg.output_dir = r.get<std::string>("output_dir", cfg.output_dir);
  cfg.workers = r.get<int>("workers", cfg.workers);
  if (cfg.workers < 1) r.fail("workers", "must be at least 1");
  ev.workers = cfg.workers;
  cfg.plot_stride = r.get<int>("plot_stride", cfg.plot_stride);
  if (cfg.plot_stride < 1) r.fail("plot_stride", "must be at least 1");
  r.reject_unknown();
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig preset_config(std::string_view name) {
  if (name != "fig3a" && name != "fig3b") {
    throw ConfigError("unknown preset '" + std::string(name) + "' (use fig3a or fig3b)");
  }
  return parse_config(R"({"scenario": ")" + std::string(name) + R"(",
    "learners": ["ogd", "ftl", "oracle_prospective", "adaptive_prospective"]})");
}

// ---------------------------------------------------------------------------

RiskTrace RunResult::trace_for_seed(std::uint64_t seed) const {
  const TaskSequence seq = config.sequence();
  std::vector<double> bayes;
  for (const auto& task : seq.phases()) bayes.push_back(bayes_risk(task));
  RiskTrace trace;
  for (const auto& run : runs) {
    if (run.seed != seed) continue;
    for (std::size_t t = 0; t < run.risk.size(); ++t) {
      const auto ts = static_cast<TimeStep>(t);
      const double r = run.risk[t];
      trace.entries.push_back(
          {ts, run.learner, seq.phase_name(ts), r, r - bayes[seq.phase_index(ts)]});
    }
  }
  return trace;
}

std::vector<const StreamingRun*> RunResult::runs_for(std::string_view learner) const {
  std::vector<const StreamingRun*> out;
  for (const auto& r : runs) {
    if (r.learner == learner) out.push_back(&r);
  }
  return out;
}

RunResult run_streaming(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const TaskSequence seq = config.sequence();
  RunResult result;
  result.config = config;
  result.config.protocol = Protocol::kStreaming;
  const std::size_t n_seeds = config.seeds.size();
  result.runs.resize(config.learners.size() * n_seeds);

  parallel_for(result.runs.size(), config.workers, [&](std::size_t idx) {
    const LearnerConfig& lc = config.learners[idx / n_seeds];
    const std::uint64_t seed = config.seeds[idx % n_seeds];
    StreamingRun& run = result.runs[idx];
    run.learner = lc.id;
    run.seed = seed;
    run.risk.resize(static_cast<std::size_t>(config.horizon));
    Learner learner = make_learner(lc, seq);
    SampleStream stream(seq, seed, config.samples_per_step);
    for (TimeStep t = 0; t < config.horizon; ++t) {
      const LinearHypothesis& h = learner.hypothesis_at(t);
      const GaussianClassTask& task = seq.task_at(t);
      double r;
      if (config.risk.monte_carlo) {
        // Same test draws for every learner at a given (seed, t).
        Rng rng(mix_seed(mix_seed(seed, 0x7E57), static_cast<std::uint64_t>(t)));
        r = mc_risk(h, task, config.risk.mc_samples, rng);
      } else {
        r = analytic_risk(h, task);
      }
      run.risk[static_cast<std::size_t>(t)] = r;
      try {
        for (const auto& s : stream.next()) learner.observe(s);
      } catch (const SolverError& e) {
        throw SolverError("learner '" + lc.id + "' seed " + std::to_string(seed) +
                          " step " + std::to_string(t) + ": " + e.what());
      }
      if (const auto* ad = std::get_if<AdaptiveProspectiveLearner>(&learner.impl())) {
        if (ad->locked() && !run.locked_at) run.locked_at = t;
        if (!ad->locked()) run.locked_at.reset();
      }
    }
    if (const auto* ad = std::get_if<AdaptiveProspectiveLearner>(&learner.impl())) {
      run.period_estimate = ad->period_estimate();
    }
  });
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunResult run_learnability(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const TaskSequence seq = config.sequence();
  RunResult result;
  result.config = config;
  result.config.protocol = Protocol::kFrozen;
  ProspectiveOptions opts = config.evaluation;
  opts.samples_per_step = config.samples_per_step;
  opts.base_seed = config.seeds.front();
  opts.workers = config.workers;
  for (const auto& lc : config.learners) {
    result.reports.push_back(config.t_prime_grid.empty()
                                 ? prospective_score(lc, seq, opts)
                                 : sweep_t_bar(lc, seq, config.t_prime_grid, opts));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// ---------------------------------------------------------------------------

namespace {

// Linear-interpolated quantile of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<BandRow> risk_band(const RunResult& result, std::string_view learner) {
  const auto runs = result.runs_for(learner);
  std::vector<BandRow> rows;
  if (runs.empty()) return rows;
  const std::size_t len = runs.front()->risk.size();
  const auto stride = static_cast<std::size_t>(std::max(result.config.plot_stride, 1));
  std::vector<double> col(runs.size());
  for (std::size_t t = 0; t < len; t += stride) {
    for (std::size_t i = 0; i < runs.size(); ++i) col[i] = runs[i]->risk[t];
    std::sort(col.begin(), col.end());
    rows.push_back({static_cast<TimeStep>(t), quantile(col, 0.5), quantile(col, 0.25),
                    quantile(col, 0.75)});
  }
  return rows;
}

std::vector<double> median_trace(const RunResult& result, std::string_view learner) {
  const auto runs = result.runs_for(learner);
  std::vector<double> out;
  if (runs.empty()) return out;
  const std::size_t len = runs.front()->risk.size();
  std::vector<double> col(runs.size());
  out.reserve(len);
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t i = 0; i < runs.size(); ++i) col[i] = runs[i]->risk[t];
    std::sort(col.begin(), col.end());
    out.push_back(quantile(col, 0.5));
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::filesystem::path> emit_plot_data(const RunResult& result,
                                                  const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  char buf[96];
  for (const auto& lc : result.config.learners) {
    std::string csv(kBandHeader);
    csv += '\n';
    for (const auto& row : risk_band(result, lc.id)) {
      std::snprintf(buf, sizeof(buf), "%lld,%.6f,%.6f,%.6f\n",
                    static_cast<long long>(row.t), row.median, row.q25, row.q75);
      csv += buf;
    }
    const auto path = dir / ("band_" + lc.id + ".csv");
    write_file_atomic(path, csv);
    written.push_back(path);
  }
  return written;
}

std::vector<std::filesystem::path> write_outputs(const RunResult& result,
                                                 const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, std::string_view data) {
    write_file_atomic(p, data);
    written.push_back(p);
  };
  put(dir / "config.json", result.config.to_json());

  ojson info;
  info["version"] = result.version;
  info["protocol"] = std::string(to_string(result.config.protocol));
  info["wall_seconds"] = result.wall_seconds;

  if (!result.runs.empty()) {
    for (std::uint64_t seed : result.config.seeds) {
      std::ostringstream os;
      write_risk_trace_csv(os, result.trace_for_seed(seed));
      put(dir / ("trace_seed" + std::to_string(seed) + ".csv"), os.str());
    }
    for (const auto& p : emit_plot_data(result, dir)) written.push_back(p);
    std::set<std::string> adaptive_ids;
    for (const auto& lc : result.config.learners) {
      if (lc.kind == LearnerKind::kAdaptiveProspective) adaptive_ids.insert(lc.id);
    }
    auto adaptive = ojson::array();
    for (const auto& run : result.runs) {
      if (!adaptive_ids.contains(run.learner)) continue;
      adaptive.push_back(
          {{"learner", run.learner},
           {"seed", run.seed},
           {"period_estimate", run.period_estimate ? ojson(*run.period_estimate) : ojson()},
           {"locked_at", run.locked_at ? ojson(*run.locked_at) : ojson()}});
    }
    info["adaptive"] = adaptive;
  }
  for (const auto& rep : result.reports) {
    put(dir / ("report_" + rep.learner + ".json"), rep.to_json());
  }
  put(dir / "run_info.json", info.dump(2) + "\n");
  return written;
}

}  // namespace prolearn
