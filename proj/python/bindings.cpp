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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "prolearn/errors.hpp"
#include "prolearn/evaluation.hpp"
#include "prolearn/harness.hpp"
#include "prolearn/learners.hpp"
#include "prolearn/task_model.hpp"

namespace py = pybind11;
using namespace prolearn;

namespace {

LearnerConfig learner_config(const std::string& kind, double eta, double lam,
                             TimeStep oracle_period, std::size_t oracle_phases,
                             std::string id) {
  LearnerConfig cfg;
  cfg.kind = learner_kind_from_string(kind);
  cfg.id = id.empty() ? kind : std::move(id);
  cfg.eta = eta;
  cfg.solver.lambda = lam;
  cfg.oracle_period = oracle_period;
  cfg.oracle_phases = oracle_phases;
  return cfg;
}

py::dict run_to_dict(const RunResult& r) {
  py::list runs;
  for (const auto& run : r.runs) {
    py::dict d;
    d["learner"] = run.learner;
    d["seed"] = run.seed;
    d["risk"] = run.risk;
    d["period_estimate"] = run.period_estimate;
    d["locked_at"] = run.locked_at;
    runs.append(d);
  }
  py::list reports;
  auto loads = py::module_::import("json").attr("loads");
  for (const auto& rep : r.reports) reports.append(loads(rep.to_json()));
  py::dict out;
  out["runs"] = runs;
  out["reports"] = reports;
  out["config"] = r.config.to_json();
  out["wall_seconds"] = r.wall_seconds;
  out["version"] = r.version;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prospective learning simulations";
  m.attr("__version__") = PROLEARN_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateTaskError>(m, "DegenerateTaskError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<LinearHypothesis>(m, "LinearHypothesis")
      .def(py::init([](Vec2 w, double b) { return LinearHypothesis{w, b}; }),
           py::arg("w"), py::arg("b") = 0.0)
      .def_readwrite("w", &LinearHypothesis::w)
      .def_readwrite("b", &LinearHypothesis::b)
      .def("predict", &LinearHypothesis::predict)
      .def("__repr__", [](const LinearHypothesis& h) {
        return "LinearHypothesis(w=[" + std::to_string(h.w[0]) + ", " +
               std::to_string(h.w[1]) + "], b=" + std::to_string(h.b) + ")";
      });

  py::class_<GaussianClassTask>(m, "GaussianClassTask")
      .def(py::init([](Vec2 mu_pos, Vec2 mu_neg, double sigma, double prior_pos,
                       bool flipped) {
             GaussianClassTask t{mu_pos, mu_neg, sigma, prior_pos,
                                 flipped ? LabelConvention::kFlipped
                                         : LabelConvention::kNormal};
             t.validate();
             return t;
           }),
           py::arg("mu_pos"), py::arg("mu_neg"), py::arg("sigma") = 1.0,
           py::arg("prior_pos") = 0.5, py::arg("flipped") = false)
      .def_readonly("mu_pos", &GaussianClassTask::mu_pos)
      .def_readonly("mu_neg", &GaussianClassTask::mu_neg)
      .def_readonly("sigma", &GaussianClassTask::sigma)
      .def_readonly("prior_pos", &GaussianClassTask::prior_pos)
      .def_property_readonly("flipped", [](const GaussianClassTask& t) {
        return t.label_convention == LabelConvention::kFlipped;
      })
      .def("flip", [](const GaussianClassTask& t) { return flip(t); });

  py::class_<TaskSequence>(m, "TaskSequence")
      .def(py::init<std::vector<GaussianClassTask>, TimeStep, std::vector<std::string>>(),
           py::arg("phases"), py::arg("period"), py::arg("names") = std::vector<std::string>{})
      .def("task_at", &TaskSequence::task_at)
      .def("phase_index", &TaskSequence::phase_index)
      .def("phase_name", &TaskSequence::phase_name)
      .def_property_readonly("period", &TaskSequence::period)
      .def_property_readonly("num_phases", &TaskSequence::num_phases)
      .def_property_readonly("names", &TaskSequence::names);

  m.def("fig3a", &presets::fig3a, py::arg("period") = 500);
  m.def("fig3b", &presets::fig3b, py::arg("period") = 500);
  m.def("constant", &presets::constant, py::arg("period") = 500);

  m.def("normal_cdf", &normal_cdf);
  m.def("bayes_hypothesis", &bayes_hypothesis);
  m.def("bayes_risk", &bayes_risk);
  m.def("analytic_risk", &analytic_risk, py::arg("h"), py::arg("task"));
  m.def(
      "mc_risk",
      [](const LinearHypothesis& h, const GaussianClassTask& task, std::size_t n,
         std::uint64_t seed) {
        Rng rng(seed);
        return mc_risk(h, task, n, rng);
      },
      py::arg("h"), py::arg("task"), py::arg("n"), py::arg("seed") = 0);
  m.def(
      "sample",
      [](const GaussianClassTask& task, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        py::list out;
        for (const auto& s : sample(task, rng, n)) out.append(py::make_tuple(s.x, s.y));
        return out;
      },
      py::arg("task"), py::arg("n"), py::arg("seed") = 0);

  py::class_<Learner>(m, "Learner")
      .def(py::init([](const std::string& kind, const TaskSequence& seq, double eta,
                       double lam, TimeStep oracle_period, std::size_t oracle_phases) {
             return make_learner(
                 learner_config(kind, eta, lam, oracle_period, oracle_phases, ""), seq);
           }),
           py::arg("kind"), py::arg("sequence"), py::arg("eta") = 0.05,
           py::arg("lam") = 1e-4, py::arg("oracle_period") = 0,
           py::arg("oracle_phases") = 0)
      .def(
          "observe",
          [](Learner& l, TimeStep t, Vec2 x, int y) {
            if (y != 1 && y != -1) throw ConfigError("label must be +1 or -1");
            l.observe(LabeledSample{t, x, y});
          },
          py::arg("t"), py::arg("x"), py::arg("y"))
      .def("hypothesis_at", &Learner::hypothesis_at, py::arg("t"))
      .def(
          "emit",
          [](const Learner& l, TimeStep t_prime, TimeStep until) {
            const auto seq = l.emit(t_prime);
            py::list out;
            for (TimeStep u = t_prime + 1; u <= until; ++u) out.append(seq.at(u));
            return out;
          },
          py::arg("t_prime"), py::arg("until"),
          "Hypotheses for t_prime+1 .. until of the frozen continuation.")
      .def_property_readonly("kind",
                             [](const Learner& l) { return std::string(to_string(l.kind())); })
      .def("checkpoint", &Learner::checkpoint)
      .def_static("restore", &Learner::restore, py::arg("text"), py::arg("sequence"));

  m.def(
      "prospective_score",
      [](const std::string& kind, const TaskSequence& seq, double epsilon, double delta,
         TimeStep t_prime, TimeStep horizon_T, int n_trials, const std::string& reference,
         bool two_sided_weak, std::uint64_t base_seed, double eta) {
        ProspectiveOptions opts;
        opts.epsilon = epsilon;
        opts.delta = delta;
        opts.t_prime = t_prime;
        opts.horizon_T = horizon_T;
        opts.n_trials = n_trials;
        opts.reference = reference_kind_from_string(reference);
        opts.two_sided_weak = two_sided_weak;
        opts.base_seed = base_seed;
        const auto rep =
            prospective_score(learner_config(kind, eta, 1e-4, 0, 0, ""), seq, opts);
        return py::module_::import("json").attr("loads")(rep.to_json());
      },
      py::arg("kind"), py::arg("sequence"), py::arg("epsilon") = 0.05,
      py::arg("delta") = 0.1, py::arg("t_prime") = 3000, py::arg("horizon_T") = 0,
      py::arg("n_trials") = 20, py::arg("reference") = "strong",
      py::arg("two_sided_weak") = false, py::arg("base_seed") = 1, py::arg("eta") = 0.05);

  m.def(
      "validate_config",
      [](const std::string& text) { return parse_config(text).to_json(); },
      py::arg("text"), "Resolved config JSON; raises ConfigError when invalid.");
  m.def(
      "run_config",
      [](const std::string& text) {
        const auto cfg = parse_config(text);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = cfg.protocol == Protocol::kStreaming ? run_streaming(cfg)
                                                   : run_learnability(cfg);
        }
        return run_to_dict(r);
      },
      py::arg("text"), "Runs a config (streaming or frozen) and returns its results.");
  m.def(
      "write_outputs",
      [](const std::string& text, const std::filesystem::path& dir) {
        const auto cfg = parse_config(text);
        py::gil_scoped_release release;
        const auto r = cfg.protocol == Protocol::kStreaming ? run_streaming(cfg)
                                                            : run_learnability(cfg);
        return write_outputs(r, dir);
      },
      py::arg("text"), py::arg("dir"), "Runs a config and writes its artifacts to dir.");
}
