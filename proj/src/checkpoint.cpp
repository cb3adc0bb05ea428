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

#include <string>

#include "json.hpp"

#include "prolearn/errors.hpp"
#include "prolearn/learners.hpp"

namespace prolearn {

using nlohmann::json;

namespace {

json hyp_to_json(const LinearHypothesis& h) {
  return json{{"w", {h.w[0], h.w[1]}}, {"b", h.b}};
}

LinearHypothesis hyp_from_json(const json& j) {
  return LinearHypothesis{{j.at("w").at(0).get<double>(),
                           j.at("w").at(1).get<double>()},
                          j.at("b").get<double>()};
}

json samples_to_json(const std::vector<LabeledSample>& samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back({s.t, s.x[0], s.x[1], s.y});
  return arr;
}

std::vector<LabeledSample> samples_from_json(const json& arr) {
  std::vector<LabeledSample> out;
  out.reserve(arr.size());
  for (const auto& r : arr) {
    out.push_back(LabeledSample{r.at(0).get<TimeStep>(),
                                {r.at(1).get<double>(), r.at(2).get<double>()},
                                r.at(3).get<int>()});
  }
  return out;
}

json solver_to_json(const SolverOptions& o) {
  return json{{"lambda", o.lambda},
              {"grad_tol", o.grad_tol},
              {"max_iterations", o.max_iterations}};
}

SolverOptions solver_from_json(const json& j) {
  return SolverOptions{j.at("lambda").get<double>(),
                       j.at("grad_tol").get<double>(),
                       j.at("max_iterations").get<int>()};
}

json erm_to_json(const LogisticErm& erm) {
  json j{{"solver", solver_to_json(erm.options())},
         {"hypothesis", hyp_to_json(erm.hypothesis())},
         {"samples", samples_to_json(erm.samples())}};
  if (const auto c = erm.cached_evaluation()) {
    j["warm_start"] = {{"f", c->f}, {"g", c->g}, {"h", c->h}};
  } else {
    j["warm_start"] = nullptr;
  }
  return j;
}

LogisticErm erm_from_json(const json& j) {
  std::optional<ErmEvaluation> cache;
  if (j.contains("warm_start") && !j.at("warm_start").is_null()) {
    const json& w = j.at("warm_start");
    cache = ErmEvaluation{w.at("f").get<double>(),
                          w.at("g").get<std::array<double, 3>>(),
                          w.at("h").get<std::array<double, 6>>()};
  }
  return LogisticErm::from_parts(solver_from_json(j.at("solver")),
                                 samples_from_json(j.at("samples")),
                                 hyp_from_json(j.at("hypothesis")), cache);
}

}  // namespace

struct AdaptiveCheckpointAccess {
  static json save(const AdaptiveProspectiveLearner& l) {
    const auto& c = l.cfg_;
    json j;
    j["config"] = {{"window", c.window},
                   {"threshold", c.threshold},
                   {"agreement", c.agreement},
                   {"solver", solver_to_json(c.solver)}};
    j["buffer"] = samples_to_json(l.buffer_);
    j["segment_start"] = l.segment_start_;
    j["epoch_start"] = l.epoch_start_;
    j["current"] = erm_to_json(l.current_);
    j["held"] = samples_to_json(l.held_);
    json recent = json::array();
    for (const auto& r : l.recent_) recent.push_back({r.t, r.error});
    j["recent"] = recent;
    j["last_detection"] = l.last_detection_;
    j["change_points"] = l.change_points_;
    j["change_point_history"] = l.cp_history_;
    if (l.schedule_) {
      j["schedule"] = {{"period", l.schedule_->period},
                       {"anchor", l.schedule_->anchor},
                       {"num_phases", l.schedule_->num_phases}};
    } else {
      j["schedule"] = nullptr;
    }
    json slots = json::array();
    for (const auto& s : l.slots_) slots.push_back(erm_to_json(s));
    j["slots"] = slots;
    return j;
  }

  static AdaptiveProspectiveLearner load(const json& j) {
    const json& c = j.at("config");
    AdaptiveConfig cfg;
    cfg.window = c.at("window").get<int>();
    cfg.threshold = c.at("threshold").get<double>();
    cfg.agreement = c.at("agreement").get<double>();
    cfg.solver = solver_from_json(c.at("solver"));
    AdaptiveProspectiveLearner l(cfg);
    l.buffer_ = samples_from_json(j.at("buffer"));
    l.segment_start_ = j.at("segment_start").get<TimeStep>();
    l.epoch_start_ = j.at("epoch_start").get<TimeStep>();
    l.current_ = erm_from_json(j.at("current"));
    l.held_ = samples_from_json(j.at("held"));
    for (const auto& r : j.at("recent")) {
      l.recent_.push_back({r.at(0).get<TimeStep>(), r.at(1).get<int>()});
    }
    l.last_detection_ = j.at("last_detection").get<TimeStep>();
    l.change_points_ = j.at("change_points").get<std::vector<TimeStep>>();
    l.cp_history_ = j.at("change_point_history").get<std::vector<TimeStep>>();
    if (!j.at("schedule").is_null()) {
      const json& s = j.at("schedule");
      l.schedule_ = Schedule{s.at("period").get<TimeStep>(),
                             s.at("anchor").get<TimeStep>(),
                             s.at("num_phases").get<std::size_t>()};
    }
    for (const auto& s : j.at("slots")) l.slots_.push_back(erm_from_json(s));
    return l;
  }
};

std::string Learner::checkpoint() const {
  json j;
  j["checkpoint_version"] = kCheckpointVersion;
  j["kind"] = std::string(to_string(kind()));
  if (const auto* ogd = std::get_if<OgdLearner>(&impl_)) {
    j["eta"] = ogd->eta();
    j["hypothesis"] = hyp_to_json(ogd->state().h);
    j["steps"] = ogd->state().steps;
  } else if (const auto* ftl = std::get_if<FtlLearner>(&impl_)) {
    j["erm"] = erm_to_json(ftl->erm());
  } else if (const auto* orc = std::get_if<OracleProspectiveLearner>(&impl_)) {
    j["period"] = orc->period();
    json phases = json::array();
    for (const auto& p : orc->phases()) phases.push_back(erm_to_json(p));
    j["phases"] = phases;
  } else if (const auto* ad = std::get_if<AdaptiveProspectiveLearner>(&impl_)) {
    j["adaptive"] = AdaptiveCheckpointAccess::save(*ad);
  }
  return j.dump();
}

Learner Learner::restore(std::string_view text, const TaskSequence& seq) {
  try {
    const json j = json::parse(text);
    const int version = j.at("checkpoint_version").get<int>();
    if (version != kCheckpointVersion) {
      throw ConfigError("unsupported checkpoint version " + std::to_string(version));
    }
    switch (learner_kind_from_string(j.at("kind").get<std::string>())) {
      case LearnerKind::kOgd: {
        OgdLearner l(j.at("eta").get<double>());
        l.set_state(OgdState{hyp_from_json(j.at("hypothesis")),
                             j.at("steps").get<std::int64_t>()});
        return Learner(l);
      }
      case LearnerKind::kFtl: {
        FtlLearner l;
        l.mutable_erm() = erm_from_json(j.at("erm"));
        return Learner(std::move(l));
      }
      case LearnerKind::kOracleProspective: {
        const auto& phases = j.at("phases");
        OracleProspectiveLearner l(j.at("period").get<TimeStep>(), phases.size());
        for (std::size_t i = 0; i < phases.size(); ++i) {
          l.mutable_phases()[i] = erm_from_json(phases[i]);
        }
        return Learner(std::move(l));
      }
      case LearnerKind::kAdaptiveProspective:
        return Learner(AdaptiveCheckpointAccess::load(j.at("adaptive")));
      case LearnerKind::kReference:
        return Learner(ReferenceLearner(seq));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
  throw ConfigError("malformed checkpoint");
}

}  // namespace prolearn
