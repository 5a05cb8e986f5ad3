// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tacspin/common.hpp"
#include "tacspin/rewards.hpp"

namespace tacspin {

// One recorded environment step. Kept lean: everything the metrics and the
// re-aggregation oracle need, nothing else.
struct TraceStep {
  double lid_angle = 0.0;
  double d_angle = 0.0;
  RewardBreakdown reward;
  std::vector<bool> contact;
  Eigen::VectorXd grasp;
  Eigen::VectorXd action;
};

struct EpisodeTrace {
  std::string shape = "cylinder";
  std::string method = "tac2motion";
  double dt = 0.0166;
  double friction = 1.2;
  std::uint64_t seed = 0;
  std::vector<TraceStep> steps;
  std::string cause;  // termination cause of the final step

  int length() const { return static_cast<int>(steps.size()); }
};

inline constexpr const char* kTraceSchema = "tacspin.trace.v1";

namespace detail {

inline nlohmann::json breakdown_json(const RewardBreakdown& b) {
  return nlohmann::json{
      {"cpr", b.cpr},       {"crr", b.crr},
      {"rr", b.rr},         {"angle", b.angle},
      {"action", b.action}, {"work", b.work},
      {"gaiting", b.gaiting}, {"baseline_dist", b.baseline_dist},
      {"d_angle", b.d_angle}, {"composed", b.composed},
      {"final", b.final}};
}

inline RewardBreakdown breakdown_from_json(const nlohmann::json& j) {
  RewardBreakdown b;
  b.cpr = j.at("cpr");
  b.crr = j.at("crr");
  b.rr = j.at("rr");
  b.angle = j.at("angle");
  b.action = j.at("action");
  b.work = j.at("work");
  b.gaiting = j.at("gaiting");
  b.baseline_dist = j.at("baseline_dist");
  b.d_angle = j.at("d_angle");
  b.composed = j.at("composed");
  b.final = j.at("final");
  return b;
}

}  // namespace detail

// Line-delimited JSON: a header record, one record per step, one end record.
// nlohmann re-serializes doubles exactly, so a written trace re-reads to the
// bit-identical values the metrics saw in memory.
inline void write_trace(const EpisodeTrace& tr, std::ostream& os) {
  nlohmann::json head{{"schema", kTraceSchema}, {"shape", tr.shape},
                      {"method", tr.method},   {"dt", tr.dt},
                      {"friction", tr.friction}, {"seed", tr.seed}};
  os << head.dump() << "\n";
  for (std::size_t t = 0; t < tr.steps.size(); ++t) {
    const TraceStep& s = tr.steps[t];
    nlohmann::json rec{{"t", t},
                       {"angle", s.lid_angle},
                       {"d", s.d_angle},
                       {"r", detail::breakdown_json(s.reward)}};
    rec["contact"] = nlohmann::json::array();
    for (bool b : s.contact) rec["contact"].push_back(b ? 1 : 0);
    rec["g"] = std::vector<double>(s.grasp.data(),
                                   s.grasp.data() + s.grasp.size());
    rec["a"] = std::vector<double>(s.action.data(),
                                   s.action.data() + s.action.size());
    os << rec.dump() << "\n";
  }
  os << nlohmann::json{{"end", tr.cause}}.dump() << "\n";
}

inline void save_trace(const EpisodeTrace& tr, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write trace file: " + path);
  write_trace(tr, os);
}

inline EpisodeTrace read_trace(std::istream& is) {
  EpisodeTrace tr;
  std::string line;
  bool have_header = false, have_end = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("bad trace line: ") + e.what());
    }
    if (!have_header) {
      if (j.value("schema", "") != kTraceSchema)
        throw InputError("trace schema mismatch; expected " +
                         std::string(kTraceSchema));
      tr.shape = j.at("shape");
      tr.method = j.at("method");
      tr.dt = j.at("dt");
      tr.friction = j.at("friction");
      tr.seed = j.at("seed").get<std::uint64_t>();
      have_header = true;
      continue;
    }
    if (j.contains("end")) {
      tr.cause = j.at("end");
      have_end = true;
      break;
    }
    TraceStep s;
    s.lid_angle = j.at("angle");
    s.d_angle = j.at("d");
    s.reward = detail::breakdown_from_json(j.at("r"));
    for (const auto& v : j.at("contact"))
      s.contact.push_back(v.get<int>() != 0);
    const auto g = j.at("g").get<std::vector<double>>();
    const auto a = j.at("a").get<std::vector<double>>();
    s.grasp = Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
    s.action = Eigen::Map<const Eigen::VectorXd>(a.data(), a.size());
    tr.steps.push_back(std::move(s));
  }
  if (!have_header) throw InputError("trace stream has no header record");
  if (!have_end) throw InputError("trace stream has no end record");
  return tr;
}

inline EpisodeTrace load_trace(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open trace file: " + path);
  return read_trace(is);
}

}  // namespace tacspin
