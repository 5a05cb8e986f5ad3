// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tacspin/common.hpp"
#include "tacspin/geometry.hpp"
#include "tacspin/trace.hpp"

namespace tacspin {

// Rotation Score: mean per-step lid angle change over the episode.
inline double rotation_score(const EpisodeTrace& tr) {
  if (tr.length() < 2)
    throw MetricError("rotation score needs at least two steps");
  double sum = 0.0;
  for (const TraceStep& s : tr.steps) sum += s.d_angle;
  return sum / tr.length();
}

// Step indices (1-based step counts) at which cumulative rotation first
// reaches each whole multiple of 2*pi.
inline std::vector<int> revolution_marks(const EpisodeTrace& tr) {
  std::vector<int> marks;
  double cum = 0.0;
  double next = 2.0 * M_PI;
  for (int t = 0; t < tr.length(); ++t) {
    cum += tr.steps[t].d_angle;
    while (cum >= next) {
      marks.push_back(t + 1);
      next += 2.0 * M_PI;
    }
  }
  return marks;
}

// Rotation Time: mean seconds per completed revolution. Partial final arcs
// do not count; an episode with no completed revolution has no RT.
inline double rotation_time(const EpisodeTrace& tr, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const std::vector<int> marks = revolution_marks(tr);
  if (marks.empty())
    throw MetricError("no completed revolution; rotation time undefined");
  double sum = 0.0;
  int prev = 0;
  for (int m : marks) {
    sum += (m - prev) * dt;
    prev = m;
  }
  return sum / marks.size();
}

// Shape-specific completion window for the success metric, seconds.
inline double success_time_limit(LidShape shape) {
  switch (shape) {
    case LidShape::kCylinder: return 2.5;
    case LidShape::kSquare: return 5.0;
    case LidShape::kHexagon: return 3.5;
  }
  throw ConfigError("unknown shape in success limit");
}

// True iff the first full revolution completes within the shape's window.
inline bool success(const EpisodeTrace& tr, LidShape shape, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const std::vector<int> marks = revolution_marks(tr);
  if (marks.empty()) return false;
  return marks.front() * dt <= success_time_limit(shape);
}

// One (method, shape) table cell. RS statistics are across episodes; RT
// statistics cover only the episodes where RT is defined, with the count
// reported alongside.
struct MetricReport {
  std::string method;
  std::string shape;
  int episodes = 0;
  double rs_mean = 0.0;
  double rs_std = 0.0;
  int rt_defined = 0;
  double rt_mean = 0.0;
  double rt_std = 0.0;
  double sr = 0.0;
};

inline MetricReport aggregate(const std::vector<EpisodeTrace>& traces,
                              double dt) {
  if (traces.empty()) throw MetricError("no traces to aggregate");
  MetricReport rep;
  rep.method = traces.front().method;
  rep.shape = traces.front().shape;
  rep.episodes = static_cast<int>(traces.size());
  const LidShape shape = parse_shape(rep.shape);

  std::vector<double> rs, rt;
  int successes = 0;
  for (const EpisodeTrace& tr : traces) {
    if (tr.method != rep.method || tr.shape != rep.shape)
      throw MetricError("mixed method/shape tags in one aggregation cell");
    rs.push_back(rotation_score(tr));
    try {
      rt.push_back(rotation_time(tr, dt));
    } catch (const MetricError&) {
      // undefined RT: excluded from the mean, reflected in rt_defined
    }
    if (success(tr, shape, dt)) ++successes;
  }

  auto mean_std = [](const std::vector<double>& v, double& m, double& s) {
    m = 0.0;
    s = 0.0;
    if (v.empty()) return;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) s += (x - m) * (x - m);
    s = std::sqrt(s / v.size());  // population std across episodes
  };
  mean_std(rs, rep.rs_mean, rep.rs_std);
  mean_std(rt, rep.rt_mean, rep.rt_std);
  rep.rt_defined = static_cast<int>(rt.size());
  rep.sr = double(successes) / rep.episodes;
  return rep;
}

// ---------- emission ---------- //

namespace detail {

inline std::string fmt(double v) { return fmt_g(v); }

}  // namespace detail

inline std::string report_csv_header() {
  return "method,shape,episodes,rs_mean,rs_std,rt_defined,rt_mean,rt_std,sr";
}

inline std::string report_csv_row(const MetricReport& r) {
  std::ostringstream os;
  os << r.method << ',' << r.shape << ',' << r.episodes << ','
     << detail::fmt(r.rs_mean) << ',' << detail::fmt(r.rs_std) << ','
     << r.rt_defined << ',' << detail::fmt(r.rt_mean) << ','
     << detail::fmt(r.rt_std) << ',' << detail::fmt(r.sr);
  return os.str();
}

inline void write_report_csv(const std::vector<MetricReport>& rows,
                             const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write report: " + path);
  os << report_csv_header() << "\n";
  for (const auto& r : rows) os << report_csv_row(r) << "\n";
}

// Aligned text table with the familiar RS / RT / SR columns.
inline std::string format_report_table(const std::vector<MetricReport>& rows) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %-9s %4s %11s %11s %6s %5s\n",
                "method", "shape", "eps", "RS", "RT[s]", "RTn", "SR");
  os << line;
  for (const auto& r : rows) {
    char rs[32], rt[32];
    std::snprintf(rs, sizeof(rs), "%.4g±%.3g", r.rs_mean, r.rs_std);
    if (r.rt_defined > 0)
      std::snprintf(rt, sizeof(rt), "%.3g±%.2g", r.rt_mean, r.rt_std);
    else
      std::snprintf(rt, sizeof(rt), "--");
    std::snprintf(line, sizeof(line), "%-12s %-9s %4d %11s %11s %6d %5.2f\n",
                  r.method.c_str(), r.shape.c_str(), r.episodes, rs, rt,
                  r.rt_defined, r.sr);
    os << line;
  }
  return os.str();
}

// Per-episode CSV for downstream plotting and the re-aggregation oracle.
inline std::string episode_csv_header() {
  return "method,shape,episode,steps,rs,rt,success,friction,cause";
}

inline std::string episode_csv_row(const EpisodeTrace& tr, int index,
                                   double dt) {
  std::ostringstream os;
  os << tr.method << ',' << tr.shape << ',' << index << ',' << tr.length()
     << ',' << detail::fmt(rotation_score(tr)) << ',';
  try {
    os << detail::fmt(rotation_time(tr, dt));
  } catch (const MetricError&) {
    os << "undefined";
  }
  os << ',' << (success(tr, parse_shape(tr.shape), dt) ? 1 : 0) << ','
     << detail::fmt(tr.friction) << ',' << tr.cause;
  return os.str();
}

}  // namespace tacspin
