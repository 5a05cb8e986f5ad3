// Copyright 2026 tacspin contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tacspin {

// Error taxonomy. Configuration problems (bad file, bad value, inconsistent
// dimensions chosen up front) are ConfigError; bad data handed to an
// otherwise healthy object (NaN actions, wrong row counts) is InputError;
// calling an API in a state where the call has no meaning (stepping a
// finished episode) is UsageError; asking for a statistic a trace cannot
// support is MetricError.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct UsageError : std::logic_error {
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

struct MetricError : std::runtime_error {
  explicit MetricError(const std::string& what) : std::runtime_error(what) {}
};

using Vec3 = Eigen::Vector3d;

inline bool all_finite(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return v.allFinite();
}

// FNV-1a, used for config hashes and parameter-blob checksums. Stable across
// runs and platforms, which is all the reproducibility checks need.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) {
  return fnv1a(s.data(), s.size());
}

// shortest-ish decimal rendering for CSV cells; deterministic across runs
inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace tacspin
