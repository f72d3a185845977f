/**
 * Copyright 2026 The accelsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Exhaustive design-space exploration over accelerator configurations.

#ifndef ACCELSIM_DSE_HPP_
#define ACCELSIM_DSE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "accelsim/config.hpp"
#include "accelsim/graph.hpp"
#include "accelsim/perf.hpp"

namespace accelsim::dse {

enum class Objective {
  kLatency,      // end-to-end, one dimension per workload
  kConvLatency,  // accelerated layers only, one dimension per workload
  kDsp,
  kBram,
  kPower,
};

std::string_view to_string(Objective o);
/// kParse for unknown names.
Objective parse_objective(std::string_view name);

struct Constraints {
  std::optional<double> max_dsp;
  std::optional<double> max_bram_bytes;
  std::optional<double> max_power_w;
  std::optional<double> max_latency_ms;  // end-to-end, every workload
};

struct Workload {
  std::string name;  // file stem in sweep files
  graph::NetworkGraph net;
};

struct SweepSpec {
  AccelConfig base;
  std::vector<AccelConfig> configs;  // explicit points; {base} when empty
  std::vector<std::pair<std::string, std::vector<double>>> axes;  // crossed with every explicit point
  Constraints constraints;
  std::vector<Objective> objectives;
  std::vector<Workload> workloads;
  perf::Calibration calib;
  std::size_t cap = 100000;
};

/// kValidation when objectives, workloads or an axis are empty, or an axis
/// names an unknown parameter.
void validate(const SweepSpec &spec);

/// Number of points enumerate() would produce.
std::size_t sweep_size(const SweepSpec &spec);

struct Metrics {
  std::vector<double> conv_ms;        // per workload
  std::vector<double> end_to_end_ms;  // per workload
  double dsp = 0;
  std::uint64_t bram_bytes = 0;
  double power_w = 0;
};

struct DesignPoint {
  AccelConfig cfg;
  bool evaluated = false;  // false for invalid configurations
  Metrics metrics;
  bool feasible = false;
  bool dominated = false;
  bool pareto = false;
  std::string note;  // why the point is infeasible
};

/// One point per combination, in enumeration order, dominance-marked.
/// kSize when the sweep exceeds the cap.
std::vector<DesignPoint> enumerate(const SweepSpec &spec);

/// Objective vector, all minimized.
std::vector<double> objective_vector(const DesignPoint &p, const std::vector<Objective> &objectives);

/// a ≤ b in every objective and < in at least one.
bool dominates(const std::vector<double> &a, const std::vector<double> &b);

/// Lexicographic order over the configuration fields in parameter-name order.
bool config_less(const AccelConfig &a, const AccelConfig &b);

/// Exactly the non-dominated feasible points, sorted by objective vector
/// then configuration.
std::vector<DesignPoint> pareto_front(const std::vector<DesignPoint> &points,
                                      const std::vector<Objective> &objectives);

/// Sets dominated/pareto on every point.
void mark_dominance(std::vector<DesignPoint> &points, const std::vector<Objective> &objectives);

/// Configuration fields, then per-workload latencies, dsp, bram and power,
/// then the feasible and pareto flags.
std::string to_csv(const std::vector<DesignPoint> &points, const SweepSpec &spec);
std::string format_summary(const std::vector<DesignPoint> &points, const SweepSpec &spec);

/// JSON sweep file; relative paths resolve against the file's directory.
SweepSpec parse_sweep(const std::string &text, const std::string &origin, const std::filesystem::path &base_dir);
SweepSpec load_sweep(const std::filesystem::path &path);

}  // namespace accelsim::dse

#endif  // ACCELSIM_DSE_HPP_
