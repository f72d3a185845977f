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


// Fitting the latency constants of a Calibration to measured latencies.

#ifndef ACCELSIM_CALIBRATION_FIT_HPP_
#define ACCELSIM_CALIBRATION_FIT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "accelsim/config.hpp"
#include "accelsim/graph.hpp"
#include "accelsim/perf.hpp"

namespace accelsim::perf {

/// One measured (network, configuration) cell.
struct LatencyTarget {
  std::string workload;
  AccelConfig cfg;
  std::string config_name;
  double conv_ms = 0;
  double end_to_end_ms = 0;
};

/// CSV with header "workload,config,conv_ms,end_to_end_ms". The config
/// column is a file name relative to `config_dir`.
std::vector<LatencyTarget> load_latency_targets(const std::filesystem::path &csv,
                                                const std::filesystem::path &config_dir);

struct CellFit {
  const LatencyTarget *target = nullptr;
  double conv_ms = 0;
  double end_to_end_ms = 0;
};

struct FitReport {
  Calibration calib;
  std::vector<CellFit> cells;
  double mean_rel_error = 0;  // over both values of every cell
  double max_rel_error = 0;
};

/// `networks` is looked up by LatencyTarget::workload.
FitReport evaluate_fit(const Calibration &calib, const std::map<std::string, graph::NetworkGraph> &networks,
                       const std::vector<LatencyTarget> &targets);

/// Coordinate search over K_PIPE, K_LAYER, K_POOL, INVOKE_US,
/// HOST_NS_PER_ELEMENT and HOST_NS_PER_MAC, all kept nonnegative, minimizing
/// the mean relative error. Other fields of `start`, and the fitted fields
/// named in `frozen` (calibration file keys), are kept.
FitReport fit_calibration(const Calibration &start, const std::map<std::string, graph::NetworkGraph> &networks,
                          const std::vector<LatencyTarget> &targets,
                          const std::vector<std::string> &frozen = {});

std::string format_fit(const FitReport &report);

}  // namespace accelsim::perf

#endif  // ACCELSIM_CALIBRATION_FIT_HPP_
