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

// Analytical cycle, latency, resource and power model.
//
// Per secondary convolution (one per split group g of a layer):
//   compute_g   = Ho·Wo·ceil(g/OCP)·(Fh·Fw·ceil(Ci/ICP) + K_PIPE)
//   transfer_g  = ceil(H·X·Ci / APACK)
//   writeback_g = ceil(Ho'·Wo'·g / APACK)        (post-pool dims)
//   pool_g      = Ho'·Wo'·window²·ceil(g/APACK) + K_POOL
//   cycles_g    = K_LAYER + max(compute_g, transfer_g, writeback_g, pool_g)
// and once per layer
//   param       = ceil(Co·Fh·Fw·Ci / PPACK) + ceil(Co / APACK).
// Double-buffered transfers and the CONV→MPOOL dataflow overlap with compute;
// the parameter load does not. Each invocation also costs host time that does
// not scale with FREQ: INVOKE_US plus INVOKE_NS_PER_BYTE per byte moved.

#ifndef ACCELSIM_PERF_HPP_
#define ACCELSIM_PERF_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "accelsim/config.hpp"
#include "accelsim/engine.hpp"

namespace accelsim::perf {

/// Every fitted constant of the model in one record. The defaults are the
/// shipped fit (data/calibration.txt).
struct Calibration {
  double k_pipe = 0;                   // cycles per (output window, Co tile) pass
  double k_layer = 0;                  // cycles per accelerator invocation
  double k_pool = 118985;              // cycles per pooled invocation
  double invoke_us = 153.0;            // host time per invocation, frequency independent
  double invoke_ns_per_byte = 0.471;   // host time per byte an invocation moves
  double host_ns_per_element = 3.547;  // concat, pools, softmax, reshape
  double host_ns_per_mac = 1.137;      // fully connected
  double c_dsp = 10;                   // DSPs outside the PE array
  double p0_w = 1.8917;                // static power
  double power_w_per_100mhz = 0.8;
  bool reshape_first_layer = true;
  double reshape_max_ci_fraction = 0.5;  // reshape when Ci < fraction·ICP
  std::size_t reshape_min_stride = 2;

  static Calibration zero();

  bool operator==(const Calibration &) const = default;
};

Calibration parse_calibration(const std::string &text, const std::string &origin);
Calibration load_calibration(const std::filesystem::path &path);
std::string format_calibration(const Calibration &calib);

struct LayerCycles {
  std::uint64_t compute_cycles = 0;
  std::uint64_t transfer_in_cycles = 0;
  std::uint64_t param_cycles = 0;
  std::uint64_t writeback_cycles = 0;
  std::uint64_t pool_cycles = 0;
  std::size_t restreams = 0;
  std::uint64_t total_cycles = 0;
  double latency_ms = 0;   // total_cycles / (FREQ·1000)
  double overhead_ms = 0;  // frequency-independent invocation cost
  std::uint64_t macs = 0;  // dense MACs of the layer, padding included

  double layer_ms() const { return latency_ms + overhead_ms; }
};

/// Pool cycles for one pass over a conv output of `conv_out` geometry.
/// Zero when the layer has no pool.
std::uint64_t mpool_cycles(const Shape3 &conv_out, const std::optional<engine::PoolSpec> &pool,
                           const AccelConfig &cfg, const Calibration &calib);

/// Cycle breakdown for one layer executed under `plan`.
LayerCycles conv_cycles(const engine::LayerSpec &spec, const Shape3 &in,
                        const engine::SplitPlan &plan, const AccelConfig &cfg,
                        const Calibration &calib);

/// Same, with the greedy plan; kConfigTooSmall when the layer cannot run.
LayerCycles conv_cycles(const engine::LayerSpec &spec, const Shape3 &in,
                        const AccelConfig &cfg, const Calibration &calib);

/// total MACs / (ICP·OCP·FREQ), in milliseconds.
double mac_bound_ms(std::uint64_t macs, const AccelConfig &cfg);

struct ResourceReport {
  double dsp = 0;
  std::uint64_t bram_bytes = 0;
  double power_w = 0;
};

ResourceReport estimate_resources(const AccelConfig &cfg, const Calibration &calib);

/// Sum of all OCM budgets; the Window and OUT-PIXEL OCMs are double buffered.
std::uint64_t ocm_bytes(const AccelConfig &cfg);

}  // namespace accelsim::perf

#endif  // ACCELSIM_PERF_HPP_
