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

#include "accelsim/perf.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "accelsim/kv_file.hpp"

namespace accelsim::perf {
namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::uint64_t to_cycles(double v) { return static_cast<std::uint64_t>(std::llround(std::max(v, 0.0))); }

struct CalibrationField {
  const char *key;
  double Calibration::*member;
};

constexpr CalibrationField kFields[] = {
    {"K_PIPE", &Calibration::k_pipe},
    {"K_LAYER", &Calibration::k_layer},
    {"K_POOL", &Calibration::k_pool},
    {"INVOKE_US", &Calibration::invoke_us},
    {"INVOKE_NS_PER_BYTE", &Calibration::invoke_ns_per_byte},
    {"HOST_NS_PER_ELEMENT", &Calibration::host_ns_per_element},
    {"HOST_NS_PER_MAC", &Calibration::host_ns_per_mac},
    {"C_DSP", &Calibration::c_dsp},
    {"P0_W", &Calibration::p0_w},
    {"POWER_W_PER_100MHZ", &Calibration::power_w_per_100mhz},
    {"RESHAPE_MAX_CI_FRACTION", &Calibration::reshape_max_ci_fraction},
};

}  // namespace

Calibration Calibration::zero() {
  Calibration c;
  c.k_pipe = c.k_layer = c.k_pool = c.invoke_us = c.invoke_ns_per_byte = 0;
  c.host_ns_per_element = c.host_ns_per_mac = 0;
  return c;
}

Calibration parse_calibration(const std::string &text, const std::string &origin) {
  Calibration calib;
  for (const auto &[key, value] : parse_key_values(text, origin)) {
    const std::string context = origin + ": " + key;
    const double v = parse_number(value, context);
    if (key == "RESHAPE_FIRST_LAYER") {
      calib.reshape_first_layer = v != 0;
      continue;
    }
    if (key == "RESHAPE_MIN_STRIDE") {
      if (v < 1 || v != std::floor(v)) fail(ErrorKind::kParse, context + ": must be a positive integer");
      calib.reshape_min_stride = static_cast<std::size_t>(v);
      continue;
    }
    const auto *field = std::find_if(std::begin(kFields), std::end(kFields),
                                     [&](const CalibrationField &f) { return key == f.key; });
    if (field == std::end(kFields)) fail(ErrorKind::kParse, origin + ": unknown calibration key " + key);
    if (v < 0 && key != "P0_W") fail(ErrorKind::kParse, context + ": must be nonnegative");
    calib.*(field->member) = v;
  }
  return calib;
}

Calibration load_calibration(const std::filesystem::path &path) {
  return parse_calibration(read_text_file(path), path.string());
}

std::string format_calibration(const Calibration &calib) {
  std::string out;
  for (const auto &f : kFields) out += fmt::format("{} = {}\n", f.key, calib.*(f.member));
  out += fmt::format("RESHAPE_FIRST_LAYER = {}\n", calib.reshape_first_layer ? 1 : 0);
  out += fmt::format("RESHAPE_MIN_STRIDE = {}\n", calib.reshape_min_stride);
  return out;
}

std::uint64_t mpool_cycles(const Shape3 &conv_out, const std::optional<engine::PoolSpec> &pool,
                           const AccelConfig &cfg, const Calibration &calib) {
  if (!pool) return 0;
  const Shape3 out = engine::pool_output_shape(conv_out, *pool);
  return out.height * out.width * pool->window * pool->window *
             ceil_div(conv_out.channels, cfg.apack) +
         to_cycles(calib.k_pool);
}

LayerCycles conv_cycles(const engine::LayerSpec &spec, const Shape3 &in,
                        const engine::SplitPlan &plan, const AccelConfig &cfg,
                        const Calibration &calib) {
  const FilterGeom geom{spec.co, spec.filter, spec.filter, in.channels};
  engine::check_plan(plan, geom, cfg);
  const Shape3 conv_out = engine::conv_output_shape(in, spec);
  const Shape3 final_out = engine::layer_output_shape(in, spec);
  const std::uint64_t windows = conv_out.height * conv_out.width;
  const std::uint64_t taps = spec.filter * spec.filter;
  const std::uint64_t ci_tiles = ceil_div(in.channels, cfg.icp);

  LayerCycles r;
  r.restreams = plan.restreams();
  r.macs = windows * spec.co * taps * in.channels;
  r.param_cycles = ceil_div(geom.weight_count(), cfg.ppack) + ceil_div(spec.co, cfg.apack);
  std::uint64_t total = r.param_cycles;
  for (const auto &g : plan.groups) {
    const std::uint64_t compute =
        to_cycles(static_cast<double>(windows * ceil_div(g.size(), cfg.ocp)) *
                  (static_cast<double>(taps * ci_tiles) + calib.k_pipe));
    const std::uint64_t transfer = ceil_div(in.size(), cfg.apack);
    const std::uint64_t writeback =
        ceil_div(final_out.height * final_out.width * g.size(), cfg.apack);
    const std::uint64_t pool =
        mpool_cycles({conv_out.height, conv_out.width, g.size()}, spec.pool, cfg, calib);
    r.compute_cycles += compute;
    r.transfer_in_cycles += transfer;
    r.writeback_cycles += writeback;
    r.pool_cycles += pool;
    total += to_cycles(calib.k_layer) + std::max({compute, transfer, writeback, pool});
  }
  r.total_cycles = total;
  r.latency_ms = static_cast<double>(total) / (cfg.freq_mhz * 1000.0);
  const std::uint64_t bytes = r.restreams * in.size() + final_out.size() + geom.weight_count() + spec.co;
  r.overhead_ms = static_cast<double>(r.restreams) * calib.invoke_us / 1000.0 +
                  static_cast<double>(bytes) * calib.invoke_ns_per_byte / 1e6;
  return r;
}

LayerCycles conv_cycles(const engine::LayerSpec &spec, const Shape3 &in,
                        const AccelConfig &cfg, const Calibration &calib) {
  const engine::SplitPlan plan =
      engine::plan_split({spec.co, spec.filter, spec.filter, in.channels}, cfg);
  return conv_cycles(spec, in, plan, cfg, calib);
}

double mac_bound_ms(std::uint64_t macs, const AccelConfig &cfg) {
  return static_cast<double>(macs) /
         (static_cast<double>(cfg.macs_per_cycle()) * cfg.freq_mhz * 1000.0);
}

std::uint64_t ocm_bytes(const AccelConfig &cfg) {
  return cfg.filter_max * cfg.win_x_chin_pad_max       // IACT-ROW
         + 2 * cfg.filterxfilterxchin_max              // Window pair
         + cfg.chout_x_f_x_f_x_chin_max                // Weights
         + cfg.chout_max                               // Biases
         + 2 * cfg.chout_max                           // OUT-PIXEL pair
         + 2 * cfg.pwin_x_pch_max                      // CURRENT/RESULT-ROW
         + 2 * cfg.pch_max;                            // CURRENT/RESULT-PIXEL
}

ResourceReport estimate_resources(const AccelConfig &cfg, const Calibration &calib) {
  ResourceReport r;
  // Two 8-bit multiplies share one DSP block.
  r.dsp = static_cast<double>(cfg.pe_dsp * ceil_div(cfg.icp, 2)) + calib.c_dsp;
  r.bram_bytes = ocm_bytes(cfg);
  r.power_w = calib.p0_w + calib.power_w_per_100mhz * cfg.freq_mhz / 100.0;
  return r;
}

}  // namespace accelsim::perf
