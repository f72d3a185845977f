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


#include "accelsim/calibration_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <sstream>

#include "accelsim/error.hpp"
#include "accelsim/kv_file.hpp"

namespace accelsim::perf {
namespace {

constexpr std::array<double Calibration::*, 7> kFitted = {
    &Calibration::k_pipe,          &Calibration::k_layer,           &Calibration::k_pool,
    &Calibration::invoke_us,       &Calibration::invoke_ns_per_byte, &Calibration::host_ns_per_element,
    &Calibration::host_ns_per_mac,
};
constexpr std::array<std::string_view, 7> kFittedKeys = {
    "K_PIPE", "K_LAYER", "K_POOL", "INVOKE_US", "INVOKE_NS_PER_BYTE", "HOST_NS_PER_ELEMENT", "HOST_NS_PER_MAC",
};

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

struct Evaluator {
  struct Cell {
    const LatencyTarget *target;
    const graph::NetworkGraph *net;
    graph::Schedule sched;
  };
  std::vector<Cell> cells;

  Evaluator(const Calibration &calib, const std::map<std::string, graph::NetworkGraph> &networks,
            const std::vector<LatencyTarget> &targets) {
    for (const auto &t : targets) {
      const auto it = networks.find(t.workload);
      if (it == networks.end()) fail(ErrorKind::kDomain, "no network for workload '" + t.workload + "'");
      cells.push_back({&t, &it->second, graph::schedule(it->second, t.cfg, calib)});
    }
  }

  FitReport run(const Calibration &calib) const {
    FitReport r;
    r.calib = calib;
    double sum = 0;
    for (const auto &c : cells) {
      const graph::PerfReport p = graph::network_perf(c.sched, *c.net, c.target->cfg, calib);
      r.cells.push_back({c.target, p.conv_ms, p.end_to_end_ms});
      for (const double e : {std::abs(p.conv_ms - c.target->conv_ms) / c.target->conv_ms,
                             std::abs(p.end_to_end_ms - c.target->end_to_end_ms) / c.target->end_to_end_ms}) {
        sum += e;
        r.max_rel_error = std::max(r.max_rel_error, e);
      }
    }
    r.mean_rel_error = cells.empty() ? 0 : sum / static_cast<double>(2 * cells.size());
    return r;
  }
};

}  // namespace

std::vector<LatencyTarget> load_latency_targets(const std::filesystem::path &csv,
                                                const std::filesystem::path &config_dir) {
  std::stringstream in(read_text_file(csv));
  std::string line;
  std::vector<LatencyTarget> out;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    const std::string where = csv.string() + ":" + std::to_string(lineno);
    if (cells.size() != 4) fail(ErrorKind::kParse, where + ": expected 4 columns");
    if (header) {
      if (cells != std::vector<std::string>{"workload", "config", "conv_ms", "end_to_end_ms"}) {
        fail(ErrorKind::kParse, where + ": unexpected header");
      }
      header = false;
      continue;
    }
    LatencyTarget t;
    t.workload = cells[0];
    t.config_name = cells[1];
    t.cfg = load_config(config_dir / cells[1]);
    t.conv_ms = parse_number(cells[2], where);
    t.end_to_end_ms = parse_number(cells[3], where);
    if (t.conv_ms <= 0 || t.end_to_end_ms <= 0) fail(ErrorKind::kParse, where + ": latencies must be positive");
    out.push_back(std::move(t));
  }
  return out;
}

FitReport evaluate_fit(const Calibration &calib, const std::map<std::string, graph::NetworkGraph> &networks,
                       const std::vector<LatencyTarget> &targets) {
  return Evaluator(calib, networks, targets).run(calib);
}

FitReport fit_calibration(const Calibration &start, const std::map<std::string, graph::NetworkGraph> &networks,
                          const std::vector<LatencyTarget> &targets,
                          const std::vector<std::string> &frozen) {
  std::array<bool, kFitted.size()> free{};
  free.fill(true);
  for (const auto &key : frozen) {
    const auto it = std::find(kFittedKeys.begin(), kFittedKeys.end(), key);
    if (it == kFittedKeys.end()) fail(ErrorKind::kDomain, "cannot freeze unknown constant " + key);
    free[static_cast<std::size_t>(it - kFittedKeys.begin())] = false;
  }
  const Evaluator eval(start, networks, targets);
  const std::array<double, kFitted.size()> floor = {1e-3, 1e-1, 1e-2, 1e-2, 1e-4, 1e-4, 1e-5};

  // Coordinate descent with halving steps, restarted with the initial steps
  // until a restart no longer helps.
  auto descend = [&](FitReport best) {
    for (;;) {
      const double before = best.mean_rel_error;
      std::array<double, kFitted.size()> step = {4, 2000, 20000, 200, 1, 4, 1};
      for (int round = 0; round < 20000; ++round) {
        bool moved = false;
        for (std::size_t k = 0; k < kFitted.size(); ++k) {
          if (!free[k]) continue;
          for (const double dir : {1.0, -1.0}) {
            Calibration c = best.calib;
            c.*kFitted[k] = std::max(0.0, c.*kFitted[k] + dir * step[k]);
            if (c == best.calib) continue;
            FitReport r = eval.run(c);
            if (r.mean_rel_error < best.mean_rel_error - 1e-12) {
              best = std::move(r);
              moved = true;
              break;
            }
          }
        }
        if (moved) continue;
        bool any = false;
        for (std::size_t k = 0; k < kFitted.size(); ++k) {
          if (free[k] && step[k] > floor[k]) {
            step[k] /= 2;
            any = true;
          }
        }
        if (!any) break;
      }
      if (best.mean_rel_error > before - 1e-6) return best;
    }
  };

  // Fixed multi-start: the given record, then scaled variants of it.
  FitReport best = descend(eval.run(start));
  for (const double scale : {0.0, 0.25, 4.0}) {
    Calibration c = start;
    for (std::size_t k = 0; k < kFitted.size(); ++k) {
      if (free[k]) c.*kFitted[k] = scale == 0.0 ? 0.0 : best.calib.*kFitted[k] * scale;
    }
    FitReport r = descend(eval.run(c));
    if (r.mean_rel_error < best.mean_rel_error - 1e-12) best = std::move(r);
  }
  return best;
}

std::string format_fit(const FitReport &r) {
  std::string out = fmt::format("{:<8} {:<12} {:>12} {:>12} {:>8} {:>14} {:>14} {:>8}\n", "workload", "config",
                                "conv_ms", "target", "err%", "end_to_end_ms", "target", "err%");
  for (const auto &c : r.cells) {
    const auto &t = *c.target;
    out += fmt::format("{:<8} {:<12} {:>12.3f} {:>12.3f} {:>8.2f} {:>14.3f} {:>14.3f} {:>8.2f}\n", t.workload,
                       t.config_name, c.conv_ms, t.conv_ms, 100 * (c.conv_ms - t.conv_ms) / t.conv_ms,
                       c.end_to_end_ms, t.end_to_end_ms,
                       100 * (c.end_to_end_ms - t.end_to_end_ms) / t.end_to_end_ms);
  }
  out += fmt::format("mean_rel_error: {:.4f}\nmax_rel_error: {:.4f}\n", r.mean_rel_error, r.max_rel_error);
  return out;
}

}  // namespace accelsim::perf
