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


#include "accelsim/dse.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "accelsim/error.hpp"
#include "accelsim/graph_io.hpp"
#include "accelsim/kv_file.hpp"
#include "json_reader.hpp"

namespace accelsim::dse {
namespace {

using detail::json;
using detail::Reader;

struct ObjectiveName {
  Objective objective;
  std::string_view name;
};

constexpr ObjectiveName kObjectives[] = {
    {Objective::kLatency, "latency"},
    {Objective::kConvLatency, "conv_latency"},
    {Objective::kDsp, "dsp"},
    {Objective::kBram, "bram"},
    {Objective::kPower, "power"},
};

bool known_key(std::string_view name) {
  return std::find(kConfigKeys.begin(), kConfigKeys.end(), name) != kConfigKeys.end();
}

std::string fmt_limit(double v) { return fmt::format("{}", v); }

// Returns the reason the point violates a constraint, empty when none.
std::string violation(const Metrics &m, const Constraints &c, const std::vector<Workload> &w) {
  if (c.max_dsp && m.dsp > *c.max_dsp) return fmt::format("dsp {} > {}", m.dsp, fmt_limit(*c.max_dsp));
  if (c.max_bram_bytes && static_cast<double>(m.bram_bytes) > *c.max_bram_bytes) {
    return fmt::format("bram {} > {}", m.bram_bytes, fmt_limit(*c.max_bram_bytes));
  }
  if (c.max_power_w && m.power_w > *c.max_power_w) {
    return fmt::format("power {:.3f} > {}", m.power_w, fmt_limit(*c.max_power_w));
  }
  if (c.max_latency_ms) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (m.end_to_end_ms[i] > *c.max_latency_ms) {
        return fmt::format("{} latency {:.3f} > {}", w[i].name, m.end_to_end_ms[i], fmt_limit(*c.max_latency_ms));
      }
    }
  }
  return {};
}

DesignPoint evaluate(const AccelConfig &cfg, const SweepSpec &spec) {
  DesignPoint p;
  p.cfg = cfg;
  if (auto problems = config_problems(cfg); !problems.empty()) {
    p.note = "invalid config: " + problems.front();
    return p;
  }
  p.evaluated = true;
  const perf::ResourceReport res = perf::estimate_resources(cfg, spec.calib);
  p.metrics.dsp = res.dsp;
  p.metrics.bram_bytes = res.bram_bytes;
  p.metrics.power_w = res.power_w;
  const double inf = std::numeric_limits<double>::infinity();
  for (const Workload &w : spec.workloads) {
    const graph::LegalityReport legality = graph::validate(w.net, cfg, spec.calib);
    if (!legality.ok()) {
      p.metrics.conv_ms.push_back(inf);
      p.metrics.end_to_end_ms.push_back(inf);
      if (p.note.empty()) {
        for (const auto &l : legality.layers) {
          if (l.verdict == graph::Verdict::kUnsupported) {
            p.note = fmt::format("{}: layer {} unsupported ({})", w.name, l.id, l.reason);
            break;
          }
        }
      }
      continue;
    }
    const graph::PerfReport r = graph::network_perf(w.net, cfg, spec.calib);
    p.metrics.conv_ms.push_back(r.conv_ms);
    p.metrics.end_to_end_ms.push_back(r.end_to_end_ms);
  }
  if (p.note.empty()) p.note = violation(p.metrics, spec.constraints, spec.workloads);
  p.feasible = p.note.empty();
  return p;
}

AccelConfig read_config_value(const json &j, const AccelConfig &base, const std::string &context,
                              const std::filesystem::path &base_dir) {
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    return load_config(path);
  }
  if (!j.is_object()) fail(ErrorKind::kParse, context + ": expected a config file path or an object");
  AccelConfig cfg = base;
  for (const auto &[key, value] : j.items()) {
    if (!known_key(key)) fail(ErrorKind::kParse, context + ": unknown config parameter '" + key + "'");
    if (!value.is_number()) fail(ErrorKind::kParse, context + ": " + key + " must be a number");
    try {
      set_param(cfg, key, value.get<double>());
    } catch (const Error &e) {
      fail(ErrorKind::kParse, context + ": " + e.what());
    }
  }
  return cfg;
}

std::optional<double> limit(Reader &r, const char *key) {
  if (r.find(key) == nullptr) return std::nullopt;
  return r.number(key);
}

}  // namespace

std::string_view to_string(Objective o) {
  for (const auto &e : kObjectives) {
    if (e.objective == o) return e.name;
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  for (const auto &e : kObjectives) {
    if (e.name == name) return e.objective;
  }
  fail(ErrorKind::kParse, "unknown objective '" + std::string(name) + "'");
}

void validate(const SweepSpec &spec) {
  if (spec.objectives.empty()) fail(ErrorKind::kValidation, "sweep has no objectives");
  if (spec.workloads.empty()) fail(ErrorKind::kValidation, "sweep has no workloads");
  for (const auto &[name, values] : spec.axes) {
    if (!known_key(name)) fail(ErrorKind::kValidation, "sweep axis names unknown parameter " + name);
    if (values.empty()) fail(ErrorKind::kValidation, "sweep axis " + name + " has no values");
  }
}

std::size_t sweep_size(const SweepSpec &spec) {
  const std::size_t limit = std::numeric_limits<std::size_t>::max();
  std::size_t n = std::max<std::size_t>(spec.configs.size(), 1);
  for (const auto &axis : spec.axes) {
    const std::size_t k = axis.second.size();
    if (k != 0 && n > limit / k) return limit;
    n *= k;
  }
  return n;
}

std::vector<DesignPoint> enumerate(const SweepSpec &spec) {
  validate(spec);
  const std::size_t n = sweep_size(spec);
  if (n > spec.cap) {
    fail(ErrorKind::kSize, fmt::format("sweep has {} points, more than the cap of {}", n, spec.cap));
  }
  const std::vector<AccelConfig> seeds = spec.configs.empty() ? std::vector<AccelConfig>{spec.base} : spec.configs;
  std::vector<DesignPoint> points;
  points.reserve(n);
  for (const AccelConfig &seed : seeds) {
    // Odometer over the axes; the last axis varies fastest.
    std::vector<std::size_t> idx(spec.axes.size(), 0);
    while (true) {
      AccelConfig cfg = seed;
      bool settable = true;
      std::string note;
      for (std::size_t a = 0; a < spec.axes.size(); ++a) {
        try {
          set_param(cfg, spec.axes[a].first, spec.axes[a].second[idx[a]]);
        } catch (const Error &e) {
          settable = false;
          note = e.what();
        }
      }
      if (settable) {
        points.push_back(evaluate(cfg, spec));
      } else {
        DesignPoint p;
        p.cfg = cfg;
        p.note = "invalid config: " + note;
        points.push_back(std::move(p));
      }
      bool done = true;
      for (std::size_t a = spec.axes.size(); a-- > 0;) {
        if (++idx[a] < spec.axes[a].second.size()) {
          done = false;
          break;
        }
        idx[a] = 0;
      }
      if (done) break;
    }
  }
  mark_dominance(points, spec.objectives);
  return points;
}

std::vector<double> objective_vector(const DesignPoint &p, const std::vector<Objective> &objectives) {
  std::vector<double> v;
  for (Objective o : objectives) {
    switch (o) {
      case Objective::kLatency:
        v.insert(v.end(), p.metrics.end_to_end_ms.begin(), p.metrics.end_to_end_ms.end());
        break;
      case Objective::kConvLatency:
        v.insert(v.end(), p.metrics.conv_ms.begin(), p.metrics.conv_ms.end());
        break;
      case Objective::kDsp:
        v.push_back(p.metrics.dsp);
        break;
      case Objective::kBram:
        v.push_back(static_cast<double>(p.metrics.bram_bytes));
        break;
      case Objective::kPower:
        v.push_back(p.metrics.power_w);
        break;
    }
  }
  return v;
}

bool dominates(const std::vector<double> &a, const std::vector<double> &b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

bool config_less(const AccelConfig &a, const AccelConfig &b) {
  for (auto key : kConfigKeys) {
    const double x = get_param(a, key);
    const double y = get_param(b, key);
    if (x != y) return x < y;
  }
  return false;
}

void mark_dominance(std::vector<DesignPoint> &points, const std::vector<Objective> &objectives) {
  std::vector<std::size_t> order;
  std::vector<std::vector<double>> vec(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].pareto = false;
    points[i].dominated = false;
    if (!points[i].feasible) continue;
    vec[i] = objective_vector(points[i], objectives);
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (vec[a] != vec[b]) return vec[a] < vec[b];
    return config_less(points[a].cfg, points[b].cfg);
  });
  // A dominator sorts lexicographically before the point it dominates, and
  // some front member dominates every dominated point.
  std::vector<std::size_t> front;
  for (std::size_t i : order) {
    const bool dominated = std::any_of(front.begin(), front.end(),
                                       [&](std::size_t f) { return dominates(vec[f], vec[i]); });
    points[i].dominated = dominated;
    points[i].pareto = !dominated;
    if (!dominated) front.push_back(i);
  }
}

std::vector<DesignPoint> pareto_front(const std::vector<DesignPoint> &points,
                                      const std::vector<Objective> &objectives) {
  std::vector<DesignPoint> marked = points;
  mark_dominance(marked, objectives);
  std::vector<DesignPoint> front;
  for (auto &p : marked) {
    if (p.pareto) front.push_back(std::move(p));
  }
  std::stable_sort(front.begin(), front.end(), [&](const DesignPoint &a, const DesignPoint &b) {
    const auto va = objective_vector(a, objectives);
    const auto vb = objective_vector(b, objectives);
    if (va != vb) return va < vb;
    return config_less(a.cfg, b.cfg);
  });
  return front;
}

std::string to_csv(const std::vector<DesignPoint> &points, const SweepSpec &spec) {
  std::string out;
  for (auto key : kConfigKeys) out += fmt::format("{},", key);
  for (const Workload &w : spec.workloads) out += fmt::format("{0}_conv_ms,{0}_latency_ms,", w.name);
  out += "dsp,bram_bytes,power_w,feasible,pareto\n";
  for (const DesignPoint &p : points) {
    for (auto key : kConfigKeys) out += fmt::format("{},", get_param(p.cfg, key));
    for (std::size_t i = 0; i < spec.workloads.size(); ++i) {
      if (p.evaluated && std::isfinite(p.metrics.conv_ms[i])) {
        out += fmt::format("{:.3f},{:.3f},", p.metrics.conv_ms[i], p.metrics.end_to_end_ms[i]);
      } else {
        out += ",,";
      }
    }
    if (p.evaluated) {
      out += fmt::format("{},{},{:.3f},", p.metrics.dsp, p.metrics.bram_bytes, p.metrics.power_w);
    } else {
      out += ",,,";
    }
    out += fmt::format("{},{}\n", p.feasible ? 1 : 0, p.pareto ? 1 : 0);
  }
  return out;
}

std::string format_summary(const std::vector<DesignPoint> &points, const SweepSpec &spec) {
  std::size_t invalid = 0, feasible = 0;
  for (const auto &p : points) {
    if (!p.evaluated) ++invalid;
    if (p.feasible) ++feasible;
  }
  std::string objectives;
  for (Objective o : spec.objectives) objectives += (objectives.empty() ? "" : ", ") + std::string(to_string(o));
  std::string out = fmt::format("points: {}  invalid: {}  infeasible: {}  feasible: {}\n", points.size(), invalid,
                                points.size() - invalid - feasible, feasible);
  out += fmt::format("objectives: {}\n", objectives);
  const auto front = pareto_front(points, spec.objectives);
  out += fmt::format("pareto front: {} point(s)\n", front.size());
  for (const auto &p : front) {
    out += fmt::format("  FREQ={} ICP={} OCP={} PE_DSP={} APACK={} PPACK={}  dsp={} bram={} power={:.3f}W",
                       p.cfg.freq_mhz, p.cfg.icp, p.cfg.ocp, p.cfg.pe_dsp, p.cfg.apack, p.cfg.ppack,
                       p.metrics.dsp, p.metrics.bram_bytes, p.metrics.power_w);
    for (std::size_t i = 0; i < spec.workloads.size(); ++i) {
      out += fmt::format("  {}={:.3f}ms", spec.workloads[i].name, p.metrics.end_to_end_ms[i]);
    }
    out += "\n";
  }
  return out;
}

SweepSpec parse_sweep(const std::string &text, const std::string &origin, const std::filesystem::path &base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    fail(ErrorKind::kParse, origin + ": " + e.what());
  }
  Reader r(doc, origin);
  SweepSpec spec;
  if (const json *b = r.find("base")) spec.base = read_config_value(*b, AccelConfig{}, origin + ": base", base_dir);
  if (const json *c = r.find("configs")) {
    if (!c->is_array()) r.bad("field 'configs' must be a list");
    for (std::size_t i = 0; i < c->size(); ++i) {
      spec.configs.push_back(read_config_value((*c)[i], spec.base, fmt::format("{}: configs[{}]", origin, i), base_dir));
    }
  }
  if (const json *a = r.find("axes")) {
    if (!a->is_object()) r.bad("field 'axes' must map parameter names to value lists");
    for (const auto &[key, values] : a->items()) {
      if (!known_key(key)) r.bad("axis names unknown parameter '" + key + "'");
      if (!values.is_array()) r.bad("axis " + key + " must be a list of numbers");
      std::vector<double> vs;
      for (const auto &v : values) {
        if (!v.is_number()) r.bad("axis " + key + " must be a list of numbers");
        vs.push_back(v.get<double>());
      }
      spec.axes.emplace_back(key, std::move(vs));
    }
  }
  if (const json *c = r.find("constraints")) {
    Reader cr(*c, origin + ": constraints");
    spec.constraints.max_dsp = limit(cr, "max_dsp");
    spec.constraints.max_bram_bytes = limit(cr, "max_bram_bytes");
    spec.constraints.max_power_w = limit(cr, "max_power_w");
    spec.constraints.max_latency_ms = limit(cr, "max_latency_ms");
    cr.finish();
  }
  const json &objectives = r.need("objectives");
  if (!objectives.is_array()) r.bad("field 'objectives' must be a list");
  for (const auto &o : objectives) {
    if (!o.is_string()) r.bad("field 'objectives' must be a list of names");
    try {
      spec.objectives.push_back(parse_objective(o.get<std::string>()));
    } catch (const Error &e) {
      r.bad(e.what());
    }
  }
  const json &workloads = r.need("workloads");
  if (!workloads.is_array()) r.bad("field 'workloads' must be a list of network files");
  for (const auto &w : workloads) {
    if (!w.is_string()) r.bad("field 'workloads' must be a list of network files");
    std::filesystem::path path = w.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    spec.workloads.push_back({path.stem().string(), graph::load_network(path)});
  }
  if (r.find("calibration")) {
    std::filesystem::path path = r.text("calibration");
    if (path.is_relative()) path = base_dir / path;
    spec.calib = perf::load_calibration(path);
  }
  spec.cap = r.count("cap", spec.cap);
  r.finish();
  try {
    validate(spec);
  } catch (const Error &e) {
    fail(ErrorKind::kValidation, origin + ": " + e.what());
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path &path) {
  return parse_sweep(read_text_file(path), path.string(), path.parent_path());
}

}  // namespace accelsim::dse
