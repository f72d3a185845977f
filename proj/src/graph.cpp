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


#include "accelsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <queue>
#include <set>

#include "accelsim/error.hpp"

namespace accelsim::graph {
namespace {

struct KindName {
  NodeKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {NodeKind::kConv, "conv"},
    {NodeKind::kConcat, "concat"},
    {NodeKind::kMaxPool, "max_pool"},
    {NodeKind::kAvgPool, "avg_pool"},
    {NodeKind::kGlobalAvgPool, "global_avg_pool"},
    {NodeKind::kFullyConnected, "fully_connected"},
    {NodeKind::kSoftmax, "softmax"},
};

[[noreturn]] void invalid(const std::string &id, const std::string &msg) {
  fail(ErrorKind::kValidation, "node " + id + ": " + msg);
}

// Integer mean rounded half away from zero.
std::int8_t rounded_mean(std::int64_t sum, std::int64_t n) {
  const std::int64_t mag = (2 * std::abs(sum) + n) / (2 * n);
  return dfp::saturate_i8(sum < 0 ? -mag : mag);
}

std::vector<double> real_values(const AnyTensor &t) {
  if (const auto *q = std::get_if<QTensor3>(&t)) {
    std::vector<double> v(q->values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dfp::dequantize_value(q->values()[i], q->frac_bits());
    return v;
  }
  const auto &f = std::get<FTensor3>(t);
  return {f.values().begin(), f.values().end()};
}

Shape3 shape_of(const AnyTensor &t) {
  return std::visit([](const auto &v) { return v.shape(); }, t);
}

struct Planned {
  LayerVerdict verdict;
  std::optional<ScheduledLayer> layer;
};

std::map<std::string, Planned> plan_layers(const NetworkGraph &net, const Analysis &a,
                                           const AccelConfig &cfg, const perf::Calibration &calib) {
  std::map<std::string, Planned> out;
  for (std::size_t idx : a.order) {
    const Node &node = net.nodes[idx];
    if (node.kind != NodeKind::kConv) continue;
    const Shape3 in = a.info.at(node.id).in;
    Planned p;
    const bool first = a.first_conv == idx;
    if (reshape_triggers(node.spec, in, cfg, calib, first)) {
      ReshapeTransform t = reshape_layer(node.spec, in, cfg.icp);
      LayerVerdict v = check_layer(t.reshaped, t.reshaped_in, cfg);
      if (v.verdict != Verdict::kUnsupported) {
        v.reshaped = !t.identity();
        p.verdict = v;
        p.layer = ScheduledLayer{t.reshaped_in, t.reshaped, std::move(t), {}};
      }
    }
    if (!p.layer) {
      p.verdict = check_layer(node.spec, in, cfg);
      if (p.verdict.verdict != Verdict::kUnsupported) p.layer = ScheduledLayer{in, node.spec, std::nullopt, {}};
    }
    p.verdict.id = node.id;
    if (p.layer) {
      p.layer->plan = engine::plan_split({node.spec.co, p.layer->spec.filter, p.layer->spec.filter,
                                          p.layer->in.channels},
                                         cfg);
    }
    out.emplace(node.id, std::move(p));
  }
  return out;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  for (const auto &k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

NodeKind parse_node_kind(std::string_view name) {
  for (const auto &k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  fail(ErrorKind::kParse, "unknown node kind '" + std::string(name) + "'");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kFits:
      return "fits";
    case Verdict::kNeedsSplit:
      return "needs split";
    case Verdict::kUnsupported:
      return "unsupported";
  }
  return "?";
}

Analysis analyze(const NetworkGraph &net) {
  if (net.input_shape.height == 0 || net.input_shape.width == 0 || net.input_shape.channels == 0) {
    fail(ErrorKind::kValidation, "network input " + to_string(net.input_shape) + " has an empty extent");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node &n = net.nodes[i];
    if (n.id.empty()) fail(ErrorKind::kValidation, "node " + std::to_string(i) + " has an empty id");
    if (n.id == kInputId) invalid(n.id, "id is reserved for the graph input");
    if (!index.emplace(n.id, i).second) invalid(n.id, "duplicate id");
  }

  std::vector<std::size_t> pending(net.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> consumers(net.nodes.size());
  std::vector<bool> consumed(net.nodes.size(), false);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node &n = net.nodes[i];
    const bool multi = n.kind == NodeKind::kConcat;
    if (n.inputs.empty() || (!multi && n.inputs.size() != 1)) {
      invalid(n.id, std::string(to_string(n.kind)) + (multi ? " needs at least one input" : " takes exactly one input"));
    }
    for (const auto &in : n.inputs) {
      if (in == kInputId) continue;
      const auto it = index.find(in);
      if (it == index.end()) invalid(n.id, "unknown input '" + in + "'");
      ++pending[i];
      consumers[it->second].push_back(i);
      consumed[it->second] = true;
    }
  }

  Analysis a;
  auto by_id = [&](std::size_t l, std::size_t r) { return net.nodes[l].id > net.nodes[r].id; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_id)> ready(by_id);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    a.order.push_back(i);
    for (std::size_t c : consumers[i]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (a.order.size() != net.nodes.size()) {
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
      if (pending[i] != 0) invalid(net.nodes[i].id, "is part of a cycle");
    }
  }

  a.info[std::string(kInputId)] = {net.input_shape, net.input_shape, ValueType::kQuantized, net.input_frac, 0, 0};
  for (std::size_t i : a.order) {
    const Node &n = net.nodes[i];
    std::vector<const NodeInfo *> ins;
    for (const auto &in : n.inputs) ins.push_back(&a.info.at(in));
    const NodeInfo &x = *ins.front();
    NodeInfo info;
    info.in = x.out;
    auto need_quantized = [&] {
      for (const auto *p : ins) {
        if (p->type != ValueType::kQuantized) invalid(n.id, std::string(to_string(n.kind)) + " needs an 8-bit input");
      }
    };
    try {
      switch (n.kind) {
        case NodeKind::kConv:
          need_quantized();
          engine::validate(n.spec);
          dfp::validate({0, 0, 0, n.spec.scheme.output_frac});
          info.out = engine::layer_output_shape(x.out, n.spec);
          info.frac = n.spec.scheme.output_frac;
          if (!a.first_conv && n.inputs.front() == kInputId) a.first_conv = i;
          break;
        case NodeKind::kConcat: {
          need_quantized();
          info.out = {x.out.height, x.out.width, 0};
          for (const auto *p : ins) {
            if (p->out.height != x.out.height || p->out.width != x.out.width) {
              invalid(n.id, "concat inputs differ in spatial size: " + to_string(x.out) + " vs " + to_string(p->out));
            }
            if (p->frac != x.frac) {
              invalid(n.id, "concat inputs differ in frac_bits: " + std::to_string(x.frac) + " vs " +
                                std::to_string(p->frac));
            }
            info.out.channels += p->out.channels;
          }
          info.frac = x.frac;
          info.host_elements = info.out.size();
          break;
        }
        case NodeKind::kMaxPool:
        case NodeKind::kAvgPool:
          need_quantized();
          info.out = engine::pool_output_shape(x.out, n.pool);
          info.frac = x.frac;
          info.host_elements = x.out.size();
          break;
        case NodeKind::kGlobalAvgPool:
          need_quantized();
          info.out = {1, 1, x.out.channels};
          info.frac = x.frac;
          info.host_elements = x.out.size();
          break;
        case NodeKind::kFullyConnected:
          if (n.units == 0) invalid(n.id, "fully_connected needs at least one unit");
          info.out = {1, 1, n.units};
          info.type = ValueType::kReal;
          info.host_elements = n.units;
          info.host_macs = static_cast<std::uint64_t>(x.out.size()) * n.units;
          break;
        case NodeKind::kSoftmax:
          info.out = x.out;
          info.type = ValueType::kReal;
          info.host_elements = x.out.size();
          break;
      }
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::kValidation && std::string_view(e.what()).starts_with("node ")) throw;
      invalid(n.id, e.what());
    }
    a.info[n.id] = info;
  }

  for (std::size_t i : a.order) {
    if (!consumed[i]) a.outputs.push_back(net.nodes[i].id);
  }
  if (net.nodes.empty()) a.outputs.push_back(std::string(kInputId));
  return a;
}

LayerVerdict check_layer(const engine::LayerSpec &spec, const Shape3 &in, const AccelConfig &cfg) {
  LayerVerdict v;
  auto unsupported = [&](std::string reason) {
    v.verdict = Verdict::kUnsupported;
    v.groups = 0;
    v.reason = std::move(reason);
    return v;
  };
  if (spec.filter > cfg.filter_max) {
    return unsupported(fmt::format("{}x{} filter exceeds FILTER_MAX={}", spec.filter, spec.filter, cfg.filter_max));
  }
  const std::size_t row = (in.width + 2 * spec.padding) * in.channels;
  if (row > cfg.win_x_chin_pad_max) {
    return unsupported(fmt::format("padded row of {} bytes exceeds WINxCHIN_PAD_MAX={}", row, cfg.win_x_chin_pad_max));
  }
  const std::size_t window = spec.filter * spec.filter * in.channels;
  if (window > cfg.filterxfilterxchin_max) {
    return unsupported(
        fmt::format("window of {} bytes exceeds FILTERxFILTERxCHIN_MAX={}", window, cfg.filterxfilterxchin_max));
  }
  std::size_t g = 0;
  try {
    g = std::min(spec.co, engine::max_group_size({spec.co, spec.filter, spec.filter, in.channels}, cfg));
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::kConfigTooSmall) throw;
    return unsupported(e.what());
  }
  if (spec.pool) {
    const Shape3 conv_out = engine::conv_output_shape(in, spec);
    if (g > cfg.pch_max) {
      return unsupported(fmt::format("pooled group of {} channels exceeds PCH_MAX={}", g, cfg.pch_max));
    }
    if (conv_out.width * g > cfg.pwin_x_pch_max) {
      return unsupported(fmt::format("pool row of {} bytes exceeds PWINxPCH_MAX={}", conv_out.width * g,
                                     cfg.pwin_x_pch_max));
    }
  }
  v.groups = (spec.co + g - 1) / g;
  v.verdict = v.groups > 1 ? Verdict::kNeedsSplit : Verdict::kFits;
  return v;
}

bool LegalityReport::ok() const {
  return std::none_of(layers.begin(), layers.end(),
                      [](const LayerVerdict &v) { return v.verdict == Verdict::kUnsupported; });
}

std::string LegalityReport::format() const {
  std::string out;
  for (const auto &v : layers) {
    out += fmt::format("{}: {}", v.id, to_string(v.verdict));
    if (v.verdict == Verdict::kNeedsSplit) out += fmt::format(" ({} groups)", v.groups);
    if (v.reshaped) out += " [reshaped]";
    if (!v.reason.empty()) out += ": " + v.reason;
    out += '\n';
  }
  out += fmt::format("network: {}\n", ok() ? "legal" : "illegal");
  return out;
}

LegalityReport validate(const NetworkGraph &net, const AccelConfig &cfg, const perf::Calibration &calib) {
  accelsim::validate(cfg);
  const Analysis a = analyze(net);
  LegalityReport report;
  for (auto &[id, p] : plan_layers(net, a, cfg, calib)) report.layers.push_back(p.verdict);
  // Report in execution order.
  std::map<std::string, std::size_t> rank;
  for (std::size_t k = 0; k < a.order.size(); ++k) rank[net.nodes[a.order[k]].id] = k;
  std::sort(report.layers.begin(), report.layers.end(),
            [&](const LayerVerdict &l, const LayerVerdict &r) { return rank[l.id] < rank[r.id]; });
  return report;
}

Schedule schedule(const NetworkGraph &net, const AccelConfig &cfg, const perf::Calibration &calib) {
  accelsim::validate(cfg);
  Schedule s;
  s.analysis = analyze(net);
  auto planned = plan_layers(net, s.analysis, cfg, calib);
  LegalityReport report;
  for (std::size_t idx : s.analysis.order) {
    const auto it = planned.find(net.nodes[idx].id);
    if (it != planned.end()) report.layers.push_back(it->second.verdict);
  }
  if (!report.ok()) fail(ErrorKind::kValidation, "network " + net.name + " does not fit the configuration\n" + report.format());
  for (auto &[id, p] : planned) s.layers.emplace(id, std::move(*p.layer));
  return s;
}

PerfReport network_perf(const Schedule &sched, const NetworkGraph &net, const AccelConfig &cfg,
                        const perf::Calibration &calib) {
  PerfReport r;
  r.network = net.name;
  r.freq_mhz = cfg.freq_mhz;
  for (std::size_t idx : sched.analysis.order) {
    const Node &node = net.nodes[idx];
    const NodeInfo &info = sched.analysis.info.at(node.id);
    NodePerf np;
    np.id = node.id;
    np.kind = node.kind;
    if (node.kind == NodeKind::kConv) {
      const ScheduledLayer &l = sched.layers.at(node.id);
      np.cycles = perf::conv_cycles(l.spec, l.in, l.plan, cfg, calib);
      if (l.reshape && !l.reshape->identity()) {
        np.reshaped = true;
        np.host_ms = static_cast<double>(l.reshape->host_elements()) * calib.host_ns_per_element / 1e6;
      }
      const Shape3 out = engine::conv_output_shape(info.in, node.spec);
      r.conv_macs += static_cast<std::uint64_t>(out.height) * out.width * node.spec.co * node.spec.filter *
                     node.spec.filter * info.in.channels;
      r.conv_ms += np.cycles.layer_ms();
    } else {
      np.host_ms = (static_cast<double>(info.host_elements) * calib.host_ns_per_element +
                    static_cast<double>(info.host_macs) * calib.host_ns_per_mac) /
                   1e6;
    }
    r.host_ms += np.host_ms;
    r.nodes.push_back(np);
  }
  r.mac_bound_ms = perf::mac_bound_ms(r.conv_macs, cfg);
  r.end_to_end_ms = r.conv_ms + r.host_ms;
  return r;
}

PerfReport network_perf(const NetworkGraph &net, const AccelConfig &cfg, const perf::Calibration &calib) {
  return network_perf(schedule(net, cfg, calib), net, cfg, calib);
}

std::string format_report(const PerfReport &r, const std::optional<perf::ResourceReport> &res) {
  std::string out = fmt::format("network: {}\nfreq_mhz: {:.3f}\n", r.network, r.freq_mhz);
  out += fmt::format("{:<24} {:<16} {:>7} {:>12} {:>12} {:>10} {:>10} {:>10} {:>12} {:>10}\n", "node", "kind",
                     "groups", "compute", "transfer", "param", "writeback", "pool", "cycles", "ms");
  for (const auto &n : r.nodes) {
    const auto &c = n.cycles;
    if (n.kind == NodeKind::kConv) {
      out += fmt::format("{:<24} {:<16} {:>7} {:>12} {:>12} {:>10} {:>10} {:>10} {:>12} {:>10.3f}\n", n.id,
                         n.reshaped ? "conv (reshaped)" : "conv", c.restreams, c.compute_cycles,
                         c.transfer_in_cycles, c.param_cycles, c.writeback_cycles, c.pool_cycles, c.total_cycles,
                         n.total_ms());
    } else {
      out += fmt::format("{:<24} {:<16} {:>7} {:>12} {:>12} {:>10} {:>10} {:>10} {:>12} {:>10.3f}\n", n.id,
                         to_string(n.kind), "host", "-", "-", "-", "-", "-", "-", n.total_ms());
    }
  }
  out += fmt::format("conv_macs: {}\nmac_bound_ms: {:.3f}\nconv_ms: {:.3f}\nhost_ms: {:.3f}\nend_to_end_ms: {:.3f}\n",
                     r.conv_macs, r.mac_bound_ms, r.conv_ms, r.host_ms, r.end_to_end_ms);
  if (res) {
    out += fmt::format("dsp: {:.0f}\nbram_bytes: {}\npower_w: {:.3f}\n", res->dsp, res->bram_bytes, res->power_w);
  }
  return out;
}

ParamStore load_params(const NetworkGraph &net, const std::filesystem::path &base_dir) {
  ParamStore store;
  for (const Node &n : net.nodes) {
    if (n.kind != NodeKind::kConv && n.kind != NodeKind::kFullyConnected) continue;
    if (n.params.empty()) fail(ErrorKind::kLoad, "node " + n.id + ": no params file given");
    const std::filesystem::path path = base_dir / n.params;
    try {
      store.emplace(n.id, load_filter_bank(path));
    } catch (const Error &e) {
      fail(ErrorKind::kLoad, "node " + n.id + ": " + e.what());
    }
  }
  return store;
}

QTensor3 host_avg_pool(const QTensor3 &t, const engine::PoolSpec &pool) {
  const Shape3 out = engine::pool_output_shape(t.shape(), pool);
  QTensor3 r(out, t.frac_bits());
  const auto n = static_cast<std::int64_t>(pool.window * pool.window);
  for (std::size_t y = 0; y < out.height; ++y) {
    for (std::size_t x = 0; x < out.width; ++x) {
      for (std::size_t c = 0; c < out.channels; ++c) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < pool.window; ++i) {
          for (std::size_t j = 0; j < pool.window; ++j) sum += t.at(y * pool.stride + i, x * pool.stride + j, c);
        }
        r.mutable_at(y, x, c) = rounded_mean(sum, n);
      }
    }
  }
  return r;
}

QTensor3 host_global_avg_pool(const QTensor3 &t) {
  const Shape3 s = t.shape();
  QTensor3 r({1, 1, s.channels}, t.frac_bits());
  std::vector<std::int64_t> sums(s.channels, 0);
  for (std::size_t y = 0; y < s.height; ++y) {
    for (std::size_t x = 0; x < s.width; ++x) {
      const auto px = t.pixel(y, x);
      for (std::size_t c = 0; c < s.channels; ++c) sums[c] += px[c];
    }
  }
  const auto n = static_cast<std::int64_t>(s.height * s.width);
  for (std::size_t c = 0; c < s.channels; ++c) r.mutable_at(0, 0, c) = rounded_mean(sums[c], n);
  return r;
}

FTensor3 host_fully_connected(const AnyTensor &in, const QFilterBank &bank, bool relu) {
  const std::vector<double> x = real_values(in);
  const FilterGeom g = bank.geom();
  if (g.fh != 1 || g.fw != 1 || g.ci != x.size()) {
    fail(ErrorKind::kShape, "fully connected bank " + to_string(g) + " does not match " +
                                std::to_string(x.size()) + " inputs");
  }
  std::vector<float> out(g.co);
  for (std::size_t o = 0; o < g.co; ++o) {
    const auto w = bank.tap(o, 0, 0);
    double acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<double>(w[i]) * x[i];
    acc = std::ldexp(acc, -bank.weight_frac_bits()) + dfp::dequantize_value(bank.bias(o), bank.bias_frac_bits());
    out[o] = static_cast<float>(relu ? std::max(acc, 0.0) : acc);
  }
  return FTensor3({1, 1, g.co}, std::move(out));
}

FTensor3 host_softmax(const AnyTensor &in) {
  const std::vector<double> x = real_values(in);
  const double peak = *std::max_element(x.begin(), x.end());
  double total = 0;
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) total += e[i] = std::exp(x[i] - peak);
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<float>(e[i] / total);
  return FTensor3(shape_of(in), std::move(out));
}

RunResult run_network(const NetworkGraph &net, const AccelConfig &cfg, const QTensor3 &input,
                      const ParamStore &params, const perf::Calibration &calib,
                      const std::vector<std::string> &requested) {
  const Schedule sched = schedule(net, cfg, calib);
  if (input.shape() != net.input_shape) {
    fail(ErrorKind::kValidation, "input tensor " + to_string(input.shape()) + " does not match network input " +
                                     to_string(net.input_shape));
  }
  if (input.frac_bits() != net.input_frac) {
    fail(ErrorKind::kValidation, "input tensor frac_bits " + std::to_string(input.frac_bits()) +
                                     " does not match network frac_bits " + std::to_string(net.input_frac));
  }
  std::set<std::string> keep(sched.analysis.outputs.begin(), sched.analysis.outputs.end());
  for (const auto &id : requested) {
    if (!sched.analysis.info.contains(id)) fail(ErrorKind::kValidation, "requested output '" + id + "' is not a node");
    keep.insert(id);
  }
  for (const Node &n : net.nodes) {
    if (n.emit) keep.insert(n.id);
  }
  auto bank_for = [&](const Node &n) -> const QFilterBank & {
    const auto it = params.find(n.id);
    if (it == params.end()) fail(ErrorKind::kLoad, "node " + n.id + ": no parameters loaded");
    return it->second;
  };

  const engine::Tiling tiling{cfg.icp, cfg.ocp};
  std::map<std::string, AnyTensor> values;
  values.emplace(std::string(kInputId), input);
  for (std::size_t idx : sched.analysis.order) {
    const Node &n = net.nodes[idx];
    const AnyTensor &first = values.at(n.inputs.front());
    auto quantized = [&]() -> const QTensor3 & { return std::get<QTensor3>(first); };
    try {
      switch (n.kind) {
        case NodeKind::kConv: {
          const QTensor3 &x = quantized();
          const QFilterBank &bank = bank_for(n);
          const FilterGeom expect{n.spec.co, n.spec.filter, n.spec.filter, x.shape().channels};
          if (bank.geom() != expect) {
            fail(ErrorKind::kLoad, "node " + n.id + ": parameters " + to_string(bank.geom()) + " expected " +
                                       to_string(expect));
          }
          const ScheduledLayer &l = sched.layers.at(n.id);
          const dfp::DfpScheme scheme{x.frac_bits(), bank.weight_frac_bits(), bank.bias_frac_bits(),
                                      n.spec.scheme.output_frac};
          engine::LayerSpec spec = l.spec;
          spec.scheme = scheme;
          if (l.reshape && !l.reshape->identity()) {
            values.emplace(n.id, engine::exec_with_plan(l.reshape->apply_input(x), l.reshape->apply_weights(bank),
                                                        spec, l.plan, tiling));
          } else {
            values.emplace(n.id, engine::exec_with_plan(x, bank, spec, l.plan, tiling));
          }
          break;
        }
        case NodeKind::kConcat: {
          std::vector<QTensor3> parts;
          for (const auto &in : n.inputs) parts.push_back(std::get<QTensor3>(values.at(in)));
          values.emplace(n.id, engine::concat_channels(parts));
          break;
        }
        case NodeKind::kMaxPool:
          values.emplace(n.id, engine::mpool_exec(quantized(), n.pool, cfg.apack));
          break;
        case NodeKind::kAvgPool:
          values.emplace(n.id, host_avg_pool(quantized(), n.pool));
          break;
        case NodeKind::kGlobalAvgPool:
          values.emplace(n.id, host_global_avg_pool(quantized()));
          break;
        case NodeKind::kFullyConnected: {
          const QFilterBank &bank = bank_for(n);
          if (bank.co() != n.units) {
            fail(ErrorKind::kLoad, "node " + n.id + ": parameters have " + std::to_string(bank.co()) +
                                       " outputs, expected " + std::to_string(n.units));
          }
          values.emplace(n.id, host_fully_connected(first, bank, n.relu));
          break;
        }
        case NodeKind::kSoftmax:
          values.emplace(n.id, host_softmax(first));
          break;
      }
    } catch (const Error &e) {
      if (std::string_view(e.what()).starts_with("node ")) throw;
      fail(e.kind(), "node " + n.id + ": " + e.what());
    }
  }

  RunResult result;
  for (const auto &id : keep) result.outputs.emplace(id, values.at(id));
  result.perf = network_perf(sched, net, cfg, calib);
  return result;
}

}  // namespace accelsim::graph
