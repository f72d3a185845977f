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

// CNN graphs: convolution layers run on the accelerator model, everything
// else runs as host reference code.

#ifndef ACCELSIM_GRAPH_HPP_
#define ACCELSIM_GRAPH_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accelsim/config.hpp"
#include "accelsim/engine.hpp"
#include "accelsim/perf.hpp"
#include "accelsim/reshape.hpp"
#include "accelsim/tensor_io.hpp"

namespace accelsim::graph {

inline constexpr std::string_view kInputId = "input";

enum class NodeKind {
  kConv,
  kConcat,
  kMaxPool,
  kAvgPool,
  kGlobalAvgPool,
  kFullyConnected,
  kSoftmax,
};

std::string_view to_string(NodeKind kind);
/// kParse for unknown names.
NodeKind parse_node_kind(std::string_view name);
inline bool is_accelerated(NodeKind kind) { return kind == NodeKind::kConv; }

struct Node {
  std::string id;
  NodeKind kind = NodeKind::kConv;
  std::vector<std::string> inputs;
  // kConv: geometry, flags and scheme.output_frac. The input, weight and
  // bias exponents are filled from the producer and the parameter file.
  engine::LayerSpec spec;
  std::size_t units = 0;   // kFullyConnected
  bool relu = false;       // kFullyConnected
  engine::PoolSpec pool;   // kMaxPool, kAvgPool
  std::string params;      // kConv, kFullyConnected; relative to the graph file
  bool emit = false;
};

struct NetworkGraph {
  std::string name;
  Shape3 input_shape;
  int input_frac = 0;
  std::vector<Node> nodes;
};

enum class ValueType { kQuantized, kReal };

struct NodeInfo {
  Shape3 in;   // shape of the first input
  Shape3 out;
  ValueType type = ValueType::kQuantized;
  int frac = 0;  // meaningful for kQuantized
  std::uint64_t host_elements = 0;
  std::uint64_t host_macs = 0;
};

struct Analysis {
  std::vector<std::size_t> order;  // node indices, topological, ties by id
  std::map<std::string, NodeInfo> info;
  std::vector<std::string> outputs;  // sinks, in topological order
  std::optional<std::size_t> first_conv;  // first conv fed by the graph input
};

/// Structural checks and shape inference; throws kValidation.
Analysis analyze(const NetworkGraph &net);

enum class Verdict { kFits, kNeedsSplit, kUnsupported };
std::string_view to_string(Verdict v);

struct LayerVerdict {
  std::string id;
  Verdict verdict = Verdict::kFits;
  std::size_t groups = 1;
  bool reshaped = false;
  std::string reason;  // names the violated budget when unsupported
};

struct LegalityReport {
  std::vector<LayerVerdict> layers;

  bool ok() const;
  std::string format() const;
};

/// Budget check of one conv layer as it would be executed.
LayerVerdict check_layer(const engine::LayerSpec &spec, const Shape3 &in, const AccelConfig &cfg);

/// Per-layer verdicts after scheduling decisions (reshaping). Structural
/// problems still throw kValidation.
LegalityReport validate(const NetworkGraph &net, const AccelConfig &cfg,
                        const perf::Calibration &calib = {});

struct ScheduledLayer {
  Shape3 in;                // as executed (after reshape)
  engine::LayerSpec spec;   // as executed (after reshape)
  std::optional<ReshapeTransform> reshape;
  engine::SplitPlan plan;
};

struct Schedule {
  Analysis analysis;
  std::map<std::string, ScheduledLayer> layers;  // conv nodes only
};

/// kValidation with the layer-by-layer explanation when any layer is
/// unsupported.
Schedule schedule(const NetworkGraph &net, const AccelConfig &cfg,
                  const perf::Calibration &calib);

struct NodePerf {
  std::string id;
  NodeKind kind = NodeKind::kConv;
  bool reshaped = false;
  perf::LayerCycles cycles;  // accelerated nodes
  double host_ms = 0;        // host ops, and the reshape of a conv's input

  double total_ms() const { return cycles.layer_ms() + host_ms; }
};

struct PerfReport {
  std::string network;
  double freq_mhz = 0;
  std::vector<NodePerf> nodes;
  std::uint64_t conv_macs = 0;
  double mac_bound_ms = 0;
  double conv_ms = 0;
  double host_ms = 0;
  double end_to_end_ms = 0;
};

PerfReport network_perf(const NetworkGraph &net, const AccelConfig &cfg,
                        const perf::Calibration &calib);
PerfReport network_perf(const Schedule &sched, const NetworkGraph &net,
                        const AccelConfig &cfg, const perf::Calibration &calib);

std::string format_report(const PerfReport &report,
                          const std::optional<perf::ResourceReport> &resources = std::nullopt);

/// Parameters by node id. Fully connected layers store [units][1][1][in]
/// banks whose values are used in the real domain.
using ParamStore = std::map<std::string, QFilterBank>;

/// Loads every conv and fully connected node's bank from `params` relative
/// to `base_dir`; kLoad naming the node and file on failure.
ParamStore load_params(const NetworkGraph &net, const std::filesystem::path &base_dir);

struct RunResult {
  std::map<std::string, AnyTensor> outputs;
  PerfReport perf;
};

/// Executes in topological order and returns the sinks, every node marked
/// emit, and every id in `requested`.
RunResult run_network(const NetworkGraph &net, const AccelConfig &cfg, const QTensor3 &input,
                      const ParamStore &params, const perf::Calibration &calib = {},
                      const std::vector<std::string> &requested = {});

// Host reference operators.
QTensor3 host_avg_pool(const QTensor3 &t, const engine::PoolSpec &pool);
QTensor3 host_global_avg_pool(const QTensor3 &t);
FTensor3 host_fully_connected(const AnyTensor &in, const QFilterBank &bank, bool relu);
FTensor3 host_softmax(const AnyTensor &in);

}  // namespace accelsim::graph

#endif  // ACCELSIM_GRAPH_HPP_
