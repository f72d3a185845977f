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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>

#include "accelsim/error.hpp"
#include "accelsim/graph.hpp"
#include "accelsim/graph_io.hpp"
#include "oracles.hpp"

namespace accelsim::graph {
namespace {

Node conv_node(std::string id, std::string input, std::size_t filter, std::size_t stride, std::size_t pad,
               std::size_t co, int out_frac, bool relu = false,
               std::optional<engine::PoolSpec> pool = std::nullopt) {
  Node n;
  n.id = std::move(id);
  n.kind = NodeKind::kConv;
  n.inputs = {std::move(input)};
  n.spec.filter = filter;
  n.spec.stride = stride;
  n.spec.padding = pad;
  n.spec.co = co;
  n.spec.relu = relu;
  n.spec.pool = pool;
  n.spec.scheme.output_frac = out_frac;
  n.params = n.id + ".qfb";
  return n;
}

Node host_node(std::string id, NodeKind kind, std::vector<std::string> inputs) {
  Node n;
  n.id = std::move(id);
  n.kind = kind;
  n.inputs = std::move(inputs);
  return n;
}

AccelConfig roomy() {
  AccelConfig cfg = implemented_config(4);
  cfg.chout_x_f_x_f_x_chin_max = 1 << 22;
  cfg.chout_max = 4096;
  cfg.pch_max = 4096;
  cfg.pwin_x_pch_max = 1 << 22;
  return cfg;
}

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  return ErrorKind::kIo;
}

std::string message_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.what();
  }
  return "";
}

engine::LayerSpec with_scheme(engine::LayerSpec spec, int in_frac, const QFilterBank &b) {
  spec.scheme = {in_frac, b.weight_frac_bits(), b.bias_frac_bits(), spec.scheme.output_frac};
  return spec;
}

const QTensor3 &q(const AnyTensor &t) { return std::get<QTensor3>(t); }

TEST(AnalyzeTest, ShapeInferenceAndOrder) {
  NetworkGraph net{"t", {20, 20, 8}, 4, {}};
  net.nodes.push_back(host_node("cat", NodeKind::kConcat, {"b", "a"}));
  net.nodes.push_back(conv_node("b", "stem", 1, 1, 0, 6, 3));
  net.nodes.push_back(conv_node("a", "stem", 3, 1, 1, 5, 3));
  net.nodes.push_back(conv_node("stem", "input", 3, 2, 0, 16, 3, true, engine::PoolSpec{2, 2}));
  const Analysis a = analyze(net);
  std::vector<std::string> ids;
  for (std::size_t i : a.order) ids.push_back(net.nodes[i].id);
  EXPECT_EQ(ids, (std::vector<std::string>{"stem", "a", "b", "cat"}));
  EXPECT_EQ(a.info.at("stem").out, (Shape3{4, 4, 16}));
  EXPECT_EQ(a.info.at("cat").out, (Shape3{4, 4, 11}));
  EXPECT_EQ(a.info.at("cat").host_elements, 4u * 4 * 11);
  EXPECT_EQ(a.outputs, (std::vector<std::string>{"cat"}));
  EXPECT_EQ(a.first_conv, std::optional<std::size_t>(3));
}

TEST(AnalyzeTest, StructuralErrors) {
  auto base = [] {
    NetworkGraph net{"t", {8, 8, 4}, 4, {}};
    net.nodes.push_back(conv_node("c1", "input", 3, 1, 1, 4, 4));
    return net;
  };
  auto check = [&](const std::function<void(NetworkGraph &)> &edit, const std::string &needle) {
    NetworkGraph net = base();
    edit(net);
    const std::string msg = message_of([&] { analyze(net); });
    EXPECT_NE(msg.find(needle), std::string::npos) << msg;
    EXPECT_EQ(kind_of([&] { analyze(net); }), ErrorKind::kValidation);
  };
  check([](NetworkGraph &n) { n.nodes.push_back(n.nodes[0]); }, "duplicate");
  check([](NetworkGraph &n) { n.nodes[0].inputs = {"nope"}; }, "unknown input 'nope'");
  check([](NetworkGraph &n) { n.nodes[0].id = "input"; }, "reserved");
  check([](NetworkGraph &n) {
    n.nodes.push_back(conv_node("x", "y", 1, 1, 0, 4, 4));
    n.nodes.push_back(conv_node("y", "x", 1, 1, 0, 4, 4));
  }, "cycle");
  check([](NetworkGraph &n) { n.nodes[0].spec.filter = 5; }, "node c1");
  check([](NetworkGraph &n) {
    n.nodes.push_back(conv_node("c2", "c1", 1, 1, 0, 4, 5));
    n.nodes.push_back(host_node("cat", NodeKind::kConcat, {"c1", "c2"}));
  }, "frac_bits");
  check([](NetworkGraph &n) {
    Node fc = host_node("fc", NodeKind::kFullyConnected, {"c1"});
    fc.units = 3;
    n.nodes.push_back(fc);
    n.nodes.push_back(conv_node("c2", "fc", 1, 1, 0, 4, 5));
  }, "8-bit input");
  check([](NetworkGraph &n) { n.nodes[0].inputs.push_back("input"); }, "exactly one input");
  check([](NetworkGraph &n) { n.nodes[0].inputs.clear(); }, "exactly one input");
  check([](NetworkGraph &n) { n.input_shape.channels = 0; }, "empty extent");
}

TEST(AnalyzeTest, EmptyNetworkOutputsItsInput) {
  const Analysis a = analyze({"empty", {4, 4, 3}, 2, {}});
  EXPECT_EQ(a.outputs, (std::vector<std::string>{"input"}));
}

TEST(ValidateTest, TinyNetUnderHugeConfigFits) {
  NetworkGraph net{"t", {8, 8, 16}, 4, {conv_node("c", "input", 3, 1, 1, 8, 4)}};
  const LegalityReport r = validate(net, roomy());
  ASSERT_EQ(r.layers.size(), 1u);
  EXPECT_EQ(r.layers[0].verdict, Verdict::kFits);
  EXPECT_TRUE(r.ok());
}

TEST(ValidateTest, OversizedSingleChannelIsUnsupportedAndNamesBudget) {
  AccelConfig cfg = roomy();
  cfg.chout_x_f_x_f_x_chin_max = 9 * 16 - 1;
  NetworkGraph net{"t", {8, 8, 16}, 4, {conv_node("c", "input", 3, 1, 1, 8, 4)}};
  const LegalityReport r = validate(net, cfg);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.layers[0].verdict, Verdict::kUnsupported);
  EXPECT_NE(r.format().find("CHOUTxFILTERxFILTERxCHIN_MAX"), std::string::npos);
  const std::string msg = message_of([&] { schedule(net, cfg, {}); });
  EXPECT_NE(msg.find("c: unsupported"), std::string::npos) << msg;
}

TEST(ValidateTest, EveryBudgetIsNamed) {
  const NetworkGraph net{"t", {8, 8, 16}, 4, {conv_node("c", "input", 3, 1, 1, 8, 4, false, engine::PoolSpec{2, 2})}};
  auto reason = [&](const std::function<void(AccelConfig &)> &edit) {
    AccelConfig cfg = roomy();
    edit(cfg);
    return validate(net, cfg).layers.at(0).reason;
  };
  EXPECT_NE(reason([](AccelConfig &c) { c.filter_max = 1; }).find("FILTER_MAX"), std::string::npos);
  EXPECT_NE(reason([](AccelConfig &c) { c.win_x_chin_pad_max = 100; }).find("WINxCHIN_PAD_MAX"), std::string::npos);
  EXPECT_NE(reason([](AccelConfig &c) { c.filterxfilterxchin_max = 100; }).find("FILTERxFILTERxCHIN_MAX"),
            std::string::npos);
  EXPECT_NE(reason([](AccelConfig &c) { c.pch_max = 4; }).find("PCH_MAX"), std::string::npos);
  EXPECT_NE(reason([](AccelConfig &c) { c.pwin_x_pch_max = 32; }).find("PWINxPCH_MAX"), std::string::npos);
}

TEST(ValidateTest, VerdictsAgreeWithPlanSplit) {
  gen::Rng rng(21);
  for (int iter = 0; iter < 300; ++iter) {
    AccelConfig cfg = roomy();
    cfg.chout_max = gen::uniform(rng, 1, 64);
    cfg.chout_x_f_x_f_x_chin_max = gen::uniform(rng, 1, 4000);
    const std::size_t filter = gen::uniform(rng, 0, 1) ? 3 : 1;
    const Shape3 in{8, 8, static_cast<std::size_t>(gen::uniform(rng, 1, 64))};
    NetworkGraph net{"r", in, 4, {conv_node("c", "input", filter, 1, filter == 3, gen::uniform(rng, 1, 64), 4)}};
    const LayerVerdict v = validate(net, cfg).layers.at(0);
    const FilterGeom g{net.nodes[0].spec.co, filter, filter, in.channels};
    try {
      const engine::SplitPlan plan = engine::plan_split(g, cfg);
      ASSERT_NE(v.verdict, Verdict::kUnsupported);
      ASSERT_EQ(v.groups, plan.restreams());
      ASSERT_EQ(v.verdict == Verdict::kNeedsSplit, plan.restreams() > 1);
      // Soundness: a legal layer executes.
      ParamStore params{{"c", gen::bank(rng, g, 5, 5)}};
      EXPECT_NO_THROW(run_network(net, cfg, gen::tensor(rng, in, 4), params, {}));
    } catch (const Error &e) {
      ASSERT_EQ(e.kind(), ErrorKind::kConfigTooSmall);
      ASSERT_EQ(v.verdict, Verdict::kUnsupported);
    }
  }
}

TEST(ValidateTest, FirstLayerIsReshapedWhenTriggered) {
  NetworkGraph net{"t", {33, 33, 3}, 6, {conv_node("c1", "input", 3, 2, 0, 16, 4), conv_node("c2", "c1", 3, 2, 0, 16, 4)}};
  const AccelConfig cfg = implemented_config(1);
  const LegalityReport r = validate(net, cfg);
  EXPECT_TRUE(r.layers[0].reshaped);
  EXPECT_FALSE(r.layers[1].reshaped);
  const Schedule s = schedule(net, cfg, {});
  EXPECT_EQ(s.layers.at("c1").in, (Shape3{16, 16, 32}));
  EXPECT_EQ(s.layers.at("c1").spec.filter, 1u);
  EXPECT_FALSE(s.layers.at("c2").reshape.has_value());
  perf::Calibration off;
  off.reshape_first_layer = false;
  EXPECT_FALSE(validate(net, cfg, off).layers[0].reshaped);
}

class RunTest : public ::testing::Test {
 protected:
  gen::Rng rng{33};
};

TEST_F(RunTest, SingleConvEqualsEngine) {
  const AccelConfig cfg = implemented_config(2);
  NetworkGraph net{"one", {9, 9, 20}, 5, {conv_node("c", "input", 3, 1, 1, 24, 4, true, engine::PoolSpec{3, 2})}};
  const QFilterBank b = gen::bank(rng, {24, 3, 3, 20}, 7, 5);
  const QTensor3 x = gen::tensor(rng, {9, 9, 20}, 5);
  const RunResult r = run_network(net, cfg, x, {{"c", b}});
  ASSERT_EQ(r.outputs.size(), 1u);
  EXPECT_EQ(q(r.outputs.at("c")), engine::accel_exec(x, b, with_scheme(net.nodes[0].spec, 5, b)));
}

TEST_F(RunTest, ReshapedFirstLayerEqualsOriginalLayer) {
  const AccelConfig cfg = implemented_config(1);
  NetworkGraph net{"r", {15, 15, 3}, 6, {conv_node("c", "input", 3, 2, 1, 12, 4, true, engine::PoolSpec{2, 2})}};
  const QFilterBank b = gen::bank(rng, {12, 3, 3, 3}, 6, 5);
  const QTensor3 x = gen::tensor(rng, {15, 15, 3}, 6);
  const RunResult r = run_network(net, cfg, x, {{"c", b}});
  EXPECT_TRUE(r.perf.nodes.at(0).reshaped);
  EXPECT_EQ(q(r.outputs.at("c")), oracle::layer(x, b, with_scheme(net.nodes[0].spec, 6, b)));
}

TEST_F(RunTest, ConcatOfIdenticalBranchesDuplicatesChannels) {
  NetworkGraph net{"dup", {6, 6, 8}, 4, {}};
  net.nodes.push_back(conv_node("a", "input", 1, 1, 0, 5, 4));
  net.nodes.push_back(conv_node("b", "input", 1, 1, 0, 5, 4));
  net.nodes.push_back(host_node("cat", NodeKind::kConcat, {"a", "b"}));
  const QFilterBank w = gen::bank(rng, {5, 1, 1, 8}, 6, 6);
  const RunResult r = run_network(net, roomy(), gen::tensor(rng, {6, 6, 8}, 4), {{"a", w}, {"b", w}});
  const QTensor3 &out = q(r.outputs.at("cat"));
  ASSERT_EQ(out.shape(), (Shape3{6, 6, 10}));
  for (std::size_t y = 0; y < 6; ++y)
    for (std::size_t x = 0; x < 6; ++x)
      for (std::size_t c = 0; c < 5; ++c) ASSERT_EQ(out.at(y, x, c), out.at(y, x, c + 5));
}

// conv -> conv -> max_pool, concatenated with a parallel pooled conv.
struct FourNode {
  NetworkGraph net;
  ParamStore params;
  QTensor3 input;
  QTensor3 expected;
};

FourNode four_node(gen::Rng &rng) {
  FourNode f;
  const Shape3 in{static_cast<std::size_t>(gen::uniform(rng, 6, 14)),
                  static_cast<std::size_t>(gen::uniform(rng, 6, 14)),
                  static_cast<std::size_t>(gen::uniform(rng, 1, 40))};
  const int f_in = gen::uniform(rng, 0, 7), f1 = gen::uniform(rng, 0, 7), f2 = gen::uniform(rng, 0, 7);
  f.net = {"four", in, f_in, {}};
  const std::size_t co1 = gen::uniform(rng, 1, 40), co2 = gen::uniform(rng, 1, 40), co3 = gen::uniform(rng, 1, 40);
  f.net.nodes.push_back(conv_node("c1", "input", 3, 1, 1, co1, f1, true));
  f.net.nodes.push_back(conv_node("c2", "c1", 3, 1, 1, co2, f2, gen::uniform(rng, 0, 1)));
  Node pool = host_node("p", NodeKind::kMaxPool, {"c2"});
  pool.pool = {2, 2};
  f.net.nodes.push_back(pool);
  f.net.nodes.push_back(conv_node("c3", "c1", 1, 1, 0, co3, f2, false, engine::PoolSpec{2, 2}));
  f.net.nodes.push_back(host_node("cat", NodeKind::kConcat, {"p", "c3"}));
  f.input = gen::tensor(rng, in, f_in);
  f.params["c1"] = gen::bank(rng, {co1, 3, 3, in.channels}, gen::uniform(rng, 0, 8), gen::uniform(rng, 0, 8));
  f.params["c2"] = gen::bank(rng, {co2, 3, 3, co1}, gen::uniform(rng, 0, 8), gen::uniform(rng, 0, 8));
  f.params["c3"] = gen::bank(rng, {co3, 1, 1, co1}, gen::uniform(rng, 0, 8), gen::uniform(rng, 0, 8));

  const QTensor3 y1 = oracle::layer(f.input, f.params["c1"], with_scheme(f.net.nodes[0].spec, f_in, f.params["c1"]));
  const QTensor3 y2 = oracle::layer(y1, f.params["c2"], with_scheme(f.net.nodes[1].spec, f1, f.params["c2"]));
  const QTensor3 yp = oracle::max_pool(y2, 2, 2);
  const QTensor3 y3 = oracle::layer(y1, f.params["c3"], with_scheme(f.net.nodes[3].spec, f1, f.params["c3"]));
  const std::size_t c = yp.channels() + y3.channels();
  f.expected = QTensor3({yp.height(), yp.width(), c}, f2);
  for (std::size_t y = 0; y < yp.height(); ++y)
    for (std::size_t x = 0; x < yp.width(); ++x) {
      for (std::size_t k = 0; k < yp.channels(); ++k) f.expected.mutable_at(y, x, k) = yp.at(y, x, k);
      for (std::size_t k = 0; k < y3.channels(); ++k) f.expected.mutable_at(y, x, yp.channels() + k) = y3.at(y, x, k);
    }
  return f;
}

TEST_F(RunTest, RandomFourNodeNetsMatchOracleComposition) {
  for (int iter = 0; iter < 40; ++iter) {
    const FourNode f = four_node(rng);
    AccelConfig cfg = implemented_config(1 + iter % 6);
    const RunResult r = run_network(f.net, cfg, f.input, f.params);
    ASSERT_EQ(q(r.outputs.at("cat")), f.expected) << iter;
  }
}

TEST_F(RunTest, DeclarationOrderNeverChangesOutputs) {
  for (int iter = 0; iter < 10; ++iter) {
    FourNode f = four_node(rng);
    const RunResult base = run_network(f.net, implemented_config(3), f.input, f.params, {}, {"c1", "c2"});
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(f.net.nodes.begin(), f.net.nodes.end(), rng);
      const RunResult r = run_network(f.net, implemented_config(3), f.input, f.params, {}, {"c1", "c2"});
      ASSERT_EQ(r.outputs, base.outputs);
      ASSERT_EQ(format_report(r.perf), format_report(base.perf));
    }
  }
}

TEST_F(RunTest, IntermediateEqualsPrefixGraph) {
  const FourNode f = four_node(rng);
  const RunResult full = run_network(f.net, implemented_config(2), f.input, f.params, {}, {"c2"});
  NetworkGraph prefix = f.net;
  prefix.nodes.resize(2);
  const RunResult pre = run_network(prefix, implemented_config(2), f.input, f.params);
  EXPECT_EQ(q(full.outputs.at("c2")), q(pre.outputs.at("c2")));
  EXPECT_EQ(full.outputs.size(), 2u);

  NetworkGraph flagged = f.net;
  flagged.nodes[0].emit = true;
  EXPECT_TRUE(run_network(flagged, implemented_config(2), f.input, f.params).outputs.contains("c1"));
  EXPECT_EQ(kind_of([&] { run_network(f.net, implemented_config(2), f.input, f.params, {}, {"zzz"}); }),
            ErrorKind::kValidation);
}

TEST_F(RunTest, LoadAndInputErrors) {
  const FourNode f = four_node(rng);
  ParamStore missing = f.params;
  missing.erase("c2");
  const std::string msg = message_of([&] { run_network(f.net, implemented_config(1), f.input, missing); });
  EXPECT_NE(msg.find("node c2"), std::string::npos) << msg;
  EXPECT_EQ(kind_of([&] { run_network(f.net, implemented_config(1), f.input, missing); }), ErrorKind::kLoad);

  ParamStore wrong = f.params;
  wrong["c3"] = gen::bank(rng, {3, 1, 1, 1}, 0, 0);
  EXPECT_EQ(kind_of([&] { run_network(f.net, implemented_config(1), f.input, wrong); }), ErrorKind::kLoad);

  EXPECT_EQ(kind_of([&] { run_network(f.net, implemented_config(1), QTensor3(Shape3{2, 2, 2}, f.input.frac_bits()), f.params); }),
            ErrorKind::kValidation);
  QTensor3 other_frac(f.input.shape(), std::vector<std::int8_t>(f.input.values().begin(), f.input.values().end()),
                      f.input.frac_bits() + 1);
  EXPECT_EQ(kind_of([&] { run_network(f.net, implemented_config(1), other_frac, f.params); }), ErrorKind::kValidation);
}

TEST(HostOpsTest, AveragePoolsRoundHalfAwayFromZero) {
  const QTensor3 t({2, 2, 2}, {1, -1, 2, -2, 0, 0, 0, 0}, 3);
  EXPECT_EQ(host_avg_pool(t, {2, 2}), QTensor3(Shape3{1, 1, 2}, {1, -1}, 3));
  EXPECT_EQ(host_global_avg_pool(t), QTensor3(Shape3{1, 1, 2}, {1, -1}, 3));
  const QTensor3 u({1, 3, 1}, {1, 1, 0}, 0);
  EXPECT_EQ(host_global_avg_pool(u), QTensor3(Shape3{1, 1, 1}, {1}, 0));
  const QTensor3 v({1, 3, 1}, {-1, 0, 0}, 0);
  EXPECT_EQ(host_global_avg_pool(v), QTensor3(Shape3{1, 1, 1}, {0}, 0));
}

TEST(HostOpsTest, FullyConnectedWorksOnDequantizedValues) {
  const QTensor3 x({1, 1, 3}, {4, -8, 2}, 2);  // 1, -2, 0.5
  const QFilterBank w({2, 1, 1, 3}, {2, 2, 2, -4, 0, 8}, {1, -1}, 1, 0);  // rows (1,1,1), (-2,0,4)
  const FTensor3 y = host_fully_connected(x, w, false);
  EXPECT_FLOAT_EQ(y.at(0, 0, 0), -0.5f + 1);
  EXPECT_FLOAT_EQ(y.at(0, 0, 1), 0 - 1);
  EXPECT_FLOAT_EQ(host_fully_connected(x, w, true).at(0, 0, 1), 0);
  EXPECT_EQ(kind_of([&] { host_fully_connected(QTensor3(Shape3{1, 1, 4}, 0), w, false); }), ErrorKind::kShape);
}

TEST(HostOpsTest, SoftmaxIsANormalizedExponential) {
  const FTensor3 x({1, 1, 3}, {1.0f, 2.0f, 3.0f});
  const FTensor3 y = host_softmax(x);
  const double z = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  EXPECT_NEAR(y.at(0, 0, 2), std::exp(3.0) / z, 1e-7);
  EXPECT_NEAR(y.at(0, 0, 0) + y.at(0, 0, 1) + y.at(0, 0, 2), 1.0, 1e-6);
}

TEST(NetworkPerfTest, EmptyNetworkIsZero) {
  const PerfReport r = network_perf({"e", {4, 4, 4}, 0, {}}, implemented_config(1), {});
  EXPECT_TRUE(r.nodes.empty());
  EXPECT_EQ(r.conv_ms, 0);
  EXPECT_EQ(r.end_to_end_ms, 0);
}

TEST(NetworkPerfTest, OneLayerEqualsLayerModel) {
  const AccelConfig cfg = implemented_config(5);
  const perf::Calibration calib;
  NetworkGraph net{"one", {28, 28, 64}, 5, {conv_node("c", "input", 3, 1, 1, 128, 4, true, engine::PoolSpec{2, 2})}};
  const PerfReport r = network_perf(net, cfg, calib);
  const perf::LayerCycles lc = perf::conv_cycles(net.nodes[0].spec, {28, 28, 64}, cfg, calib);
  EXPECT_EQ(r.nodes.at(0).cycles.total_cycles, lc.total_cycles);
  EXPECT_DOUBLE_EQ(r.conv_ms, lc.layer_ms());
  EXPECT_DOUBLE_EQ(r.end_to_end_ms, r.conv_ms);
  EXPECT_EQ(r.conv_macs, lc.macs);
  EXPECT_GE(r.conv_ms, r.mac_bound_ms);
}

TEST(NetworkPerfTest, HostCostsAndTotals) {
  perf::Calibration calib = perf::Calibration::zero();
  calib.host_ns_per_element = 2;
  calib.host_ns_per_mac = 1;
  NetworkGraph net{"h", {10, 10, 8}, 5, {conv_node("c", "input", 1, 1, 0, 8, 4)}};
  net.nodes.push_back(host_node("g", NodeKind::kGlobalAvgPool, {"c"}));
  Node fc = host_node("fc", NodeKind::kFullyConnected, {"g"});
  fc.units = 10;
  net.nodes.push_back(fc);
  net.nodes.push_back(host_node("sm", NodeKind::kSoftmax, {"fc"}));
  const PerfReport r = network_perf(net, implemented_config(1), calib);
  EXPECT_DOUBLE_EQ(r.nodes[1].host_ms, 800 * 2 / 1e6);
  EXPECT_DOUBLE_EQ(r.nodes[2].host_ms, (10 * 2 + 80) / 1e6);
  EXPECT_DOUBLE_EQ(r.nodes[3].host_ms, 20 / 1e6);
  double host = 0, conv = 0;
  for (const auto &n : r.nodes) {
    host += n.host_ms;
    conv += n.cycles.layer_ms();
  }
  EXPECT_DOUBLE_EQ(r.host_ms, host);
  EXPECT_DOUBLE_EQ(r.conv_ms, conv);
  EXPECT_DOUBLE_EQ(r.end_to_end_ms, conv + host);
}

TEST(GraphIoTest, RoundTrip) {
  gen::Rng rng(4);
  FourNode f = four_node(rng);
  Node fc = host_node("fc", NodeKind::kFullyConnected, {"cat"});
  fc.units = 7;
  fc.relu = true;
  fc.params = "fc.qfb";
  fc.emit = true;
  f.net.nodes.push_back(fc);
  Node avg = host_node("avg", NodeKind::kAvgPool, {"c1"});
  avg.pool = {3, 2};
  f.net.nodes.push_back(avg);
  const std::string text = format_network(f.net);
  const NetworkGraph back = parse_network(text, "mem");
  EXPECT_EQ(format_network(back), text);
  EXPECT_EQ(back.nodes.size(), f.net.nodes.size());
  EXPECT_EQ(back.nodes[3].spec.pool, f.net.nodes[3].spec.pool);
  EXPECT_EQ(back.nodes[5].units, 7u);
  EXPECT_TRUE(back.nodes[5].emit);
}

TEST(GraphIoTest, ParseErrorsNameTheProblem) {
  const std::string good =
      R"({"name": "n", "input": [4, 4, 3], "frac_bits": 5, "nodes": [)"
      R"({"id": "c", "kind": "conv", "inputs": ["input"], "filter": 3, "co": 2, "output_frac": 4, "params": "c.qfb"}]})";
  EXPECT_EQ(parse_network(good, "mem").nodes.at(0).spec.stride, 1u);
  auto msg = [](const std::string &text) {
    try {
      parse_network(text, "net.json");
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  auto edit = [&](const std::string &from, const std::string &to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_NE(msg("{").find("net.json"), std::string::npos);
  EXPECT_NE(msg(edit(R"("co": 2)", R"("co": 2, "colour": 1)")).find("node c: unknown field 'colour'"), std::string::npos);
  EXPECT_NE(msg(edit(R"("co": 2, )", "")).find("missing field 'co'"), std::string::npos);
  EXPECT_NE(msg(edit(R"("conv")", R"("deconv")")).find("deconv"), std::string::npos);
  EXPECT_NE(msg(edit("[4, 4, 3]", "[4, 4]")).find("input"), std::string::npos);
  EXPECT_NE(msg(edit(R"("co": 2)", R"("co": -2)")).find("'co'"), std::string::npos);
}

TEST(LoadParamsTest, MissingFileNamesNodeAndPath) {
  const auto dir = std::filesystem::temp_directory_path() / "accelsim_graph_test";
  std::filesystem::create_directories(dir);
  gen::Rng rng(8);
  NetworkGraph net{"p", {4, 4, 3}, 5, {conv_node("c", "input", 3, 1, 1, 2, 4)}};
  save_filter_bank(gen::bank(rng, {2, 3, 3, 3}, 5, 5), dir / "c.qfb");
  EXPECT_EQ(load_params(net, dir).at("c").co(), 2u);
  net.nodes[0].params = "gone.qfb";
  const std::string msg = message_of([&] { load_params(net, dir); });
  EXPECT_NE(msg.find("node c"), std::string::npos);
  EXPECT_NE(msg.find("gone.qfb"), std::string::npos);
  EXPECT_EQ(kind_of([&] { load_params(net, dir); }), ErrorKind::kLoad);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace accelsim::graph
