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


#include "accelsim/workloads.hpp"

#include "accelsim/error.hpp"

namespace accelsim::workloads {
namespace {

using graph::Node;
using graph::NodeKind;

constexpr int kInputFrac = 5;
constexpr int kActFrac = 4;

class Builder {
 public:
  Builder(std::string name, std::string dir, Shape3 input) : dir_(std::move(dir)) {
    net_.name = std::move(name);
    net_.input_shape = input;
    net_.input_frac = kInputFrac;
  }

  std::string conv(const std::string &id, const std::string &in, std::size_t filter, std::size_t stride,
                   std::size_t pad, std::size_t co, std::optional<engine::PoolSpec> pool = std::nullopt,
                   bool relu = true) {
    Node n;
    n.id = id;
    n.kind = NodeKind::kConv;
    n.inputs = {in};
    n.spec.filter = filter;
    n.spec.stride = stride;
    n.spec.padding = pad;
    n.spec.co = co;
    n.spec.relu = relu;
    n.spec.pool = pool;
    n.spec.scheme.output_frac = kActFrac;
    n.params = dir_ + "/" + id + ".qfb";
    return add(std::move(n));
  }

  std::string host(const std::string &id, NodeKind kind, std::vector<std::string> inputs) {
    Node n;
    n.id = id;
    n.kind = kind;
    n.inputs = std::move(inputs);
    return add(std::move(n));
  }

  std::string pool(const std::string &id, NodeKind kind, const std::string &in, std::size_t window) {
    Node n;
    n.id = id;
    n.kind = kind;
    n.inputs = {in};
    n.pool = {window, 2};
    return add(std::move(n));
  }

  std::string fc(const std::string &id, const std::string &in, std::size_t units, bool relu) {
    Node n;
    n.id = id;
    n.kind = NodeKind::kFullyConnected;
    n.inputs = {in};
    n.units = units;
    n.relu = relu;
    n.params = dir_ + "/" + id + ".qfb";
    return add(std::move(n));
  }

  // Squeeze then parallel 1x1 and 3x3 expands, concatenated.
  std::string fire(const std::string &name, const std::string &in, std::size_t squeeze, std::size_t expand,
                   bool pool, std::size_t squeeze_filter = 1, std::size_t squeeze_stride = 1) {
    const std::optional<engine::PoolSpec> p = pool ? std::optional(engine::PoolSpec{3, 2}) : std::nullopt;
    const std::string s = conv(name + "_squeeze", in, squeeze_filter, squeeze_stride, squeeze_filter == 3, squeeze);
    const std::string e1 = conv(name + "_expand1x1", s, 1, 1, 0, expand, p);
    const std::string e3 = conv(name + "_expand3x3", s, 3, 1, 1, expand, p);
    return host(name + "_concat", NodeKind::kConcat, {e1, e3});
  }

  graph::NetworkGraph done() { return std::move(net_); }

 private:
  std::string add(Node n) {
    std::string id = n.id;
    net_.nodes.push_back(std::move(n));
    return id;
  }

  std::string dir_;
  graph::NetworkGraph net_;
};

}  // namespace

graph::NetworkGraph squeezenet() {
  Builder b("squeezenet_v1.1", "sqn", {227, 227, 3});
  std::string x = b.conv("conv1", "input", 3, 2, 0, 64, engine::PoolSpec{3, 2});
  x = b.fire("fire2", x, 16, 64, false);
  x = b.fire("fire3", x, 16, 64, true);
  x = b.fire("fire4", x, 32, 128, false);
  x = b.fire("fire5", x, 32, 128, true);
  x = b.fire("fire6", x, 48, 192, false);
  x = b.fire("fire7", x, 48, 192, false);
  x = b.fire("fire8", x, 64, 256, false);
  x = b.fire("fire9", x, 64, 256, false);
  x = b.conv("conv10", x, 1, 1, 0, 1000);
  x = b.host("pool10", NodeKind::kGlobalAvgPool, {x});
  b.host("prob", NodeKind::kSoftmax, {x});
  return b.done();
}

graph::NetworkGraph zynqnet() {
  Builder b("zynqnet", "zqn", {256, 256, 3});
  std::string x = b.conv("conv1", "input", 3, 2, 1, 64);
  // Even fires downsample with a stride-2 3x3 squeeze.
  x = b.fire("fire2", x, 16, 64, false, 3, 2);
  x = b.fire("fire3", x, 16, 64, false);
  x = b.fire("fire4", x, 32, 128, false, 3, 2);
  x = b.fire("fire5", x, 32, 128, false);
  x = b.fire("fire6", x, 64, 256, false, 3, 2);
  x = b.fire("fire7", x, 64, 192, false);
  x = b.fire("fire8", x, 112, 256, false, 3, 2);
  x = b.fire("fire9", x, 112, 368, false);
  x = b.conv("conv10", x, 1, 1, 0, 1000);
  x = b.host("pool10", NodeKind::kGlobalAvgPool, {x});
  b.host("prob", NodeKind::kSoftmax, {x});
  return b.done();
}

graph::NetworkGraph peleenet() {
  Builder b("peleenet", "pln", {224, 224, 3});
  const std::string stem1 = b.conv("stem1", "input", 3, 2, 1, 32);
  std::string left = b.conv("stem2a", stem1, 1, 1, 0, 16);
  left = b.conv("stem2b", left, 3, 2, 1, 32);
  const std::string right = b.pool("stem2_pool", NodeKind::kMaxPool, stem1, 2);
  std::string x = b.host("stem_concat", NodeKind::kConcat, {left, right});
  x = b.conv("stem3", x, 1, 1, 0, 32);

  struct Stage {
    std::size_t layers, inter;
    bool pool;
  };
  const Stage stages[] = {{3, 16, true}, {4, 32, true}, {8, 64, true}, {6, 64, false}};
  std::size_t channels = 32;
  for (std::size_t s = 0; s < 4; ++s) {
    const std::string stage = "stage" + std::to_string(s + 1);
    for (std::size_t l = 0; l < stages[s].layers; ++l) {
      const std::string p = stage + "_" + std::to_string(l + 1);
      std::string b1 = b.conv(p + "_b1a", x, 1, 1, 0, stages[s].inter);
      b1 = b.conv(p + "_b1b", b1, 3, 1, 1, 16);
      std::string b2 = b.conv(p + "_b2a", x, 1, 1, 0, stages[s].inter);
      b2 = b.conv(p + "_b2b", b2, 3, 1, 1, 16);
      b2 = b.conv(p + "_b2c", b2, 3, 1, 1, 16);
      x = b.host(p + "_concat", NodeKind::kConcat, {x, b1, b2});
      channels += 32;
    }
    x = b.conv(stage + "_transition", x, 1, 1, 0, channels);
    if (stages[s].pool) x = b.pool(stage + "_pool", NodeKind::kAvgPool, x, 2);
  }
  x = b.host("global_pool", NodeKind::kGlobalAvgPool, {x});
  x = b.fc("classifier", x, 1000, false);
  b.host("prob", NodeKind::kSoftmax, {x});
  return b.done();
}

graph::NetworkGraph vgg16() {
  Builder b("vgg16", "vgg", {224, 224, 3});
  const std::size_t blocks[][2] = {{2, 64}, {2, 128}, {3, 256}, {3, 512}, {3, 512}};
  std::string x = "input";
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < blocks[i][0]; ++j) {
      const bool last = j + 1 == blocks[i][0];
      x = b.conv("conv" + std::to_string(i + 1) + "_" + std::to_string(j + 1), x, 3, 1, 1, blocks[i][1],
                 last ? std::optional(engine::PoolSpec{2, 2}) : std::nullopt);
    }
  }
  x = b.fc("fc6", x, 4096, true);
  x = b.fc("fc7", x, 4096, true);
  x = b.fc("fc8", x, 1000, false);
  b.host("prob", NodeKind::kSoftmax, {x});
  return b.done();
}

graph::NetworkGraph by_name(std::string_view name) {
  if (name == "sqn") return squeezenet();
  if (name == "zqn") return zynqnet();
  if (name == "pln") return peleenet();
  if (name == "vgg") return vgg16();
  fail(ErrorKind::kDomain, "unknown workload '" + std::string(name) + "'");
}

std::vector<graph::NetworkGraph> all() {
  std::vector<graph::NetworkGraph> out;
  for (auto name : kNames) out.push_back(by_name(name));
  return out;
}

}  // namespace accelsim::workloads
