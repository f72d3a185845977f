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


#include "accelsim/graph_io.hpp"

#include "accelsim/error.hpp"
#include "accelsim/kv_file.hpp"
#include "json_reader.hpp"

namespace accelsim::graph {
namespace {

using detail::json;
using detail::Reader;

engine::PoolSpec read_pool(Reader &r) {
  engine::PoolSpec p;
  p.window = r.count("window");
  p.stride = r.count("stride", 2);
  return p;
}

Node read_node(const json &j, const std::string &origin, std::size_t index) {
  std::string context = origin + ": node " + std::to_string(index);
  if (j.is_object() && j.contains("id") && j["id"].is_string()) context = origin + ": node " + j["id"].get<std::string>();
  Reader r(j, context);
  Node n;
  n.id = r.text("id");
  try {
    n.kind = parse_node_kind(r.text("kind"));
  } catch (const Error &e) {
    r.bad(e.what());
  }
  const json &inputs = r.need("inputs");
  if (!inputs.is_array()) r.bad("field 'inputs' must be a list of ids");
  for (const auto &in : inputs) {
    if (!in.is_string()) r.bad("field 'inputs' must be a list of ids");
    n.inputs.push_back(in.get<std::string>());
  }
  n.emit = r.flag("emit", false);
  switch (n.kind) {
    case NodeKind::kConv: {
      n.spec.filter = r.count("filter");
      n.spec.stride = r.count("stride", 1);
      n.spec.padding = r.count("padding", 0);
      n.spec.co = r.count("co");
      n.spec.relu = r.flag("relu", false);
      if (const json *p = r.find("pool"); p && !p->is_null()) {
        Reader pr(*p, context + ": pool");
        n.spec.pool = read_pool(pr);
        pr.finish();
      }
      n.spec.scheme.output_frac = r.integer("output_frac");
      n.params = r.text("params");
      break;
    }
    case NodeKind::kMaxPool:
    case NodeKind::kAvgPool:
      n.pool = read_pool(r);
      break;
    case NodeKind::kFullyConnected:
      n.units = r.count("units");
      n.relu = r.flag("relu", false);
      n.params = r.text("params");
      break;
    case NodeKind::kConcat:
    case NodeKind::kGlobalAvgPool:
    case NodeKind::kSoftmax:
      break;
  }
  r.finish();
  return n;
}

json pool_json(const engine::PoolSpec &p) { return {{"window", p.window}, {"stride", p.stride}}; }

}  // namespace

NetworkGraph parse_network(const std::string &text, const std::string &origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    fail(ErrorKind::kParse, origin + ": " + e.what());
  }
  Reader r(doc, origin);
  NetworkGraph net;
  net.name = r.text("name");
  const json &input = r.need("input");
  if (!input.is_array() || input.size() != 3 ||
      !std::all_of(input.begin(), input.end(), [](const json &v) { return v.is_number_unsigned(); })) {
    r.bad("field 'input' must be [H, X, C]");
  }
  net.input_shape = {input[0].get<std::size_t>(), input[1].get<std::size_t>(), input[2].get<std::size_t>()};
  net.input_frac = r.integer("frac_bits");
  const json &nodes = r.need("nodes");
  if (!nodes.is_array()) r.bad("field 'nodes' must be a list");
  for (std::size_t i = 0; i < nodes.size(); ++i) net.nodes.push_back(read_node(nodes[i], origin, i));
  r.finish();
  return net;
}

NetworkGraph load_network(const std::filesystem::path &path) {
  return parse_network(read_text_file(path), path.string());
}

std::string format_network(const NetworkGraph &net) {
  json nodes = json::array();
  for (const Node &n : net.nodes) {
    json j = {{"id", n.id}, {"kind", std::string(to_string(n.kind))}, {"inputs", n.inputs}};
    switch (n.kind) {
      case NodeKind::kConv:
        j["filter"] = n.spec.filter;
        j["stride"] = n.spec.stride;
        j["padding"] = n.spec.padding;
        j["co"] = n.spec.co;
        j["relu"] = n.spec.relu;
        if (n.spec.pool) j["pool"] = pool_json(*n.spec.pool);
        j["output_frac"] = n.spec.scheme.output_frac;
        j["params"] = n.params;
        break;
      case NodeKind::kMaxPool:
      case NodeKind::kAvgPool:
        j["window"] = n.pool.window;
        j["stride"] = n.pool.stride;
        break;
      case NodeKind::kFullyConnected:
        j["units"] = n.units;
        j["relu"] = n.relu;
        j["params"] = n.params;
        break;
      default:
        break;
    }
    if (n.emit) j["emit"] = true;
    nodes.push_back(std::move(j));
  }
  const json doc = {{"name", net.name},
                    {"input", {net.input_shape.height, net.input_shape.width, net.input_shape.channels}},
                    {"frac_bits", net.input_frac},
                    {"nodes", std::move(nodes)}};
  return doc.dump(2) + "\n";
}

void save_network(const NetworkGraph &net, const std::filesystem::path &path) {
  const std::string text = format_network(net);
  write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

}  // namespace accelsim::graph
