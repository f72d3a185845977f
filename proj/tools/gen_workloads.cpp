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


// Writes the reference workload graphs, and optionally random parameter
// files for them, under an output directory.

#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "accelsim/graph_io.hpp"
#include "accelsim/workloads.hpp"

namespace {

void write_random_params(const accelsim::graph::NetworkGraph &net, const std::filesystem::path &dir,
                         std::uint64_t seed) {
  using namespace accelsim;
  const graph::Analysis a = graph::analyze(net);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> raw(-32, 31);
  for (const auto &n : net.nodes) {
    if (n.params.empty()) continue;
    const Shape3 in = a.info.at(n.inputs.front()).out;
    const FilterGeom g = n.kind == graph::NodeKind::kConv
                             ? FilterGeom{n.spec.co, n.spec.filter, n.spec.filter, in.channels}
                             : FilterGeom{n.units, 1, 1, in.size()};
    std::vector<std::int8_t> w(g.weight_count()), b(g.co);
    for (auto &v : w) v = static_cast<std::int8_t>(raw(rng));
    for (auto &v : b) v = static_cast<std::int8_t>(raw(rng));
    const auto path = dir / n.params;
    std::filesystem::create_directories(path.parent_path());
    save_filter_bank(QFilterBank(g, std::move(w), std::move(b), 8, 6), path);
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Write the reference workload graphs"};
  std::string out = "data/networks";
  std::vector<std::string> only;
  bool params = false;
  std::uint64_t seed = 1;
  app.add_option("--out", out, "output directory");
  app.add_option("--only", only, "workload short names (default: all)");
  app.add_flag("--random-params", params, "also write random parameter files");
  app.add_option("--seed", seed, "seed for --random-params");
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out);
    for (auto name : accelsim::workloads::kNames) {
      if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
      const auto net = accelsim::workloads::by_name(name);
      const auto path = std::filesystem::path(out) / (std::string(name) + ".json");
      accelsim::graph::save_network(net, path);
      if (params) write_random_params(net, out, seed);
      std::cout << path.string() << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
