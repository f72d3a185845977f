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


// JSON network description files.
//
//   {"name": "...", "input": [H, X, C], "frac_bits": f,
//    "nodes": [{"id": "conv1", "kind": "conv", "inputs": ["input"],
//               "filter": 3, "stride": 2, "padding": 0, "co": 64, "relu": true,
//               "pool": {"window": 3, "stride": 2}, "output_frac": 4,
//               "params": "params/conv1.qfb", "emit": false}, ...]}
//
// max_pool/avg_pool nodes take "window" and "stride"; fully_connected nodes
// take "units", "relu" and "params".

#ifndef ACCELSIM_GRAPH_IO_HPP_
#define ACCELSIM_GRAPH_IO_HPP_

#include <filesystem>
#include <string>

#include "accelsim/graph.hpp"

namespace accelsim::graph {

/// kParse naming `origin` and the offending node or field.
NetworkGraph parse_network(const std::string &text, const std::string &origin);
NetworkGraph load_network(const std::filesystem::path &path);
std::string format_network(const NetworkGraph &net);
void save_network(const NetworkGraph &net, const std::filesystem::path &path);

}  // namespace accelsim::graph

#endif  // ACCELSIM_GRAPH_IO_HPP_
