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


// The four reference CNNs as graphs. Parameter paths are relative to the
// graph file: <short name>/<node id>.qfb.

#ifndef ACCELSIM_WORKLOADS_HPP_
#define ACCELSIM_WORKLOADS_HPP_

#include <string_view>
#include <vector>

#include "accelsim/graph.hpp"

namespace accelsim::workloads {

graph::NetworkGraph squeezenet();  // SqueezeNet v1.1, 227x227x3
graph::NetworkGraph zynqnet();     // 256x256x3
graph::NetworkGraph peleenet();    // 224x224x3
graph::NetworkGraph vgg16();       // 224x224x3

/// Short names: sqn, zqn, pln, vgg.
inline constexpr std::string_view kNames[] = {"sqn", "zqn", "pln", "vgg"};

/// kDomain for unknown names.
graph::NetworkGraph by_name(std::string_view name);
std::vector<graph::NetworkGraph> all();

}  // namespace accelsim::workloads

#endif  // ACCELSIM_WORKLOADS_HPP_
