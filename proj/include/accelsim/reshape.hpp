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


// First-layer reshaping: a strided k×k convolution over few input channels is
// rewritten as a 1×1 convolution whose channels hold each output window's
// receptive field, zero-padded to a channel alignment.

#ifndef ACCELSIM_RESHAPE_HPP_
#define ACCELSIM_RESHAPE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "accelsim/config.hpp"
#include "accelsim/engine.hpp"
#include "accelsim/perf.hpp"
#include "accelsim/tensor.hpp"

namespace accelsim::graph {

/// Source of one reshaped channel: filter tap (fh, fw) and input channel ci.
/// Alignment channels have valid = false and always read zero.
struct ReshapeTap {
  std::size_t fh = 0;
  std::size_t fw = 0;
  std::size_t ci = 0;
  bool valid = false;

  bool operator==(const ReshapeTap &) const = default;
};

struct ReshapeTransform {
  engine::LayerSpec original;
  Shape3 original_in;
  engine::LayerSpec reshaped;
  Shape3 reshaped_in;
  std::vector<ReshapeTap> channel_map;  // one entry per reshaped channel; empty for identity

  bool identity() const { return channel_map.empty(); }

  /// Flat index into the original input for a reshaped element, or nullopt
  /// when it reads padding or an alignment channel.
  std::optional<std::size_t> source_index(std::size_t y, std::size_t x, std::size_t c) const;

  QTensor3 apply_input(const QTensor3 &in) const;
  QFilterBank apply_weights(const QFilterBank &bank) const;

  /// MACs over non-padding positions of each side.
  std::uint64_t original_valid_macs() const;
  std::uint64_t reshaped_valid_macs() const;
  /// Elements the host writes to build the reshaped input.
  std::uint64_t host_elements() const;
};

/// Any layer shape; the reshaped channel count is rounded up to a multiple of
/// `align`. A 1×1 stride-1 layer gives the identity transform.
ReshapeTransform reshape_layer(const engine::LayerSpec &spec, const Shape3 &in, std::size_t align = 1);

/// Trigger rule: enabled, first layer, stride ≥ min stride and
/// Ci < fraction·ICP.
bool reshape_triggers(const engine::LayerSpec &spec, const Shape3 &in, const AccelConfig &cfg,
                      const perf::Calibration &calib, bool first_layer);

/// kNotApplicable unless the trigger rule holds; aligned to ICP.
ReshapeTransform reshape_first_layer(const engine::LayerSpec &spec, const Shape3 &in,
                                     const AccelConfig &cfg, const perf::Calibration &calib,
                                     bool first_layer = true);

}  // namespace accelsim::graph

#endif  // ACCELSIM_RESHAPE_HPP_
