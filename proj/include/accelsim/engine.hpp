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

// Bit-exact functional model of the accelerator: OACT = MPOOL(ReLU(CONV)),
// with the optional stages selected per layer, plus split-merge execution
// along Co when the weights do not fit the Weights OCM.

#ifndef ACCELSIM_ENGINE_HPP_
#define ACCELSIM_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "accelsim/config.hpp"
#include "accelsim/dfp.hpp"
#include "accelsim/tensor.hpp"

namespace accelsim::engine {

struct PoolSpec {
  std::size_t window = 2;  // 2 or 3
  std::size_t stride = 2;  // always 2

  bool operator==(const PoolSpec &) const = default;
};

struct LayerSpec {
  std::size_t filter = 3;  // Fh = Fw, 1 or 3
  std::size_t stride = 1;  // 1 or 2
  std::size_t padding = 0; // 0 or 1; 1x1 filters take 0 only
  std::size_t co = 1;
  bool relu = false;
  std::optional<PoolSpec> pool;
  dfp::DfpScheme scheme;

  bool operator==(const LayerSpec &) const = default;
};

/// Throws kValidation when the layer is outside the supported set.
void validate(const LayerSpec &spec);
void validate(const PoolSpec &pool);

/// floor((H + 2·pad − F)/S) + 1 per spatial axis; kShape when the window
/// does not fit.
Shape3 conv_output_shape(const Shape3 &in, const LayerSpec &spec);
Shape3 pool_output_shape(const Shape3 &in, const PoolSpec &pool);
/// Conv followed by the optional pool.
Shape3 layer_output_shape(const Shape3 &in, const LayerSpec &spec);

/// PE array shape: OCP processing elements with ICP multipliers each.
struct Tiling {
  std::size_t icp = 16;
  std::size_t ocp = 8;
};

/// Work counters gathered while executing.
struct ExecStats {
  std::uint64_t macs = 0;        // multiplies actually issued, padding included
  std::uint64_t pe_steps = 0;    // (pixel, Co tile, tap, Ci tile) iterations
  std::uint64_t pool_steps = 0;  // (pixel, window tap, APACK tile) iterations

  ExecStats &operator+=(const ExecStats &o) {
    macs += o.macs;
    pe_steps += o.pe_steps;
    pool_steps += o.pool_steps;
    return *this;
  }
};

QTensor3 conv_exec(const QTensor3 &ia, const QFilterBank &bank,
                   const LayerSpec &spec, Tiling tiling = {},
                   ExecStats *stats = nullptr);

/// Two-phase reduction: row-wise MAX into a result row, then pixel-wise MAX
/// inside it. `channel_parallelism` only affects the step counter.
QTensor3 mpool_exec(const QTensor3 &t, const PoolSpec &pool,
                    std::size_t channel_parallelism = 1,
                    ExecStats *stats = nullptr);

QTensor3 accel_exec(const QTensor3 &ia, const QFilterBank &bank,
                    const LayerSpec &spec, Tiling tiling = {},
                    ExecStats *stats = nullptr);

struct ChannelRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const ChannelRange &) const = default;
};

struct SplitPlan {
  std::vector<ChannelRange> groups;

  std::size_t restreams() const { return groups.size(); }
  bool operator==(const SplitPlan &) const = default;
};

/// Largest group size the Weights and OUT-PIXEL budgets allow for this
/// geometry; kConfigTooSmall when not even one output channel fits.
std::size_t max_group_size(const FilterGeom &geom, const AccelConfig &cfg);

/// Greedy contiguous packing into ceil(Co / g) groups.
SplitPlan plan_split(const FilterGeom &geom, const AccelConfig &cfg);

/// Throws kValidation unless the plan partitions [0, Co) into contiguous
/// groups that each respect both budgets.
void check_plan(const SplitPlan &plan, const FilterGeom &geom,
                const AccelConfig &cfg);

/// One secondary convolution per group over the full input, outputs merged
/// along channels in group order. Only the partition property is required
/// of the plan.
QTensor3 exec_with_plan(const QTensor3 &ia, const QFilterBank &bank,
                        const LayerSpec &spec, const SplitPlan &plan,
                        Tiling tiling = {}, ExecStats *stats = nullptr);

QTensor3 exec_with_split(const QTensor3 &ia, const QFilterBank &bank,
                         const LayerSpec &spec, const AccelConfig &cfg,
                         ExecStats *stats = nullptr);

/// Channel concatenation; all parts share height, width and frac_bits.
QTensor3 concat_channels(const std::vector<QTensor3> &parts);

}  // namespace accelsim::engine

#endif  // ACCELSIM_ENGINE_HPP_
