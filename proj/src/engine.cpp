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

#include "accelsim/engine.hpp"

#include <algorithm>
#include <string>

namespace accelsim::engine {
namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::size_t pooled_extent(std::size_t in, std::size_t window, std::size_t stride,
                          std::size_t pad, const char *axis) {
  if (in + 2 * pad < window) {
    fail(ErrorKind::kShape, std::string(axis) + " extent " + std::to_string(in) +
                                " (padding " + std::to_string(pad) +
                                ") smaller than window " + std::to_string(window));
  }
  return (in + 2 * pad - window) / stride + 1;
}

std::int32_t checked_add(std::int32_t a, std::int32_t b, const char *where) {
  std::int32_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    fail(ErrorKind::kOverflow, std::string("32-bit accumulator overflow in ") + where);
  }
  return r;
}

// Pairwise reduction of one PE's ICP products.
std::int32_t adder_tree(std::span<std::int32_t> lanes) {
  std::size_t width = lanes.size();
  while (width > 1) {
    const std::size_t half = width / 2;
    for (std::size_t i = 0; i < half; ++i) {
      lanes[i] = checked_add(lanes[2 * i], lanes[2 * i + 1], "adder tree");
    }
    if (width % 2 == 1) lanes[half] = lanes[width - 1];
    width = half + width % 2;
  }
  return width == 0 ? 0 : lanes[0];
}

void check_operands(const QTensor3 &ia, const QFilterBank &bank, const LayerSpec &spec) {
  validate(spec);
  if (bank.fh() != spec.filter || bank.fw() != spec.filter) {
    fail(ErrorKind::kShape, "filter bank " + to_string(bank.geom()) +
                                " does not match layer filter " + std::to_string(spec.filter));
  }
  if (bank.ci() != ia.channels()) {
    fail(ErrorKind::kShape, "filter bank Ci=" + std::to_string(bank.ci()) +
                                " but input has " + std::to_string(ia.channels()) +
                                " channels");
  }
  if (bank.co() != spec.co) {
    fail(ErrorKind::kShape, "filter bank Co=" + std::to_string(bank.co()) +
                                " but layer expects " + std::to_string(spec.co));
  }
  const auto &s = spec.scheme;
  if (ia.frac_bits() != s.input_frac || bank.weight_frac_bits() != s.weight_frac ||
      bank.bias_frac_bits() != s.bias_frac) {
    fail(ErrorKind::kScheme,
         "operand exponents (input " + std::to_string(ia.frac_bits()) + ", weight " +
             std::to_string(bank.weight_frac_bits()) + ", bias " +
             std::to_string(bank.bias_frac_bits()) + ") disagree with layer scheme (" +
             std::to_string(s.input_frac) + ", " + std::to_string(s.weight_frac) + ", " +
             std::to_string(s.bias_frac) + ")");
  }
}

}  // namespace

void validate(const PoolSpec &pool) {
  if ((pool.window != 2 && pool.window != 3) || pool.stride != 2) {
    fail(ErrorKind::kValidation, "max-pool must be 2x2 or 3x3 with stride 2, got " +
                                     std::to_string(pool.window) + "x" +
                                     std::to_string(pool.window) + " stride " +
                                     std::to_string(pool.stride));
  }
}

void validate(const LayerSpec &spec) {
  if (spec.filter != 1 && spec.filter != 3) {
    fail(ErrorKind::kValidation, "filter must be 1 or 3, got " + std::to_string(spec.filter));
  }
  if (spec.stride != 1 && spec.stride != 2) {
    fail(ErrorKind::kValidation, "stride must be 1 or 2, got " + std::to_string(spec.stride));
  }
  if (spec.padding > 1 || (spec.filter == 1 && spec.padding != 0)) {
    fail(ErrorKind::kValidation, "padding " + std::to_string(spec.padding) +
                                     " not supported for a " + std::to_string(spec.filter) +
                                     "x" + std::to_string(spec.filter) + " filter");
  }
  if (spec.co == 0) fail(ErrorKind::kValidation, "layer needs at least one output channel");
  if (spec.pool) validate(*spec.pool);
}

Shape3 conv_output_shape(const Shape3 &in, const LayerSpec &spec) {
  validate(spec);
  return {pooled_extent(in.height, spec.filter, spec.stride, spec.padding, "height"),
          pooled_extent(in.width, spec.filter, spec.stride, spec.padding, "width"),
          spec.co};
}

Shape3 pool_output_shape(const Shape3 &in, const PoolSpec &pool) {
  validate(pool);
  return {pooled_extent(in.height, pool.window, pool.stride, 0, "height"),
          pooled_extent(in.width, pool.window, pool.stride, 0, "width"), in.channels};
}

Shape3 layer_output_shape(const Shape3 &in, const LayerSpec &spec) {
  Shape3 out = conv_output_shape(in, spec);
  return spec.pool ? pool_output_shape(out, *spec.pool) : out;
}

QTensor3 conv_exec(const QTensor3 &ia, const QFilterBank &bank, const LayerSpec &spec,
                   Tiling tiling, ExecStats *stats) {
  check_operands(ia, bank, spec);
  if (tiling.icp == 0 || tiling.ocp == 0) fail(ErrorKind::kValidation, "tiling factors must be positive");
  const Shape3 out_shape = conv_output_shape(ia.shape(), spec);
  const std::size_t ci = ia.channels();
  const std::size_t co = spec.co;
  const std::size_t k = spec.filter;
  const std::vector<std::int8_t> zero_pixel(ci, 0);

  std::vector<std::int8_t> out(out_shape.size());
  std::vector<std::int32_t> acc(tiling.ocp);
  std::vector<std::int32_t> lanes(tiling.icp);
  ExecStats local;

  for (std::size_t yo = 0; yo < out_shape.height; ++yo) {
    for (std::size_t xo = 0; xo < out_shape.width; ++xo) {
      for (std::size_t co0 = 0; co0 < co; co0 += tiling.ocp) {
        const std::size_t pes = std::min(tiling.ocp, co - co0);
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t fh = 0; fh < k; ++fh) {
          for (std::size_t fw = 0; fw < k; ++fw) {
            // Padded taps read a zero pixel.
            const std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(yo * spec.stride + fh) -
                                      static_cast<std::ptrdiff_t>(spec.padding);
            const std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(xo * spec.stride + fw) -
                                      static_cast<std::ptrdiff_t>(spec.padding);
            const bool inside = iy >= 0 && ix >= 0 &&
                                iy < static_cast<std::ptrdiff_t>(ia.height()) &&
                                ix < static_cast<std::ptrdiff_t>(ia.width());
            std::span<const std::int8_t> window =
                inside ? ia.pixel(static_cast<std::size_t>(iy), static_cast<std::size_t>(ix))
                       : std::span<const std::int8_t>(zero_pixel);
            for (std::size_t ci0 = 0; ci0 < ci; ci0 += tiling.icp) {
              const std::size_t n = std::min(tiling.icp, ci - ci0);
              for (std::size_t pe = 0; pe < pes; ++pe) {
                auto w = bank.tap(co0 + pe, fh, fw);
                for (std::size_t l = 0; l < n; ++l) {
                  const std::int16_t product = static_cast<std::int16_t>(
                      std::int16_t{window[ci0 + l]} * std::int16_t{w[ci0 + l]});
                  lanes[l] = product;
                }
                acc[pe] = checked_add(acc[pe], adder_tree(std::span(lanes).first(n)),
                                      "accumulation");
              }
              local.pe_steps += 1;
              local.macs += n * pes;
            }
          }
        }
        for (std::size_t pe = 0; pe < pes; ++pe) {
          std::int8_t v = dfp::rescale_acc(acc[pe], spec.scheme, bank.bias(co0 + pe));
          if (spec.relu && v < 0) v = 0;
          out[(yo * out_shape.width + xo) * co + co0 + pe] = v;
        }
      }
    }
  }
  if (stats != nullptr) *stats += local;
  return QTensor3(out_shape, std::move(out), spec.scheme.output_frac);
}

QTensor3 mpool_exec(const QTensor3 &t, const PoolSpec &pool,
                    std::size_t channel_parallelism, ExecStats *stats) {
  const Shape3 out_shape = pool_output_shape(t.shape(), pool);
  const std::size_t c = t.channels();
  const std::size_t row_len = t.width() * c;
  const std::size_t lanes = std::max<std::size_t>(channel_parallelism, 1);
  std::vector<std::int8_t> out(out_shape.size());
  std::vector<std::int8_t> result_row(row_len);
  std::vector<std::int8_t> result_pixel(c);
  auto in = t.values();

  for (std::size_t yo = 0; yo < out_shape.height; ++yo) {
    // Phase 1: channel-wise MAX between the rows of the row window.
    const std::size_t y0 = yo * pool.stride;
    std::copy_n(in.begin() + y0 * row_len, row_len, result_row.begin());
    for (std::size_t r = 1; r < pool.window; ++r) {
      auto current_row = in.subspan((y0 + r) * row_len, row_len);
      for (std::size_t i = 0; i < row_len; ++i) {
        result_row[i] = std::max(result_row[i], current_row[i]);
      }
    }
    // Phase 2: MAX between the 3D pixels of each column window.
    for (std::size_t xo = 0; xo < out_shape.width; ++xo) {
      const std::size_t x0 = xo * pool.stride;
      std::copy_n(result_row.begin() + x0 * c, c, result_pixel.begin());
      for (std::size_t p = 1; p < pool.window; ++p) {
        const auto *current_pixel = result_row.data() + (x0 + p) * c;
        for (std::size_t ch = 0; ch < c; ++ch) {
          result_pixel[ch] = std::max(result_pixel[ch], current_pixel[ch]);
        }
      }
      std::copy(result_pixel.begin(), result_pixel.end(),
                out.begin() + (yo * out_shape.width + xo) * c);
    }
  }
  if (stats != nullptr) {
    stats->pool_steps += out_shape.height * out_shape.width * pool.window * pool.window *
                         ceil_div(c, lanes);
  }
  return QTensor3(out_shape, std::move(out), t.frac_bits());
}

QTensor3 accel_exec(const QTensor3 &ia, const QFilterBank &bank, const LayerSpec &spec,
                    Tiling tiling, ExecStats *stats) {
  QTensor3 conv = conv_exec(ia, bank, spec, tiling, stats);
  if (!spec.pool) return conv;
  return mpool_exec(conv, *spec.pool, 1, stats);
}

std::size_t max_group_size(const FilterGeom &geom, const AccelConfig &cfg) {
  const std::size_t per_co = geom.fh * geom.fw * geom.ci;
  const std::size_t by_weights = per_co == 0 ? 0 : cfg.chout_x_f_x_f_x_chin_max / per_co;
  const std::size_t g = std::min(cfg.chout_max, by_weights);
  if (g == 0) {
    fail(ErrorKind::kConfigTooSmall,
         "one output channel needs " + std::to_string(per_co) +
             " weight bytes, CHOUTxFILTERxFILTERxCHIN_MAX is " +
             std::to_string(cfg.chout_x_f_x_f_x_chin_max));
  }
  return g;
}

SplitPlan plan_split(const FilterGeom &geom, const AccelConfig &cfg) {
  const std::size_t g = max_group_size(geom, cfg);
  SplitPlan plan;
  for (std::size_t begin = 0; begin < geom.co; begin += g) {
    plan.groups.push_back({begin, std::min(begin + g, geom.co)});
  }
  return plan;
}

namespace {

void check_partition(const SplitPlan &plan, std::size_t co) {
  std::size_t next = 0;
  for (const auto &g : plan.groups) {
    if (g.begin != next || g.end <= g.begin) {
      fail(ErrorKind::kValidation, "split groups must be contiguous, non-empty and ascending");
    }
    next = g.end;
  }
  if (next != co) {
    fail(ErrorKind::kValidation, "split groups cover [0, " + std::to_string(next) +
                                     ") instead of [0, " + std::to_string(co) + ")");
  }
}

}  // namespace

void check_plan(const SplitPlan &plan, const FilterGeom &geom, const AccelConfig &cfg) {
  check_partition(plan, geom.co);
  const std::size_t per_co = geom.fh * geom.fw * geom.ci;
  for (const auto &g : plan.groups) {
    if (g.size() > cfg.chout_max) {
      fail(ErrorKind::kValidation, "group of " + std::to_string(g.size()) +
                                       " channels exceeds CHOUT_MAX");
    }
    if (g.size() * per_co > cfg.chout_x_f_x_f_x_chin_max) {
      fail(ErrorKind::kValidation, "group of " + std::to_string(g.size()) +
                                       " channels exceeds CHOUTxFILTERxFILTERxCHIN_MAX");
    }
  }
}

QTensor3 exec_with_plan(const QTensor3 &ia, const QFilterBank &bank, const LayerSpec &spec,
                        const SplitPlan &plan, Tiling tiling, ExecStats *stats) {
  check_partition(plan, bank.co());
  if (plan.groups.size() == 1) return accel_exec(ia, bank, spec, tiling, stats);
  std::vector<QTensor3> parts;
  parts.reserve(plan.groups.size());
  for (const auto &g : plan.groups) {
    LayerSpec secondary = spec;
    secondary.co = g.size();
    parts.push_back(accel_exec(ia, bank.slice_co(g.begin, g.end), secondary, tiling, stats));
  }
  return concat_channels(parts);
}

QTensor3 exec_with_split(const QTensor3 &ia, const QFilterBank &bank, const LayerSpec &spec,
                         const AccelConfig &cfg, ExecStats *stats) {
  const SplitPlan plan = plan_split(bank.geom(), cfg);
  return exec_with_plan(ia, bank, spec, plan, {cfg.icp, cfg.ocp}, stats);
}

QTensor3 concat_channels(const std::vector<QTensor3> &parts) {
  if (parts.empty()) fail(ErrorKind::kShape, "concat of zero tensors");
  const auto &first = parts.front();
  std::size_t channels = 0;
  for (const auto &p : parts) {
    if (p.height() != first.height() || p.width() != first.width()) {
      fail(ErrorKind::kShape, "concat inputs disagree spatially: " + to_string(first.shape()) +
                                  " vs " + to_string(p.shape()));
    }
    if (p.frac_bits() != first.frac_bits()) {
      fail(ErrorKind::kScheme, "concat inputs have different frac_bits (" +
                                   std::to_string(first.frac_bits()) + " vs " +
                                   std::to_string(p.frac_bits()) + ")");
    }
    channels += p.channels();
  }
  const Shape3 shape{first.height(), first.width(), channels};
  std::vector<std::int8_t> out;
  out.reserve(shape.size());
  for (std::size_t y = 0; y < shape.height; ++y) {
    for (std::size_t x = 0; x < shape.width; ++x) {
      for (const auto &p : parts) {
        auto px = p.pixel(y, x);
        out.insert(out.end(), px.begin(), px.end());
      }
    }
  }
  return QTensor3(shape, std::move(out), first.frac_bits());
}

}  // namespace accelsim::engine
