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


#include "accelsim/reshape.hpp"

#include "accelsim/error.hpp"

namespace accelsim::graph {

std::optional<std::size_t> ReshapeTransform::source_index(std::size_t y, std::size_t x,
                                                          std::size_t c) const {
  if (identity()) return (y * original_in.width + x) * original_in.channels + c;
  const ReshapeTap &tap = channel_map.at(c);
  if (!tap.valid) return std::nullopt;
  const auto iy = static_cast<std::ptrdiff_t>(y * original.stride + tap.fh) -
                  static_cast<std::ptrdiff_t>(original.padding);
  const auto ix = static_cast<std::ptrdiff_t>(x * original.stride + tap.fw) -
                  static_cast<std::ptrdiff_t>(original.padding);
  if (iy < 0 || ix < 0 || iy >= static_cast<std::ptrdiff_t>(original_in.height) ||
      ix >= static_cast<std::ptrdiff_t>(original_in.width)) {
    return std::nullopt;
  }
  return (static_cast<std::size_t>(iy) * original_in.width + static_cast<std::size_t>(ix)) *
             original_in.channels + tap.ci;
}

QTensor3 ReshapeTransform::apply_input(const QTensor3 &in) const {
  if (in.shape() != original_in) {
    fail(ErrorKind::kShape, "reshape: input " + to_string(in.shape()) + " expected " + to_string(original_in));
  }
  if (identity()) return in;
  QTensor3 out(reshaped_in, in.frac_bits());
  const auto src = in.values();
  auto dst = out.mutable_values();
  std::size_t i = 0;
  for (std::size_t y = 0; y < reshaped_in.height; ++y) {
    for (std::size_t x = 0; x < reshaped_in.width; ++x) {
      for (std::size_t c = 0; c < reshaped_in.channels; ++c, ++i) {
        if (const auto s = source_index(y, x, c)) dst[i] = src[*s];
      }
    }
  }
  return out;
}

QFilterBank ReshapeTransform::apply_weights(const QFilterBank &bank) const {
  const FilterGeom expect{original.co, original.filter, original.filter, original_in.channels};
  if (bank.geom() != expect) {
    fail(ErrorKind::kShape, "reshape: bank " + to_string(bank.geom()) + " expected " + to_string(expect));
  }
  if (identity()) return bank;
  const std::size_t cin = reshaped_in.channels;
  std::vector<std::int8_t> w(original.co * cin, 0);
  for (std::size_t o = 0; o < original.co; ++o) {
    for (std::size_t c = 0; c < cin; ++c) {
      const ReshapeTap &tap = channel_map[c];
      if (tap.valid) w[o * cin + c] = bank.weight(o, tap.fh, tap.fw, tap.ci);
    }
  }
  std::vector<std::int8_t> b(bank.biases().begin(), bank.biases().end());
  return QFilterBank({original.co, 1, 1, cin}, std::move(w), std::move(b), bank.weight_frac_bits(),
                     bank.bias_frac_bits());
}

std::uint64_t ReshapeTransform::original_valid_macs() const {
  const Shape3 out = engine::conv_output_shape(original_in, original);
  std::uint64_t taps = 0;
  for (std::size_t y = 0; y < out.height; ++y) {
    for (std::size_t x = 0; x < out.width; ++x) {
      for (std::size_t fh = 0; fh < original.filter; ++fh) {
        for (std::size_t fw = 0; fw < original.filter; ++fw) {
          const auto iy = static_cast<std::ptrdiff_t>(y * original.stride + fh) -
                          static_cast<std::ptrdiff_t>(original.padding);
          const auto ix = static_cast<std::ptrdiff_t>(x * original.stride + fw) -
                          static_cast<std::ptrdiff_t>(original.padding);
          if (iy >= 0 && ix >= 0 && iy < static_cast<std::ptrdiff_t>(original_in.height) &&
              ix < static_cast<std::ptrdiff_t>(original_in.width)) {
            ++taps;
          }
        }
      }
    }
  }
  return taps * original_in.channels * original.co;
}

std::uint64_t ReshapeTransform::reshaped_valid_macs() const {
  if (identity()) return original_valid_macs();
  std::uint64_t n = 0;
  for (std::size_t y = 0; y < reshaped_in.height; ++y) {
    for (std::size_t x = 0; x < reshaped_in.width; ++x) {
      for (std::size_t c = 0; c < reshaped_in.channels; ++c) n += source_index(y, x, c).has_value();
    }
  }
  return n * reshaped.co;
}

std::uint64_t ReshapeTransform::host_elements() const { return identity() ? 0 : reshaped_in.size(); }

ReshapeTransform reshape_layer(const engine::LayerSpec &spec, const Shape3 &in, std::size_t align) {
  engine::validate(spec);
  if (align == 0) fail(ErrorKind::kDomain, "reshape: alignment must be positive");
  ReshapeTransform t;
  t.original = spec;
  t.original_in = in;
  const Shape3 out = engine::conv_output_shape(in, spec);
  if (spec.filter == 1 && spec.stride == 1) {
    t.reshaped = spec;
    t.reshaped_in = in;
    return t;
  }
  const std::size_t valid = spec.filter * spec.filter * in.channels;
  const std::size_t cin = (valid + align - 1) / align * align;
  t.channel_map.resize(cin);
  for (std::size_t fh = 0, c = 0; fh < spec.filter; ++fh) {
    for (std::size_t fw = 0; fw < spec.filter; ++fw) {
      for (std::size_t ci = 0; ci < in.channels; ++ci, ++c) t.channel_map[c] = {fh, fw, ci, true};
    }
  }
  t.reshaped = spec;
  t.reshaped.filter = 1;
  t.reshaped.stride = 1;
  t.reshaped.padding = 0;
  t.reshaped_in = {out.height, out.width, cin};
  return t;
}

bool reshape_triggers(const engine::LayerSpec &spec, const Shape3 &in, const AccelConfig &cfg,
                      const perf::Calibration &calib, bool first_layer) {
  return calib.reshape_first_layer && first_layer && spec.stride >= calib.reshape_min_stride &&
         static_cast<double>(in.channels) < calib.reshape_max_ci_fraction * static_cast<double>(cfg.icp);
}

ReshapeTransform reshape_first_layer(const engine::LayerSpec &spec, const Shape3 &in,
                                     const AccelConfig &cfg, const perf::Calibration &calib,
                                     bool first_layer) {
  if (!first_layer) fail(ErrorKind::kNotApplicable, "reshape: only the first layer is reshaped");
  if (!reshape_triggers(spec, in, cfg, calib, first_layer)) {
    fail(ErrorKind::kNotApplicable, "reshape: trigger rule not met for Ci=" + std::to_string(in.channels) +
                                        " stride=" + std::to_string(spec.stride));
  }
  return reshape_layer(spec, in, cfg.icp);
}

}  // namespace accelsim::graph
