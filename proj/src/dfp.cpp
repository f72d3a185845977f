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

#include "accelsim/dfp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace accelsim::dfp {
namespace {

using i128 = __int128;

constexpr int kMaxShift = 90;

i128 round_shift_right(i128 v, int s) {
  const i128 half = i128{1} << (s - 1);
  if (v >= 0) return (v + half) >> s;
  return -((-v + half) >> s);
}

i128 scale_pow2(i128 v, int s) {
  if (s > kMaxShift || s < -kMaxShift) {
    fail(ErrorKind::kDomain, "rescale shift " + std::to_string(s) + " out of range");
  }
  return s > 0 ? round_shift_right(v, s) : v * (i128{1} << -s);
}

std::int8_t saturate_wide(i128 v) {
  return static_cast<std::int8_t>(std::clamp<i128>(v, -128, 127));
}

}  // namespace

void validate(const DfpScheme &scheme, FracWindow window) {
  auto check = [&](int f, const char *name) {
    if (f < window.min || f > window.max) {
      fail(ErrorKind::kDomain, std::string(name) + " exponent " + std::to_string(f) +
                                   " outside [" + std::to_string(window.min) + ", " +
                                   std::to_string(window.max) + "]");
    }
  };
  check(scheme.input_frac, "input");
  check(scheme.weight_frac, "weight");
  check(scheme.bias_frac, "bias");
  check(scheme.output_frac, "output");
}

std::int8_t saturate_i8(std::int64_t v) {
  return static_cast<std::int8_t>(std::clamp<std::int64_t>(v, -128, 127));
}

std::int64_t shift_round(std::int64_t v, int shift) {
  constexpr i128 kLimit = i128{1} << 62;
  i128 r = scale_pow2(v, std::clamp(shift, -kMaxShift, kMaxShift));
  return static_cast<std::int64_t>(std::clamp<i128>(r, -kLimit, kLimit));
}

int choose_frac_bits(std::span<const float> data, FracWindow window) {
  if (data.empty()) fail(ErrorKind::kDomain, "choose_frac_bits: empty data");
  double max_abs = 0.0;
  for (float v : data) {
    if (!std::isfinite(v)) fail(ErrorKind::kDomain, "choose_frac_bits: non-finite value");
    max_abs = std::max(max_abs, std::fabs(static_cast<double>(v)));
  }
  if (max_abs == 0.0) return 7;
  int f = static_cast<int>(std::floor(std::log2(127.0 / max_abs)));
  // log2 may land one off near exact powers of two.
  while (std::ldexp(max_abs, f) > 127.0) --f;
  while (std::ldexp(max_abs, f + 1) <= 127.0) ++f;
  return std::clamp(f, window.min, window.max);
}

std::int8_t quantize_value(double x, int frac_bits) {
  if (std::isnan(x)) fail(ErrorKind::kDomain, "quantize: NaN input");
  const double scaled = std::round(std::ldexp(x, frac_bits));
  if (scaled >= 127.0) return 127;
  if (scaled <= -128.0) return -128;
  return static_cast<std::int8_t>(scaled);
}

double dequantize_value(std::int8_t raw, int frac_bits) {
  return std::ldexp(static_cast<double>(raw), -frac_bits);
}

QTensor3 quantize(const FTensor3 &t, int frac_bits) {
  std::vector<std::int8_t> raw;
  raw.reserve(t.values().size());
  for (float v : t.values()) raw.push_back(quantize_value(v, frac_bits));
  return QTensor3(t.shape(), std::move(raw), frac_bits);
}

FTensor3 dequantize(const QTensor3 &t) {
  std::vector<float> out;
  out.reserve(t.values().size());
  for (std::int8_t v : t.values()) {
    out.push_back(static_cast<float>(dequantize_value(v, t.frac_bits())));
  }
  return FTensor3(t.shape(), std::move(out));
}

std::int8_t rescale_acc(std::int32_t acc, const DfpScheme &scheme,
                        std::int8_t bias_raw) {
  // Align both addends exactly onto the finer scale, add, round once.
  const int acc_frac = scheme.input_frac + scheme.weight_frac;
  const int common = std::max(acc_frac, scheme.bias_frac);
  const i128 sum = scale_pow2(acc, acc_frac - common) +
                   scale_pow2(bias_raw, scheme.bias_frac - common);
  return saturate_wide(scale_pow2(sum, common - scheme.output_frac));
}

}  // namespace accelsim::dfp
