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

// 8-bit dynamic fixed-point (DFP). A value v with exponent f is stored as
// raw = v * 2^f; every tensor carries one exponent.

#ifndef ACCELSIM_DFP_HPP_
#define ACCELSIM_DFP_HPP_

#include <cstdint>
#include <span>

#include "accelsim/tensor.hpp"

namespace accelsim::dfp {

struct FracWindow {
  int min = -8;
  int max = 15;
};

struct DfpScheme {
  int input_frac = 0;
  int weight_frac = 0;
  int bias_frac = 0;
  int output_frac = 0;

  bool operator==(const DfpScheme &) const = default;
};

/// Throws kDomain when any exponent lies outside the window.
void validate(const DfpScheme &scheme, FracWindow window = {});

std::int8_t saturate_i8(std::int64_t v);

/// v * 2^-shift rounded half away from zero (shift > 0), or the exact
/// v * 2^-shift (shift <= 0). Results beyond +-2^62 are clamped.
std::int64_t shift_round(std::int64_t v, int shift);

/// Largest f with max|x| * 2^f <= 127, clamped to the window.
/// All-zero data gives 7. Non-finite values are a domain error.
int choose_frac_bits(std::span<const float> data, FracWindow window = {});

std::int8_t quantize_value(double x, int frac_bits);
double dequantize_value(std::int8_t raw, int frac_bits);

QTensor3 quantize(const FTensor3 &t, int frac_bits);
FTensor3 dequantize(const QTensor3 &t);

/// Accumulator-to-output conversion at the end of every convolution:
/// saturate(round(acc * 2^(fo-fi-fp) + bias * 2^(fo-bias_frac))).
std::int8_t rescale_acc(std::int32_t acc, const DfpScheme &scheme,
                        std::int8_t bias_raw);

}  // namespace accelsim::dfp

#endif  // ACCELSIM_DFP_HPP_
