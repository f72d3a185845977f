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

#include "accelsim/tensor.hpp"

namespace accelsim {

std::string to_string(const Shape3 &shape) {
  return std::to_string(shape.height) + "x" + std::to_string(shape.width) + "x" +
         std::to_string(shape.channels);
}

std::string to_string(const FilterGeom &geom) {
  return "[" + std::to_string(geom.co) + "][" + std::to_string(geom.fh) + "][" +
         std::to_string(geom.fw) + "][" + std::to_string(geom.ci) + "]";
}

QFilterBank QFilterBank::slice_co(std::size_t begin, std::size_t end) const {
  auto [w, b] = slice(begin, end);
  FilterGeom g = geom_;
  g.co = end - begin;
  return QFilterBank(g, std::move(w), std::move(b), weight_frac_bits_,
                     bias_frac_bits_);
}

}  // namespace accelsim
