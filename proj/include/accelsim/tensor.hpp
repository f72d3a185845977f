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

#ifndef ACCELSIM_TENSOR_HPP_
#define ACCELSIM_TENSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "accelsim/error.hpp"

namespace accelsim {

/// Activation volume geometry. Channel is the fastest-changing dimension.
struct Shape3 {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t size() const { return height * width * channels; }
  bool operator==(const Shape3 &) const = default;
};

std::string to_string(const Shape3 &shape);

/// Dense [H][X][C] volume. Immutable after construction apart from the
/// explicit mutable accessors used by builders.
template <typename T>
class Tensor3 {
 public:
  using value_type = T;

  Tensor3() = default;

  Tensor3(Shape3 shape, std::vector<T> values)
      : shape_(shape), values_(std::move(values)) {
    if (shape_.height == 0 || shape_.width == 0 || shape_.channels == 0) {
      fail(ErrorKind::kShape, "tensor dimensions must be positive, got " +
                                  to_string(shape_));
    }
    if (values_.size() != shape_.size()) {
      fail(ErrorKind::kShape,
           "tensor payload has " + std::to_string(values_.size()) +
               " elements, geometry " + to_string(shape_) + " needs " +
               std::to_string(shape_.size()));
    }
  }

  explicit Tensor3(Shape3 shape) : Tensor3(shape, std::vector<T>(shape.size())) {}

  const Shape3 &shape() const { return shape_; }
  std::size_t height() const { return shape_.height; }
  std::size_t width() const { return shape_.width; }
  std::size_t channels() const { return shape_.channels; }

  std::size_t index(std::size_t y, std::size_t x, std::size_t c) const {
    return (y * shape_.width + x) * shape_.channels + c;
  }

  T at(std::size_t y, std::size_t x, std::size_t c) const {
    check_bounds(y, x, c);
    return values_[index(y, x, c)];
  }

  T &mutable_at(std::size_t y, std::size_t x, std::size_t c) {
    check_bounds(y, x, c);
    return values_[index(y, x, c)];
  }

  std::span<const T> values() const { return values_; }
  std::span<T> mutable_values() { return values_; }

  // The contiguous channel vector of one 3D pixel.
  std::span<const T> pixel(std::size_t y, std::size_t x) const {
    check_bounds(y, x, 0);
    return std::span<const T>(values_).subspan(index(y, x, 0), shape_.channels);
  }

  bool operator==(const Tensor3 &) const = default;

 private:
  void check_bounds(std::size_t y, std::size_t x, std::size_t c) const {
    if (y >= shape_.height || x >= shape_.width || c >= shape_.channels) {
      fail(ErrorKind::kBounds, "index (" + std::to_string(y) + ", " +
                                   std::to_string(x) + ", " + std::to_string(c) +
                                   ") outside " + to_string(shape_));
    }
  }

  Shape3 shape_;
  std::vector<T> values_;
};

using FTensor3 = Tensor3<float>;

/// 8-bit dynamic fixed-point activation: real value = raw * 2^-frac_bits.
class QTensor3 : public Tensor3<std::int8_t> {
 public:
  QTensor3() = default;
  QTensor3(Shape3 shape, std::vector<std::int8_t> values, int frac_bits)
      : Tensor3<std::int8_t>(shape, std::move(values)), frac_bits_(frac_bits) {}
  QTensor3(Shape3 shape, int frac_bits)
      : Tensor3<std::int8_t>(shape), frac_bits_(frac_bits) {}

  int frac_bits() const { return frac_bits_; }

  bool operator==(const QTensor3 &) const = default;

 private:
  int frac_bits_ = 0;
};

struct FilterGeom {
  std::size_t co = 0;
  std::size_t fh = 0;
  std::size_t fw = 0;
  std::size_t ci = 0;

  std::size_t weight_count() const { return co * fh * fw * ci; }
  bool operator==(const FilterGeom &) const = default;
};

std::string to_string(const FilterGeom &geom);

/// Weights in [Co][Fh][Fw][Ci] order plus one bias per output channel.
template <typename T>
class FilterBank {
 public:
  FilterBank() = default;

  FilterBank(FilterGeom geom, std::vector<T> weights, std::vector<T> biases)
      : geom_(geom), weights_(std::move(weights)), biases_(std::move(biases)) {
    if (geom_.co == 0 || geom_.ci == 0) {
      fail(ErrorKind::kShape, "filter bank with zero channels: " + to_string(geom_));
    }
    if (!((geom_.fh == 1 && geom_.fw == 1) || (geom_.fh == 3 && geom_.fw == 3))) {
      fail(ErrorKind::kShape,
           "filter must be 1x1 or 3x3, got " + to_string(geom_));
    }
    if (weights_.size() != geom_.weight_count()) {
      fail(ErrorKind::kShape, "filter bank " + to_string(geom_) + " needs " +
                                  std::to_string(geom_.weight_count()) +
                                  " weights, got " +
                                  std::to_string(weights_.size()));
    }
    if (biases_.size() != geom_.co) {
      fail(ErrorKind::kShape, "filter bank " + to_string(geom_) + " needs " +
                                  std::to_string(geom_.co) + " biases, got " +
                                  std::to_string(biases_.size()));
    }
  }

  const FilterGeom &geom() const { return geom_; }
  std::size_t co() const { return geom_.co; }
  std::size_t fh() const { return geom_.fh; }
  std::size_t fw() const { return geom_.fw; }
  std::size_t ci() const { return geom_.ci; }

  std::size_t weight_index(std::size_t o, std::size_t h, std::size_t w,
                           std::size_t i) const {
    return ((o * geom_.fh + h) * geom_.fw + w) * geom_.ci + i;
  }

  T weight(std::size_t o, std::size_t h, std::size_t w, std::size_t i) const {
    return weights_[weight_index(o, h, w, i)];
  }

  // Contiguous Ci run for one filter tap.
  std::span<const T> tap(std::size_t o, std::size_t h, std::size_t w) const {
    return std::span<const T>(weights_).subspan(weight_index(o, h, w, 0), geom_.ci);
  }

  T bias(std::size_t o) const { return biases_[o]; }

  std::span<const T> weights() const { return weights_; }
  std::span<const T> biases() const { return biases_; }

  bool operator==(const FilterBank &) const = default;

 protected:
  // Output channels [begin, end) as their own bank.
  std::pair<std::vector<T>, std::vector<T>> slice(std::size_t begin,
                                                  std::size_t end) const {
    if (begin >= end || end > geom_.co) {
      fail(ErrorKind::kBounds, "output-channel slice [" + std::to_string(begin) +
                                   ", " + std::to_string(end) + ") outside Co=" +
                                   std::to_string(geom_.co));
    }
    const std::size_t per_co = geom_.fh * geom_.fw * geom_.ci;
    std::vector<T> w(weights_.begin() + begin * per_co,
                     weights_.begin() + end * per_co);
    std::vector<T> b(biases_.begin() + begin, biases_.begin() + end);
    return {std::move(w), std::move(b)};
  }

  FilterGeom geom_;
  std::vector<T> weights_;
  std::vector<T> biases_;
};

class QFilterBank : public FilterBank<std::int8_t> {
 public:
  QFilterBank() = default;
  QFilterBank(FilterGeom geom, std::vector<std::int8_t> weights,
              std::vector<std::int8_t> biases, int weight_frac_bits,
              int bias_frac_bits)
      : FilterBank<std::int8_t>(geom, std::move(weights), std::move(biases)),
        weight_frac_bits_(weight_frac_bits),
        bias_frac_bits_(bias_frac_bits) {}

  int weight_frac_bits() const { return weight_frac_bits_; }
  int bias_frac_bits() const { return bias_frac_bits_; }

  QFilterBank slice_co(std::size_t begin, std::size_t end) const;

  bool operator==(const QFilterBank &) const = default;

 private:
  int weight_frac_bits_ = 0;
  int bias_frac_bits_ = 0;
};

using FFilterBank = FilterBank<float>;

}  // namespace accelsim

#endif  // ACCELSIM_TENSOR_HPP_
