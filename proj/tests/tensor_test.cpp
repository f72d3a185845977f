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

#include <gtest/gtest.h>

#include <filesystem>

#include "accelsim/tensor.hpp"
#include "accelsim/tensor_io.hpp"
#include "oracles.hpp"

namespace accelsim {
namespace {

std::filesystem::path temp_path(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("accelsim_tensor_test_" + name);
}

TEST(QTensor3Test, SingleElement) {
  QTensor3 t({1, 1, 1}, {5}, 0);
  EXPECT_EQ(t.at(0, 0, 0), 5);
}

TEST(QTensor3Test, ChannelFastestIndex) {
  std::vector<std::int8_t> v(12);
  for (int i = 0; i < 12; ++i) v[i] = static_cast<std::int8_t>(i);
  QTensor3 t({2, 2, 3}, v, 0);
  EXPECT_EQ(t.at(1, 0, 2), v[8]);
}

TEST(QTensor3Test, ExhaustiveLookupMatchesNestedConstruction) {
  gen::Rng rng(7);
  // Build [y][x][c] nested first, flatten by hand, compare every index.
  std::int8_t nested[4][5][7];
  std::vector<std::int8_t> flat;
  for (auto &row : nested)
    for (auto &px : row)
      for (auto &c : px) {
        c = static_cast<std::int8_t>(gen::uniform(rng, -128, 127));
        flat.push_back(c);
      }
  QTensor3 t({4, 5, 7}, flat, 3);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 5; ++x)
      for (std::size_t c = 0; c < 7; ++c) EXPECT_EQ(t.at(y, x, c), nested[y][x][c]);
}

TEST(QTensor3Test, OutOfRangeIsBoundsError) {
  QTensor3 t({2, 2, 3}, 0);
  try {
    t.at(2, 0, 0);
    FAIL() << "expected bounds error";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBounds);
  }
  EXPECT_THROW(t.at(0, 0, 3), Error);
}

TEST(QTensor3Test, RejectsZeroDimensionsAndBadLength) {
  EXPECT_THROW(QTensor3({0, 2, 2}, 0), Error);
  EXPECT_THROW(QTensor3({2, 0, 2}, 0), Error);
  EXPECT_THROW(QTensor3({2, 2, 0}, 0), Error);
  EXPECT_THROW(QTensor3({2, 2, 2}, std::vector<std::int8_t>(7), 0), Error);
}

TEST(QFilterBankTest, GeometryInvariants) {
  EXPECT_THROW(QFilterBank({2, 2, 2, 1}, std::vector<std::int8_t>(8), {0, 0}, 0, 0), Error);
  EXPECT_THROW(QFilterBank({2, 1, 1, 3}, std::vector<std::int8_t>(5), {0, 0}, 0, 0), Error);
  EXPECT_THROW(QFilterBank({2, 1, 1, 3}, std::vector<std::int8_t>(6), {0}, 0, 0), Error);
  QFilterBank ok({2, 3, 3, 2}, std::vector<std::int8_t>(36), {1, 2}, 4, 3);
  EXPECT_EQ(ok.weight_index(1, 2, 1, 0), ((1 * 3 + 2) * 3 + 1) * 2u);
}

TEST(QFilterBankTest, SliceKeepsChannelsAndExponents) {
  gen::Rng rng(3);
  QFilterBank b = gen::bank(rng, {5, 3, 3, 4}, 6, 2);
  QFilterBank s = b.slice_co(2, 4);
  ASSERT_EQ(s.co(), 2u);
  EXPECT_EQ(s.weight_frac_bits(), 6);
  EXPECT_EQ(s.bias_frac_bits(), 2);
  for (std::size_t o = 0; o < 2; ++o) {
    EXPECT_EQ(s.bias(o), b.bias(o + 2));
    for (std::size_t h = 0; h < 3; ++h)
      for (std::size_t w = 0; w < 3; ++w)
        for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.weight(o, h, w, i), b.weight(o + 2, h, w, i));
  }
  EXPECT_THROW(b.slice_co(3, 6), Error);
}

TEST(TensorFileTest, RoundTripIsBitExact) {
  gen::Rng rng(11);
  // Property: save then load is the identity for arbitrary tensors.
  for (int trial = 0; trial < 20; ++trial) {
    Shape3 shape{static_cast<std::size_t>(gen::uniform(rng, 1, 9)),
                 static_cast<std::size_t>(gen::uniform(rng, 1, 9)),
                 static_cast<std::size_t>(gen::uniform(rng, 1, 17))};
    QTensor3 t = gen::tensor(rng, shape, gen::uniform(rng, -8, 15));
    auto path = temp_path("rt.qt3");
    save_tensor(t, path);
    EXPECT_EQ(load_tensor(path), t);
  }
  QTensor3 big = gen::tensor(rng, {8, 8, 16}, 5);
  auto path = temp_path("big.qt3");
  save_tensor(big, path);
  EXPECT_EQ(load_tensor(path), big);
}

TEST(TensorFileTest, FloatRoundTrip) {
  FTensor3 f({2, 1, 2}, {0.5f, -1.25f, 3.0e-7f, 1e9f});
  auto path = temp_path("f.qt3");
  save_tensor(f, path);
  EXPECT_EQ(load_float_tensor(path), f);
  EXPECT_THROW(load_tensor(path), Error);
}

TEST(TensorFileTest, HeaderLayout) {
  QTensor3 t({2, 2, 3}, std::vector<std::int8_t>(12, -1), -3);
  auto bytes = encode_tensor(t);
  ASSERT_EQ(bytes.size(), 19u + 12u);
  EXPECT_EQ(bytes[0], 'Q');
  EXPECT_EQ(bytes[3], 0);
  EXPECT_EQ(bytes[4], 1);   // version
  EXPECT_EQ(bytes[5], 0);   // int8
  EXPECT_EQ(static_cast<std::int8_t>(bytes[6]), -3);
  EXPECT_EQ(bytes[7], 2);   // H little-endian
  EXPECT_EQ(bytes[11], 2);  // X
  EXPECT_EQ(bytes[15], 3);  // C
  AnyTensor back = decode_tensor(bytes);
  EXPECT_EQ(std::get<QTensor3>(back), t);
}

TEST(TensorFileTest, CorruptionAndFormatErrors) {
  QTensor3 t({2, 2, 3}, std::vector<std::int8_t>(12, 4), 0);
  auto bytes = encode_tensor(t);

  auto truncated = bytes;
  truncated.pop_back();
  try {
    decode_tensor(truncated);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCorruption);
  }

  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(decode_tensor(trailing), Error);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  try {
    decode_tensor(bad_magic);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }

  auto bad_version = bytes;
  bad_version[4] = 2;
  try {
    decode_tensor(bad_version);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
}

TEST(FilterFileTest, RoundTripAndTruncation) {
  gen::Rng rng(5);
  QFilterBank b = gen::bank(rng, {4, 3, 3, 5}, 7, -2);
  auto path = temp_path("b.qfb");
  save_filter_bank(b, path);
  EXPECT_EQ(load_filter_bank(path), b);
  EXPECT_EQ(detect_file_kind(path), FileKind::kFilterBank);

  auto bytes = encode_filter_bank(b);
  bytes.resize(bytes.size() - 1);  // lose one bias byte
  try {
    decode_filter_bank(bytes);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCorruption);
  }

  FFilterBank fb({1, 1, 1, 2}, {0.25f, -0.5f}, {1.5f});
  save_filter_bank(fb, path);
  EXPECT_EQ(detect_file_kind(path), FileKind::kFloatFilterBank);
  EXPECT_EQ(load_float_filter_bank(path), fb);
}

TEST(FilterFileTest, IllegalGeometryInFileIsCorruption) {
  // A 2x2 filter passes the length check but violates the bank invariant.
  std::vector<std::uint8_t> bytes = {'Q', 'F', 'B', 0, 1, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 1, 2, 3, 4, 9};
  try {
    decode_filter_bank(bytes);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCorruption);
  }
}

}  // namespace
}  // namespace accelsim
