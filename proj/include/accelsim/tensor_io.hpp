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

// Binary tensor and filter-bank files.
//
//   QT3: "QT3\0" u8 version=1, u8 kind (0=int8, 1=float32 LE), i8 frac_bits,
//        u32 H, u32 X, u32 C (LE), then H*X*C elements channel-fastest.
//   QFB: "QFB\0" u8 version=1, i8 weight_frac_bits, i8 bias_frac_bits,
//        u32 Co, Fh, Fw, Ci (LE), int8 weights [Co][Fh][Fw][Ci], int8 biases.
//   FFB: same header as QFB with magic "FFB\0" and float32 payloads; the
//        exponent bytes are written as zero and ignored on read.

#ifndef ACCELSIM_TENSOR_IO_HPP_
#define ACCELSIM_TENSOR_IO_HPP_

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "accelsim/tensor.hpp"

namespace accelsim {

using AnyTensor = std::variant<QTensor3, FTensor3>;

inline constexpr std::uint8_t kTensorFileVersion = 1;
inline constexpr std::uint8_t kFilterFileVersion = 1;

std::vector<std::uint8_t> encode_tensor(const QTensor3 &t);
std::vector<std::uint8_t> encode_tensor(const FTensor3 &t);
AnyTensor decode_tensor(std::span<const std::uint8_t> bytes,
                        const std::string &origin = "<memory>");

std::vector<std::uint8_t> encode_filter_bank(const QFilterBank &bank);
std::vector<std::uint8_t> encode_filter_bank(const FFilterBank &bank);
QFilterBank decode_filter_bank(std::span<const std::uint8_t> bytes,
                               const std::string &origin = "<memory>");
FFilterBank decode_float_filter_bank(std::span<const std::uint8_t> bytes,
                                     const std::string &origin = "<memory>");

void save_tensor(const QTensor3 &t, const std::filesystem::path &path);
void save_tensor(const FTensor3 &t, const std::filesystem::path &path);
void save_tensor(const AnyTensor &t, const std::filesystem::path &path);

/// Loads an int8 tensor; a float32 file is a format error here.
QTensor3 load_tensor(const std::filesystem::path &path);
FTensor3 load_float_tensor(const std::filesystem::path &path);
AnyTensor load_any_tensor(const std::filesystem::path &path);

void save_filter_bank(const QFilterBank &bank, const std::filesystem::path &path);
void save_filter_bank(const FFilterBank &bank, const std::filesystem::path &path);
QFilterBank load_filter_bank(const std::filesystem::path &path);
FFilterBank load_float_filter_bank(const std::filesystem::path &path);

enum class FileKind { kTensor, kFilterBank, kFloatFilterBank, kUnknown };

/// Sniffs the magic bytes; unreadable files report kUnknown.
FileKind detect_file_kind(const std::filesystem::path &path);

std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path,
                std::span<const std::uint8_t> bytes);

}  // namespace accelsim

#endif  // ACCELSIM_TENSOR_IO_HPP_
