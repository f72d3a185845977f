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

#include "accelsim/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace accelsim {
namespace {

constexpr std::array<std::uint8_t, 4> kTensorMagic = {'Q', 'T', '3', 0};
constexpr std::array<std::uint8_t, 4> kFilterMagic = {'Q', 'F', 'B', 0};
constexpr std::array<std::uint8_t, 4> kFloatFilterMagic = {'F', 'F', 'B', 0};
constexpr std::size_t kTensorHeaderSize = 4 + 3 + 12;
constexpr std::size_t kFilterHeaderSize = 4 + 3 + 16;

constexpr std::uint8_t kKindInt8 = 0;
constexpr std::uint8_t kKindFloat32 = 1;

static_assert(std::endian::native == std::endian::little,
              "payload encoding assumes a little-endian host");

class Writer {
 public:
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void i8(int v) { out_.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v))); }
  void u32(std::size_t v) {
    if (v > 0xffffffffu) fail(ErrorKind::kFormat, "dimension does not fit in u32");
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
  void f32(float v) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> in, const std::string &origin)
      : in_(in), origin_(origin) {}

  std::size_t remaining() const { return in_.size() - pos_; }

  void need(std::size_t n, const char *what) const {
    if (remaining() < n) {
      fail(ErrorKind::kCorruption, origin_ + ": truncated " + what + " (need " +
                                       std::to_string(n) + " bytes, have " +
                                       std::to_string(remaining()) + ")");
    }
  }
  std::uint8_t u8() { need(1, "header"); return in_[pos_++]; }
  int i8() { return static_cast<std::int8_t>(u8()); }
  std::size_t u32() {
    need(4, "header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{in_[pos_++]} << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n, const char *what) {
    need(n, what);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  const std::string &origin() const { return origin_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::string origin_;
};

std::vector<std::int8_t> int8_payload(std::span<const std::uint8_t> raw) {
  std::vector<std::int8_t> out(raw.size());
  std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

std::vector<float> float_payload(std::span<const std::uint8_t> raw) {
  std::vector<float> out(raw.size() / 4);
  std::memcpy(out.data(), raw.data(), out.size() * 4);
  return out;
}

void check_magic(Reader &r, const std::array<std::uint8_t, 4> &magic,
                 const char *name) {
  if (r.remaining() < 4) {
    fail(ErrorKind::kFormat, r.origin() + ": too short for a " + name + " file");
  }
  auto m = r.take(4, "magic");
  if (!std::equal(m.begin(), m.end(), magic.begin())) {
    fail(ErrorKind::kFormat, r.origin() + ": bad magic, not a " + name + " file");
  }
}

void check_trailing(const Reader &r) {
  if (r.remaining() != 0) {
    fail(ErrorKind::kCorruption, r.origin() + ": " + std::to_string(r.remaining()) +
                                     " trailing bytes after payload");
  }
}

struct FilterHeader {
  FilterGeom geom;
  int weight_frac = 0;
  int bias_frac = 0;
};

FilterHeader read_filter_header(Reader &r, const std::array<std::uint8_t, 4> &magic,
                                const char *name) {
  check_magic(r, magic, name);
  const std::uint8_t version = r.u8();
  if (version != kFilterFileVersion) {
    fail(ErrorKind::kFormat, r.origin() + ": unsupported " + name + " version " +
                                 std::to_string(version));
  }
  FilterHeader h;
  h.weight_frac = r.i8();
  h.bias_frac = r.i8();
  h.geom.co = r.u32();
  h.geom.fh = r.u32();
  h.geom.fw = r.u32();
  h.geom.ci = r.u32();
  return h;
}

void write_filter_header(Writer &w, const std::array<std::uint8_t, 4> &magic,
                         const FilterGeom &g, int wf, int bf) {
  w.bytes(magic);
  w.u8(kFilterFileVersion);
  w.i8(wf);
  w.i8(bf);
  w.u32(g.co);
  w.u32(g.fh);
  w.u32(g.fw);
  w.u32(g.ci);
}

template <typename Bank>
Bank make_bank(const std::string &origin, auto &&build) {
  try {
    return build();
  } catch (const Error &e) {
    fail(ErrorKind::kCorruption, origin + ": " + e.what());
  }
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const QTensor3 &t) {
  Writer w;
  w.bytes(kTensorMagic);
  w.u8(kTensorFileVersion);
  w.u8(kKindInt8);
  w.i8(t.frac_bits());
  w.u32(t.height());
  w.u32(t.width());
  w.u32(t.channels());
  auto v = t.values();
  w.bytes({reinterpret_cast<const std::uint8_t *>(v.data()), v.size()});
  return w.take();
}

std::vector<std::uint8_t> encode_tensor(const FTensor3 &t) {
  Writer w;
  w.bytes(kTensorMagic);
  w.u8(kTensorFileVersion);
  w.u8(kKindFloat32);
  w.i8(0);
  w.u32(t.height());
  w.u32(t.width());
  w.u32(t.channels());
  for (float v : t.values()) w.f32(v);
  return w.take();
}

AnyTensor decode_tensor(std::span<const std::uint8_t> bytes,
                        const std::string &origin) {
  Reader r(bytes, origin);
  check_magic(r, kTensorMagic, "QT3 tensor");
  const std::uint8_t version = r.u8();
  if (version != kTensorFileVersion) {
    fail(ErrorKind::kFormat, origin + ": unsupported QT3 version " + std::to_string(version));
  }
  const std::uint8_t kind = r.u8();
  const int frac = r.i8();
  Shape3 shape;
  shape.height = r.u32();
  shape.width = r.u32();
  shape.channels = r.u32();
  if (shape.size() == 0) {
    fail(ErrorKind::kCorruption, origin + ": zero dimension in header " + to_string(shape));
  }
  if (kind == kKindInt8) {
    auto payload = r.take(shape.size(), "payload");
    check_trailing(r);
    return QTensor3(shape, int8_payload(payload), frac);
  }
  if (kind == kKindFloat32) {
    auto payload = r.take(shape.size() * 4, "payload");
    check_trailing(r);
    return FTensor3(shape, float_payload(payload));
  }
  fail(ErrorKind::kFormat, origin + ": unknown element kind " + std::to_string(kind));
}

std::vector<std::uint8_t> encode_filter_bank(const QFilterBank &bank) {
  Writer w;
  write_filter_header(w, kFilterMagic, bank.geom(), bank.weight_frac_bits(),
                      bank.bias_frac_bits());
  auto wt = bank.weights();
  auto bs = bank.biases();
  w.bytes({reinterpret_cast<const std::uint8_t *>(wt.data()), wt.size()});
  w.bytes({reinterpret_cast<const std::uint8_t *>(bs.data()), bs.size()});
  return w.take();
}

std::vector<std::uint8_t> encode_filter_bank(const FFilterBank &bank) {
  Writer w;
  write_filter_header(w, kFloatFilterMagic, bank.geom(), 0, 0);
  for (float v : bank.weights()) w.f32(v);
  for (float v : bank.biases()) w.f32(v);
  return w.take();
}

QFilterBank decode_filter_bank(std::span<const std::uint8_t> bytes,
                               const std::string &origin) {
  Reader r(bytes, origin);
  FilterHeader h = read_filter_header(r, kFilterMagic, "QFB filter-bank");
  auto weights = r.take(h.geom.weight_count(), "weight payload");
  auto biases = r.take(h.geom.co, "bias payload");
  check_trailing(r);
  return make_bank<QFilterBank>(origin, [&] {
    return QFilterBank(h.geom, int8_payload(weights), int8_payload(biases),
                       h.weight_frac, h.bias_frac);
  });
}

FFilterBank decode_float_filter_bank(std::span<const std::uint8_t> bytes,
                                     const std::string &origin) {
  Reader r(bytes, origin);
  FilterHeader h = read_filter_header(r, kFloatFilterMagic, "FFB filter-bank");
  auto weights = r.take(h.geom.weight_count() * 4, "weight payload");
  auto biases = r.take(h.geom.co * 4, "bias payload");
  check_trailing(r);
  return make_bank<FFilterBank>(origin, [&] {
    return FFilterBank(h.geom, float_payload(weights), float_payload(biases));
  });
}

std::vector<std::uint8_t> read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, path.string() + ": cannot open for reading");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path &path,
                std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::kIo, path.string() + ": write failed");
}

void save_tensor(const QTensor3 &t, const std::filesystem::path &path) {
  write_file(path, encode_tensor(t));
}

void save_tensor(const FTensor3 &t, const std::filesystem::path &path) {
  write_file(path, encode_tensor(t));
}

void save_tensor(const AnyTensor &t, const std::filesystem::path &path) {
  std::visit([&](const auto &v) { save_tensor(v, path); }, t);
}

AnyTensor load_any_tensor(const std::filesystem::path &path) {
  return decode_tensor(read_file(path), path.string());
}

QTensor3 load_tensor(const std::filesystem::path &path) {
  AnyTensor t = load_any_tensor(path);
  if (auto *q = std::get_if<QTensor3>(&t)) return std::move(*q);
  fail(ErrorKind::kFormat, path.string() + ": expected an int8 tensor, found float32");
}

FTensor3 load_float_tensor(const std::filesystem::path &path) {
  AnyTensor t = load_any_tensor(path);
  if (auto *f = std::get_if<FTensor3>(&t)) return std::move(*f);
  fail(ErrorKind::kFormat, path.string() + ": expected a float32 tensor, found int8");
}

void save_filter_bank(const QFilterBank &bank, const std::filesystem::path &path) {
  write_file(path, encode_filter_bank(bank));
}

void save_filter_bank(const FFilterBank &bank, const std::filesystem::path &path) {
  write_file(path, encode_filter_bank(bank));
}

QFilterBank load_filter_bank(const std::filesystem::path &path) {
  return decode_filter_bank(read_file(path), path.string());
}

FFilterBank load_float_filter_bank(const std::filesystem::path &path) {
  return decode_float_filter_bank(read_file(path), path.string());
}

FileKind detect_file_kind(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::array<char, 4> m{};
  if (!in.read(m.data(), 4)) return FileKind::kUnknown;
  auto is = [&](const std::array<std::uint8_t, 4> &magic) {
    return std::equal(m.begin(), m.end(), magic.begin(),
                      [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; });
  };
  if (is(kTensorMagic)) return FileKind::kTensor;
  if (is(kFilterMagic)) return FileKind::kFilterBank;
  if (is(kFloatFilterMagic)) return FileKind::kFloatFilterBank;
  return FileKind::kUnknown;
}

}  // namespace accelsim
