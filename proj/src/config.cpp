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

#include "accelsim/config.hpp"

#include <cmath>
#include <fmt/format.h>

#include "accelsim/error.hpp"
#include "accelsim/kv_file.hpp"

namespace accelsim {
namespace {

std::size_t *count_field(AccelConfig &cfg, std::string_view name) {
  if (name == "APACK") return &cfg.apack;
  if (name == "PPACK") return &cfg.ppack;
  if (name == "ICP") return &cfg.icp;
  if (name == "OCP") return &cfg.ocp;
  if (name == "PE_DSP") return &cfg.pe_dsp;
  if (name == "FILTER_MAX") return &cfg.filter_max;
  if (name == "WINxCHIN_PAD_MAX") return &cfg.win_x_chin_pad_max;
  if (name == "FILTERxFILTERxCHIN_MAX") return &cfg.filterxfilterxchin_max;
  if (name == "CHOUTxFILTERxFILTERxCHIN_MAX") return &cfg.chout_x_f_x_f_x_chin_max;
  if (name == "CHOUT_MAX") return &cfg.chout_max;
  if (name == "PWINxPCH_MAX") return &cfg.pwin_x_pch_max;
  if (name == "PCH_MAX") return &cfg.pch_max;
  return nullptr;
}

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

double get_param(const AccelConfig &cfg, std::string_view name) {
  if (name == "FREQ") return cfg.freq_mhz;
  auto *field = count_field(const_cast<AccelConfig &>(cfg), name);
  if (field == nullptr) fail(ErrorKind::kParse, "unknown config parameter " + std::string(name));
  return static_cast<double>(*field);
}

void set_param(AccelConfig &cfg, std::string_view name, double value) {
  if (name == "FREQ") {
    cfg.freq_mhz = value;
    return;
  }
  auto *field = count_field(cfg, name);
  if (field == nullptr) fail(ErrorKind::kParse, "unknown config parameter " + std::string(name));
  if (value < 0 || value != std::floor(value) || value > 1e15) {
    fail(ErrorKind::kParse, std::string(name) + " must be a nonnegative integer, got " +
                                fmt::format("{}", value));
  }
  *field = static_cast<std::size_t>(value);
}

std::vector<std::string> config_problems(const AccelConfig &cfg) {
  std::vector<std::string> problems;
  if (!(cfg.freq_mhz > 0) || !std::isfinite(cfg.freq_mhz)) problems.push_back("FREQ must be positive");
  for (auto [name, v] : {std::pair{"APACK", cfg.apack}, {"PPACK", cfg.ppack},
                         {"ICP", cfg.icp}, {"OCP", cfg.ocp}}) {
    if (!is_pow2(v)) problems.push_back(std::string(name) + " must be a power of two");
  }
  if (cfg.pe_dsp > cfg.ocp) problems.push_back("PE_DSP must not exceed OCP");
  if (cfg.filter_max != 1 && cfg.filter_max != 3) problems.push_back("FILTER_MAX must be 1 or 3");
  for (auto [name, v] :
       {std::pair{"WINxCHIN_PAD_MAX", cfg.win_x_chin_pad_max},
        {"FILTERxFILTERxCHIN_MAX", cfg.filterxfilterxchin_max},
        {"CHOUTxFILTERxFILTERxCHIN_MAX", cfg.chout_x_f_x_f_x_chin_max},
        {"CHOUT_MAX", cfg.chout_max},
        {"PWINxPCH_MAX", cfg.pwin_x_pch_max},
        {"PCH_MAX", cfg.pch_max}}) {
    if (v == 0) problems.push_back(std::string(name) + " must be positive");
  }
  return problems;
}

void validate(const AccelConfig &cfg) {
  auto problems = config_problems(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid accelerator config:";
  for (const auto &p : problems) msg += " " + p + ";";
  fail(ErrorKind::kValidation, msg);
}

AccelConfig parse_config(const std::string &text, const std::string &origin) {
  AccelConfig cfg;
  const KeyValues kv = parse_key_values(text, origin);
  for (const auto &[key, value] : kv) {
    if (key != "FREQ" && count_field(cfg, key) == nullptr) {
      fail(ErrorKind::kParse, origin + ": unknown config parameter " + key);
    }
    set_param(cfg, key, parse_number(value, origin + ": " + key));
  }
  for (auto key : kConfigKeys) {
    bool found = false;
    for (const auto &entry : kv) found = found || entry.first == key;
    if (!found) fail(ErrorKind::kParse, origin + ": missing config parameter " + std::string(key));
  }
  return cfg;
}

AccelConfig load_config(const std::filesystem::path &path) {
  return parse_config(read_text_file(path), path.string());
}

std::string format_config(const AccelConfig &cfg) {
  std::string out;
  for (auto key : kConfigKeys) out += fmt::format("{} = {}\n", key, get_param(cfg, key));
  return out;
}

AccelConfig implemented_config(int index) {
  AccelConfig cfg;  // defaults carry the shared OCM budgets
  struct Row {
    double freq;
    std::size_t icp, ocp, pack;
  };
  static constexpr Row kRows[] = {
      {100, 16, 8, 8},   {100, 16, 16, 8},  {100, 16, 16, 16},
      {100, 32, 16, 16}, {200, 32, 16, 16}, {300, 32, 16, 16},
  };
  if (index < 1 || index > 6) {
    fail(ErrorKind::kBounds, "implemented config index must be 1..6, got " + std::to_string(index));
  }
  const Row &r = kRows[index - 1];
  cfg.freq_mhz = r.freq;
  cfg.icp = r.icp;
  cfg.ocp = r.ocp;
  cfg.pe_dsp = r.ocp;
  cfg.apack = r.pack;
  cfg.ppack = r.pack;
  return cfg;
}

}  // namespace accelsim
