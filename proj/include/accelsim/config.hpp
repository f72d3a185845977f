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

#ifndef ACCELSIM_CONFIG_HPP_
#define ACCELSIM_CONFIG_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace accelsim {

/// Accelerator template parameters. Budgets are element counts of the
/// corresponding on-chip memories (one byte per 8-bit element).
struct AccelConfig {
  double freq_mhz = 100.0;              // FREQ
  std::size_t apack = 8;                // APACK: activations per beat, MPOOL channel factor
  std::size_t ppack = 8;                // PPACK: weights per beat
  std::size_t icp = 16;                 // ICP: multiplies per PE
  std::size_t ocp = 8;                  // OCP: number of PEs
  std::size_t pe_dsp = 8;               // PE_DSP: PEs built from DSP blocks
  std::size_t filter_max = 3;           // FILTER_MAX: IACT-ROW rows
  std::size_t win_x_chin_pad_max = 15360;         // WINxCHIN_PAD_MAX: IACT-ROW row
  std::size_t filterxfilterxchin_max = 4608;      // FILTERxFILTERxCHIN_MAX: Window OCM
  std::size_t chout_x_f_x_f_x_chin_max = 147456;  // CHOUTxFILTERxFILTERxCHIN_MAX: Weights OCM
  std::size_t chout_max = 512;          // CHOUT_MAX: OUT-PIXEL / Biases OCM
  std::size_t pwin_x_pch_max = 14336;   // PWINxPCH_MAX: CURRENT/RESULT-ROW OCM
  std::size_t pch_max = 512;            // PCH_MAX: CURRENT/RESULT-PIXEL OCM

  std::size_t macs_per_cycle() const { return icp * ocp; }

  bool operator==(const AccelConfig &) const = default;
};

/// Parameter names in file order.
inline constexpr std::array<std::string_view, 13> kConfigKeys = {
    "FREQ",
    "APACK",
    "PPACK",
    "ICP",
    "OCP",
    "PE_DSP",
    "FILTER_MAX",
    "WINxCHIN_PAD_MAX",
    "FILTERxFILTERxCHIN_MAX",
    "CHOUTxFILTERxFILTERxCHIN_MAX",
    "CHOUT_MAX",
    "PWINxPCH_MAX",
    "PCH_MAX",
};

double get_param(const AccelConfig &cfg, std::string_view name);
/// Unknown names, negative or fractional counts are parse errors.
void set_param(AccelConfig &cfg, std::string_view name, double value);

/// Empty when the configuration satisfies every invariant.
std::vector<std::string> config_problems(const AccelConfig &cfg);
/// Throws kValidation listing every problem.
void validate(const AccelConfig &cfg);

/// Every key must be present exactly once.
AccelConfig parse_config(const std::string &text, const std::string &origin);
AccelConfig load_config(const std::filesystem::path &path);
std::string format_config(const AccelConfig &cfg);

/// The six implemented design points (1-based index). They share one set of
/// OCM budgets large enough for the four reference workloads.
AccelConfig implemented_config(int index);

}  // namespace accelsim

#endif  // ACCELSIM_CONFIG_HPP_
