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


// Command-line front end: quantize, validate, run, estimate and sweep.

#ifndef ACCELSIM_CLI_HPP_
#define ACCELSIM_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "accelsim/error.hpp"

namespace accelsim::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kValidationError = 3,
  kLoadError = 4,
  kInternalError = 5,
};

int exit_code(ErrorKind kind);

/// `args` excludes the program name. Reports go to `out`, diagnostics to
/// `err`; returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace accelsim::cli

#endif  // ACCELSIM_CLI_HPP_
