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

#include "accelsim/error.hpp"

namespace accelsim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBounds: return "bounds error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kCorruption: return "corruption error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kOverflow: return "accumulator overflow";
    case ErrorKind::kScheme: return "scheme mismatch";
    case ErrorKind::kConfigTooSmall: return "config too small";
    case ErrorKind::kNotApplicable: return "not applicable";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kLoad: return "load error";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kIo: return "io error";
  }
  return "error";
}

}  // namespace accelsim
