// Copyright 2026 The PAPA Tomography Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace papa {

// Numeric values are part of the C ABI (see papa.h) and must not change.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kInvalidDimension = 2,
  kInvalidKraus = 3,
  kOutOfRange = 4,
  kDegenerateInput = 5,
  kNotDecomposable = 6,
  kUnsupported = 7,
  kDiverged = 8,
  kParse = 9,
  kIo = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace papa
