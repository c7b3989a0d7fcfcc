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

#include <map>

#include "papa/channel.hpp"

namespace papa {

/// Characterized two-qubit Choi states, one per qubit pair.
struct TomographyData {
  int n_qubits = 0;
  std::map<QubitPair, ChoiState> sigma;

  /// Throws unless every pair of n_qubits has a 16x16 entry.
  void validate() const;
  const ChoiState& at(QubitPair pair) const;
};

}  // namespace papa
