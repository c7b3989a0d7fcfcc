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

#include "papa/tomography.hpp"

namespace papa {

void TomographyData::validate() const {
  if (n_qubits < 2) throw Error(ErrorCode::kInvalidArgument, "tomography data needs at least two qubits");
  for (QubitPair p : all_pairs(n_qubits)) {
    auto it = sigma.find(p);
    if (it == sigma.end()) throw Error(ErrorCode::kInvalidArgument, "tomography data missing pair " + p.label());
    if (it->second.data.rows() != 16 || it->second.data.cols() != 16) {
      throw Error(ErrorCode::kInvalidDimension, "tomography data for " + p.label() + " is not 16x16");
    }
  }
  if (sigma.size() != all_pairs(n_qubits).size()) {
    throw Error(ErrorCode::kInvalidArgument, "tomography data has entries for pairs outside the register");
  }
}

const ChoiState& TomographyData::at(QubitPair pair) const {
  auto it = sigma.find(pair);
  if (it == sigma.end()) throw Error(ErrorCode::kInvalidArgument, "tomography data missing pair " + pair.label());
  return it->second;
}

}  // namespace papa
