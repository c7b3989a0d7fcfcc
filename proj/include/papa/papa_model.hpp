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

// The pairwise ansatz: an n-qubit process written as a product of arbitrary
// two-qubit processes, one per qubit pair, each parameterized by its chi
// matrix.
#pragma once

#include <vector>

#include "papa/channel.hpp"
#include "papa/gates.hpp"

namespace papa {

/// How the per-pair factors are multiplied. The default puts the (1,2)
/// factor leftmost, so it is applied last.
enum class FactorOrder { kFirstPairLast, kFirstPairFirst };

struct PapaFactor {
  QubitPair pair;
  ChiMatrix chi;
};

struct PapaModel {
  int n_qubits = 0;
  /// One factor per pair in lexicographic pair order.
  std::vector<PapaFactor> factors;

  /// Every factor is the identity process.
  static PapaModel identity(int n_qubits);

  /// Throws kInvalidArgument unless the factors cover all_pairs(n_qubits) in
  /// order with 16x16 chi matrices.
  void validate() const;

  const ChiMatrix& chi(QubitPair pair) const;
  ChiMatrix& chi(QubitPair pair);
};

/// Reals per factor: 16 diagonal entries plus 120 complex upper-triangle
/// entries.
inline constexpr int kParamsPerFactor = 256;

int parameter_count(int n_qubits);

/// Shared two-qubit Pauli basis.
const OperatorBasis& two_qubit_basis();

/// Chi matrix of the unitary process rho -> U rho U^dag for a 4x4 U.
ChiMatrix unitary_chi(const CMatrix& u);

/// Factor indices from leftmost to rightmost in the product.
std::vector<int> factor_sequence(int n_factors, FactorOrder order);

Superoperator build_superop(const PapaModel& model, FactorOrder order = FactorOrder::kFirstPairLast);

/// Two-qubit reduction of the model's process with all other qubits
/// maximally mixed. Depends on every factor, not only the one on `pair`.
ChoiState reduced_choi_of_model(const PapaModel& model, QubitPair pair,
                                FactorOrder order = FactorOrder::kFirstPairLast);

RVector pack(const PapaModel& model);
PapaModel unpack(const RVector& params, int n_qubits);

namespace detail {
/// Writes the Hermitian chi encoded by params[0..256) into chi.
void unpack_chi(const double* params, CMatrix& chi);
void pack_chi(const CMatrix& chi, double* params);
}  // namespace detail

/// Model that reproduces `gate` exactly. The CNOT goes to its own pair's
/// factor; each single-qubit gate goes to the lowest-index pair containing
/// its qubit; all remaining factors are the identity.
PapaModel ideal_initial_guess(const GateLayer& gate, int n_qubits);

}  // namespace papa
