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

#include <optional>
#include <string>
#include <vector>

#include "papa/channel.hpp"

namespace papa {

enum class Pauli { I, X, Y, Z };

Pauli pauli_from_char(char c);
char pauli_char(Pauli p);
CMatrix pauli_matrix(Pauli p);

/// 4x4 CNOT with the control on the first tensor factor.
CMatrix cnot_matrix();

/// Embeds a single-qubit operator on qubit q (1-based) of an n-qubit register.
CMatrix embed_single(const CMatrix& op, int qubit, int n_qubits);

/// Embeds a two-qubit operator whose first tensor factor acts on `first` and
/// second on `second` (either order, any distance).
CMatrix embed_two(const CMatrix& op, int first, int second, int n_qubits);

struct Cnot {
  int control = 1;
  int target = 2;
};

/// One layer of a circuit: a Pauli on every qubit plus at most one CNOT.
struct GateLayer {
  int n_qubits = 0;
  std::vector<Pauli> single_qubit;
  std::optional<Cnot> cnot;

  static GateLayer identity(int n_qubits);
  /// Parses "XYX" (one Pauli per qubit), "CNOT12" (CNOT on a three-qubit
  /// register) or "CNOT13:Y" (CNOT plus Paulis on the remaining qubits, which
  /// also fixes the register size).
  static GateLayer parse(const std::string& label);
  /// Throws kInvalidArgument on an ill-formed layer.
  void validate() const;
  std::string label() const;
};

Unitary layer_unitary(const GateLayer& gate);

/// |Tr(U^dag V)|^2 / d^2.
double trace_overlap_fidelity(const CMatrix& u, const CMatrix& v);

}  // namespace papa
