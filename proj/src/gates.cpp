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

#include "papa/gates.hpp"

#include <cctype>
#include <sstream>

namespace papa {

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw Error(ErrorCode::kInvalidArgument, std::string("unknown single-qubit gate '") + c + "'");
  }
}

char pauli_char(Pauli p) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[static_cast<int>(p)];
}

CMatrix pauli_matrix(Pauli p) {
  const Complex i(0.0, 1.0);
  CMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

CMatrix cnot_matrix() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

CMatrix embed_single(const CMatrix& op, int qubit, int n_qubits) {
  if (qubit < 1 || qubit > n_qubits) throw Error(ErrorCode::kOutOfRange, "qubit index out of range");
  CMatrix out = CMatrix::Identity(1, 1);
  for (int q = 1; q <= n_qubits; ++q) out = kron(out, q == qubit ? op : CMatrix::Identity(2, 2));
  return out;
}

CMatrix embed_two(const CMatrix& op, int first, int second, int n_qubits) {
  if (first < 1 || first > n_qubits || second < 1 || second > n_qubits || first == second) {
    throw Error(ErrorCode::kOutOfRange, "two-qubit gate qubits out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  CMatrix out = CMatrix::Zero(dim, dim);
  const int sa = n_qubits - first;
  const int sb = n_qubits - second;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index in2 = (((col >> sa) & 1) << 1) | ((col >> sb) & 1);
    const Eigen::Index rest = col & ~((Eigen::Index{1} << sa) | (Eigen::Index{1} << sb));
    for (Eigen::Index out2 = 0; out2 < 4; ++out2) {
      const Complex v = op(out2, in2);
      if (v == Complex(0.0, 0.0)) continue;
      const Eigen::Index row = rest | (((out2 >> 1) & 1) << sa) | ((out2 & 1) << sb);
      out(row, col) += v;
    }
  }
  return out;
}

GateLayer GateLayer::identity(int n_qubits) {
  GateLayer g;
  g.n_qubits = n_qubits;
  g.single_qubit.assign(static_cast<size_t>(n_qubits), Pauli::I);
  return g;
}

GateLayer GateLayer::parse(const std::string& label) {
  GateLayer g;
  if (label.rfind("CNOT", 0) == 0) {
    if (label.size() < 6 || !std::isdigit(static_cast<unsigned char>(label[4])) ||
        !std::isdigit(static_cast<unsigned char>(label[5]))) {
      throw Error(ErrorCode::kInvalidArgument, "bad CNOT label '" + label + "'");
    }
    g.cnot = Cnot{label[4] - '0', label[5] - '0'};
    std::string singles;
    if (label.size() == 6) {
      g.n_qubits = 3;
      singles.assign(1, 'I');
    } else {
      if (label[6] != ':') throw Error(ErrorCode::kInvalidArgument, "bad gate label '" + label + "'");
      singles = label.substr(7);
      g.n_qubits = static_cast<int>(singles.size()) + 2;
    }
    g.single_qubit.assign(static_cast<size_t>(g.n_qubits), Pauli::I);
    size_t next = 0;
    for (int q = 1; q <= g.n_qubits && next < singles.size(); ++q) {
      if (q == g.cnot->control || q == g.cnot->target) continue;
      g.single_qubit[q - 1] = pauli_from_char(singles[next++]);
    }
  } else {
    g.n_qubits = static_cast<int>(label.size());
    for (char c : label) g.single_qubit.push_back(pauli_from_char(c));
  }
  g.validate();
  return g;
}

void GateLayer::validate() const {
  if (n_qubits < 1) throw Error(ErrorCode::kInvalidArgument, "gate layer needs at least one qubit");
  if (static_cast<int>(single_qubit.size()) != n_qubits) {
    throw Error(ErrorCode::kInvalidArgument, "gate layer: one single-qubit label per qubit required");
  }
  if (cnot) {
    const auto [c, t] = *cnot;
    if (c < 1 || c > n_qubits || t < 1 || t > n_qubits || c == t) {
      throw Error(ErrorCode::kInvalidArgument, "gate layer: CNOT qubits must be distinct and in range");
    }
    if (single_qubit[c - 1] != Pauli::I || single_qubit[t - 1] != Pauli::I) {
      throw Error(ErrorCode::kInvalidArgument, "gate layer: CNOT qubits must carry identity single-qubit labels");
    }
  }
}

std::string GateLayer::label() const {
  std::ostringstream os;
  if (cnot) {
    os << "CNOT" << cnot->control << cnot->target;
    std::string singles;
    bool nontrivial = false;
    for (int q = 1; q <= n_qubits; ++q) {
      if (q == cnot->control || q == cnot->target) continue;
      singles += pauli_char(single_qubit[q - 1]);
      nontrivial |= single_qubit[q - 1] != Pauli::I;
    }
    if (nontrivial || n_qubits != 3) os << ":" << singles;
  } else {
    for (Pauli p : single_qubit) os << pauli_char(p);
  }
  return os.str();
}

Unitary layer_unitary(const GateLayer& gate) {
  gate.validate();
  CMatrix u = CMatrix::Identity(1, 1);
  for (int q = 1; q <= gate.n_qubits; ++q) u = kron(u, pauli_matrix(gate.single_qubit[q - 1]));
  if (gate.cnot) u = embed_two(cnot_matrix(), gate.cnot->control, gate.cnot->target, gate.n_qubits) * u;
  return {u};
}

double trace_overlap_fidelity(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorCode::kInvalidDimension, "trace_overlap_fidelity: dimension mismatch");
  }
  const double d = static_cast<double>(u.rows());
  return std::norm((u.adjoint() * v).trace()) / (d * d);
}

}  // namespace papa
