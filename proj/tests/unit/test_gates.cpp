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


#include <gtest/gtest.h>

#include "oracles.hpp"
#include "papa/gates.hpp"

namespace o = papa::oracle;
using papa::CMatrix;
using papa::Pauli;

namespace {
double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Pauli, MatricesAndCharacters) {
  for (char c : {'I', 'X', 'Y', 'Z'}) {
    const Pauli p = papa::pauli_from_char(c);
    EXPECT_EQ(papa::pauli_char(p), c);
    EXPECT_LT(max_abs(papa::pauli_matrix(p) - o::pauli(c)), 1e-15);
  }
  EXPECT_THROW(papa::pauli_from_char('Q'), papa::Error);
}

TEST(Cnot, IsTheControlledBitFlip) {
  EXPECT_LT(max_abs(papa::cnot_matrix() - o::cnot_permutation(2, 1, 2)), 1e-15);
}

TEST(Embedding, SingleQubitOperator) {
  const CMatrix y = o::pauli('Y');
  EXPECT_LT(max_abs(papa::embed_single(y, 2, 3) - o::pauli_string("IYI")), 1e-15);
  EXPECT_LT(max_abs(papa::embed_single(y, 1, 2) - o::pauli_string("YI")), 1e-15);
  EXPECT_THROW(papa::embed_single(y, 4, 3), papa::Error);
}

TEST(Embedding, TwoQubitOperatorFollowsRoleOrder) {
  for (auto [c, t] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}) {
    EXPECT_LT(max_abs(papa::embed_two(papa::cnot_matrix(), c, t, 3) - o::cnot_permutation(3, c, t)), 1e-15)
        << c << "->" << t;
  }
  EXPECT_THROW(papa::embed_two(papa::cnot_matrix(), 2, 2, 3), papa::Error);
}

TEST(GateLayer, ParsesPauliProducts) {
  const auto g = papa::GateLayer::parse("XYX");
  EXPECT_EQ(g.n_qubits, 3);
  EXPECT_FALSE(g.cnot.has_value());
  EXPECT_EQ(g.label(), "XYX");
  EXPECT_LT(max_abs(papa::layer_unitary(g).data - o::pauli_string("XYX")), 1e-15);
}

TEST(GateLayer, ParsesCnotForms) {
  const auto plain = papa::GateLayer::parse("CNOT12");
  EXPECT_EQ(plain.n_qubits, 3);
  EXPECT_EQ(plain.label(), "CNOT12");
  EXPECT_LT(max_abs(papa::layer_unitary(plain).data - o::cnot_permutation(3, 1, 2)), 1e-15);

  const auto dressed = papa::GateLayer::parse("CNOT13:Y");
  EXPECT_EQ(dressed.n_qubits, 3);
  EXPECT_EQ(dressed.label(), "CNOT13:Y");
  EXPECT_LT(max_abs(papa::layer_unitary(dressed).data - o::cnot_permutation(3, 1, 3) * o::pauli_string("IYI")),
            1e-15);

  const auto two = papa::GateLayer::parse("CNOT21:");
  EXPECT_EQ(two.n_qubits, 2);
  EXPECT_EQ(papa::GateLayer::parse(two.label()).label(), two.label());
  EXPECT_LT(max_abs(papa::layer_unitary(two).data - o::cnot_permutation(2, 2, 1)), 1e-15);
}

TEST(GateLayer, RejectsMalformedLabels) {
  for (const char* bad : {"CNOT", "CNOT1", "CNOT11", "CNOT14", "CNOT12X", "XQZ", ""}) {
    EXPECT_THROW(papa::GateLayer::parse(bad), papa::Error) << bad;
  }
  papa::GateLayer g = papa::GateLayer::parse("III");
  g.single_qubit.pop_back();
  EXPECT_THROW(g.validate(), papa::Error);
  g = papa::GateLayer::parse("CNOT12");
  g.single_qubit[0] = Pauli::X;
  EXPECT_THROW(g.validate(), papa::Error);
}

TEST(GateLayer, IdentityLayer) {
  const auto g = papa::GateLayer::identity(4);
  EXPECT_EQ(g.label(), "IIII");
  EXPECT_LT(max_abs(papa::layer_unitary(g).data - CMatrix::Identity(16, 16)), 1e-15);
}

TEST(Fidelity, TraceOverlap) {
  const CMatrix u = o::pauli_string("XY");
  EXPECT_NEAR(papa::trace_overlap_fidelity(u, u), 1.0, 1e-15);
  EXPECT_NEAR(papa::trace_overlap_fidelity(u, std::complex<double>(0, 1) * u), 1.0, 1e-15);
  EXPECT_NEAR(papa::trace_overlap_fidelity(u, o::pauli_string("ZY")), 0.0, 1e-15);
  const double theta = 0.3;
  const CMatrix r = o::expm(std::complex<double>(0, -theta / 2) * o::pauli('X'));
  EXPECT_NEAR(papa::trace_overlap_fidelity(CMatrix::Identity(2, 2), r), std::pow(std::cos(theta / 2), 2), 1e-14);
}
