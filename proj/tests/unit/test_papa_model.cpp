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

#include <random>

#include "oracles.hpp"
#include "papa/papa_model.hpp"

namespace o = papa::oracle;
using papa::CMatrix;
using papa::QubitPair;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Places a two-qubit operator on the given pair of a three-qubit register by relabelling qubits.
CMatrix on_pair3(const CMatrix& u, QubitPair pair) {
  const CMatrix base = o::kron(u, CMatrix::Identity(2, 2));
  if (pair == QubitPair{1, 2}) return base;
  const int a = pair.k, b = pair.l, c = 6 - a - b;
  // Relabelling sends positions (1,2,3) of base onto (a,b,c).
  const CMatrix perm = o::basis_permutation(3, [=](int x) {
    const int bits[3] = {o::bit(x, 1, 3), o::bit(x, 2, 3), o::bit(x, 3, 3)};
    int y = 0;
    y |= bits[0] << (3 - a);
    y |= bits[1] << (3 - b);
    y |= bits[2] << (3 - c);
    return y;
  });
  return perm * base * perm.adjoint();
}

papa::PapaModel unitary_model(const std::vector<CMatrix>& us) {
  papa::PapaModel m;
  m.n_qubits = 3;
  const auto pairs = papa::all_pairs(3);
  for (size_t i = 0; i < pairs.size(); ++i) m.factors.push_back({pairs[i], papa::unitary_chi(us[i])});
  return m;
}

}  // namespace

TEST(PapaModel, ParameterCounts) {
  EXPECT_EQ(papa::parameter_count(2), 256);
  EXPECT_EQ(papa::parameter_count(3), 768);
  EXPECT_EQ(papa::parameter_count(4), 1536);
}

TEST(PapaModel, UnitaryChiReproducesConjugation) {
  std::mt19937_64 rng(31);
  const CMatrix u = o::random_unitary(4, rng);
  const auto chi = papa::unitary_chi(u);
  EXPECT_NEAR(chi.data.trace().real(), 4.0, 1e-12);
  const auto s = papa::chi_to_superop(chi, papa::two_qubit_basis());
  EXPECT_LT(max_abs(s.data - o::superop_from_kraus({u})), 1e-13);
}

TEST(PapaModel, IdentityModelIsIdentityProcess) {
  const auto m = papa::PapaModel::identity(3);
  EXPECT_LT(max_abs(papa::build_superop(m).data - CMatrix::Identity(64, 64)), 1e-14);
  EXPECT_THROW(papa::PapaModel::identity(1), papa::Error);
}

TEST(PapaModel, FactorOrderControlsComposition) {
  std::mt19937_64 rng(32);
  std::vector<CMatrix> us;
  for (int i = 0; i < 3; ++i) us.push_back(o::random_unitary(4, rng));
  const auto m = unitary_model(us);
  const CMatrix u12 = on_pair3(us[0], {1, 2});
  const CMatrix u13 = on_pair3(us[1], {1, 3});
  const CMatrix u23 = on_pair3(us[2], {2, 3});
  // First pair applied last.
  EXPECT_LT(max_abs(papa::build_superop(m, papa::FactorOrder::kFirstPairLast).data -
                    o::superop_from_kraus({CMatrix(u12 * u13 * u23)})),
            1e-12);
  // First pair applied first.
  EXPECT_LT(max_abs(papa::build_superop(m, papa::FactorOrder::kFirstPairFirst).data -
                    o::superop_from_kraus({CMatrix(u23 * u13 * u12)})),
            1e-12);
  EXPECT_EQ(papa::factor_sequence(3, papa::FactorOrder::kFirstPairLast), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(papa::factor_sequence(3, papa::FactorOrder::kFirstPairFirst), (std::vector<int>{2, 1, 0}));
}

TEST(PapaModel, ReducedChoiMatchesIndexLoopOracle) {
  std::mt19937_64 rng(33);
  std::vector<CMatrix> us;
  for (int i = 0; i < 3; ++i) us.push_back(o::random_unitary(4, rng));
  const auto m = unitary_model(us);
  const CMatrix full = papa::superop_to_choi(papa::build_superop(m)).data;
  for (QubitPair p : papa::all_pairs(3)) {
    EXPECT_LT(max_abs(papa::reduced_choi_of_model(m, p).data - o::reduce_choi(full, 3, p.k, p.l)), 1e-13);
  }
}

TEST(PapaModel, PackUnpackRoundTrip) {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> g;
  Eigen::VectorXd v(papa::parameter_count(3));
  for (auto& x : v) x = g(rng);
  const auto m = papa::unpack(v, 3);
  for (const auto& f : m.factors) EXPECT_TRUE(papa::is_hermitian(f.chi.data, 0.0));
  EXPECT_EQ((papa::pack(m) - v).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(papa::unpack(Eigen::VectorXd::Zero(10), 3), papa::Error);
}

TEST(PapaModel, ValidateChecksCoverageAndShape) {
  auto m = papa::PapaModel::identity(3);
  EXPECT_NO_THROW(m.validate());
  auto swapped = m;
  std::swap(swapped.factors[0], swapped.factors[1]);
  EXPECT_THROW(swapped.validate(), papa::Error);
  auto shortened = m;
  shortened.factors.pop_back();
  EXPECT_THROW(shortened.validate(), papa::Error);
  auto misshaped = m;
  misshaped.factors[2].chi.data = CMatrix::Identity(4, 4);
  EXPECT_THROW(misshaped.validate(), papa::Error);
  EXPECT_THROW(m.chi({1, 4}), papa::Error);
}

class IdealGuess : public ::testing::TestWithParam<const char*> {};

TEST_P(IdealGuess, ReproducesTheIdealLayer) {
  const auto gate = papa::GateLayer::parse(GetParam());
  const auto guess = papa::ideal_initial_guess(gate, gate.n_qubits);
  const CMatrix u = papa::layer_unitary(gate).data;
  EXPECT_LT(max_abs(papa::build_superop(guess).data - o::superop_from_kraus({u})), 1e-12);
  for (const auto& f : guess.factors) EXPECT_NEAR(f.chi.data.trace().real(), 4.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Layers, IdealGuess,
                         ::testing::Values("III", "XYX", "ZZY", "CNOT12", "CNOT21", "CNOT13:Y", "CNOT32:X", "CNOT12:",
                                           "XYZI", "CNOT24:XZ"),
                         [](const ::testing::TestParamInfo<const char*>& info) {
                           std::string name = info.param;
                           for (char& ch : name)
                             if (ch == ':') ch = '_';
                           return name.back() == '_' ? name + "pair" : name;
                         });

TEST(IdealGuessErrors, RegisterMismatch) {
  EXPECT_THROW(papa::ideal_initial_guess(papa::GateLayer::parse("XYX"), 4), papa::Error);
}
