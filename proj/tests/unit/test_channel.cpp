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
#include "papa/channel.hpp"

namespace o = papa::oracle;
using papa::CMatrix;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::function<CMatrix(const CMatrix&)> kraus_action(const std::vector<CMatrix>& k) {
  return [k](const CMatrix& rho) { return o::apply_kraus(k, rho); };
}

// E(rho) = sum chi_pr E_r rho E_p^dagger with E_p = P_p / 2, straight from the definition.
CMatrix chi_action_superop(const CMatrix& chi) {
  const auto basis = papa::OperatorBasis::pauli(2);
  return o::superop_from_action(4, [&](const CMatrix& rho) {
    CMatrix out = CMatrix::Zero(4, 4);
    for (int p = 0; p < 16; ++p)
      for (int r = 0; r < 16; ++r) {
        const CMatrix ep = o::pauli_string(basis.label(p)) / 2.0;
        const CMatrix er = o::pauli_string(basis.label(r)) / 2.0;
        out += chi(p, r) * er * rho * ep.adjoint();
      }
    return out;
  });
}

}  // namespace

TEST(OperatorBasis, PauliLabelsAndOrthogonality) {
  const auto basis = papa::OperatorBasis::pauli(2);
  ASSERT_EQ(basis.size(), 16);
  EXPECT_EQ(basis.label(0), "II");
  EXPECT_EQ(basis.label(1), "IX");
  EXPECT_EQ(basis.label(4), "XI");
  EXPECT_EQ(basis.label(15), "ZZ");
  EXPECT_DOUBLE_EQ(basis.scale(), 0.5);
  for (int i = 0; i < 16; ++i) {
    EXPECT_EQ(basis.index_of(basis.label(i)), i);
    EXPECT_LT(max_abs(basis.element(i) - o::pauli_string(basis.label(i))), 1e-15);
    for (int j = 0; j < 16; ++j) {
      const auto overlap = (basis.element(i).adjoint() * basis.element(j)).trace();
      EXPECT_NEAR(std::abs(overlap), i == j ? 4.0 : 0.0, 1e-14);
    }
  }
  EXPECT_THROW(basis.index_of("XYZ"), papa::Error);
}

TEST(Pairs, EnumerationAndValidation) {
  const auto pairs = papa::all_pairs(3);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[0], (papa::QubitPair{1, 2}));
  EXPECT_EQ(pairs[1], (papa::QubitPair{1, 3}));
  EXPECT_EQ(pairs[2], (papa::QubitPair{2, 3}));
  EXPECT_EQ(papa::all_pairs(5).size(), 10u);
  EXPECT_NO_THROW(papa::validate_pair({1, 3}, 3));
  EXPECT_THROW(papa::validate_pair({2, 2}, 3), papa::Error);
  EXPECT_THROW(papa::validate_pair({0, 1}, 3), papa::Error);
  EXPECT_THROW(papa::validate_pair({1, 4}, 3), papa::Error);
  EXPECT_THROW(papa::validate_pair({2, 1}, 3), papa::Error);
}

TEST(Superoperator, UnitaryMatchesMatrixUnitAction) {
  std::mt19937_64 rng(11);
  for (int d : {2, 4, 8}) {
    const CMatrix u = o::random_unitary(d, rng);
    const auto s = papa::unitary_to_superop({u});
    EXPECT_LT(max_abs(s.data - o::superop_from_kraus({u})), 1e-13) << "d=" << d;
  }
}

TEST(Superoperator, KrausMatchesMatrixUnitAction) {
  std::mt19937_64 rng(12);
  const auto kraus = o::random_kraus(4, 3, rng);
  const auto s = papa::kraus_to_superop({kraus});
  EXPECT_LT(max_abs(s.data - o::superop_from_kraus(kraus)), 1e-13);
  EXPECT_TRUE(papa::kraus_is_complete({kraus}));
  EXPECT_FALSE(papa::kraus_is_complete({{2.0 * kraus[0]}}));
}

TEST(Superoperator, ActsOnDensityMatrices) {
  std::mt19937_64 rng(13);
  const auto kraus = o::random_kraus(4, 2, rng);
  const CMatrix rho = o::random_density(4, rng);
  const auto s = papa::kraus_to_superop({kraus});
  EXPECT_LT(max_abs(o::apply_superop(s.data, rho) - o::apply_kraus(kraus, rho)), 1e-13);
}

TEST(Choi, MatchesTermByTermSummation) {
  std::mt19937_64 rng(14);
  for (int d : {4, 8}) {
    const auto kraus = o::random_kraus(d, 2, rng);
    const auto choi = papa::superop_to_choi(papa::kraus_to_superop({kraus}));
    EXPECT_LT(max_abs(choi.data - o::choi_by_summation(d, kraus_action(kraus))), 1e-13);
    EXPECT_NEAR(choi.data.trace().real(), 1.0, 1e-13);
    const auto back = papa::choi_to_superop(choi);
    EXPECT_LT(max_abs(back.data - o::superop_from_kraus(kraus)), 1e-13);
  }
}

TEST(Choi, RejectsBadDimensions) {
  try {
    papa::superop_to_choi({1, CMatrix::Identity(8, 8)});
    FAIL() << "expected an error";
  } catch (const papa::Error& e) {
    EXPECT_EQ(e.code(), papa::ErrorCode::kInvalidDimension);
  }
  EXPECT_THROW(papa::superop_to_choi({1, CMatrix::Identity(4, 3)}), papa::Error);
}

TEST(Chi, ForwardMapMatchesDefinition) {
  std::mt19937_64 rng(15);
  const auto basis = papa::OperatorBasis::pauli(2);
  CMatrix z = CMatrix::Random(16, 16);
  const CMatrix chi = z * z.adjoint();
  const auto s = papa::chi_to_superop({chi}, basis);
  EXPECT_LT(max_abs(s.data - chi_action_superop(chi)), 1e-12);
  const auto back = papa::superop_to_chi(s, basis);
  EXPECT_LT(max_abs(back.data - chi), 1e-12);
}

TEST(Chi, IdentityChannelHasTraceFourAndSingleEntry) {
  const auto basis = papa::OperatorBasis::pauli(2);
  const auto chi = papa::superop_to_chi(papa::Superoperator::identity(2), basis);
  EXPECT_NEAR(chi.data(0, 0).real(), 4.0, 1e-14);
  EXPECT_NEAR(chi.data.trace().real(), 4.0, 1e-14);
  EXPECT_NEAR(chi.data.cwiseAbs().sum(), 4.0, 1e-13);
}

TEST(Compose, AppliesSecondArgumentFirst) {
  std::mt19937_64 rng(16);
  const CMatrix a = o::random_unitary(4, rng);
  const CMatrix b = o::random_unitary(4, rng);
  const auto ab = papa::compose(papa::unitary_to_superop({a}), papa::unitary_to_superop({b}));
  EXPECT_LT(max_abs(ab.data - o::superop_from_kraus({CMatrix(a * b)})), 1e-13);
  EXPECT_THROW(papa::compose(papa::Superoperator::identity(1), papa::Superoperator::identity(2)), papa::Error);
}

TEST(EmbedPair, MatchesPermutedTensorProduct) {
  std::mt19937_64 rng(17);
  const CMatrix u = o::random_unitary(4, rng);
  const auto s2 = papa::unitary_to_superop({u});
  const CMatrix on12 = o::kron(u, CMatrix::Identity(2, 2));
  // Conjugating U (x) I by a qubit relabelling puts U on the other pairs.
  const CMatrix swap23 = o::basis_permutation(3, [](int x) { return (x & 4) | ((x & 1) << 1) | ((x >> 1) & 1); });
  const CMatrix cycle = o::basis_permutation(3, [](int x) {
    const int b1 = o::bit(x, 1, 3), b2 = o::bit(x, 2, 3), b3 = o::bit(x, 3, 3);
    return (b3 << 2) | (b1 << 1) | b2;
  });
  const std::vector<std::pair<papa::QubitPair, CMatrix>> expected = {
      {{1, 2}, on12},
      {{1, 3}, swap23 * on12 * swap23.adjoint()},
      {{2, 3}, cycle * on12 * cycle.adjoint()},
  };
  for (const auto& [pair, full] : expected) {
    const auto embedded = papa::embed_pair(s2, pair, 3);
    EXPECT_LT(max_abs(embedded.data - o::superop_from_kraus({full})), 1e-13) << pair.label();
  }
  EXPECT_THROW(papa::embed_pair(papa::Superoperator::identity(1), {1, 2}, 3), papa::Error);
}

TEST(PartialTrace, MatchesIndexLoopOracle) {
  std::mt19937_64 rng(18);
  const auto kraus = o::random_kraus(8, 2, rng);
  const auto s = papa::kraus_to_superop({kraus});
  const auto choi = papa::superop_to_choi(s);
  for (auto pair : papa::all_pairs(3)) {
    const CMatrix expected = o::reduce_choi(choi.data, 3, pair.k, pair.l);
    EXPECT_LT(max_abs(papa::partial_trace_choi(choi, pair).data - expected), 1e-13) << pair.label();
    EXPECT_LT(max_abs(papa::reduced_choi_from_superop(s, pair).data - expected), 1e-13) << pair.label();
  }
}

TEST(PartialTrace, SpectatorAverageIsMaximallyMixedReduction) {
  std::mt19937_64 rng(19);
  const auto kraus = o::random_kraus(8, 3, rng);
  const auto s = papa::kraus_to_superop({kraus});
  for (auto pair : papa::all_pairs(3)) {
    const CMatrix avg = 0.5 * (papa::reduced_choi_with_spectators(s, pair, 0).data +
                               papa::reduced_choi_with_spectators(s, pair, 1).data);
    EXPECT_LT(max_abs(avg - papa::reduced_choi_from_superop(s, pair).data), 1e-13);
  }
  EXPECT_THROW(papa::reduced_choi_with_spectators(s, {1, 2}, 2), papa::Error);
}

TEST(TraceDistance, MatchesSingularValueOracle) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = o::random_density(16, rng);
    const CMatrix b = o::random_density(16, rng);
    EXPECT_NEAR(papa::trace_distance(a, b), o::trace_norm_distance(a, b), 1e-12);
  }
  EXPECT_THROW(papa::trace_distance(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), papa::Error);
}

TEST(Cptp, WitnessSeparatesChannelsFromNonChannels) {
  std::mt19937_64 rng(21);
  const auto kraus = o::random_kraus(4, 4, rng);
  const auto choi = papa::superop_to_choi(papa::kraus_to_superop({kraus}));
  EXPECT_TRUE(papa::is_cptp(choi));
  // Transposition is positive and trace preserving but not completely positive.
  const auto transpose = o::superop_from_action(4, [](const CMatrix& rho) { return CMatrix(rho.transpose()); });
  EXPECT_FALSE(papa::is_cptp(papa::superop_to_choi({2, transpose})));
  // A scaled channel is CP but not TP.
  EXPECT_FALSE(papa::is_cptp({2, 0.9 * choi.data}));
}

TEST(Cptp, ResidualsVanishExactlyOnChannels) {
  std::mt19937_64 rng(22);
  const auto basis = papa::OperatorBasis::pauli(2);
  const auto chi = papa::superop_to_chi(papa::kraus_to_superop({o::random_kraus(4, 2, rng)}), basis);
  const auto r = papa::cptp_residuals(chi, basis);
  ASSERT_EQ(r.size(), papa::kCptpResidualCount);
  EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-12);
  const auto r_scaled = papa::cptp_residuals({0.5 * chi.data}, basis);
  EXPECT_GT(r_scaled.cwiseAbs().maxCoeff(), 0.1);
}

TEST(Cptp, ResidualsMatchDirectEvaluation) {
  const auto basis = papa::OperatorBasis::pauli(2);
  const auto zero = papa::cptp_residuals({CMatrix::Zero(16, 16)}, basis);
  EXPECT_DOUBLE_EQ(zero(0), -4.0);
  EXPECT_DOUBLE_EQ(zero(1), 0.0);
  // Real part of the (0,0) entry of -I, then its imaginary part.
  EXPECT_DOUBLE_EQ(zero(2), -1.0);
  EXPECT_DOUBLE_EQ(zero(3), 0.0);

  std::mt19937_64 rng(25);
  const auto chi = papa::superop_to_chi(papa::kraus_to_superop({o::random_kraus(4, 2, rng)}), basis);
  const CMatrix raw = CMatrix::Random(16, 16);
  const CMatrix noise = 1e-3 * (raw + raw.adjoint()) / 2.0;
  const CMatrix perturbed = chi.data + noise;
  const auto r = papa::cptp_residuals({perturbed}, basis);

  // Direct evaluation of trace, negative spectrum and sum_pr chi_pr E_p^dag E_r - I.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(perturbed);
  double negative = 0.0;
  for (int i = 0; i < 16; ++i)
    if (es.eigenvalues()(i) < -papa::kNegativeEigenvalueTol) negative -= es.eigenvalues()(i);
  CMatrix w = -CMatrix::Identity(4, 4);
  for (int p = 0; p < 16; ++p)
    for (int q = 0; q < 16; ++q)
      w += perturbed(p, q) * o::pauli_string(basis.label(p)).adjoint() * o::pauli_string(basis.label(q)) / 4.0;
  EXPECT_NEAR(r(0), perturbed.trace().real() - 4.0, 1e-14);
  EXPECT_NEAR(r(1), negative, 1e-14);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(r(2 + 2 * (4 * i + j)), w(i, j).real(), 1e-14);
      EXPECT_NEAR(r(3 + 2 * (4 * i + j)), w(i, j).imag(), 1e-14);
    }
  EXPECT_GT(r.norm(), 0.0);
  EXPECT_LT(r.norm(), 0.5);
}

TEST(Chi, DephasingMixtureOfIdentityAndZ) {
  const auto basis = papa::OperatorBasis::pauli(2);
  CMatrix chi = CMatrix::Zero(16, 16);
  chi(basis.index_of("II"), basis.index_of("II")) = 2.0;
  chi(basis.index_of("ZI"), basis.index_of("ZI")) = 2.0;
  const CMatrix z = o::pauli_string("ZI");
  const CMatrix expected =
      o::superop_from_action(4, [&](const CMatrix& rho) { return CMatrix(0.5 * (rho + z * rho * z)); });
  EXPECT_LT(max_abs(papa::chi_to_superop({chi}, basis).data - expected), 1e-14);
}

TEST(ProjectPsd, KeepsChannelsAndFixesIndefiniteInput) {
  std::mt19937_64 rng(23);
  const auto basis = papa::OperatorBasis::pauli(2);
  const auto chi = papa::superop_to_chi(papa::kraus_to_superop({o::random_kraus(4, 3, rng)}), basis);
  const auto projected = papa::project_psd_chi(chi);
  EXPECT_LT(max_abs(projected.data - chi.data), 1e-12);

  CMatrix indefinite = chi.data;
  indefinite(3, 3) -= 1.0;
  const auto fixed = papa::project_psd_chi({indefinite});
  EXPECT_GE(papa::min_eigenvalue(fixed.data), -1e-12);
  EXPECT_NEAR(fixed.data.trace().real(), 4.0, 1e-12);
  EXPECT_LT(max_abs(papa::project_psd_chi(fixed).data - fixed.data), 1e-12);

  EXPECT_THROW(papa::project_psd_chi({-CMatrix::Identity(16, 16)}), papa::Error);
}

TEST(Predicates, UnitaryAndHermitian) {
  std::mt19937_64 rng(24);
  const CMatrix u = o::random_unitary(8, rng);
  EXPECT_TRUE(papa::is_unitary(u));
  EXPECT_FALSE(papa::is_unitary(2.0 * u));
  EXPECT_TRUE(papa::is_hermitian(u + u.adjoint()));
  EXPECT_FALSE(papa::is_hermitian(u));
}
