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
#include "papa/gate_simulator.hpp"
#include "papa/reconstructor.hpp"

namespace o = papa::oracle;
using papa::CMatrix;
using papa::RVector;

namespace {

papa::PapaModel random_unitary_model(int n, std::mt19937_64& rng) {
  papa::PapaModel m;
  m.n_qubits = n;
  for (auto pair : papa::all_pairs(n)) m.factors.push_back({pair, papa::unitary_chi(o::random_unitary(4, rng))});
  return m;
}

papa::TomographyData data_of(const papa::Superoperator& s) {
  papa::TomographyData d;
  d.n_qubits = s.n_qubits;
  for (auto pair : papa::all_pairs(s.n_qubits)) d.sigma[pair] = papa::reduced_choi_from_superop(s, pair);
  return d;
}

}  // namespace

TEST(SolverConfig, Validation) {
  papa::SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  auto bad = cfg;
  bad.eps_tol = 0.0;
  EXPECT_THROW(bad.validate(), papa::Error);
  bad = cfg;
  bad.fd_step = -1.0;
  EXPECT_THROW(bad.validate(), papa::Error);
  bad = cfg;
  bad.max_iters = -1;
  EXPECT_THROW(bad.validate(), papa::Error);
  bad = cfg;
  bad.penalty_weight = -1.0;
  EXPECT_THROW(bad.validate(), papa::Error);
  bad = cfg;
  bad.penalty_continuation = 1.0;
  EXPECT_THROW(bad.validate(), papa::Error);
}

TEST(Cost, DataTermIsSquaredFrobeniusMismatch) {
  std::mt19937_64 rng(61);
  const auto model = random_unitary_model(3, rng);
  const auto other = random_unitary_model(3, rng);
  const auto data = data_of(papa::build_superop(other));
  EXPECT_LT(papa::cost_c1(other, data), 1e-26);
  // Reference: reduce the model's Choi state with the index-loop oracle.
  const CMatrix choi = papa::superop_to_choi(papa::build_superop(model)).data;
  double expected = 0.0;
  for (auto pair : papa::all_pairs(3))
    expected += (o::reduce_choi(choi, 3, pair.k, pair.l) - data.at(pair).data).squaredNorm();
  EXPECT_NEAR(papa::cost_c1(model, data), expected, 1e-12 * (1.0 + expected));
}

TEST(Cost, PenaltyVanishesOnChannelsAndScalesWithWeight) {
  std::mt19937_64 rng(62);
  const auto model = random_unitary_model(3, rng);
  EXPECT_LT(papa::cost_c2(model), 1e-24);
  auto broken = model;
  broken.factors[1].chi.data *= 0.9;
  const double c = papa::cost_c2(broken, 1.0);
  EXPECT_GT(c, 0.0);
  EXPECT_NEAR(papa::cost_c2(broken, 3.0), 3.0 * c, 1e-12);
}

TEST(Residual, SquaredNormIsTotalCost) {
  std::mt19937_64 rng(63);
  const auto model = random_unitary_model(3, rng);
  auto noisy = model;
  for (auto& f : noisy.factors) {
    CMatrix h = CMatrix::Random(16, 16) * 0.01;
    f.chi.data += h + h.adjoint();
  }
  const auto data = data_of(papa::build_superop(model));
  papa::SolverConfig cfg;
  cfg.penalty_weight = 0.7;
  const RVector r = papa::residual_vector(noisy, data, cfg);
  EXPECT_EQ(r.size(), papa::residual_count(3));
  EXPECT_EQ(papa::residual_count(3), 3 * 256 + 3 * 34);
  const double total = papa::cost_c1(noisy, data) + papa::cost_c2(noisy, 0.7);
  EXPECT_NEAR(r.squaredNorm(), total, 1e-12 * total);
}

TEST(Jacobian, MatchesCentralDifferences) {
  std::mt19937_64 rng(64);
  const auto truth = papa::simulate_noisy_process(papa::GateLayer::parse("CNOT12"), papa::CoherentLocal{0.05});
  const auto data = papa::standard_tomography(truth);
  auto model = random_unitary_model(3, rng);
  for (auto& f : model.factors) {
    CMatrix h = CMatrix::Random(16, 16) * 0.02;
    f.chi.data += h + h.adjoint();
  }
  for (auto order : {papa::FactorOrder::kFirstPairLast, papa::FactorOrder::kFirstPairFirst}) {
    papa::SolverConfig cfg;
    cfg.factor_order = order;
    const RVector x = papa::pack(model);
    const papa::RMatrix jac = papa::model_jacobian(x, data, cfg);
    const papa::RMatrix ref =
        o::central_jacobian([&](const RVector& v) { return papa::residual_vector(papa::unpack(v, 3), data, cfg); }, x,
                            1e-5);
    ASSERT_EQ(jac.rows(), ref.rows());
    ASSERT_EQ(jac.cols(), ref.cols());
    // Data rows are polynomial in each coordinate, so central differences are accurate to O(h^2).
    EXPECT_LT((jac.topRows(768) - ref.topRows(768)).cwiseAbs().maxCoeff(), 1e-8);
    // Penalty rows hold forward differences of a piecewise-smooth function.
    EXPECT_LT((jac.bottomRows(102) - ref.bottomRows(102)).cwiseAbs().maxCoeff(), 1e-4);
  }
}

TEST(Jacobian, GenericForwardDifferences) {
  auto fn = [](const RVector& v) {
    RVector r(2);
    r << v(0) * v(0) + v(1), std::sin(v(1));
    return r;
  };
  RVector x(2);
  x << 0.3, -0.4;
  const papa::RMatrix jac = papa::finite_diff_jacobian(fn, x, 1e-7);
  EXPECT_NEAR(jac(0, 0), 0.6, 1e-6);
  EXPECT_NEAR(jac(0, 1), 1.0, 1e-6);
  EXPECT_NEAR(jac(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(jac(1, 1), std::cos(-0.4), 1e-6);
  EXPECT_THROW(papa::finite_diff_jacobian(fn, x, 0.0), papa::Error);
}

TEST(Solve, RecoversTwoQubitChannel) {
  std::mt19937_64 rng(65);
  const papa::Superoperator truth = papa::kraus_to_superop({o::random_kraus(4, 3, rng)});
  const auto data = data_of(truth);
  const auto res = papa::solve(data, papa::PapaModel::identity(2), {});
  EXPECT_TRUE(res.converged) << res.status;
  EXPECT_LT(papa::full_trace_distance(res.model, truth), 1e-6);
  EXPECT_TRUE(res.path == "direct" || res.path == "continuation");
  EXPECT_FALSE(res.cost_history.empty());
  EXPECT_GT(res.iterations, 0);
  for (const auto& [pair, td] : res.per_pair_trace_dist) EXPECT_LT(td, 1e-6);
  for (const auto& f : res.model.factors) {
    EXPECT_NEAR(f.chi.data.trace().real(), 4.0, 1e-12);
    EXPECT_GE(papa::min_eigenvalue(f.chi.data), -1e-12);
  }
}

TEST(Solve, ExactStartStaysPut) {
  const auto gate = papa::GateLayer::parse("CNOT12");
  const auto guess = papa::ideal_initial_guess(gate, 3);
  const auto data = data_of(papa::build_superop(guess));
  const auto res = papa::solve(data, guess, {});
  EXPECT_TRUE(res.converged);
  EXPECT_LT(res.final_cost, 1e-24);
  EXPECT_LT(papa::full_trace_distance(res.model, papa::build_superop(guess)), 1e-10);
}

TEST(Solve, RejectsMismatchedInputs) {
  papa::TomographyData data;
  data.n_qubits = 3;
  EXPECT_THROW(papa::solve(data, papa::PapaModel::identity(3), {}), papa::Error);
  const auto full = data_of(papa::Superoperator::identity(3));
  EXPECT_THROW(papa::solve(full, papa::PapaModel::identity(4), {}), papa::Error);
  papa::SolverConfig bad;
  bad.eps_tol = -1.0;
  EXPECT_THROW(papa::solve(full, papa::PapaModel::identity(3), bad), papa::Error);
}

TEST(Distances, PerPairAndFull) {
  std::mt19937_64 rng(66);
  const auto model = random_unitary_model(3, rng);
  const auto s = papa::build_superop(model);
  const auto data = data_of(s);
  EXPECT_LT(papa::full_trace_distance(model, s), 1e-12);
  for (const auto& [pair, td] : papa::pair_trace_distances(model, data)) EXPECT_LT(td, 1e-12) << pair.label();
  const auto id = papa::PapaModel::identity(3);
  const double td = papa::full_trace_distance(id, s);
  EXPECT_NEAR(td, o::trace_norm_distance(papa::superop_to_choi(papa::Superoperator::identity(3)).data,
                                         papa::superop_to_choi(s).data),
              1e-12);
}
