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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "papa/channel.hpp"
#include "papa/papa_model.hpp"
#include "papa/tomography.hpp"

namespace papa {

struct SolverConfig {
  double eps_tol = 1e-7;
  int max_iters = 500;
  double fd_step = 1e-6;
  double penalty_weight = 1.0;
  std::uint64_t seed = 0;
  /// Starting fraction of penalty_weight for a second solver path that raises
  /// the penalty tenfold per stage. The path with the lower final cost wins.
  /// Zero runs the direct path only.
  double penalty_continuation = 1e-2;
  FactorOrder factor_order = FactorOrder::kFirstPairLast;

  void validate() const;
};

struct ReconstructionResult {
  /// Factors after PSD projection.
  PapaModel model;
  /// Factors exactly as the optimizer left them.
  PapaModel raw_model;
  double final_cost = 0.0;
  double final_c1 = 0.0;
  double final_c2 = 0.0;
  /// Distance between each reduction of the projected model and the data.
  std::map<QubitPair, double> per_pair_trace_dist;
  std::map<QubitPair, double> per_pair_trace_dist_raw;
  /// Filled by callers that know the true process.
  std::optional<double> full_trace_dist;
  int iterations = 0;
  bool converged = false;
  std::string status;
  /// "direct" or "continuation".
  std::string path;
  /// Accepted-step costs of the final stage of the chosen path.
  std::vector<double> cost_history;
};

double cost_c1(const PapaModel& m, const TomographyData& data, FactorOrder order = FactorOrder::kFirstPairLast);
double cost_c2(const PapaModel& m, double penalty_weight = 1.0);

/// Stacked residuals. For each pair in lexicographic order: the 16 diagonal
/// entries of D = rho_S - sigma_S, then sqrt(2) times the real and imaginary
/// parts of the upper triangle of D (row-major). Then sqrt(penalty_weight)
/// times cptp_residuals of each factor. D is Hermitian, so the squared norm
/// equals cost_c1 + cost_c2.
RVector residual_vector(const PapaModel& m, const TomographyData& data, const SolverConfig& cfg);

int residual_count(int n_qubits);

/// Forward-difference Jacobian, column j = (r(v + step e_j) - r(v)) / step.
RMatrix finite_diff_jacobian(const std::function<RVector(const RVector&)>& residual_fn, const RVector& v,
                             double step);

/// Jacobian of residual_vector with forward differences of step fd_step.
/// The Choi rows are affine in each single parameter, so their difference
/// quotient is formed directly from the unit step of the perturbed factor
/// and carries no truncation or cancellation error.
RMatrix model_jacobian(const RVector& params, const TomographyData& data, const SolverConfig& cfg);

ReconstructionResult solve(const TomographyData& data, const PapaModel& init, const SolverConfig& cfg);

/// Trace distance between the Choi states of the model process and truth.
double full_trace_distance(const PapaModel& m, const Superoperator& truth,
                           FactorOrder order = FactorOrder::kFirstPairLast);

/// Per-pair distances of model reductions against data.
std::map<QubitPair, double> pair_trace_distances(const PapaModel& m, const TomographyData& data,
                                                 FactorOrder order = FactorOrder::kFirstPairLast);

}  // namespace papa
