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

#include <functional>
#include <string>
#include <vector>

#include "papa/channel.hpp"

namespace papa {

/// Residual r(x) for a sum-of-squares objective ||r(x)||^2.
using ResidualFn = std::function<RVector(const RVector&)>;
/// Jacobian of the residual at x; r is the already evaluated r(x).
using JacobianFn = std::function<RMatrix(const RVector& x, const RVector& r)>;

struct LmOptions {
  /// Stop once an accepted step lowers the cost by less than this fraction.
  double relative_tol = 1e-7;
  /// Also stop once an accepted step is this small relative to the parameters.
  double step_tol = 1e-13;
  int max_iters = 500;
  double initial_damping_scale = 1e-3;
  /// Costs at or below this are treated as an exact fit.
  double cost_floor = 1e-30;
  double max_damping = 1e30;
};

struct LmResult {
  RVector x;
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
  /// Cost after each accepted step, starting with the initial cost.
  std::vector<double> cost_history;
};

/// Damped least squares with geometric damping updates. Throws kDiverged if
/// the initial cost is not finite; trial points with non-finite cost are
/// rejected like any other uphill step.
LmResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian, RVector x0,
                             const LmOptions& opts);

}  // namespace papa
