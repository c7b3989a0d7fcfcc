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

#include "papa/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>

namespace papa {

namespace {

bool finite(const RVector& v) { return v.allFinite(); }

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian, RVector x0,
                             const LmOptions& opts) {
  if (!(opts.relative_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (!(opts.step_tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "step tolerance must be non-negative");
  if (opts.max_iters < 0) throw Error(ErrorCode::kInvalidArgument, "max_iters must be non-negative");

  LmResult out;
  out.x = std::move(x0);
  RVector r = residual(out.x);
  if (!finite(r)) throw Error(ErrorCode::kDiverged, "initial residual is not finite");
  out.cost = r.squaredNorm();
  out.cost_history.push_back(out.cost);
  if (out.cost <= opts.cost_floor) {
    out.converged = true;
    out.status = "exact fit";
    return out;
  }

  const Eigen::Index n = out.x.size();
  RMatrix j = jacobian(out.x, r);
  RMatrix normal(n, n);
  auto refresh = [&](RVector& gradient) {
    normal.setZero();
    normal.selfadjointView<Eigen::Lower>().rankUpdate(j.transpose());
    normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
    gradient.noalias() = j.transpose() * r;
  };
  RVector g(n);
  refresh(g);

  double mu = opts.initial_damping_scale * std::max(normal.diagonal().maxCoeff(), 1e-300);
  double nu = 2.0;
  out.status = "iteration limit reached";

  while (out.iterations < opts.max_iters) {
    ++out.iterations;
    if (g.lpNorm<Eigen::Infinity>() == 0.0) {
      out.converged = true;
      out.status = "zero gradient";
      break;
    }
    RMatrix damped = normal;
    damped.diagonal().array() += mu;
    Eigen::LLT<RMatrix> llt(damped);
    bool accepted = false;
    if (llt.info() == Eigen::Success) {
      const RVector step = -llt.solve(g);
      const RVector x_try = out.x + step;
      const RVector r_try = residual(x_try);
      const double cost_try = r_try.squaredNorm();
      const double predicted = step.dot(mu * step - g);
      if (std::isfinite(cost_try) && predicted > 0.0 && cost_try < out.cost) {
        const double rho = (out.cost - cost_try) / predicted;
        const double decrease = (out.cost - cost_try) / out.cost;
        out.x = x_try;
        r = r_try;
        out.cost = cost_try;
        out.cost_history.push_back(cost_try);
        accepted = true;
        mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        if (out.cost <= opts.cost_floor) {
          out.converged = true;
          out.status = "exact fit";
          break;
        }
        if (decrease < opts.relative_tol) {
          out.converged = true;
          out.status = "cost decrease below tolerance";
          break;
        }
        // Near the round-off floor the relative decrease stays noisy while x stops moving.
        if (step.norm() <= opts.step_tol * (out.x.norm() + opts.step_tol)) {
          out.converged = true;
          out.status = "step below tolerance";
          break;
        }
        j = jacobian(out.x, r);
        refresh(g);
      }
    }
    if (!accepted) {
      mu *= nu;
      nu *= 2.0;
      if (mu > opts.max_damping || !std::isfinite(mu)) {
        out.converged = true;
        out.status = "no further descent";
        break;
      }
    }
  }
  return out;
}

}  // namespace papa
