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

#include <cmath>

#include "papa/levenberg_marquardt.hpp"

using papa::RMatrix;
using papa::RVector;

namespace {

RVector rosenbrock(const RVector& x) {
  RVector r(2);
  r << 10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0);
  return r;
}

RMatrix rosenbrock_jacobian(const RVector& x, const RVector&) {
  RMatrix j(2, 2);
  j << -20.0 * x(0), 10.0, -1.0, 0.0;
  return j;
}

}  // namespace

TEST(LevenbergMarquardt, SolvesRosenbrockValley) {
  papa::LmOptions opts;
  opts.relative_tol = 1e-12;
  RVector x0(2);
  x0 << -1.2, 1.0;
  const auto res = papa::levenberg_marquardt(rosenbrock, rosenbrock_jacobian, x0, opts);
  EXPECT_TRUE(res.converged) << res.status;
  EXPECT_NEAR(res.x(0), 1.0, 1e-6);
  EXPECT_NEAR(res.x(1), 1.0, 1e-6);
  ASSERT_FALSE(res.cost_history.empty());
  for (size_t i = 1; i < res.cost_history.size(); ++i) EXPECT_LE(res.cost_history[i], res.cost_history[i - 1]);
}

TEST(LevenbergMarquardt, LinearLeastSquaresMatchesNormalEquations) {
  RMatrix a(6, 3);
  a << 1, 2, 0, 0, 1, 1, 3, 0, 1, 1, 1, 1, 2, -1, 0, 0, 0, 4;
  RVector b(6);
  b << 1, -2, 0.5, 3, 1, -1;
  auto residual = [&](const RVector& x) -> RVector { return a * x - b; };
  auto jacobian = [&](const RVector&, const RVector&) -> RMatrix { return a; };
  papa::LmOptions opts;
  opts.relative_tol = 1e-14;
  const auto res = papa::levenberg_marquardt(residual, jacobian, RVector::Zero(3), opts);
  const RVector expected = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  EXPECT_LT((res.x - expected).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(res.cost, (a * expected - b).squaredNorm(), 1e-12);
}

TEST(LevenbergMarquardt, StartingAtTheSolutionIsAnExactFit) {
  RVector x0(2);
  x0 << 1.0, 1.0;
  const auto res = papa::levenberg_marquardt(rosenbrock, rosenbrock_jacobian, x0, {});
  EXPECT_TRUE(res.converged);
  EXPECT_EQ(res.status, "exact fit");
  EXPECT_EQ(res.iterations, 0);
}

TEST(LevenbergMarquardt, ReportsIterationLimit) {
  papa::LmOptions opts;
  opts.max_iters = 2;
  opts.relative_tol = 1e-15;
  RVector x0(2);
  x0 << -1.2, 1.0;
  const auto res = papa::levenberg_marquardt(rosenbrock, rosenbrock_jacobian, x0, opts);
  EXPECT_FALSE(res.converged);
  EXPECT_EQ(res.status, "iteration limit reached");
  EXPECT_EQ(res.iterations, 2);
}

TEST(LevenbergMarquardt, StopsWhenStepsVanish) {
  // Each Gauss-Newton step halves x, so the relative cost decrease never drops below tolerance.
  auto residual = [](const RVector& x) -> RVector { return x.array().square(); };
  auto jacobian = [](const RVector& x, const RVector&) -> RMatrix { return (2.0 * x).asDiagonal(); };
  papa::LmOptions opts;
  opts.cost_floor = 0.0;
  opts.max_iters = 1000;
  const auto res = papa::levenberg_marquardt(residual, jacobian, RVector::Constant(1, 1.0), opts);
  EXPECT_TRUE(res.converged);
  EXPECT_EQ(res.status, "step below tolerance");
  EXPECT_LT(res.iterations, opts.max_iters);
  EXPECT_LT(std::abs(res.x(0)), 1e-20);

  opts.step_tol = 0.0;
  opts.max_iters = 50;
  EXPECT_EQ(papa::levenberg_marquardt(residual, jacobian, RVector::Constant(1, 1.0), opts).status,
            "iteration limit reached");
}

TEST(LevenbergMarquardt, RejectsBadInput) {
  RVector x0(2);
  x0 << std::nan(""), 0.0;
  try {
    papa::levenberg_marquardt(rosenbrock, rosenbrock_jacobian, x0, {});
    FAIL() << "expected kDiverged";
  } catch (const papa::Error& e) {
    EXPECT_EQ(e.code(), papa::ErrorCode::kDiverged);
  }
  papa::LmOptions bad;
  bad.relative_tol = 0.0;
  EXPECT_THROW(papa::levenberg_marquardt(rosenbrock, rosenbrock_jacobian, RVector::Zero(2), bad), papa::Error);
  papa::LmOptions negative_step;
  negative_step.step_tol = -1.0;
  EXPECT_THROW(papa::levenberg_marquardt(rosenbrock, rosenbrock_jacobian, RVector::Zero(2), negative_step),
               papa::Error);
}
