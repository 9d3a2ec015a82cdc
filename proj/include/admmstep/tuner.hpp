// Copyright 2026 The admmstep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Step-size and initialization selection.
//
// For an initialization zeta0 the distance to the unscaled fixed point
// sqrt(gamma) A x* + lambda*/sqrt(gamma) is minimized at gamma* = alpha*^2
// with alpha* the positive root of the quartic in quartic.hpp. With zeta0 = 0
// this is ||lambda*|| / ||A x*||; with zeta0 = beta A x* + lambda*/beta and
// gamma = beta^2 the initialization is itself a fixed point.

#ifndef ADMMSTEP_TUNER_HPP_
#define ADMMSTEP_TUNER_HPP_

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"
#include "admmstep/problem_spec.hpp"
#include "admmstep/quartic.hpp"

namespace admmstep {

inline double GammaZeroInit(const Vector& ax_star, const Vector& lambda_star) {
  Require(ax_star.size() == lambda_star.size(), ErrorCode::kDimensionMismatch,
          "Ax* and lambda* differ in size");
  const double ax_norm = ax_star.norm();
  const double lambda_norm = lambda_star.norm();
  Require(ax_norm > 0.0, ErrorCode::kDegenerateProblem, "Ax* vanishes");
  Require(lambda_norm > 0.0, ErrorCode::kDegenerateProblem, "lambda* vanishes");
  return lambda_norm / ax_norm;
}

inline double GammaGeneral(const Vector& ax_star, const Vector& lambda_star,
                           const Vector& zeta0) {
  return OptimalGamma(BuildCoefficients(ax_star, lambda_star, zeta0));
}

// Distance from zeta0 to the unscaled fixed point at gamma.
inline double FixedPointDistance(const Vector& ax_star, const Vector& lambda_star,
                                 const Vector& zeta0, double gamma) {
  const double s = std::sqrt(gamma);
  return (s * ax_star + lambda_star / s - zeta0).norm();
}

struct StepSizePlan {
  enum class Mode { kFixed, kEstimated, kOracle };

  Mode mode = Mode::kFixed;
  double gamma0 = 1.0;  // the fixed gamma, or the first estimated one
  double threshold = 0.0;
  long freeze_after = std::numeric_limits<long>::max();
  Vector ax_star, lambda_star;
  Vector zeta0;  // oracle only; empty means the run's own zeta0

  static StepSizePlan Fixed(double gamma) {
    Require(gamma > 0.0 && std::isfinite(gamma), ErrorCode::kInvalidArgument,
            "fixed step size must be positive and finite");
    StepSizePlan plan;
    plan.gamma0 = gamma;
    return plan;
  }

  static StepSizePlan Estimated(double threshold = 0.0,
                                long freeze_after = std::numeric_limits<long>::max()) {
    Require(threshold >= 0.0, ErrorCode::kInvalidArgument,
            "estimation threshold must be non-negative");
    Require(freeze_after >= 1, ErrorCode::kInvalidArgument, "freeze_after must be >= 1");
    StepSizePlan plan;
    plan.mode = Mode::kEstimated;
    plan.threshold = threshold;
    plan.freeze_after = freeze_after;
    return plan;
  }

  static StepSizePlan Oracle(Vector ax_star, Vector lambda_star, Vector zeta0 = {}) {
    StepSizePlan plan;
    plan.mode = Mode::kOracle;
    plan.ax_star = std::move(ax_star);
    plan.lambda_star = std::move(lambda_star);
    plan.zeta0 = std::move(zeta0);
    return plan;
  }

  // Step size for iteration 0 of a run started at run_zeta0.
  double InitialGamma(const Vector& run_zeta0) const {
    if (mode != Mode::kOracle) return gamma0;
    return GammaGeneral(ax_star, lambda_star, zeta0.size() > 0 ? zeta0 : run_zeta0);
  }

  std::string Describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (mode) {
      case Mode::kFixed:
        out << "fixed(gamma=" << gamma0 << ")";
        break;
      case Mode::kEstimated:
        out << "estimated(threshold=" << threshold;
        if (freeze_after != std::numeric_limits<long>::max())
          out << ", freeze_after=" << freeze_after;
        out << ")";
        break;
      case Mode::kOracle:
        out << "oracle";
        break;
    }
    return out.str();
  }
};

// Successive estimate: the quartic with (A x^k, lambda^k) standing in for the
// optimum. Keeps the current gamma at k = 0, after freeze_after, below the
// threshold, or when an iterate is degenerate.
inline double EstimateStep(const SolverState& state, const StepSizePlan& plan) {
  Require(plan.mode == StepSizePlan::Mode::kEstimated, ErrorCode::kInvalidArgument,
          "EstimateStep needs an estimated plan");
  if (state.k < 1) return plan.gamma0;
  if (state.k >= plan.freeze_after) return state.gamma;
  if (!(state.ax.norm() > 0.0) || !(state.lambda.norm() > 0.0)) return state.gamma;
  double candidate;
  try {
    candidate = GammaGeneral(state.ax, state.lambda, state.zeta0);
  } catch (const Error&) {
    return state.gamma;
  }
  if (!(candidate > 0.0) || !std::isfinite(candidate)) return state.gamma;
  if (std::abs(candidate - state.gamma) <= plan.threshold * state.gamma) return state.gamma;
  return candidate;
}

struct OptimalPair {
  double beta = 1.0;
  Vector zeta0;
  double gamma = 1.0;
};

inline OptimalPair MakeOptimalPair(const Vector& ax_star, const Vector& lambda_star,
                                   double beta) {
  Require(beta > 0.0 && std::isfinite(beta), ErrorCode::kInvalidArgument,
          "beta must be positive and finite");
  Require(ax_star.size() == lambda_star.size(), ErrorCode::kDimensionMismatch,
          "Ax* and lambda* differ in size");
  Require(ax_star.norm() > 0.0, ErrorCode::kDegenerateProblem, "Ax* vanishes");
  Require(lambda_star.norm() > 0.0, ErrorCode::kDegenerateProblem, "lambda* vanishes");
  return OptimalPair{beta, beta * ax_star + lambda_star / beta, beta * beta};
}

enum class AsymptoticSide { kPrimal, kDual };

// Drops the small half of the optimal pair: beta A x* for large beta, or
// lambda*/beta for small beta. Only approximately a fixed point.
inline OptimalPair AsymptoticPair(AsymptoticSide side, const Vector& star, double beta) {
  Require(beta > 0.0 && std::isfinite(beta), ErrorCode::kInvalidArgument,
          "beta must be positive and finite");
  Require(star.norm() > 0.0, ErrorCode::kDegenerateProblem, "optimum vector vanishes");
  if (side == AsymptoticSide::kPrimal) return OptimalPair{beta, beta * star, beta * beta};
  return OptimalPair{beta, star / beta, beta * beta};
}

// Structure-based initial guesses.
inline Vector PseudoInverseInit(const Matrix& d, const Vector& b) {
  Require(d.rows() == b.size(), ErrorCode::kDimensionMismatch,
          "D is " + DimString(d.rows(), d.cols()) + " but b has size " +
              std::to_string(b.size()));
  const auto gram = FactorSpd(d * d.transpose(), "D D'");
  return d.transpose() * gram.solve(b);
}

inline Vector BoxMeanInit(const Vector& lower, const Vector& upper) {
  Require(lower.size() == upper.size(), ErrorCode::kDimensionMismatch,
          "box bounds differ in size");
  return 0.5 * (lower + upper);
}

inline Vector ZeroInit(Index dim) { return Vector::Zero(dim); }

}  // namespace admmstep

#endif  // ADMMSTEP_TUNER_HPP_
