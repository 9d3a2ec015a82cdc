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

// ADMM iteration and its Douglas-Rachford views.
//
// One ADMM step (relaxation theta; theta = 1/2 is plain ADMM):
//
//   x      = x_update(c - B z - lambda/gamma, gamma)
//   Ax_hat = 2 theta A x + (1 - 2 theta)(c - B z)
//   z      = z_update(c - Ax_hat - lambda/gamma, gamma)
//   lambda = lambda + gamma (Ax_hat + B z - c)
//
// In the scaled variable zeta_s = Ax_hat + lambda_prev/gamma this is the
// theta-averaged iteration of R_f R_g, where R = 2 Prox - I. The unscaled
// zeta = sqrt(gamma) zeta_s is what the state stores and what residues are
// measured in.

#ifndef ADMMSTEP_ENGINE_HPP_
#define ADMMSTEP_ENGINE_HPP_

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"
#include "admmstep/problem_spec.hpp"
#include "admmstep/prox.hpp"
#include "admmstep/tuner.hpp"

namespace admmstep {

namespace detail {

inline void RequireFinite(const Vector& v, const char* what) {
  Require(v.allFinite(), ErrorCode::kDivergence, std::string(what) + " became non-finite");
}

}  // namespace detail

// Enters the loop at a bare unscaled zeta0 with a half sweep:
// z = z_update(c - zeta_s), lambda = gamma (zeta_s + B z - c).
inline SolverState InitializeFromZeta(const ProblemSpec& spec, const Vector& zeta0,
                                      double gamma) {
  RequireSize(zeta0, spec.p(), "zeta0");
  Require(gamma > 0.0 && std::isfinite(gamma), ErrorCode::kInvalidArgument,
          "step size must be positive and finite");
  SolverState s;
  s.gamma = gamma;
  s.zeta0 = zeta0;
  s.zeta = zeta0;
  const Vector zeta_s = zeta0 / std::sqrt(gamma);
  s.z = spec.z_update(spec.c() - zeta_s, gamma);
  s.lambda = gamma * (zeta_s + spec.b().apply(s.z) - spec.c());
  s.x = Vector::Zero(spec.n());
  s.ax = spec.c() - spec.b().apply(s.z);
  s.ax_hat = zeta_s;
  s.lambda_prev = Vector::Zero(spec.p());
  detail::RequireFinite(s.lambda, "initial multiplier");
  return s;
}

// zeta0 = A x0 + lambda0, taken literally without gamma scaling.
inline Vector ZetaFromIterates(const ProblemSpec& spec, const Vector& x0,
                               const Vector& lambda0) {
  RequireSize(lambda0, spec.p(), "lambda0");
  return spec.a().apply(x0) + lambda0;
}

// Changes gamma between steps; (x, z, lambda) carry over and zeta is
// recomputed from the same iterates.
inline void Rescale(SolverState& state, double gamma) {
  Require(gamma > 0.0 && std::isfinite(gamma), ErrorCode::kInvalidArgument,
          "step size must be positive and finite");
  if (gamma == state.gamma) return;
  state.gamma = gamma;
  if (state.k == 0) return;
  const double s = std::sqrt(gamma);
  state.zeta = s * state.ax_hat + state.lambda_prev / s;
}

inline void AdmmStep(SolverState& state, const ProblemSpec& spec, double theta = 0.5) {
  const double gamma = state.gamma;
  const double sq = std::sqrt(gamma);
  const Vector c_minus_bz = spec.c() - spec.b().apply(state.z);

  state.x = spec.x_update(c_minus_bz - state.lambda / gamma, gamma);
  detail::RequireFinite(state.x, "x iterate");
  state.ax = spec.a().apply(state.x);
  state.ax_hat = 2.0 * theta * state.ax + (1.0 - 2.0 * theta) * c_minus_bz;

  const Vector zeta = sq * state.ax_hat + state.lambda / sq;
  state.residue_history.push_back((zeta - state.zeta).norm());
  state.zeta = zeta;
  state.lambda_prev = state.lambda;

  state.z = spec.z_update(spec.c() - state.ax_hat - state.lambda / gamma, gamma);
  detail::RequireFinite(state.z, "z iterate");
  state.lambda += gamma * (state.ax_hat + spec.b().apply(state.z) - spec.c());
  detail::RequireFinite(state.lambda, "multiplier");
  ++state.k;
}

// (1 - theta) zeta + theta R_f R_g zeta in unscaled units; computed from the
// two partial minimizations alone, independently of AdmmStep.
inline Vector DrsStep(const Vector& zeta, const ProblemSpec& spec, double gamma,
                      double theta = 0.5) {
  RequireSize(zeta, spec.p(), "zeta");
  Require(gamma > 0.0, ErrorCode::kInvalidArgument, "step size must be positive");
  const double sq = std::sqrt(gamma);
  const Vector zeta_s = zeta / sq;
  const Vector y_half = spec.c() - spec.b().apply(spec.z_update(spec.c() - zeta_s, gamma));
  const Vector y = spec.a().apply(spec.x_update(2.0 * y_half - zeta_s, gamma));
  Vector out = sq * (zeta_s + 2.0 * theta * (y - y_half));
  detail::RequireFinite(out, "DRS iterate");
  return out;
}

// Classical proxes of the conjugates of f~ = A |> f and g~(u) = g(z) over
// c - B z = u, obtained through the right-scaled Moreau decomposition.
struct DualProxes {
  ProxHandle f_conj;
  ProxHandle g_conj;
};

inline DualProxes MakeDualProxes(const ProblemSpec& spec) {
  const ProblemSpec* sp = &spec;
  const ProxHandle f_tilde(ProxConvention::kClassical, spec.p(),
                           [sp](const Vector& v, double t) -> Vector {
                             return sp->a().apply(sp->x_update(v, 1.0 / t));
                           });
  const ProxHandle g_tilde(ProxConvention::kClassical, spec.p(),
                           [sp](const Vector& v, double t) -> Vector {
                             return sp->c() - sp->b().apply(sp->z_update(sp->c() - v, 1.0 / t));
                           });
  auto conj = [](const ProxHandle& h) {
    return RightScaledToClassical(MoreauComplement(ClassicalToRightScaled(h)));
  };
  return DualProxes{conj(f_tilde), conj(g_tilde)};
}

// One theta-averaged DRS step on the dual problem
// min f~*(-mu) + g~*(mu) in the dual variable psi. psi = gamma zeta_s, so
// psi / sqrt(gamma) equals the unscaled primal zeta.
inline Vector DualDrsStep(const Vector& psi, const DualProxes& duals, double gamma,
                          double theta = 0.5) {
  const Vector mu_half = duals.g_conj(psi, gamma);
  const Vector mu = -duals.f_conj(-(2.0 * mu_half - psi), gamma);
  return psi + 2.0 * theta * (mu - mu_half);
}

struct Initialization {
  Vector zeta0;

  static Initialization Zeta(Vector zeta0) { return Initialization{std::move(zeta0)}; }
  static Initialization Zero(const ProblemSpec& spec) {
    return Initialization{Vector::Zero(spec.p())};
  }
  static Initialization Iterates(const ProblemSpec& spec, const Vector& x0,
                                 const Vector& lambda0) {
    return Initialization{ZetaFromIterates(spec, x0, lambda0)};
  }
};

inline RunRecord Solve(const ProblemSpec& spec, const StepSizePlan& plan,
                       const Initialization& init, const TerminationRule& rule = {}) {
  rule.Validate();
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  record.problem = spec.name();
  record.plan = plan.Describe();
  SolverState state = InitializeFromZeta(spec, init.zeta0, plan.InitialGamma(init.zeta0));
  while (state.k < rule.max_iter && !(state.last_residue() <= rule.tol)) {
    if (plan.mode == StepSizePlan::Mode::kEstimated) Rescale(state, EstimateStep(state, plan));
    AdmmStep(state, spec, rule.theta);
    record.rows.push_back(TraceRow{state.k, state.gamma, state.last_residue(),
                                   spec.objective(state.x, state.z),
                                   spec.infeasibility(state.ax, state.z)});
  }
  record.converged = state.last_residue() <= rule.tol;
  record.iterations = state.k;
  record.final_state = std::move(state);
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

// High-accuracy reference solution.
struct OracleSolution {
  Vector x, z, ax, lambda;
  double residue = 0.0;
  long iterations = 0;
  bool converged = false;
};

inline OracleSolution SolveOracle(const ProblemSpec& spec, double tol = 1e-10,
                                  double gamma = 1.0, long max_iter = 100000) {
  TerminationRule rule;
  rule.tol = tol;
  rule.max_iter = max_iter;
  const RunRecord run =
      Solve(spec, StepSizePlan::Fixed(gamma), Initialization::Zero(spec), rule);
  const SolverState& s = run.final_state;
  return OracleSolution{s.x, s.z, s.ax, s.lambda, s.last_residue(), run.iterations,
                        run.converged};
}

// The step sizes that the scaled fixed points Ax* + lambda*/gamma and
// gamma Ax* + lambda* would suggest, next to the unscaled optimum.
struct ContradictionReport {
  double ax_norm_sq = 0.0;
  double lambda_norm_sq = 0.0;
  double inner = 0.0;  // <Ax*, lambda*>
  std::optional<double> gamma_dagger_1;  // -||lambda*||^2 / <Ax*, lambda*>
  std::optional<double> gamma_dagger_2;  // -<Ax*, lambda*> / ||Ax*||^2
  double gamma_star = 0.0;
  bool daggers_agree = false;
  bool daggers_positive = false;

  bool contradiction() const { return !(daggers_agree && daggers_positive); }
};

inline ContradictionReport Contradiction(const Vector& ax_star, const Vector& lambda_star,
                                         const Vector& zeta0) {
  ContradictionReport r;
  r.ax_norm_sq = ax_star.squaredNorm();
  r.lambda_norm_sq = lambda_star.squaredNorm();
  r.inner = ax_star.dot(lambda_star);
  if (r.inner != 0.0) r.gamma_dagger_1 = -r.lambda_norm_sq / r.inner;
  if (r.ax_norm_sq != 0.0) r.gamma_dagger_2 = -r.inner / r.ax_norm_sq;
  r.gamma_star = GammaGeneral(ax_star, lambda_star, zeta0);
  if (r.gamma_dagger_1 && r.gamma_dagger_2) {
    const double g1 = *r.gamma_dagger_1, g2 = *r.gamma_dagger_2;
    r.daggers_agree = std::abs(g1 - g2) <= 1e-9 * std::max(std::abs(g1), std::abs(g2));
    r.daggers_positive = g1 > 0.0 && g2 > 0.0;
  }
  return r;
}

inline ContradictionReport Contradiction(const ProblemSpec& spec, const Vector& zeta0,
                                         double tol = 1e-10) {
  const OracleSolution oracle = SolveOracle(spec, tol);
  return Contradiction(oracle.ax, oracle.lambda, zeta0);
}

}  // namespace admmstep

#endif  // ADMMSTEP_ENGINE_HPP_
