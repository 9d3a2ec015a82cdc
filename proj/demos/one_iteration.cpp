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

// Solves an LP from the jointly optimal (zeta0, gamma) pair and from zero
// initialization at gamma = 1 and gamma*.

#include <cstdio>

#include "admmstep/admmstep.hpp"

int main() {
  using namespace admmstep;
  const ProblemInstance inst = Generate(ProblemKind::kLp, Profile::kDesk, 0);
  const OracleSolution oracle = SolveOracle(inst.spec);
  std::printf("oracle: %ld iterations, residue %.3g\n", oracle.iterations, oracle.residue);

  const TerminationRule rule;
  const Initialization zero = Initialization::Zero(inst.spec);
  const RunRecord unit = Solve(inst.spec, StepSizePlan::Fixed(1.0), zero, rule);
  const double gamma_star = GammaZeroInit(oracle.ax, oracle.lambda);
  const RunRecord star = Solve(inst.spec, StepSizePlan::Fixed(gamma_star), zero, rule);
  std::printf("zero init, gamma = 1:      %ld iterations\n", unit.iterations);
  std::printf("zero init, gamma* = %.4g: %ld iterations\n", gamma_star, star.iterations);

  for (double beta : {0.5, 1.0, 2.0, 10.0}) {
    const OptimalPair pair = MakeOptimalPair(oracle.ax, oracle.lambda, beta);
    const RunRecord run = Solve(inst.spec, StepSizePlan::Fixed(pair.gamma),
                                Initialization::Zeta(pair.zeta0), rule);
    std::printf("optimal pair, beta = %-4g  %ld iteration(s), residue %.3g\n", beta,
                run.iterations, run.rows.back().residue);
  }
  return 0;
}
