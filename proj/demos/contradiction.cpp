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

// Step sizes suggested by the two scaled fixed points next to the unscaled
// optimum, for every benchmark problem.

#include <cstdio>
#include <string>

#include "admmstep/admmstep.hpp"

int main() {
  using namespace admmstep;
  std::printf("%-6s %12s %12s %12s %10s %s\n", "kind", "<Ax*,l*>", "dagger_1", "dagger_2",
              "gamma*", "consistent");
  for (ProblemKind kind : kAllProblemKinds) {
    const ProblemInstance inst = Generate(kind, Profile::kDesk, 0);
    const ContradictionReport r = Contradiction(inst.spec, Vector::Zero(inst.spec.p()));
    auto show = [](const std::optional<double>& v) { return v ? *v : std::nan(""); };
    std::printf("%-6s %12.4g %12.4g %12.4g %10.4g %s\n", std::string(KindName(kind)).c_str(),
                r.inner, show(r.gamma_dagger_1), show(r.gamma_dagger_2), r.gamma_star,
                r.contradiction() ? "no" : "yes");
  }
  return 0;
}
