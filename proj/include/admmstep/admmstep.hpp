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

#ifndef ADMMSTEP_ADMMSTEP_HPP_
#define ADMMSTEP_ADMMSTEP_HPP_

#include "admmstep/bench.hpp"
#include "admmstep/engine.hpp"
#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"
#include "admmstep/problem_spec.hpp"
#include "admmstep/problems.hpp"
#include "admmstep/problems_json.hpp"
#include "admmstep/prox.hpp"
#include "admmstep/quartic.hpp"
#include "admmstep/random.hpp"
#include "admmstep/tuner.hpp"

#endif  // ADMMSTEP_ADMMSTEP_HPP_
