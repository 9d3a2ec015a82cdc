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

// Portable random streams. The standard distributions are implementation
// defined, so only the engine (mt19937_64, whose output is fixed by the
// standard) is taken from <random>; the transforms below are ours.
//
// Stream order: every draw consumes engine outputs strictly in call order.
// uniform() takes one output, normal() takes two (Box-Muller, cosine branch
// only, no caching), Sample() takes one per swap.

#ifndef ADMMSTEP_RANDOM_HPP_
#define ADMMSTEP_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "admmstep/linalg.hpp"

namespace admmstep {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Integer uniform on [0, n) by rejection, so no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  // k distinct indices from [0, n), in draw order (partial Fisher-Yates).
  std::vector<Index> Sample(Index n, Index k) {
    Require(k >= 0 && k <= n, ErrorCode::kInvalidArgument, "cannot sample more than n items");
    std::vector<Index> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
      const auto j = i + static_cast<Index>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    pool.resize(static_cast<size_t>(k));
    return pool;
  }

  // Matrices are filled column-major.
  Matrix NormalMatrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

  Vector NormalVector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Matrix UniformMatrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = uniform();
    return m;
  }

  Vector UniformVector(Index n, double lo = 0.0, double hi = 1.0) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  // Each entry is nonzero with probability density, then drawn from N(0,1).
  Vector SparseNormalVector(Index n, double density) {
    Vector v = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      if (uniform() < density) v(i) = normal();
    }
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace admmstep

#endif  // ADMMSTEP_RANDOM_HPP_
