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

// Benchmark problems in ADMM form with seeded generators.
//
//   kind   A        B    c   f / x-update                  g
//   lp     I        -I   0   c'x on {Dx = b}               x >= 0
//   qp     I        -I   0   x'Px/2 + q'x                  box [lo, hi]
//   lad    D        -I   b   0 (least-squares x-update)    ||z||_1
//   huber  D        -I   b   0 (least-squares x-update)    sum huber(z_i)
//   bp     I        -I   0   indicator {Dx = b}            ||z||_1
//   lasso  I        -I   0   ||Dx - b||^2 / 2              alpha ||z||_1
//   tv     F        -I   0   ||x - b||^2 / 2               alpha ||z||_1
//   sics   I        -I   0   tr(SX) - logdet X             alpha ||Z||_1
//
// F is the forward difference operator. SICS works on column-major vec(X).
// Dimensions: `rows` x `cols` is the size of D for lp, lad, huber, bp and
// lasso; qp and tv use `cols` only; sics uses `cols` variables and `rows`
// samples.

#ifndef ADMMSTEP_PROBLEMS_HPP_
#define ADMMSTEP_PROBLEMS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Eigenvalues>

#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"
#include "admmstep/problem_spec.hpp"
#include "admmstep/prox.hpp"
#include "admmstep/random.hpp"
#include "admmstep/tuner.hpp"

namespace admmstep {

enum class ProblemKind { kLp, kQp, kLad, kHuber, kBp, kLasso, kTv, kSics };

inline constexpr std::array<ProblemKind, 8> kAllProblemKinds = {
    ProblemKind::kLp,    ProblemKind::kQp, ProblemKind::kLad, ProblemKind::kHuber,
    ProblemKind::kBp,    ProblemKind::kLasso, ProblemKind::kTv, ProblemKind::kSics};

inline std::string_view KindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kLp: return "lp";
    case ProblemKind::kQp: return "qp";
    case ProblemKind::kLad: return "lad";
    case ProblemKind::kHuber: return "huber";
    case ProblemKind::kBp: return "bp";
    case ProblemKind::kLasso: return "lasso";
    case ProblemKind::kTv: return "tv";
    case ProblemKind::kSics: return "sics";
  }
  return "unknown";
}

inline ProblemKind ParseKind(std::string_view name) {
  for (ProblemKind kind : kAllProblemKinds) {
    if (KindName(kind) == name) return kind;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown problem kind '" + std::string(name) + "'");
}

enum class Profile { kDesk, kFull };

struct Dims {
  Index rows = 0;
  Index cols = 0;
};

inline Dims DefaultDims(ProblemKind kind, Profile profile) {
  const bool full = profile == Profile::kFull;
  switch (kind) {
    case ProblemKind::kLp: return full ? Dims{400, 500} : Dims{40, 50};
    case ProblemKind::kQp: return full ? Dims{0, 100} : Dims{0, 50};
    case ProblemKind::kLad: return full ? Dims{1000, 100} : Dims{200, 20};
    case ProblemKind::kHuber: return full ? Dims{5000, 200} : Dims{500, 50};
    case ProblemKind::kBp: return Dims{10, 30};
    case ProblemKind::kLasso: return full ? Dims{1500, 5000} : Dims{150, 500};
    case ProblemKind::kTv: return Dims{0, 100};
    case ProblemKind::kSics: return full ? Dims{1000, 100} : Dims{200, 20};
  }
  return {};
}

struct GenerateParams {
  std::optional<double> alpha;  // lasso, tv, sics regularization
};

inline constexpr double kTvAlpha = 5.0;
inline constexpr double kSicsAlpha = 0.01;

// Raw data; each kind fills only what it uses.
struct ProblemData {
  Matrix d;
  Vector b;
  Vector cost;          // lp
  Matrix p;             // qp
  Vector q;             // qp
  Vector lower, upper;  // qp
  double r = 0.0;       // qp objective offset
  Matrix s;             // sics
  double alpha = 0.0;   // lasso, tv, sics
  Vector x_true;        // ground truth used to build b, when there is one
};

struct ProblemInstance {
  ProblemKind kind = ProblemKind::kLp;
  std::uint64_t seed = 0;
  Dims dims;
  ProblemData data;
  ProblemSpec spec;
};

namespace detail {

inline void NormalizeColumns(Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm > 0.0) m.col(j) /= norm;
  }
}

inline double L1(const Vector& v) { return v.lpNorm<1>(); }

inline double Huber(const Vector& v) {
  return v.unaryExpr([](double a) { return std::abs(a) <= 1.0 ? 0.5 * a * a : std::abs(a) - 0.5; })
      .sum();
}

inline double LogDet(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(x, Eigen::EigenvaluesOnly);
  const Vector ev = eig.eigenvalues();
  if (ev.minCoeff() <= 0.0) return -std::numeric_limits<double>::infinity();
  return ev.array().log().sum();
}

// x-update for A = D with f = 0: argmin ||D x - v||^2, independent of gamma.
inline UpdateFn LeastSquaresUpdate(const Matrix& d) {
  auto llt = std::make_shared<const Eigen::LLT<Matrix>>(FactorSpd(d.transpose() * d, "D'D"));
  return [llt, d](const Vector& v, double) -> Vector { return llt->solve(d.transpose() * v); };
}

inline void RequireDims(bool ok, ProblemKind kind, const Dims& dims, const std::string& need) {
  Require(ok, ErrorCode::kInvalidArgument,
          std::string(KindName(kind)) + " with dims " + DimString(dims.rows, dims.cols) +
              ": " + need);
}

}  // namespace detail

// Builds the ADMM form from raw data. Also used to rebuild deserialized
// instances.
inline ProblemSpec BuildSpec(ProblemKind kind, const ProblemData& data) {
  const std::string name(KindName(kind));
  ProblemSpec::Options opts{name, false};
  switch (kind) {
    case ProblemKind::kLp: {
      const Index n = data.d.cols();
      const LinearMap id = LinearMap::Identity(n), neg = LinearMap::Identity(n, -1.0);
      Vector cost = data.cost;
      return ProblemSpec(
          id, neg, Vector::Zero(n),
          UpdateFromProx(QuadraticOverAffine(Matrix::Zero(n, n), data.cost, data.d, data.b), id),
          UpdateFromProx(NonnegProjection(n), neg),
          [cost](const Vector& x, const Vector&) { return cost.dot(x); }, opts);
    }
    case ProblemKind::kQp: {
      const Index n = data.p.rows();
      const LinearMap id = LinearMap::Identity(n), neg = LinearMap::Identity(n, -1.0);
      Matrix p = data.p;
      Vector q = data.q;
      const double r = data.r;
      return ProblemSpec(
          id, neg, Vector::Zero(n),
          UpdateFromProx(QuadraticOverAffine(data.p, data.q, Matrix(0, n), Vector(0)), id),
          UpdateFromProx(BoxProjection(data.lower, data.upper), neg),
          [p, q, r](const Vector& x, const Vector&) { return 0.5 * x.dot(p * x) + q.dot(x) + r; },
          opts);
    }
    case ProblemKind::kLad:
    case ProblemKind::kHuber: {
      const Index m = data.d.rows();
      const LinearMap neg = LinearMap::Identity(m, -1.0);
      const bool lad = kind == ProblemKind::kLad;
      return ProblemSpec(
          LinearMap(data.d), neg, data.b, detail::LeastSquaresUpdate(data.d),
          UpdateFromProx(lad ? L1Prox(m) : HuberProx(m), neg),
          [lad](const Vector&, const Vector& z) { return lad ? detail::L1(z) : detail::Huber(z); },
          opts);
    }
    case ProblemKind::kBp: {
      const Index n = data.d.cols();
      const LinearMap id = LinearMap::Identity(n), neg = LinearMap::Identity(n, -1.0);
      return ProblemSpec(id, neg, Vector::Zero(n),
                         UpdateFromProx(AffineProjection(data.d, data.b), id),
                         UpdateFromProx(L1Prox(n), neg),
                         [](const Vector&, const Vector& z) { return detail::L1(z); }, opts);
    }
    case ProblemKind::kLasso: {
      const Index n = data.d.cols();
      const LinearMap id = LinearMap::Identity(n), neg = LinearMap::Identity(n, -1.0);
      Matrix d = data.d;
      Vector b = data.b;
      const double alpha = data.alpha;
      return ProblemSpec(
          id, neg, Vector::Zero(n), UpdateFromProx(LeastSquaresProx(data.d, data.b), id),
          UpdateFromProx(L1Prox(n, alpha), neg),
          [d, b, alpha](const Vector& x, const Vector& z) {
            return 0.5 * (d * x - b).squaredNorm() + alpha * detail::L1(z);
          },
          opts);
    }
    case ProblemKind::kTv: {
      const Index n = data.b.size();
      const LinearMap neg = LinearMap::Identity(n - 1, -1.0);
      auto system = std::make_shared<DifferenceSystem>(n);
      const SparseMatrix f = ForwardDifference(n);
      Vector b = data.b;
      const double alpha = data.alpha;
      // (I + gamma F'F) x = b + gamma F' v, divided through by gamma.
      UpdateFn x_update = [system, f, b](const Vector& v, double gamma) -> Vector {
        return system->solve(b / gamma + f.transpose() * v, 1.0 / gamma);
      };
      opts.strongly_convex_f = true;
      return ProblemSpec(
          LinearMap(f), neg, Vector::Zero(n - 1), std::move(x_update),
          UpdateFromProx(L1Prox(n - 1, alpha), neg),
          [b, alpha](const Vector& x, const Vector& z) {
            return 0.5 * (x - b).squaredNorm() + alpha * detail::L1(z);
          },
          opts);
    }
    case ProblemKind::kSics: {
      const Index side = data.s.rows();
      const Index n = side * side;
      const LinearMap id = LinearMap::Identity(n), neg = LinearMap::Identity(n, -1.0);
      Matrix s = data.s;
      const double alpha = data.alpha;
      return ProblemSpec(
          id, neg, Vector::Zero(n), UpdateFromProx(LogdetProx(data.s), id),
          UpdateFromProx(L1Prox(n, alpha), neg),
          [s, side, alpha](const Vector& x, const Vector& z) {
            const Eigen::Map<const Matrix> xm(x.data(), side, side);
            return (s * xm).trace() - detail::LogDet(0.5 * (xm + xm.transpose())) +
                   alpha * detail::L1(z);
          },
          opts);
    }
  }
  Fail(ErrorCode::kInvalidArgument, "unknown problem kind");
}

// Draw order per kind is fixed and documented inline; matrices are filled
// column-major.
inline ProblemData GenerateData(ProblemKind kind, const Dims& dims, std::uint64_t seed,
                                const GenerateParams& params = {}) {
  Rng rng(seed);
  ProblemData data;
  const Index m = dims.rows, n = dims.cols;
  switch (kind) {
    case ProblemKind::kLp: {
      detail::RequireDims(m >= 1 && n > m, kind, dims, "need 1 <= rows < cols");
      // D, x, cost
      data.d = rng.NormalMatrix(m, n).cwiseAbs();
      data.x_true = rng.NormalVector(n).cwiseAbs();
      data.b = data.d * data.x_true;
      data.cost = rng.UniformVector(n, 0.5, 1.5);
      break;
    }
    case ProblemKind::kQp: {
      detail::RequireDims(n >= 1, kind, dims, "need cols >= 1");
      // P entries, eigenvalue shifts, q, l, u, r
      const Matrix u = rng.UniformMatrix(n, n);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (u + u.transpose()));
      const Vector shift = rng.UniformVector(n);
      const Vector ev = Vector::Ones(n) + shift;
      const Matrix& v = eig.eigenvectors();
      data.p = v * ev.asDiagonal() * v.transpose();
      data.p = 0.5 * (data.p + data.p.transpose());
      data.q = rng.NormalVector(n);
      const Vector l = rng.NormalVector(n);
      const Vector h = rng.NormalVector(n);
      data.lower = l.cwiseMin(h);
      data.upper = l.cwiseMax(h);
      data.r = rng.normal();
      break;
    }
    case ProblemKind::kLad: {
      detail::RequireDims(m > n && n >= 1, kind, dims, "need rows > cols >= 1");
      // D, x (stddev 10), corrupted indices, corruption (stddev 100)
      data.d = rng.NormalMatrix(m, n);
      data.x_true = 10.0 * rng.NormalVector(n);
      data.b = data.d * data.x_true;
      const Index corrupted = (m + 49) / 50;
      for (Index i : rng.Sample(m, corrupted)) data.b(i) += 100.0 * rng.normal();
      break;
    }
    case ProblemKind::kHuber: {
      detail::RequireDims(m > n && n >= 1, kind, dims, "need rows > cols >= 1");
      // D, x, dense noise (stddev 0.1), sparse uniform noise (density 0.04)
      data.d = rng.NormalMatrix(m, n);
      detail::NormalizeColumns(data.d);
      data.x_true = rng.NormalVector(n);
      data.b = data.d * data.x_true + 0.1 * rng.NormalVector(m);
      for (Index i = 0; i < m; ++i) {
        if (rng.uniform() < 0.04) data.b(i) += rng.uniform();
      }
      break;
    }
    case ProblemKind::kBp: {
      detail::RequireDims(m >= 1 && n > m, kind, dims, "need 1 <= rows < cols");
      // D, sparse x (density 0.1)
      data.d = rng.NormalMatrix(m, n);
      data.x_true = rng.SparseNormalVector(n, 0.1);
      data.b = data.d * data.x_true;
      break;
    }
    case ProblemKind::kLasso: {
      detail::RequireDims(m >= 1 && n >= 1, kind, dims, "need positive rows and cols");
      // D, sparse x (density 0.02), noise (stddev sqrt(0.001))
      data.d = rng.NormalMatrix(m, n);
      detail::NormalizeColumns(data.d);
      data.x_true = rng.SparseNormalVector(n, 0.02);
      data.b = data.d * data.x_true + std::sqrt(0.001) * rng.NormalVector(m);
      data.alpha = params.alpha.value_or(0.1 * (data.d.transpose() * data.b).lpNorm<Eigen::Infinity>());
      break;
    }
    case ProblemKind::kTv: {
      detail::RequireDims(n >= 2, kind, dims, "need cols >= 2");
      // three (index, factor) block scalings, then noise
      data.x_true = Vector::Ones(n);
      for (int j = 0; j < 3; ++j) {
        const Index idx = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))) + 1;
        const double factor = static_cast<double>(rng.below(10) + 1);
        const Index first = (idx + 1) / 2 - 1;  // 1-based ceil(idx/2) .. idx
        data.x_true.segment(first, idx - first) *= factor;
      }
      data.b = data.x_true + rng.NormalVector(n);
      data.alpha = params.alpha.value_or(kTvAlpha);
      break;
    }
    case ProblemKind::kSics: {
      detail::RequireDims(n >= 1 && m > n, kind, dims, "need samples (rows) > variables (cols)");
      // samples x variables Gaussian matrix; S is its sample covariance
      Matrix samples = rng.NormalMatrix(m, n);
      samples.rowwise() -= samples.colwise().mean();
      data.s = samples.transpose() * samples / static_cast<double>(m - 1);
      data.s = 0.5 * (data.s + data.s.transpose());
      data.alpha = params.alpha.value_or(kSicsAlpha);
      break;
    }
  }
  if (params.alpha && kind != ProblemKind::kLasso && kind != ProblemKind::kTv &&
      kind != ProblemKind::kSics) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(KindName(kind)) + " has no regularization parameter");
  }
  return data;
}

inline ProblemInstance Generate(ProblemKind kind, const Dims& dims, std::uint64_t seed,
                                const GenerateParams& params = {}) {
  ProblemData data = GenerateData(kind, dims, seed, params);
  ProblemSpec spec = BuildSpec(kind, data);
  return ProblemInstance{kind, seed, dims, std::move(data), std::move(spec)};
}

inline ProblemInstance Generate(ProblemKind kind, Profile profile, std::uint64_t seed,
                                const GenerateParams& params = {}) {
  return Generate(kind, DefaultDims(kind, profile), seed, params);
}

// Zero-initialization estimate ||lambda|| / ||M x|| in the form each kind's
// constraint suggests; nullopt when the denominator vanishes (keep the
// previous step size).
inline std::optional<double> StepFormula(const ProblemInstance& inst, const Vector& x,
                                         const Vector& lambda) {
  double denom = 0.0;
  switch (inst.kind) {
    case ProblemKind::kLp:
    case ProblemKind::kQp:
    case ProblemKind::kBp:
    case ProblemKind::kLasso:
      denom = x.norm();
      break;
    case ProblemKind::kLad:
    case ProblemKind::kHuber:
      denom = (inst.data.d * x).norm();
      break;
    case ProblemKind::kTv: {
      double sum = 0.0;
      for (Index i = 0; i + 1 < x.size(); ++i) sum += (x(i + 1) - x(i)) * (x(i + 1) - x(i));
      denom = std::sqrt(sum);
      break;
    }
    case ProblemKind::kSics: {
      const Index side = SquareSide(x.size());
      denom = Eigen::Map<const Matrix>(x.data(), side, side).norm();
      break;
    }
  }
  if (!(denom > 0.0)) return std::nullopt;
  return lambda.norm() / denom;
}

// Structure-based initial guess: D^+ b for lp, the box midpoint for qp, zero
// otherwise.
inline Vector StructureInit(const ProblemInstance& inst) {
  switch (inst.kind) {
    case ProblemKind::kLp:
      return PseudoInverseInit(inst.data.d, inst.data.b);
    case ProblemKind::kQp:
      return BoxMeanInit(inst.data.lower, inst.data.upper);
    default:
      return ZeroInit(inst.spec.p());
  }
}

}  // namespace admmstep

#endif  // ADMMSTEP_PROBLEMS_HPP_
