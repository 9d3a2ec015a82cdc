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

// Proximal operators in two parameterizations.
//
//   classical:     Prox_{t f}(v) = argmin_z  t f(z) + 1/2 ||z - v||^2,   t > 0
//   right-scaled:  Prox_{f r}(v) = argmin_z  f(r z) + 1/2 ||z - v||^2,   r != 0
//
// They are related by
//
//   Prox_{f r}(v) = (1/r) Prox_{r^2 f}(r v),
//   Prox_{t f}(v) = sqrt(t) Prox_{f sqrt(t)}(v / sqrt(t)),
//
// and in the right-scaled form the Moreau decomposition has no input scaling:
//
//   v = Prox_{f r}(v) + Prox_{f* (1/r)}(v).
//
// Only scalar parameters are supported. The operator-valued generalization
// (a bijective linear S in place of r) is not implemented.

#ifndef ADMMSTEP_PROX_HPP_
#define ADMMSTEP_PROX_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"

namespace admmstep {

enum class ProxConvention {
  kClassical,    // parameter t > 0 in Prox_{t f}
  kRightScaled,  // parameter r != 0 in Prox_{f r}
};

class ProxHandle {
 public:
  using Fn = std::function<Vector(const Vector&, double)>;

  ProxHandle(ProxConvention convention, Index dim, Fn fn, std::string name = {},
             std::function<int()> factorizations = {})
      : convention_(convention),
        dim_(dim),
        fn_(std::move(fn)),
        name_(std::move(name)),
        factorizations_(std::move(factorizations)) {
    Require(dim_ > 0, ErrorCode::kInvalidArgument, "prox dimension must be positive");
  }

  Vector operator()(const Vector& v, double param) const {
    RequireSize(v, dim_, "prox input");
    Require(std::isfinite(param), ErrorCode::kInvalidArgument, "prox parameter must be finite");
    if (convention_ == ProxConvention::kClassical) {
      Require(param > 0.0, ErrorCode::kInvalidArgument,
              "classical prox parameter must be positive, got " + std::to_string(param));
    } else {
      Require(param != 0.0, ErrorCode::kInvalidArgument,
              "right-scaled prox parameter must be non-zero");
    }
    return fn_(v, param);
  }

  ProxConvention convention() const { return convention_; }
  Index dim() const { return dim_; }
  const std::string& name() const { return name_; }

  // Number of factorizations built so far (0 for closed-form proxes).
  int factorizations() const { return factorizations_ ? factorizations_() : 0; }

 private:
  ProxConvention convention_;
  Index dim_;
  Fn fn_;
  std::string name_;
  std::function<int()> factorizations_;
};

inline ProxHandle ClassicalToRightScaled(const ProxHandle& classical) {
  Require(classical.convention() == ProxConvention::kClassical, ErrorCode::kInvalidArgument,
          "expected a classical prox handle");
  return ProxHandle(
      ProxConvention::kRightScaled, classical.dim(),
      [classical](const Vector& v, double r) -> Vector {
        return classical(r * v, r * r) / r;
      },
      classical.name(), [classical] { return classical.factorizations(); });
}

inline ProxHandle RightScaledToClassical(const ProxHandle& right) {
  Require(right.convention() == ProxConvention::kRightScaled, ErrorCode::kInvalidArgument,
          "expected a right-scaled prox handle");
  return ProxHandle(
      ProxConvention::kClassical, right.dim(),
      [right](const Vector& v, double t) -> Vector {
        const double s = std::sqrt(t);
        return s * right(v / s, s);
      },
      right.name(), [right] { return right.factorizations(); });
}

// Given a right-scaled handle for f, returns the right-scaled handle for f*:
// Prox_{f* s}(v) = v - Prox_{f (1/s)}(v). Evaluate it at s = 1/r to pair it
// with the primal evaluated at r.
inline ProxHandle MoreauComplement(const ProxHandle& right) {
  Require(right.convention() == ProxConvention::kRightScaled, ErrorCode::kInvalidArgument,
          "Moreau complement needs a right-scaled prox handle");
  return ProxHandle(
      ProxConvention::kRightScaled, right.dim(),
      [right](const Vector& v, double s) -> Vector { return v - right(v, 1.0 / s); },
      right.name().empty() ? std::string() : right.name() + "*",
      [right] { return right.factorizations(); });
}

struct ConjugatePair {
  ProxHandle primal;
  ProxHandle conjugate;
};

// Builds the conjugate side of a pair from the primal alone.
inline ConjugatePair MakeConjugatePair(const ProxHandle& primal_right_scaled) {
  return ConjugatePair{primal_right_scaled, MoreauComplement(primal_right_scaled)};
}

// ---------------------------------------------------------------------------
// Catalog. Every factory returns a classical handle computing the exact
// minimizer.

inline double SoftThreshold(double v, double k) {
  // Ties at |v| == k map to zero.
  if (v > k) return v - k;
  if (v < -k) return v + k;
  return 0.0;
}

// f = weight * ||.||_1
inline ProxHandle L1Prox(Index dim, double weight = 1.0) {
  Require(weight >= 0.0, ErrorCode::kInvalidArgument, "l1 weight must be non-negative");
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [weight](const Vector& v, double t) -> Vector {
        const double k = weight * t;
        return v.unaryExpr([k](double x) { return SoftThreshold(x, k); });
      },
      "l1");
}

// Indicator of {x : ||x||_inf <= radius}; the conjugate of radius * ||.||_1.
inline ProxHandle LinfBallProjection(Index dim, double radius = 1.0) {
  Require(radius >= 0.0, ErrorCode::kInvalidArgument, "ball radius must be non-negative");
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [radius](const Vector& v, double) -> Vector { return v.cwiseMax(-radius).cwiseMin(radius); },
      "linf-ball");
}

// f = 1/2 ||.||^2, self-conjugate.
inline ProxHandle SquaredNormProx(Index dim) {
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [](const Vector& v, double t) -> Vector { return v / (1.0 + t); }, "half-squared-norm");
}

// f = 0.
inline ProxHandle ZeroFunctionProx(Index dim) {
  return ProxHandle(
      ProxConvention::kClassical, dim, [](const Vector& v, double) -> Vector { return v; },
      "zero");
}

// Indicator of {0}.
inline ProxHandle ZeroIndicatorProx(Index dim) {
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [](const Vector& v, double) -> Vector { return Vector::Zero(v.size()); }, "indicator-zero");
}

inline ProxHandle NonnegProjection(Index dim) {
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [](const Vector& v, double) -> Vector { return v.cwiseMax(0.0); }, "nonneg");
}

inline ProxHandle BoxProjection(Vector lower, Vector upper) {
  Require(lower.size() == upper.size(), ErrorCode::kDimensionMismatch,
          "box bounds differ in size");
  Require((lower.array() <= upper.array()).all(), ErrorCode::kInvalidArgument,
          "box lower bound exceeds upper bound");
  const Index dim = lower.size();
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [lower = std::move(lower), upper = std::move(upper)](const Vector& v, double) -> Vector {
        return v.cwiseMax(lower).cwiseMin(upper);
      },
      "box");
}

// Projection onto {x : D x = b} via a factorization of D D^T. Rank deficiency
// of D below 1e-10 relative is an error.
inline ProxHandle AffineProjection(const Matrix& d, const Vector& b) {
  Require(d.rows() == b.size(), ErrorCode::kDimensionMismatch,
          "affine set: D is " + DimString(d.rows(), d.cols()) + " but b has size " +
              std::to_string(b.size()));
  Require(d.rows() <= d.cols(), ErrorCode::kRankDeficient,
          "affine set: D has more rows than columns");
  Eigen::ColPivHouseholderQR<Matrix> qr(d.transpose());
  qr.setThreshold(1e-10);
  Require(qr.rank() == d.rows(), ErrorCode::kRankDeficient,
          "affine set: D does not have full row rank");
  auto gram = std::make_shared<const Eigen::LLT<Matrix>>(
      FactorSpd(d * d.transpose(), "affine set Gram matrix"));
  return ProxHandle(
      ProxConvention::kClassical, d.cols(),
      [d, b, gram](const Vector& v, double) -> Vector {
        return v - d.transpose() * gram->solve(d * v - b);
      },
      "affine");
}

// f(x) = 1/2 x'Px + q'x restricted to {x : D x = b} (D may have zero rows).
// Solved through the Schur complement of the KKT system; the factorization is
// cached for the most recent t.
inline ProxHandle QuadraticOverAffine(Matrix p, Vector q, Matrix d, Vector b) {
  const Index n = p.rows();
  Require(p.cols() == n, ErrorCode::kDimensionMismatch, "quadratic: P must be square");
  Require(q.size() == n, ErrorCode::kDimensionMismatch, "quadratic: q has wrong size");
  Require(d.cols() == n || d.rows() == 0, ErrorCode::kDimensionMismatch,
          "quadratic: D has " + std::to_string(d.cols()) + " columns, expected " +
              std::to_string(n));
  Require(d.rows() == b.size(), ErrorCode::kDimensionMismatch, "quadratic: b has wrong size");
  Require((p - p.transpose()).norm() <= 1e-12 * (1.0 + p.norm()), ErrorCode::kNotSymmetric,
          "quadratic: P is not symmetric");
  if (d.rows() == 0) d.resize(0, n);

  struct Factor {
    Eigen::LLT<Matrix> block;  // P + I/t
    Eigen::LLT<Matrix> schur;  // D (P + I/t)^{-1} D'
    Matrix block_inv_dt;       // (P + I/t)^{-1} D'
  };
  auto cache = std::make_shared<ParameterCache<Factor>>([p, d](double t) {
    Factor f;
    f.block = FactorSpd(p + Matrix::Identity(p.rows(), p.cols()) / t, "KKT block P + I/t");
    if (d.rows() > 0) {
      f.block_inv_dt = f.block.solve(d.transpose());
      f.schur = FactorSpd(d * f.block_inv_dt, "KKT Schur complement");
    }
    return f;
  });
  return ProxHandle(
      ProxConvention::kClassical, n,
      [cache, q = std::move(q), d, b = std::move(b)](const Vector& v, double t) -> Vector {
        const auto f = cache->get(t);
        const Vector rhs = v / t - q;
        Vector x = f->block.solve(rhs);
        if (d.rows() > 0) {
          const Vector nu = f->schur.solve(d * x - b);
          x -= f->block_inv_dt * nu;
        }
        return x;
      },
      "quadratic-affine", [cache] { return cache->builds(); });
}

// f(x) = 1/2 ||D x - b||^2. Uses the n x n normal matrix when D is tall and
// the m x m matrix-inversion-lemma form when D is wide.
inline ProxHandle LeastSquaresProx(Matrix d, Vector b) {
  Require(d.rows() == b.size(), ErrorCode::kDimensionMismatch,
          "least squares: D is " + DimString(d.rows(), d.cols()) + " but b has size " +
              std::to_string(b.size()));
  const bool wide = d.rows() < d.cols();
  auto cache = std::make_shared<ParameterCache<Eigen::LLT<Matrix>>>([d, wide](double t) {
    const double rho = 1.0 / t;
    if (wide) {
      Matrix m = d * d.transpose();
      m.diagonal().array() += rho;
      return FactorSpd(m, "least squares (rho I + D D')");
    }
    Matrix m = d.transpose() * d;
    m.diagonal().array() += rho;
    return FactorSpd(m, "least squares (D'D + rho I)");
  });
  const Vector dtb = d.transpose() * b;
  const Index n = d.cols();
  return ProxHandle(
      ProxConvention::kClassical, n,
      [cache, d = std::move(d), dtb, wide](const Vector& v, double t) -> Vector {
        const auto f = cache->get(t);
        const double rho = 1.0 / t;
        const Vector rhs = dtb + rho * v;
        if (!wide) return f->solve(rhs);
        // (D'D + rho I)^{-1} r = (r - D' (rho I + D D')^{-1} D r) / rho
        return (rhs - d.transpose() * f->solve(d * rhs)) / rho;
      },
      "least-squares", [cache] { return cache->builds(); });
}

// Elementwise Huber function: a^2/2 for |a| <= 1, |a| - 1/2 otherwise.
inline ProxHandle HuberProx(Index dim) {
  return ProxHandle(
      ProxConvention::kClassical, dim,
      [](const Vector& v, double t) -> Vector {
        return v.unaryExpr([t](double x) {
          if (std::abs(x) <= 1.0 + t) return x / (1.0 + t);
          return x - t * (x > 0 ? 1.0 : -1.0);
        });
      },
      "huber");
}

// Solver for (t I + F'F) x = rhs with F the forward difference operator; the
// matrix is tridiagonal. Shared by the TV prox and the TV x-update.
class DifferenceSystem {
 public:
  explicit DifferenceSystem(Index n)
      : n_(n), cache_(std::make_shared<ParameterCache<TridiagonalFactor>>([n](double t) {
          Vector diag = Vector::Constant(n, 2.0 + t);
          diag(0) = 1.0 + t;
          diag(n - 1) = 1.0 + t;
          return TridiagonalFactor(diag, Vector::Constant(n - 1, -1.0));
        })) {
    Require(n >= 2, ErrorCode::kInvalidArgument, "difference system needs n >= 2");
  }

  Vector solve(const Vector& rhs, double t) const { return cache_->get(t)->solve(rhs); }
  int factorizations() const { return cache_->builds(); }
  Index size() const { return n_; }

 private:
  Index n_;
  std::shared_ptr<ParameterCache<TridiagonalFactor>> cache_;
};

// Prox of the infimal postcomposition h = F |> (1/2 ||. - b||^2) on R^{n-1}:
// Prox_{t h}(w) = F x with (t I + F'F) x = t b + F' w.
inline ProxHandle TvQuadraticProx(Vector b) {
  const Index n = b.size();
  auto system = std::make_shared<DifferenceSystem>(n);
  const SparseMatrix f = ForwardDifference(n);
  return ProxHandle(
      ProxConvention::kClassical, n - 1,
      [system, f, b = std::move(b)](const Vector& w, double t) -> Vector {
        const Vector x = system->solve(t * b + f.transpose() * w, t);
        return f * x;
      },
      "tv-quadratic", [system] { return system->factorizations(); });
}

inline Index SquareSide(Index dim) {
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim))));
  Require(side * side == dim, ErrorCode::kDimensionMismatch,
          "vector of size " + std::to_string(dim) + " is not a vectorized square matrix");
  return side;
}

// Symmetrizes a vectorized (column-major) square matrix, rejecting inputs
// whose skew part is not round-off.
inline Matrix SymmetricFromVector(const Vector& v) {
  const Index side = SquareSide(v.size());
  const Eigen::Map<const Matrix> m(v.data(), side, side);
  Require((m - m.transpose()).norm() <= 1e-8 * (1.0 + m.norm()), ErrorCode::kNotSymmetric,
          "matrix argument is not symmetric");
  return 0.5 * (m + m.transpose());
}

inline Vector Vectorize(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

constexpr double kEigenvalueFloor = 1e-12;

// f(X) = trace(S X) - logdet(X) on symmetric matrices, vectorized
// column-major. X - t X^{-1} = V - t S is solved per eigenvalue.
inline ProxHandle LogdetProx(Matrix s) {
  Require(s.rows() == s.cols(), ErrorCode::kDimensionMismatch, "logdet: S must be square");
  Require((s - s.transpose()).norm() <= 1e-12 * (1.0 + s.norm()), ErrorCode::kNotSymmetric,
          "logdet: S is not symmetric");
  const Index side = s.rows();
  return ProxHandle(
      ProxConvention::kClassical, side * side,
      [s = std::move(s)](const Vector& v, double t) -> Vector {
        const Matrix m = SymmetricFromVector(v) - t * s;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
        Require(eig.info() == Eigen::Success, ErrorCode::kDivergence,
                "logdet: eigendecomposition failed");
        Vector lam = eig.eigenvalues().unaryExpr(
            [t](double mu) { return (mu + std::sqrt(mu * mu + 4.0 * t)) / 2.0; });
        lam = lam.cwiseMax(kEigenvalueFloor);
        const Matrix& q = eig.eigenvectors();
        return Vectorize(q * lam.asDiagonal() * q.transpose());
      },
      "logdet");
}

// ---------------------------------------------------------------------------

enum class ProxKind {
  kL1,
  kNonneg,
  kBox,
  kAffine,
  kQuadraticAffine,
  kLeastSquares,
  kHuber,
  kTvQuadratic,
  kLogdetQuadratic,
};

// Problem data for CatalogProx; each kind reads only the fields it needs.
struct ProxParams {
  Index dim = 0;
  double weight = 1.0;
  Vector lower, upper;
  Matrix p, d, s;
  Vector q, b;
};

inline ProxHandle CatalogProx(ProxKind kind, const ProxParams& params) {
  switch (kind) {
    case ProxKind::kL1:
      return L1Prox(params.dim, params.weight);
    case ProxKind::kNonneg:
      return NonnegProjection(params.dim);
    case ProxKind::kBox:
      return BoxProjection(params.lower, params.upper);
    case ProxKind::kAffine:
      return AffineProjection(params.d, params.b);
    case ProxKind::kQuadraticAffine:
      return QuadraticOverAffine(params.p, params.q, params.d, params.b);
    case ProxKind::kLeastSquares:
      return LeastSquaresProx(params.d, params.b);
    case ProxKind::kHuber:
      return HuberProx(params.dim);
    case ProxKind::kTvQuadratic:
      return TvQuadraticProx(params.b);
    case ProxKind::kLogdetQuadratic:
      return LogdetProx(params.s);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown prox kind");
}

}  // namespace admmstep

#endif  // ADMMSTEP_PROX_HPP_
