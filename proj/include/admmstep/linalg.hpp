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

#ifndef ADMMSTEP_LINALG_HPP_
#define ADMMSTEP_LINALG_HPP_

#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/QR>
#include <Eigen/SparseCore>

#include "admmstep/errors.hpp"

namespace admmstep {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

inline std::string DimString(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

inline void RequireSize(const Vector& v, Index n, const std::string& what) {
  Require(v.size() == n, ErrorCode::kDimensionMismatch,
          what + " has size " + std::to_string(v.size()) + ", expected " +
              std::to_string(n));
}

// A linear map R^cols -> R^rows stored as whichever representation is
// cheapest: a scaled identity, a dense matrix or a sparse matrix.
class LinearMap {
 public:
  struct ScaledIdentity {
    Index dim = 0;
    double scale = 1.0;
  };

  LinearMap() : rep_(ScaledIdentity{}) {}
  explicit LinearMap(Matrix dense) : rep_(std::move(dense)) {}
  explicit LinearMap(SparseMatrix sparse) : rep_(std::move(sparse)) {}

  static LinearMap Identity(Index dim, double scale = 1.0) {
    LinearMap map;
    map.rep_ = ScaledIdentity{dim, scale};
    return map;
  }

  Index rows() const {
    return std::visit(
        [](const auto& r) -> Index {
          if constexpr (std::is_same_v<std::decay_t<decltype(r)>, ScaledIdentity>)
            return r.dim;
          else
            return r.rows();
        },
        rep_);
  }

  Index cols() const {
    return std::visit(
        [](const auto& r) -> Index {
          if constexpr (std::is_same_v<std::decay_t<decltype(r)>, ScaledIdentity>)
            return r.dim;
          else
            return r.cols();
        },
        rep_);
  }

  bool is_identity_like() const { return std::holds_alternative<ScaledIdentity>(rep_); }

  // Only meaningful when is_identity_like().
  double identity_scale() const {
    const auto* id = std::get_if<ScaledIdentity>(&rep_);
    return id ? id->scale : 0.0;
  }

  // The stored representation, or nullptr when it is another one.
  const ScaledIdentity* as_identity() const { return std::get_if<ScaledIdentity>(&rep_); }
  const Matrix* as_dense() const { return std::get_if<Matrix>(&rep_); }
  const SparseMatrix* as_sparse() const { return std::get_if<SparseMatrix>(&rep_); }

  Vector apply(const Vector& x) const {
    RequireSize(x, cols(), "linear map input");
    return std::visit(
        [&](const auto& r) -> Vector {
          if constexpr (std::is_same_v<std::decay_t<decltype(r)>, ScaledIdentity>)
            return r.scale * x;
          else
            return r * x;
        },
        rep_);
  }

  Vector apply_transpose(const Vector& y) const {
    RequireSize(y, rows(), "linear map adjoint input");
    return std::visit(
        [&](const auto& r) -> Vector {
          if constexpr (std::is_same_v<std::decay_t<decltype(r)>, ScaledIdentity>)
            return r.scale * y;
          else
            return r.transpose() * y;
        },
        rep_);
  }

  Matrix to_dense() const {
    return std::visit(
        [](const auto& r) -> Matrix {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ScaledIdentity>)
            return r.scale * Matrix::Identity(r.dim, r.dim);
          else if constexpr (std::is_same_v<T, Matrix>)
            return r;
          else
            return Matrix(r);
        },
        rep_);
  }

  // Rank is decided by column-pivoted QR with pivots below rel_tol * max pivot
  // treated as zero.
  bool has_full_column_rank(double rel_tol = 1e-10) const {
    if (const auto* id = std::get_if<ScaledIdentity>(&rep_)) return id->scale != 0.0;
    if (rows() < cols()) return false;
    Eigen::ColPivHouseholderQR<Matrix> qr(to_dense());
    qr.setThreshold(rel_tol);
    return qr.rank() == cols();
  }

 private:
  std::variant<ScaledIdentity, Matrix, SparseMatrix> rep_;
};

// Single-entry cache of a factorization keyed by the exact step parameter.
// Lookups and rebuilds happen under one mutex, so concurrent callers asking
// for the same key trigger at most one build.
template <typename Factorization>
class ParameterCache {
 public:
  using Builder = std::function<Factorization(double)>;

  explicit ParameterCache(Builder builder) : builder_(std::move(builder)) {}

  std::shared_ptr<const Factorization> get(double key) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!value_ || key != key_) {
      value_ = std::make_shared<const Factorization>(builder_(key));
      key_ = key;
      builds_.fetch_add(1, std::memory_order_relaxed);
    }
    return value_;
  }

  int builds() const { return builds_.load(std::memory_order_relaxed); }

 private:
  Builder builder_;
  std::mutex mutex_;
  double key_ = 0.0;
  std::shared_ptr<const Factorization> value_;
  std::atomic<int> builds_{0};
};

// Cholesky factor of an SPD matrix with a conditioning check; Eigen's LLT
// happily factors matrices that are numerically singular.
inline Eigen::LLT<Matrix> FactorSpd(const Matrix& m, const std::string& what) {
  Eigen::LLT<Matrix> llt(m);
  Require(llt.info() == Eigen::Success, ErrorCode::kSingularSystem,
          what + " is not positive definite");
  const Vector diag = Matrix(llt.matrixL()).diagonal();
  const double lo = diag.minCoeff();
  const double hi = diag.maxCoeff();
  Require(lo > 0.0 && (lo * lo) / (hi * hi) > 1e-14, ErrorCode::kSingularSystem,
          what + " is numerically singular");
  return llt;
}

// Symmetric tridiagonal system with LDL^T factors (Thomas algorithm).
class TridiagonalFactor {
 public:
  TridiagonalFactor() = default;

  // diag has n entries, off has n-1 entries (sub- and super-diagonal).
  TridiagonalFactor(const Vector& diag, const Vector& off) {
    const Index n = diag.size();
    Require(n >= 1 && off.size() == n - 1, ErrorCode::kDimensionMismatch,
            "tridiagonal system needs n diagonal and n-1 off-diagonal entries");
    d_.resize(n);
    l_.resize(n > 0 ? n - 1 : 0);
    d_(0) = diag(0);
    for (Index i = 1; i < n; ++i) {
      Require(d_(i - 1) > 0.0, ErrorCode::kSingularSystem,
              "tridiagonal system is not positive definite");
      l_(i - 1) = off(i - 1) / d_(i - 1);
      d_(i) = diag(i) - l_(i - 1) * off(i - 1);
    }
    Require(d_(n - 1) > 0.0, ErrorCode::kSingularSystem,
            "tridiagonal system is not positive definite");
  }

  Vector solve(const Vector& rhs) const {
    const Index n = d_.size();
    RequireSize(rhs, n, "tridiagonal right-hand side");
    Vector y = rhs;
    for (Index i = 1; i < n; ++i) y(i) -= l_(i - 1) * y(i - 1);
    for (Index i = 0; i < n; ++i) y(i) /= d_(i);
    for (Index i = n - 2; i >= 0; --i) y(i) -= l_(i) * y(i + 1);
    return y;
  }

 private:
  Vector d_;
  Vector l_;
};

// Forward difference operator (Fx)_i = x_{i+1} - x_i, size (n-1) x n.
inline SparseMatrix ForwardDifference(Index n) {
  Require(n >= 2, ErrorCode::kInvalidArgument, "difference operator needs n >= 2");
  SparseMatrix f(n - 1, n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(2 * (n - 1)));
  for (Index i = 0; i + 1 < n; ++i) {
    triplets.emplace_back(i, i, -1.0);
    triplets.emplace_back(i, i + 1, 1.0);
  }
  f.setFromTriplets(triplets.begin(), triplets.end());
  return f;
}

}  // namespace admmstep

#endif  // ADMMSTEP_LINALG_HPP_
