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

#include <cmath>
#include <cstring>
#include <string>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "admmstep/engine.hpp"
#include "admmstep/problems.hpp"
#include "admmstep/problems_json.hpp"
#include "test_support.hpp"

namespace admmstep {
namespace {

using testing_support::TestRng;

bool BitEqual(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.size() == 0 || std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
}

TEST(Generate, LpConstraintMatrixIsPositive) {
  const ProblemInstance inst = Generate(ProblemKind::kLp, Profile::kFull, 0);
  EXPECT_EQ(inst.data.d.rows(), 400);
  EXPECT_EQ(inst.data.d.cols(), 500);
  EXPECT_GT(inst.data.d.minCoeff(), 0.0);
  EXPECT_GE(inst.data.cost.minCoeff(), 0.5);
  EXPECT_LE(inst.data.cost.maxCoeff(), 1.5);
}

TEST(Generate, SameSeedIsBitIdentical) {
  for (ProblemKind kind : kAllProblemKinds) {
    const ProblemInstance a = Generate(kind, Profile::kDesk, 1);
    const ProblemInstance b = Generate(kind, Profile::kDesk, 1);
    EXPECT_TRUE(BitEqual(a.data.d, b.data.d)) << KindName(kind);
    EXPECT_TRUE(BitEqual(a.data.b, b.data.b)) << KindName(kind);
    EXPECT_TRUE(BitEqual(a.data.p, b.data.p)) << KindName(kind);
    EXPECT_TRUE(BitEqual(a.data.s, b.data.s)) << KindName(kind);
    EXPECT_EQ(a.data.alpha, b.data.alpha);
  }
  const ProblemInstance a = Generate(ProblemKind::kLasso, Dims{4, 8}, 1);
  const ProblemInstance b = Generate(ProblemKind::kLasso, Dims{4, 8}, 1);
  EXPECT_TRUE(BitEqual(a.data.b, b.data.b));
  const ProblemInstance c = Generate(ProblemKind::kLasso, Dims{4, 8}, 2);
  EXPECT_FALSE(BitEqual(a.data.b, c.data.b));
}

TEST(Generate, ReferenceRecipes) {
  const ProblemInstance lasso = Generate(ProblemKind::kLasso, Profile::kDesk, 0);
  EXPECT_DOUBLE_EQ(lasso.data.alpha,
                   0.1 * (lasso.data.d.transpose() * lasso.data.b).lpNorm<Eigen::Infinity>());
  EXPECT_EQ(Generate(ProblemKind::kTv, Profile::kDesk, 0).data.alpha, 5.0);
  const ProblemInstance qp = Generate(ProblemKind::kQp, Profile::kDesk, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(qp.data.p);
  EXPECT_GE(eig.eigenvalues().minCoeff(), 1.0 - 1e-10);
  EXPECT_LE(eig.eigenvalues().maxCoeff(), 2.0 + 1e-10);
  EXPECT_TRUE((qp.data.lower.array() <= qp.data.upper.array()).all());
  const ProblemInstance bp = Generate(ProblemKind::kBp, Profile::kDesk, 0);
  EXPECT_EQ(bp.data.d.rows(), 10);
  EXPECT_EQ(bp.data.d.cols(), 30);
  const ProblemInstance lad = Generate(ProblemKind::kLad, Dims{1000, 100}, 0);
  const Vector clean = lad.data.d * lad.data.x_true;
  EXPECT_EQ(((lad.data.b - clean).array().abs() > 0.0).count(), 20);
}

TEST(Generate, OverrideAlpha) {
  GenerateParams params;
  params.alpha = 0.25;
  EXPECT_EQ(Generate(ProblemKind::kTv, Profile::kDesk, 0, params).data.alpha, 0.25);
  EXPECT_THROW(Generate(ProblemKind::kLp, Profile::kDesk, 0, params), Error);
}

TEST(Generate, InvalidDims) {
  auto code = [](ProblemKind kind, Dims dims) {
    try {
      Generate(kind, dims, 0);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kDivergence;
  };
  EXPECT_EQ(code(ProblemKind::kTv, Dims{0, 1}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code(ProblemKind::kLp, Dims{5, 5}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code(ProblemKind::kLad, Dims{5, 10}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code(ProblemKind::kSics, Dims{3, 5}), ErrorCode::kInvalidArgument);
}

TEST(Generate, TvDifferenceRows) {
  const ProblemInstance inst = Generate(ProblemKind::kTv, Dims{1, 5}, 0);
  const Matrix f = inst.spec.a().to_dense();
  ASSERT_EQ(f.rows(), 4);
  ASSERT_EQ(f.cols(), 5);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 5; ++j) {
      const double expected = j == i ? -1.0 : (j == i + 1 ? 1.0 : 0.0);
      EXPECT_EQ(f(i, j), expected);
    }
  }
}

TEST(StepFormula, Examples) {
  const ProblemInstance lp = Generate(ProblemKind::kLp, Dims{1, 2}, 0);
  EXPECT_DOUBLE_EQ(*StepFormula(lp, Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(3.0, 0.0)), 3.0);
  const ProblemInstance tv = Generate(ProblemKind::kTv, Dims{1, 5}, 0);
  EXPECT_FALSE(StepFormula(tv, Vector::Ones(5), Vector::Ones(4)).has_value());
  const ProblemInstance sics = Generate(ProblemKind::kSics, Dims{10, 3}, 0);
  const Matrix eye = Matrix::Identity(3, 3);
  const Matrix two = 2.0 * eye;
  EXPECT_DOUBLE_EQ(*StepFormula(sics, Eigen::Map<const Vector>(eye.data(), 9),
                                Eigen::Map<const Vector>(two.data(), 9)),
                   2.0);
}

TEST(StepFormula, SpecializesTheZeroInitEstimate) {
  TestRng rng(41);
  for (ProblemKind kind : kAllProblemKinds) {
    const ProblemInstance inst = Generate(kind, Profile::kDesk, 0);
    for (int i = 0; i < 10; ++i) {
      const Vector x = rng.vector(inst.spec.n()), lambda = rng.vector(inst.spec.p());
      const double generic = GammaGeneral(inst.spec.a().apply(x), lambda,
                                          Vector::Zero(inst.spec.p()));
      EXPECT_NEAR(*StepFormula(inst, x, lambda), generic, 1e-12 * generic) << KindName(kind);
    }
  }
}

TEST(Json, RoundTripIsBitIdentical) {
  for (ProblemKind kind : kAllProblemKinds) {
    const ProblemInstance inst = Generate(kind, Profile::kDesk, 2);
    const std::string text = ToJson(inst).dump();
    const ProblemInstance back = FromJson(nlohmann::json::parse(text));
    EXPECT_EQ(ToJson(back).dump(), text) << KindName(kind);
    EXPECT_EQ(back.kind, kind);
    EXPECT_EQ(back.seed, 2u);
    TerminationRule rule;
    rule.max_iter = 25;
    const RunRecord r1 = Solve(inst.spec, StepSizePlan::Fixed(1.0),
                               Initialization::Zero(inst.spec), rule);
    const RunRecord r2 = Solve(back.spec, StepSizePlan::Fixed(1.0),
                               Initialization::Zero(back.spec), rule);
    EXPECT_TRUE(BitEqual(r1.final_state.zeta, r2.final_state.zeta)) << KindName(kind);
  }
}

TEST(Json, ErrorsNameTheField) {
  nlohmann::json j = ToJson(Generate(ProblemKind::kLasso, Dims{3, 4}, 0));
  j["data"].erase("alpha");
  try {
    FromJson(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("data.alpha"), std::string::npos) << e.what();
  }
  j = ToJson(Generate(ProblemKind::kLasso, Dims{3, 4}, 0));
  j["schema"] = 99;
  EXPECT_THROW(FromJson(j), Error);
  j = ToJson(Generate(ProblemKind::kLasso, Dims{3, 4}, 0));
  j["kind"] = "svm";
  EXPECT_THROW(FromJson(j), Error);
}

class EveryInstance : public ::testing::TestWithParam<ProblemKind> {};

TEST_P(EveryInstance, SolvesToHighAccuracy) {
  const ProblemInstance inst = Generate(GetParam(), Profile::kDesk, 0);
  TerminationRule rule;
  rule.tol = 1e-8;
  rule.max_iter = 100000;
  const RunRecord r =
      Solve(inst.spec, StepSizePlan::Fixed(1.0), Initialization::Zero(inst.spec), rule);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.rows.back().infeasibility, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Desk, EveryInstance, ::testing::ValuesIn(kAllProblemKinds),
                         [](const auto& info) { return std::string(KindName(info.param)); });

TEST(Sics, IteratesStayPositiveDefinite) {
  const ProblemInstance inst = Generate(ProblemKind::kSics, Profile::kDesk, 0);
  const Index side = inst.data.s.rows();
  SolverState s = InitializeFromZeta(inst.spec, Vector::Zero(inst.spec.p()), 1.0);
  for (int k = 0; k < 200; ++k) {
    AdmmStep(s, inst.spec);
    const Eigen::Map<const Matrix> x(s.x.data(), side, side);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(x);
    ASSERT_GT(eig.eigenvalues().minCoeff(), 0.0) << "k=" << k;
  }
}

}  // namespace
}  // namespace admmstep
