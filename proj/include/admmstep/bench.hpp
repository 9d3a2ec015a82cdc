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

// Experiment harness: plan construction, grid ("limit") search and output
// formats shared by the command-line tool and the tests.
//
// Trace CSV:  k,gamma,residue,objective,infeasibility  (shortest round-trip
// decimals). JSON summaries carry "schema": 1. Files are written to a
// temporary name and renamed into place.

#ifndef ADMMSTEP_BENCH_HPP_
#define ADMMSTEP_BENCH_HPP_

#include <algorithm>
#include <charconv>
#include <exception>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "admmstep/engine.hpp"
#include "admmstep/errors.hpp"
#include "admmstep/problems.hpp"
#include "admmstep/tuner.hpp"

namespace admmstep {

inline constexpr int kSummarySchema = 1;

inline std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string TraceCsv(const RunRecord& record) {
  std::string out = "k,gamma,residue,objective,infeasibility\n";
  for (const TraceRow& row : record.rows) {
    out += std::to_string(row.k);
    for (double v : {row.gamma, row.residue, row.objective, row.infeasibility}) {
      out += ',';
      out += FormatDouble(v);
    }
    out += '\n';
  }
  return out;
}

inline void WriteFileAtomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    Require(static_cast<bool>(out), ErrorCode::kInvalidArgument,
            "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    Require(static_cast<bool>(out), ErrorCode::kInvalidArgument,
            "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  Require(!ec, ErrorCode::kInvalidArgument,
          "cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

// Non-finite values become strings so the document stays valid JSON.
inline nlohmann::json JsonNumber(double v) {
  if (std::isfinite(v)) return v;
  return FormatDouble(v);
}

// ---------------------------------------------------------------------------
// Plans

enum class PlanKind { kFixed, kOracle, kEstimated, kOptimalPair, kAsymptotic };
enum class InitKind { kZero, kStructure, kExplicit };

inline std::string_view PlanKindName(PlanKind kind) {
  switch (kind) {
    case PlanKind::kFixed: return "fixed";
    case PlanKind::kOracle: return "oracle";
    case PlanKind::kEstimated: return "estimated";
    case PlanKind::kOptimalPair: return "optimal-pair";
    case PlanKind::kAsymptotic: return "asymptotic";
  }
  return "unknown";
}

inline PlanKind ParsePlanKind(std::string_view name) {
  for (PlanKind kind : {PlanKind::kFixed, PlanKind::kOracle, PlanKind::kEstimated,
                        PlanKind::kOptimalPair, PlanKind::kAsymptotic}) {
    if (PlanKindName(kind) == name) return kind;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown plan '" + std::string(name) + "'");
}

inline std::string_view InitKindName(InitKind kind) {
  switch (kind) {
    case InitKind::kZero: return "zero";
    case InitKind::kStructure: return "structure";
    case InitKind::kExplicit: return "explicit";
  }
  return "unknown";
}

inline InitKind ParseInitKind(std::string_view name) {
  for (InitKind kind : {InitKind::kZero, InitKind::kStructure, InitKind::kExplicit}) {
    if (InitKindName(kind) == name) return kind;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown init '" + std::string(name) + "'");
}

struct PlanConfig {
  PlanKind kind = PlanKind::kFixed;
  double gamma = 1.0;  // fixed
  double beta = 1.0;   // optimal-pair, asymptotic
  AsymptoticSide side = AsymptoticSide::kPrimal;
  double threshold = 0.0;  // estimated
  long freeze_after = std::numeric_limits<long>::max();

  std::string Label() const {
    std::string s(PlanKindName(kind));
    switch (kind) {
      case PlanKind::kFixed: return s + "-gamma" + FormatDouble(gamma);
      case PlanKind::kOptimalPair: return s + "-beta" + FormatDouble(beta);
      case PlanKind::kAsymptotic:
        return s + (side == AsymptoticSide::kPrimal ? "-primal" : "-dual") + "-beta" +
               FormatDouble(beta);
      default: return s;
    }
  }
};

struct OracleConfig {
  double tol = 1e-10;
  double gamma = 1.0;
  long max_iter = 100000;
};

// Lazily computed high-accuracy solution for one instance.
class OracleCache {
 public:
  OracleCache(const ProblemSpec& spec, OracleConfig config) : spec_(spec), config_(config) {}

  const OracleSolution& get() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!solution_)
      solution_ = SolveOracle(spec_, config_.tol, config_.gamma, config_.max_iter);
    return *solution_;
  }

 private:
  const ProblemSpec& spec_;
  OracleConfig config_;
  std::mutex mutex_;
  std::optional<OracleSolution> solution_;
};

inline Vector InitialZeta(const ProblemInstance& inst, InitKind init, const Vector& explicit_zeta0) {
  switch (init) {
    case InitKind::kZero: return ZeroInit(inst.spec.p());
    case InitKind::kStructure: return StructureInit(inst);
    case InitKind::kExplicit:
      RequireSize(explicit_zeta0, inst.spec.p(), "explicit zeta0");
      return explicit_zeta0;
  }
  return ZeroInit(inst.spec.p());
}

// Runs one plan. Optimal-pair and asymptotic plans bring their own zeta0 and
// ignore `zeta0`.
inline RunRecord RunPlan(const ProblemInstance& inst, const PlanConfig& plan, const Vector& zeta0,
                         const TerminationRule& rule, OracleCache& oracle) {
  RunRecord record;
  switch (plan.kind) {
    case PlanKind::kFixed:
      record = Solve(inst.spec, StepSizePlan::Fixed(plan.gamma), Initialization::Zeta(zeta0), rule);
      break;
    case PlanKind::kEstimated:
      record = Solve(inst.spec, StepSizePlan::Estimated(plan.threshold, plan.freeze_after),
                     Initialization::Zeta(zeta0), rule);
      break;
    case PlanKind::kOracle: {
      const OracleSolution& o = oracle.get();
      record = Solve(inst.spec, StepSizePlan::Oracle(o.ax, o.lambda), Initialization::Zeta(zeta0),
                     rule);
      break;
    }
    case PlanKind::kOptimalPair: {
      const OracleSolution& o = oracle.get();
      const OptimalPair pair = MakeOptimalPair(o.ax, o.lambda, plan.beta);
      record = Solve(inst.spec, StepSizePlan::Fixed(pair.gamma), Initialization::Zeta(pair.zeta0),
                     rule);
      break;
    }
    case PlanKind::kAsymptotic: {
      const OracleSolution& o = oracle.get();
      const OptimalPair pair = AsymptoticPair(
          plan.side, plan.side == AsymptoticSide::kPrimal ? o.ax : o.lambda, plan.beta);
      record = Solve(inst.spec, StepSizePlan::Fixed(pair.gamma), Initialization::Zeta(pair.zeta0),
                     rule);
      break;
    }
  }
  record.plan = plan.Label();
  return record;
}

// ---------------------------------------------------------------------------
// Grid search

inline std::vector<double> LogGrid(double lo, double hi, int count) {
  Require(lo > 0.0 && hi >= lo && std::isfinite(hi), ErrorCode::kInvalidArgument,
          "grid bounds must satisfy 0 < lo <= hi < inf");
  Require(count >= 1, ErrorCode::kInvalidArgument, "grid needs at least one point");
  std::vector<double> grid(static_cast<size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < count; ++i) grid[static_cast<size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

struct GridPoint {
  double gamma = 0.0;
  long iterations = 0;
  bool converged = false;
};

struct GridSearchResult {
  std::vector<GridPoint> points;  // ascending in gamma
  std::optional<size_t> limit_index;  // fastest converged point, first on ties
  bool boundary_hit = false;

  std::optional<double> gamma_limit() const {
    if (!limit_index) return std::nullopt;
    return points[*limit_index].gamma;
  }
  std::optional<long> limit_iterations() const {
    if (!limit_index) return std::nullopt;
    return points[*limit_index].iterations;
  }
};

// Runs a fixed-gamma solve per grid point on up to `threads` threads.
inline GridSearchResult GridSearch(const ProblemSpec& spec, const std::vector<double>& grid,
                                   const Vector& zeta0, const TerminationRule& rule,
                                   int threads = 1) {
  Require(!grid.empty(), ErrorCode::kInvalidArgument, "grid is empty");
  Require(std::is_sorted(grid.begin(), grid.end()), ErrorCode::kInvalidArgument,
          "grid must be sorted ascending");
  GridSearchResult result;
  result.points.resize(grid.size());
  auto work = [&](size_t i) {
    const RunRecord run =
        Solve(spec, StepSizePlan::Fixed(grid[i]), Initialization::Zeta(zeta0), rule);
    result.points[i] = GridPoint{grid[i], run.iterations, run.converged};
  };
  const size_t nthreads = std::clamp<size_t>(static_cast<size_t>(std::max(threads, 1)), 1, grid.size());
  if (nthreads == 1) {
    for (size_t i = 0; i < grid.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (size_t i = t; i < grid.size(); i += nthreads) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (size_t i = 0; i < result.points.size(); ++i) {
    const GridPoint& p = result.points[i];
    if (!p.converged) continue;
    if (!result.limit_index || p.iterations < result.points[*result.limit_index].iterations)
      result.limit_index = i;
  }
  result.boundary_hit = !result.limit_index || *result.limit_index == 0 ||
                        *result.limit_index + 1 == result.points.size();
  return result;
}

// ---------------------------------------------------------------------------
// JSON documents

inline nlohmann::json ProblemJson(const ProblemInstance& inst) {
  return {{"kind", std::string(KindName(inst.kind))},
          {"seed", inst.seed},
          {"dims", {{"rows", inst.dims.rows}, {"cols", inst.dims.cols}}}};
}

inline nlohmann::json RuleJson(const TerminationRule& rule) {
  return {{"tol", JsonNumber(rule.tol)}, {"max_iter", rule.max_iter}, {"theta", rule.theta}};
}

inline nlohmann::json RunJson(const RunRecord& run) {
  nlohmann::json j = {{"plan", run.plan},
                      {"iterations", run.iterations},
                      {"converged", run.converged},
                      {"wall_seconds", run.wall_seconds}};
  if (!run.rows.empty()) {
    j["gamma_initial"] = JsonNumber(run.rows.front().gamma);
    j["gamma_final"] = JsonNumber(run.rows.back().gamma);
    j["final_residue"] = JsonNumber(run.rows.back().residue);
    j["final_objective"] = JsonNumber(run.rows.back().objective);
    j["final_infeasibility"] = JsonNumber(run.rows.back().infeasibility);
  }
  return j;
}

inline nlohmann::json OracleJson(const OracleSolution& o, const OracleConfig& config) {
  nlohmann::json j = {{"tol", config.tol},
                      {"gamma", config.gamma},
                      {"iterations", o.iterations},
                      {"converged", o.converged},
                      {"residue", JsonNumber(o.residue)}};
  if (o.ax.norm() > 0.0 && o.lambda.norm() > 0.0)
    j["gamma_star_zero_init"] = GammaZeroInit(o.ax, o.lambda);
  return j;
}

inline nlohmann::json GridJson(const GridSearchResult& g) {
  nlohmann::json points = nlohmann::json::array();
  for (const GridPoint& p : g.points)
    points.push_back({{"gamma", p.gamma}, {"iterations", p.iterations}, {"converged", p.converged}});
  nlohmann::json j = {{"points", points}, {"boundary_hit", g.boundary_hit}};
  j["gamma_limit"] = g.gamma_limit() ? nlohmann::json(*g.gamma_limit()) : nlohmann::json();
  j["limit_iterations"] =
      g.limit_iterations() ? nlohmann::json(*g.limit_iterations()) : nlohmann::json();
  return j;
}

inline nlohmann::json ContradictionJson(const ContradictionReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? JsonNumber(*v) : nlohmann::json();
  };
  return {{"inner_ax_lambda", r.inner},
          {"ax_norm_sq", r.ax_norm_sq},
          {"lambda_norm_sq", r.lambda_norm_sq},
          {"gamma_dagger_1", opt(r.gamma_dagger_1)},
          {"gamma_dagger_1_formula", "-||lambda*||^2 / <Ax*, lambda*>"},
          {"gamma_dagger_2", opt(r.gamma_dagger_2)},
          {"gamma_dagger_2_formula", "-<Ax*, lambda*> / ||Ax*||^2"},
          {"gamma_dagger_product", r.gamma_dagger_1 && r.gamma_dagger_2
                                       ? JsonNumber(*r.gamma_dagger_1 * *r.gamma_dagger_2)
                                       : nlohmann::json()},
          {"gamma_star", r.gamma_star},
          {"gamma_star_formula", "positive root of the step-size quartic, squared"},
          {"daggers_agree", r.daggers_agree},
          {"daggers_positive", r.daggers_positive},
          {"contradiction", r.contradiction()}};
}

}  // namespace admmstep

#endif  // ADMMSTEP_BENCH_HPP_
