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

// admm_bench: convergence traces, step-size grid search, the scaled
// fixed-point contradiction report and instance dumps.
//
// Exit codes: 0 success, 2 configuration error, 3 a run did not converge
// under --strict, 1 any other failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "admmstep/admmstep.hpp"

namespace {

using admmstep::Error;
using admmstep::ErrorCode;

constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

struct ProblemOptions {
  std::string kind = "lasso";
  std::string profile = "desk";
  long rows = 0;
  long cols = 0;
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  std::string instance;  // load from JSON instead of generating
};

struct RuleOptions {
  double tol = 1e-6;
  long max_iter = 10000;
  double theta = 0.5;
  double oracle_tol = 1e-10;
  long oracle_max_iter = 100000;
};

void AddProblemOptions(CLI::App* app, ProblemOptions& p) {
  app->add_option("--kind", p.kind, "lp, qp, lad, huber, bp, lasso, tv or sics")
      ->check(CLI::IsMember({"lp", "qp", "lad", "huber", "bp", "lasso", "tv", "sics"}));
  app->add_option("--profile", p.profile, "desk (small) or full dimensions")
      ->check(CLI::IsMember({"desk", "full"}));
  app->add_option("--rows", p.rows, "override rows (0 keeps the profile value)");
  app->add_option("--cols", p.cols, "override cols (0 keeps the profile value)");
  app->add_option("--seed", p.seed, "generator seed");
  app->add_option("--alpha", p.alpha, "regularization for lasso, tv and sics");
  app->add_option("--instance", p.instance, "load the instance from a JSON file")
      ->check(CLI::ExistingFile);
}

void AddRuleOptions(CLI::App* app, RuleOptions& r) {
  app->add_option("--tol", r.tol, "fixed-point residue tolerance");
  app->add_option("--max-iter", r.max_iter, "iteration cap");
  app->add_option("--theta", r.theta, "relaxation in (0, 1); 0.5 is plain ADMM");
  app->add_option("--oracle-tol", r.oracle_tol, "tolerance of the reference solve");
  app->add_option("--oracle-max-iter", r.oracle_max_iter, "iteration cap of the reference solve");
}

admmstep::ProblemInstance MakeInstance(const ProblemOptions& p) {
  if (!p.instance.empty()) {
    std::ifstream in(p.instance);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInvalidArgument, p.instance + ": " + e.what());
    }
    return admmstep::FromJson(j);
  }
  const auto kind = admmstep::ParseKind(p.kind);
  admmstep::Dims dims = admmstep::DefaultDims(
      kind, p.profile == "full" ? admmstep::Profile::kFull : admmstep::Profile::kDesk);
  if (p.rows > 0) dims.rows = p.rows;
  if (p.cols > 0) dims.cols = p.cols;
  admmstep::GenerateParams params;
  params.alpha = p.alpha;
  return admmstep::Generate(kind, dims, p.seed, params);
}

admmstep::TerminationRule MakeRule(const RuleOptions& r) {
  admmstep::TerminationRule rule;
  rule.tol = r.tol;
  rule.max_iter = r.max_iter;
  rule.theta = r.theta;
  rule.Validate();
  return rule;
}

admmstep::Vector ReadVectorFile(const std::string& path) {
  std::ifstream in(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, path + ": " + e.what());
  }
  return admmstep::detail::VectorFromJson(j, path);
}

std::string Prefix(const admmstep::ProblemInstance& inst) {
  return std::string(admmstep::KindName(inst.kind)) + "-seed" + std::to_string(inst.seed);
}

// CLI11 names the offending config key; add the line it sits on.
std::string WithConfigLine(const std::string& message, const std::string& config_path) {
  if (config_path.empty()) return message;
  std::ifstream in(config_path);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (!key.empty() && message.find(key) != std::string::npos)
      return config_path + ":" + std::to_string(number) + ": " + message;
  }
  return config_path + ": " + message;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ADMM step-size experiments"};
  app.require_subcommand(1);
  // Unknown config keys are errors; global flags may follow the subcommand.
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  std::string config_path;
  app.set_config("--config", "", "TOML/INI file; [run], [grid], ... sections; flags win")
      ->check(CLI::ExistingFile)
      ->each([&config_path](const std::string& s) { config_path = s; });
  bool strict = false;
  app.add_flag("--strict", strict, "exit 3 when a run does not converge");

  // run
  ProblemOptions run_problem;
  RuleOptions run_rule;
  std::vector<std::string> run_plans{"fixed"};
  admmstep::PlanConfig plan_defaults;
  std::string side = "primal";
  std::string run_init = "zero";
  std::string zeta0_file;
  std::string run_out = "out";
  auto* run = app.add_subcommand("run", "solve with one or more step-size plans");
  AddProblemOptions(run, run_problem);
  AddRuleOptions(run, run_rule);
  run->add_option("--plan", run_plans, "fixed, oracle, estimated, optimal-pair, asymptotic")
      ->check(CLI::IsMember({"fixed", "oracle", "estimated", "optimal-pair", "asymptotic"}));
  run->add_option("--gamma", plan_defaults.gamma, "step size for the fixed plan");
  run->add_option("--beta", plan_defaults.beta, "beta for optimal-pair and asymptotic plans");
  run->add_option("--side", side, "asymptotic side")->check(CLI::IsMember({"primal", "dual"}));
  run->add_option("--threshold", plan_defaults.threshold,
                  "relative change below which estimates are not applied");
  run->add_option("--freeze-after", plan_defaults.freeze_after,
                  "stop re-estimating from this iteration on");
  run->add_option("--init", run_init, "zero, structure or explicit")
      ->check(CLI::IsMember({"zero", "structure", "explicit"}));
  run->add_option("--zeta0", zeta0_file, "JSON array holding zeta0 for --init explicit");
  run->add_option("--out", run_out, "output directory");

  // grid
  ProblemOptions grid_problem;
  RuleOptions grid_rule;
  grid_rule.tol = 1e-4;
  double grid_lo = 1e-3, grid_hi = 1e3;
  int grid_points = 50;
  int grid_threads = 1;
  std::string grid_init = "zero";
  std::string grid_out = "grid.json";
  auto* grid = app.add_subcommand("grid", "iterations-to-tol over a log-spaced step-size grid");
  AddProblemOptions(grid, grid_problem);
  AddRuleOptions(grid, grid_rule);
  grid->add_option("--lo", grid_lo, "smallest step size");
  grid->add_option("--hi", grid_hi, "largest step size");
  grid->add_option("--points", grid_points, "number of grid points");
  grid->add_option("--threads", grid_threads, "worker threads");
  grid->add_option("--init", grid_init, "zero or structure")
      ->check(CLI::IsMember({"zero", "structure"}));
  grid->add_option("--out", grid_out, "output JSON file");

  // contradiction
  ProblemOptions con_problem;
  RuleOptions con_rule;
  std::optional<double> synthetic_t;
  std::string con_out = "contradiction.json";
  auto* con = app.add_subcommand("contradiction", "compare scaled and unscaled step-size optima");
  AddProblemOptions(con, con_problem);
  AddRuleOptions(con, con_rule);
  con->add_option("--synthetic-t", synthetic_t,
                  "instead of solving, use lambda* = -t Ax* with random Ax*");
  con->add_option("--out", con_out, "output JSON file");

  // generate
  ProblemOptions gen_problem;
  std::string gen_out = "instance.json";
  auto* gen = app.add_subcommand("generate", "write a problem instance as JSON");
  AddProblemOptions(gen, gen_problem);
  gen->add_option("--out", gen_out, "output JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ConfigError& e) {
    std::cerr << "config error: " << WithConfigLine(e.what(), config_path) << "\n";
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << WithConfigLine(e.what(), config_path) << "\n";
    return kExitConfig;
  }

  bool all_converged = true;
  try {
    if (*run) {
      const auto inst = MakeInstance(run_problem);
      const auto rule = MakeRule(run_rule);
      const admmstep::OracleConfig oracle_config{run_rule.oracle_tol, 1.0, run_rule.oracle_max_iter};
      admmstep::OracleCache oracle(inst.spec, oracle_config);
      const auto init = admmstep::ParseInitKind(run_init);
      admmstep::Vector explicit_zeta0;
      if (init == admmstep::InitKind::kExplicit) {
        if (zeta0_file.empty())
          throw Error(ErrorCode::kInvalidArgument, "--init explicit needs --zeta0");
        explicit_zeta0 = ReadVectorFile(zeta0_file);
      }
      const admmstep::Vector zeta0 = admmstep::InitialZeta(inst, init, explicit_zeta0);
      plan_defaults.side =
          side == "dual" ? admmstep::AsymptoticSide::kDual : admmstep::AsymptoticSide::kPrimal;

      nlohmann::json runs = nlohmann::json::array();
      bool used_oracle = false;
      const std::filesystem::path dir(run_out);
      for (const std::string& name : run_plans) {
        admmstep::PlanConfig plan = plan_defaults;
        plan.kind = admmstep::ParsePlanKind(name);
        used_oracle = used_oracle || (plan.kind != admmstep::PlanKind::kFixed &&
                                          plan.kind != admmstep::PlanKind::kEstimated);
        const auto record = admmstep::RunPlan(inst, plan, zeta0, rule, oracle);
        const std::string csv = Prefix(inst) + "-" + record.plan + ".csv";
        admmstep::WriteFileAtomic(dir / csv, admmstep::TraceCsv(record));
        auto j = admmstep::RunJson(record);
        j["csv"] = csv;
        runs.push_back(j);
        all_converged = all_converged && record.converged;
        std::printf("%-28s iterations=%ld converged=%s\n", record.plan.c_str(), record.iterations,
                    record.converged ? "yes" : "no");
      }
      nlohmann::json summary = {{"schema", admmstep::kSummarySchema},
                                {"command", "run"},
                                {"problem", admmstep::ProblemJson(inst)},
                                {"init", run_init},
                                {"rule", admmstep::RuleJson(rule)},
                                {"runs", runs}};
      if (used_oracle) summary["oracle"] = admmstep::OracleJson(oracle.get(), oracle_config);
      admmstep::WriteFileAtomic(dir / (Prefix(inst) + "-summary.json"), summary.dump(2) + "\n");
    } else if (*grid) {
      const auto inst = MakeInstance(grid_problem);
      const auto rule = MakeRule(grid_rule);
      const auto zeta0 =
          admmstep::InitialZeta(inst, admmstep::ParseInitKind(grid_init), admmstep::Vector());
      const auto points = admmstep::LogGrid(grid_lo, grid_hi, grid_points);
      const auto result = admmstep::GridSearch(inst.spec, points, zeta0, rule, grid_threads);
      const admmstep::OracleConfig oracle_config{grid_rule.oracle_tol, 1.0,
                                                 grid_rule.oracle_max_iter};
      admmstep::OracleCache oracle(inst.spec, oracle_config);
      const auto& o = oracle.get();
      const double gamma_star = admmstep::GammaGeneral(o.ax, o.lambda, zeta0);
      const auto star_run = admmstep::Solve(inst.spec, admmstep::StepSizePlan::Fixed(gamma_star),
                                            admmstep::Initialization::Zeta(zeta0), rule);
      nlohmann::json doc = {{"schema", admmstep::kSummarySchema},
                            {"command", "grid"},
                            {"problem", admmstep::ProblemJson(inst)},
                            {"init", grid_init},
                            {"rule", admmstep::RuleJson(rule)},
                            {"grid", admmstep::GridJson(result)},
                            {"oracle", admmstep::OracleJson(o, oracle_config)},
                            {"gamma_star", gamma_star},
                            {"gamma_star_iterations", star_run.iterations},
                            {"gamma_star_converged", star_run.converged}};
      admmstep::WriteFileAtomic(grid_out, doc.dump(2) + "\n");
      all_converged = result.limit_index.has_value();
      if (result.gamma_limit()) {
        std::printf("gamma_limit=%s iterations=%ld boundary_hit=%s\n",
                    admmstep::FormatDouble(*result.gamma_limit()).c_str(),
                    *result.limit_iterations(), result.boundary_hit ? "yes" : "no");
      } else {
        std::printf("no grid point converged\n");
      }
      std::printf("gamma_star=%s iterations=%ld\n", admmstep::FormatDouble(gamma_star).c_str(),
                  star_run.iterations);
    } else if (*con) {
      nlohmann::json doc = {{"schema", admmstep::kSummarySchema}, {"command", "contradiction"}};
      admmstep::ContradictionReport report;
      if (synthetic_t) {
        if (!(*synthetic_t > 0.0))
          throw Error(ErrorCode::kInvalidArgument, "--synthetic-t must be positive");
        admmstep::Rng rng(con_problem.seed);
        const admmstep::Vector ax = rng.NormalVector(8);
        report = admmstep::Contradiction(ax, -*synthetic_t * ax, admmstep::Vector::Zero(8));
        doc["problem"] = {{"kind", "synthetic"}, {"t", *synthetic_t}, {"seed", con_problem.seed}};
      } else {
        const auto inst = MakeInstance(con_problem);
        const admmstep::OracleConfig oracle_config{con_rule.oracle_tol, 1.0,
                                                   con_rule.oracle_max_iter};
        admmstep::OracleCache oracle(inst.spec, oracle_config);
        const auto& o = oracle.get();
        report = admmstep::Contradiction(o.ax, o.lambda, admmstep::ZeroInit(inst.spec.p()));
        doc["problem"] = admmstep::ProblemJson(inst);
        doc["oracle"] = admmstep::OracleJson(o, oracle_config);
        all_converged = o.converged;
      }
      doc["report"] = admmstep::ContradictionJson(report);
      admmstep::WriteFileAtomic(con_out, doc.dump(2) + "\n");
      auto show = [](const std::optional<double>& v) {
        return v ? admmstep::FormatDouble(*v) : std::string("undefined");
      };
      std::printf("gamma_dagger_1=%s gamma_dagger_2=%s gamma_star=%s contradiction=%s\n",
                  show(report.gamma_dagger_1).c_str(), show(report.gamma_dagger_2).c_str(),
                  admmstep::FormatDouble(report.gamma_star).c_str(),
                  report.contradiction() ? "yes" : "no");
    } else if (*gen) {
      const auto inst = MakeInstance(gen_problem);
      admmstep::WriteFileAtomic(gen_out, admmstep::ToJson(inst).dump() + "\n");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool config = e.code() == ErrorCode::kInvalidArgument ||
                        e.code() == ErrorCode::kDimensionMismatch;
    return config ? kExitConfig : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (strict && !all_converged) return kExitNotConverged;
  return 0;
}
