// Copyright 2026 The sigbsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end, kept in a header so tests can drive it in-process.
//
//   sigbsg solve    --game PATH --mode bse|iclp|eps [--eps F] [--out PATH]
//   sigbsg simulate --game PATH --algo ftl-ic|hedge --rounds N --seed U64
//                   [--eta F] [--resolve-period N] [--trace PATH] [--out PATH]
//   sigbsg inspect  --game PATH [--out PATH]
//   sigbsg example
//
// Exit status: 0 on success, 1 on invalid input, 2 when a solver fails. Errors
// are reported on stderr as {"error": {"kind": ..., "message": ...}}.

#ifndef SIGBSG_CLI_HPP_
#define SIGBSG_CLI_HPP_

#include <cstdint>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sigbsg/equilibrium.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game_io.hpp"
#include "sigbsg/io.hpp"
#include "sigbsg/learning.hpp"
#include "sigbsg/signaling.hpp"

namespace sigbsg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;

inline constexpr const char* kSchemaFooter =
    "Schemas (JSON Schema, in schemas/):\n"
    "  game.schema.json        input game (--game)\n"
    "  result.schema.json      solve output\n"
    "  inspect.schema.json     inspect output\n"
    "  summary.schema.json     simulate summary (--out)\n"
    "  error.schema.json       error report on stderr\n"
    "Trace CSV columns: t,true_type,reported_type,leader_action,signal,"
    "follower_action,payoff,cum_payoff,cum_gap,cum_regret";

struct Options {
  std::string game_path;
  std::string mode = "eps";
  double eps = 1e-3;
  std::string out_path;
  std::string algo = "ftl-ic";
  int rounds = 1000;
  std::uint64_t seed = 0;
  double eta = 0.0;
  int resolve_period = 1;
  std::string trace_path;
};

namespace internal {

inline void Emit(const std::string& path, const std::string& content,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    WriteFileAtomic(path, content);
  }
}

inline void ReportError(std::ostream& err, const char* kind,
                        const std::string& message) {
  err << DumpJson({{"error", {{"kind", kind}, {"message", message}}}}, 0) << '\n';
}

inline int RunSolve(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  SolveResult result;
  if (o.mode == "bse") {
    result = SolveBse(game);
  } else if (o.mode == "iclp") {
    result = SolveSigLp(game);
  } else {
    result = SolveEpsSigBse(game, o.eps);
  }
  Emit(o.out_path, DumpJson(ResultToJson(game, result)), out);
  return kExitOk;
}

inline int RunSimulate(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  SimulationConfig config;
  config.horizon = o.rounds;
  config.seed = o.seed;
  config.algorithm = o.algo == "hedge" ? Algorithm::kHedge : Algorithm::kFtlIc;
  config.eta = o.eta;
  config.resolve_period = o.resolve_period;
  config.Validate();
  const ArmSet arms = BuildArmSet(game);
  const double opt = SolveEpsSigBse(game, 1e-6).value;
  const SimulationTrace trace =
      config.algorithm == Algorithm::kHedge
          ? SimulateHedge(game, game.prior, config, arms)
          : SimulateFtlIc(game, game.prior, config);
  const Metrics metrics = ComputeMetrics(trace, opt, arms.reward);
  std::ostringstream csv;
  WriteTraceCsv(csv, trace, metrics);
  Emit(o.trace_path, csv.str(), out);
  if (!o.out_path.empty()) {
    const SeedSummary run{o.seed, o.rounds, metrics};
    WriteFileAtomic(o.out_path, DumpJson(SummaryToJson(o.algo, opt, {run})));
  }
  return kExitOk;
}

inline int RunInspect(const Options& o, std::ostream& out) {
  const Game game = LoadGameFile(o.game_path);
  Emit(o.out_path, DumpJson(InspectToJson(game)), out);
  return kExitOk;
}

inline int RunExample(std::ostream& out) {
  const Game game = RunningExampleGame();
  const BeliefDistribution pi = CommitmentToBeliefs(game, RunningExampleCommitment());
  const double bse = SolveBse(game).value;
  const double truthful = TruthfulLeaderObjective(game, pi);
  const double misreport = LeaderObjective(game, pi);
  const int report = OptimalReport(game, pi, 1);
  char line[160];
  out << "market-entry example (3 leader actions, 2 follower actions, 2 types)\n";
  std::snprintf(line, sizeof(line), "  %-46s %.17g  [published]\n",
                "baseline Bayesian Stackelberg value", bse);
  out << line;
  std::snprintf(line, sizeof(line), "  %-46s %.17g  [published]\n",
                "signaling value, truthful followers", truthful);
  out << line;
  std::snprintf(line, sizeof(line), "  %-46s %.17g  [derived by enumeration]\n",
                "signaling value, optimal misreporting", misreport);
  out << line;
  out << "  " << game.type_names[1] << " best report: " << game.type_names[report]
      << "  [published]\n";
  return kExitOk;
}

}  // namespace internal

inline int Dispatch(int argc, const char* const* argv, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Signaling Bayesian Stackelberg game solver", "sigbsg"};
  app.footer(kSchemaFooter);
  app.require_subcommand(1, 1);
  Options o;

  auto add_game = [&](CLI::App* sub) {
    sub->add_option("--game", o.game_path, "game JSON file")
        ->required()
        ->check(CLI::ExistingFile);
  };

  CLI::App* solve = app.add_subcommand("solve", "compute an equilibrium commitment");
  add_game(solve);
  solve->add_option("--mode", o.mode, "bse | iclp | eps")
      ->check(CLI::IsMember({"bse", "iclp", "eps"}))
      ->capture_default_str();
  solve->add_option("--eps", o.eps, "approximation slack for eps mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--out", o.out_path, "result JSON path (stdout if absent)");

  CLI::App* simulate = app.add_subcommand("simulate", "run a repeated game");
  add_game(simulate);
  simulate->add_option("--algo", o.algo, "ftl-ic | hedge")
      ->check(CLI::IsMember({"ftl-ic", "hedge"}))
      ->capture_default_str();
  simulate->add_option("--rounds", o.rounds, "horizon T")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
  simulate->add_option("--eta", o.eta, "hedge learning rate (default sqrt(8 ln A / T))")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--resolve-period", o.resolve_period,
                       "rounds between LP re-solves (ftl-ic)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--trace", o.trace_path, "trace CSV path (stdout if absent)");
  simulate->add_option("--out", o.out_path, "summary JSON path");

  CLI::App* inspect = app.add_subcommand("inspect", "dump the belief atlas and partition pieces");
  add_game(inspect);
  inspect->add_option("--out", o.out_path, "JSON path (stdout if absent)");

  CLI::App* example = app.add_subcommand("example", "reproduce the market-entry example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    internal::ReportError(err, "usage", e.what());
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return internal::RunSolve(o, out);
    if (simulate->parsed()) return internal::RunSimulate(o, out);
    if (inspect->parsed()) return internal::RunInspect(o, out);
    if (example->parsed()) return internal::RunExample(out);
  } catch (const ValidationError& e) {
    internal::ReportError(err, "validation", e.what());
    return kExitValidation;
  } catch (const SolverError& e) {
    internal::ReportError(err, "solver", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    internal::ReportError(err, "solver", e.what());
    return kExitSolver;
  }
  return kExitValidation;
}

inline int Dispatch(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  std::vector<const char*> argv{"sigbsg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return Dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sigbsg::cli

#endif  // SIGBSG_CLI_HPP_
