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

// JSON artifacts: solve results, commitments, belief distributions, the
// belief atlas and simulation summaries. Numbers are written with 17
// significant digits so that reruns diff byte-for-byte.

#ifndef SIGBSG_IO_HPP_
#define SIGBSG_IO_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sigbsg/distribution.hpp"
#include "sigbsg/equilibrium.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"
#include "sigbsg/game_io.hpp"
#include "sigbsg/geometry.hpp"
#include "sigbsg/learning.hpp"

namespace sigbsg {

namespace internal {

inline void DumpValue(const nlohmann::json& j, int indent, int depth,
                      std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? FormatDouble(v) : "null";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; matrices read row by row.
      bool flat = true;
      for (const auto& item : j) flat = flat && !item.is_structured();
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        if (flat) {
          if (!first && indent > 0) out += ' ';
        } else {
          out += nl;
          out += pad;
        }
        DumpValue(item, indent, depth + 1, out);
        first = false;
      }
      if (!flat) {
        out += nl;
        out += close;
      }
      out += ']';
      return;
    }
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        out += nl;
        out += pad;
        out += nlohmann::json(key).dump();
        out += indent > 0 ? ": " : ":";
        DumpValue(value, indent, depth + 1, out);
        first = false;
      }
      out += nl;
      out += close;
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace internal

// Serializes with keys in sorted order (nlohmann's default object) and
// doubles as %.17g.
inline std::string DumpJson(const nlohmann::json& j, int indent = 2) {
  std::string out;
  internal::DumpValue(j, indent, 0, out);
  if (indent > 0) out += '\n';
  return out;
}

inline nlohmann::json CommitmentToJson(const Game& game, const Commitment& sigma) {
  nlohmann::json c = nlohmann::json::object();
  for (int k = 0; k < sigma.num_types(); ++k) {
    c[game.type_names.at(k)] = MatrixToJson(sigma.correlation[k]);
  }
  return {{"x", VectorToJson(sigma.x)}, {"C", c}};
}

inline nlohmann::json DistributionToJson(const Game& game,
                                         const BeliefDistribution& pi) {
  nlohmann::json out = nlohmann::json::object();
  for (int k = 0; k < pi.num_types(); ++k) {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& sp : pi.support(k)) {
      support.push_back({{"belief", VectorToJson(sp.belief.coords())},
                         {"weight", sp.weight}});
    }
    out[game.type_names.at(k)] = support;
  }
  return out;
}

inline nlohmann::json CertificateToJson(const Game& game, const Certificate& cert) {
  nlohmann::json reports = nlohmann::json::object();
  nlohmann::json responses = nlohmann::json::object();
  for (std::size_t k = 0; k < cert.reports.size(); ++k) {
    reports[game.type_names.at(k)] = game.type_names.at(cert.reports[k]);
    nlohmann::json actions = nlohmann::json::array();
    for (int j : cert.responses[k]) actions.push_back(game.follower_actions.at(j));
    responses[game.type_names.at(k)] = actions;
  }
  return {{"reports", reports}, {"responses", responses}};
}

inline nlohmann::json DiagnosticsToJson(const Diagnostics& d) {
  nlohmann::json counters = nlohmann::json::object();
  for (const auto& [key, value] : d.counters) counters[key] = value;
  return {{"counters", counters}, {"notes", d.notes}};
}

inline nlohmann::json ResultToJson(const Game& game, const SolveResult& r) {
  nlohmann::json out = {
      {"mode", r.mode},
      {"value", r.value},
      {"epsilon", r.epsilon},
      {"commitment", CommitmentToJson(game, r.commitment)},
      {"certificate", CertificateToJson(game, r.certificate)},
      {"diagnostics", DiagnosticsToJson(r.diagnostics)},
  };
  if (r.distribution) {
    out["distribution"] = DistributionToJson(game, *r.distribution);
  }
  return out;
}

inline nlohmann::json AtlasToJson(const BeliefAtlas& atlas) {
  nlohmann::json points = nlohmann::json::array();
  for (int p = 0; p < atlas.size(); ++p) {
    points.push_back({{"coords", VectorToJson(atlas.points[p].coords())},
                      {"origin", atlas.origin[p]}});
  }
  return {{"points", points}};
}

// Atlas plus, per partition map, whether its piece is nonempty, the strict
// slack reached and the closure vertex count.
inline nlohmann::json InspectToJson(const Game& game,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
  const BeliefAtlas atlas = BuildBeliefAtlas(game, cap);
  const AtlasPayoffs payoffs = ComputeAtlasPayoffs(game, atlas);
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& gamma : AllPartitionMaps(game.num_types())) {
    const Polytope piece = PartitionPolytope(game, atlas, gamma, payoffs);
    const auto center = StrictFeasiblePoint(piece);
    nlohmann::json entry = {{"gamma", gamma}, {"nonempty", center.has_value()}};
    if (center) {
      entry["strict_slack"] = center->slack;
      entry["closure_vertices"] = EnumerateVertices(piece, cap).size();
    }
    pieces.push_back(entry);
  }
  return {{"game", GameToJson(game)},
          {"atlas", AtlasToJson(atlas)},
          {"partitions", pieces}};
}

struct SeedSummary {
  std::uint64_t seed = 0;
  int rounds = 0;
  Metrics metrics;
};

inline nlohmann::json SummaryToJson(const std::string& algorithm,
                                    double opt_value,
                                    const std::vector<SeedSummary>& runs) {
  nlohmann::json seeds = nlohmann::json::array();
  double payoff = 0.0, gap = 0.0, regret = 0.0;
  for (const auto& run : runs) {
    seeds.push_back({{"seed", run.seed},
                     {"rounds", run.rounds},
                     {"average_payoff", run.metrics.average_payoff},
                     {"gap", run.metrics.gap},
                     {"regret", run.metrics.regret}});
    payoff += run.metrics.average_payoff;
    gap += run.metrics.gap;
    regret += run.metrics.regret;
  }
  const double n = runs.empty() ? 1.0 : static_cast<double>(runs.size());
  return {{"algorithm", algorithm},
          {"opt_value", opt_value},
          {"seeds", seeds},
          {"aggregate",
           {{"runs", runs.size()},
            {"mean_average_payoff", payoff / n},
            {"mean_gap", gap / n},
            {"mean_regret", regret / n}}}};
}

// The market-entry scheme: mix i1 and i2 evenly; for theta1 the i2 mass is
// split across both signals, theta2 always sees the first signal.
inline Commitment RunningExampleCommitment() {
  Commitment sigma;
  sigma.x = Eigen::Vector3d(0.0, 0.5, 0.5);
  Eigen::MatrixXd c1(3, 2), c2(3, 2);
  c1 << 0.0, 0.0, 0.5, 0.0, 0.25, 0.25;
  c2 << 0.0, 0.0, 0.5, 0.0, 0.5, 0.0;
  sigma.correlation = {c1, c2};
  return sigma;
}

// Writes through a sibling temporary file and renames it into place.
inline void WriteFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot move output into place: " + ec.message());
  }
}

}  // namespace sigbsg

#endif  // SIGBSG_IO_HPP_
