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

// Game-spec JSON ingestion and export.
//
//   {"leader_actions": [str, ...],                 // M labels
//    "follower_actions": [str, ...],               // N labels
//    "leader_payoff": [[num x N] x M],
//    "types": [{"name": str, "prior": num,
//               "follower_payoff": [[num x N] x M]}, ...]}
//
// Array order is authoritative; names are labels only. Unknown keys are
// rejected, which also rules out per-type leader payoffs.

#ifndef SIGBSG_GAME_IO_HPP_
#define SIGBSG_GAME_IO_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"

namespace sigbsg {

namespace internal {

inline void RequireKeys(const nlohmann::json& obj,
                        const std::set<std::string>& allowed,
                        const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError(where + ": unexpected key \"" + key + "\"");
    }
  }
  for (const auto& key : allowed) {
    if (!obj.contains(key)) {
      throw ValidationError(where + ": missing key \"" + key + "\"");
    }
  }
}

inline std::vector<std::string> ReadLabels(const nlohmann::json& j,
                                           const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(where + ": expected a non-empty array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ValidationError(where + ": labels must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline Eigen::MatrixXd ReadMatrix(const nlohmann::json& j, int rows, int cols,
                                  const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw ValidationError(where + ": expected " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ValidationError(where + ": ragged matrix, row " + std::to_string(r) +
                            " needs " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw ValidationError(where + ": non-numeric entry");
      m(r, c) = row[c].get<double>();
      if (!std::isfinite(m(r, c))) throw ValidationError(where + ": non-finite entry");
    }
  }
  return m;
}

}  // namespace internal

inline Game GameFromJson(const nlohmann::json& doc) {
  internal::RequireKeys(
      doc, {"leader_actions", "follower_actions", "leader_payoff", "types"},
      "game");
  Game game;
  game.leader_actions = internal::ReadLabels(doc["leader_actions"], "leader_actions");
  game.follower_actions =
      internal::ReadLabels(doc["follower_actions"], "follower_actions");
  const int m = static_cast<int>(game.leader_actions.size());
  const int n = static_cast<int>(game.follower_actions.size());
  game.leader_payoff = internal::ReadMatrix(doc["leader_payoff"], m, n, "leader_payoff");

  const auto& types = doc["types"];
  if (!types.is_array() || types.empty()) {
    throw ValidationError("types: expected a non-empty array");
  }
  game.prior.resize(static_cast<Eigen::Index>(types.size()));
  for (std::size_t k = 0; k < types.size(); ++k) {
    const std::string where = "types[" + std::to_string(k) + "]";
    internal::RequireKeys(types[k], {"name", "prior", "follower_payoff"}, where);
    if (!types[k]["name"].is_string()) throw ValidationError(where + ": name must be a string");
    if (!types[k]["prior"].is_number()) throw ValidationError(where + ": prior must be a number");
    const std::string name = types[k]["name"].get<std::string>();
    // Type names key the commitment output, so they must be distinct.
    if (std::find(game.type_names.begin(), game.type_names.end(), name) !=
        game.type_names.end()) {
      throw ValidationError(where + ": duplicate type name '" + name + "'");
    }
    game.type_names.push_back(name);
    const double p = types[k]["prior"].get<double>();
    if (!std::isfinite(p) || p < 0.0) throw ValidationError(where + ": negative prior");
    game.prior(static_cast<Eigen::Index>(k)) = p;
    game.follower_payoff.push_back(
        internal::ReadMatrix(types[k]["follower_payoff"], m, n, where + ".follower_payoff"));
  }
  const double total = game.prior.sum();
  if (std::abs(total - 1.0) > 1e-6) {
    throw ValidationError("type priors sum to " + std::to_string(total) +
                          ", expected 1 within 1e-6");
  }
  game.prior /= total;
  game.Validate();
  return game;
}

inline Game LoadGame(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("game document is not valid JSON: ") + e.what());
  }
  return GameFromJson(doc);
}

inline Game LoadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open game file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadGame(buffer.str());
}

inline nlohmann::json MatrixToJson(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::json VectorToJson(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline nlohmann::json GameToJson(const Game& game) {
  nlohmann::json doc;
  doc["leader_actions"] = game.leader_actions;
  doc["follower_actions"] = game.follower_actions;
  doc["leader_payoff"] = MatrixToJson(game.leader_payoff);
  doc["types"] = nlohmann::json::array();
  for (int k = 0; k < game.num_types(); ++k) {
    doc["types"].push_back({{"name", game.type_names[k]},
                            {"prior", game.prior(k)},
                            {"follower_payoff", MatrixToJson(game.follower(k))}});
  }
  return doc;
}

// The market-entry game used throughout the tests and the CLI `example`
// command: the leader scores only when the follower leaves.
inline Game RunningExampleGame() {
  return LoadGame(R"({
    "leader_actions": ["i0", "i1", "i2"],
    "follower_actions": ["j0_leave", "j1_enter"],
    "leader_payoff": [[1, 0], [1, 0], [1, 0]],
    "types": [
      {"name": "theta1", "prior": 0.55,
       "follower_payoff": [[0, 2], [0, -1], [0, 2]]},
      {"name": "theta2", "prior": 0.45,
       "follower_payoff": [[0, 1], [0, 1], [0, -1]]}
    ]
  })");
}

}  // namespace sigbsg

#endif  // SIGBSG_GAME_IO_HPP_
