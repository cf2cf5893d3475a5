// Copyright 2026 The qre-bounds Authors
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

#include "qre/game_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qre {
namespace {

using nlohmann::json;

// Maps a byte offset from nlohmann's parse_error to line:column.
std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

void reject_unknown_keys(const json& object, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) known = true;
    }
    if (!known) {
      throw ParseError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

const json& require(const json& object, const char* key, const char* where) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string(where) + ": missing key '" + key + "'");
  }
  return *it;
}

double require_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  return value.get<double>();
}

TypeDistribution parse_distribution(const json& spec, const std::string& where) {
  if (!spec.is_object()) throw ParseError(where + ": expected an object");
  const json& kind = require(spec, "kind", where.c_str());
  if (!kind.is_string()) throw ParseError(where + ".kind: expected a string");
  const std::string name = kind.get<std::string>();
  try {
    if (name == "extreme_value") {
      reject_unknown_keys(spec, where.c_str(), {"kind", "lambda"});
      return TypeDistribution::extreme_value(
          require_number(require(spec, "lambda", where.c_str()), where + ".lambda"));
    }
    if (name == "uniform_box") {
      reject_unknown_keys(spec, where.c_str(), {"kind", "lo", "hi"});
      return TypeDistribution::uniform_box(
          require_number(require(spec, "lo", where.c_str()), where + ".lo"),
          require_number(require(spec, "hi", where.c_str()), where + ".hi"));
    }
    if (name == "empirical") {
      reject_unknown_keys(spec, where.c_str(), {"kind", "samples"});
      const json& rows = require(spec, "samples", where.c_str());
      if (!rows.is_array() || rows.empty()) {
        throw ParseError(where + ".samples: expected a non-empty array");
      }
      std::vector<std::vector<double>> samples;
      for (const json& row : rows) {
        if (!row.is_array()) {
          throw ParseError(where + ".samples: expected arrays of numbers");
        }
        std::vector<double> sample;
        for (const json& v : row) {
          sample.push_back(require_number(v, where + ".samples"));
        }
        samples.push_back(std::move(sample));
      }
      return TypeDistribution::empirical(std::move(samples));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ".kind: unknown kind '" + name + "'");
}

// Flattens a nested payoff array of depth = player count into the row-major
// tensor layout, checking the shape along the way.
void flatten_payoffs(const json& node, const std::vector<int>& shape,
                     std::size_t depth, std::vector<double>& out,
                     const std::string& where) {
  if (depth == shape.size()) {
    out.push_back(require_number(node, where));
    return;
  }
  if (!node.is_array() ||
      node.size() != static_cast<std::size_t>(shape[depth])) {
    throw ParseError(where + ": expected an array of length " +
                     std::to_string(shape[depth]) + " at depth " +
                     std::to_string(depth));
  }
  for (const json& child : node) {
    flatten_payoffs(child, shape, depth + 1, out, where);
  }
}

}  // namespace

GameBundle parse_game_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("parse error at " + line_column(text, e.byte) + ": " +
                     e.what());
  }
  if (!root.is_object()) throw ParseError("top level: expected an object");
  reject_unknown_keys(root, "top level", {"players", "payoffs"});

  const json& players = require(root, "players", "top level");
  if (!players.is_array() || players.size() < 2) {
    throw ParseError("players: expected an array of >= 2 players");
  }

  GameBundle bundle;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string where = "players[" + std::to_string(i) + "]";
    const json& player = players[i];
    if (!player.is_object()) throw ParseError(where + ": expected an object");
    reject_unknown_keys(player, where.c_str(),
                        {"name", "actions", "distribution"});
    const json& name = require(player, "name", where.c_str());
    if (!name.is_string()) throw ParseError(where + ".name: expected a string");
    bundle.game.players.push_back(name.get<std::string>());

    const json& actions = require(player, "actions", where.c_str());
    if (!actions.is_array() || actions.size() < 2) {
      throw ParseError(where + ".actions: expected an array of >= 2 actions");
    }
    std::vector<std::string> names;
    for (const json& action : actions) {
      if (!action.is_string()) {
        throw ParseError(where + ".actions: expected strings");
      }
      names.push_back(action.get<std::string>());
    }
    bundle.game.actions.push_back(std::move(names));
    bundle.dists.push_back(parse_distribution(
        require(player, "distribution", where.c_str()), where + ".distribution"));
  }

  const json& payoffs = require(root, "payoffs", "top level");
  if (!payoffs.is_array() || payoffs.size() != players.size()) {
    throw ParseError("payoffs: expected one tensor per player");
  }
  std::vector<int> shape;
  for (int i = 0; i < bundle.game.player_count(); ++i) {
    shape.push_back(bundle.game.action_count(i));
  }
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    std::vector<double> flat;
    flatten_payoffs(payoffs[i], shape, 0, flat,
                    "payoffs[" + std::to_string(i) + "]");
    bundle.game.payoffs.push_back(std::move(flat));
  }

  // Distribution dimensions must match the action sets.
  for (int i = 0; i < bundle.game.player_count(); ++i) {
    const int dim = bundle.dists[i].dimension();
    if (dim != 0 && dim != bundle.game.action_count(i)) {
      throw ParseError("players[" + std::to_string(i) +
                       "].distribution: sample width does not match the "
                       "action count");
    }
  }

  const std::vector<std::string> problems = validate_game(bundle.game);
  if (!problems.empty()) {
    std::ostringstream message;
    message << "invalid game:";
    for (const auto& p : problems) message << ' ' << p << ';';
    throw ParseError(message.str());
  }
  return bundle;
}

GameBundle load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_game_text(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace qre
