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

#include <string>

#include <doctest.h>

#include "qre/game_file.hpp"
#include "test_support.hpp"

using namespace qre;

namespace {

const std::string kGamesDir = QRE_GAMES_DIR;

std::string minimal(const std::string& distribution) {
  return R"({
    "players": [
      {"name": "1", "actions": ["x", "y"], "distribution": )" + distribution +
         R"(},
      {"name": "2", "actions": ["x", "y"], "distribution": )" + distribution +
         R"(}
    ],
    "payoffs": [[[0, 1], [2, 3]], [[3, 2], [1, 0]]]
  })";
}

}  // namespace

TEST_SUITE_BEGIN("game_file");

TEST_CASE("bundled fixtures load and match the tables") {
  const GameBundle vac = load_game_file(kGamesDir + "/vaccination.json");
  CHECK(vac.game.players == std::vector<std::string>{"1", "2"});
  CHECK(vac.game.actions[0] == std::vector<std::string>{"NV", "V"});
  CHECK(vac.game.payoffs == test::vaccination().payoffs);
  CHECK(vac.dists[0].kind() == DistKind::kExtremeValue);
  CHECK(vac.dists[0].lambda() == 0.5);

  const GameBundle mp =
      load_game_file(kGamesDir + "/matching_pennies_uniform.json");
  CHECK(mp.game.payoffs == test::matching_pennies().payoffs);
  CHECK(mp.dists[1].kind() == DistKind::kUniformBox);
  CHECK(mp.dists[1].lo() == -2.0);
  CHECK(mp.dists[1].hi() == 2.0);

  const GameBundle asym = load_game_file(kGamesDir + "/asym_mp_gumbel5.json");
  CHECK(asym.game.payoffs == test::asym_matching_pennies().payoffs);
  CHECK(asym.dists[0].lambda() == 5.0);

  const GameBundle coord = load_game_file(kGamesDir + "/coordination_2x2.json");
  CHECK(coord.game.payoffs == test::coordination().payoffs);
  CHECK(coord.dists[0].lambda() == 10.0);
}

TEST_CASE("malformed json reports line and column") {
  try {
    parse_game_text("{\n  \"players\": [,]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string message = e.what();
    CHECK(message.find("2:") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(
      parse_game_text(minimal(
          R"({"kind": "extreme_value", "lambda": 1, "sigma": 2})")),
      ParseError);
  const std::string top_level_extra = R"({
    "players": [],
    "payoffs": [],
    "comment": "nope"
  })";
  CHECK_THROWS_AS(parse_game_text(top_level_extra), ParseError);
}

TEST_CASE("distribution parameter validation happens at parse time") {
  CHECK_THROWS_AS(
      parse_game_text(minimal(R"({"kind": "extreme_value", "lambda": 0})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_game_text(minimal(R"({"kind": "uniform_box", "lo": 2, "hi": -2})")),
      ParseError);
  CHECK_THROWS_AS(
      parse_game_text(minimal(R"({"kind": "empirical", "samples": []})")),
      ParseError);
  CHECK_THROWS_AS(parse_game_text(minimal(R"({"kind": "nonsense"})")),
                  ParseError);
  // Empirical width must match the action count.
  CHECK_THROWS_AS(
      parse_game_text(minimal(
          R"({"kind": "empirical", "samples": [[0.0, 1.0, 2.0]]})")),
      ParseError);
  CHECK_NOTHROW(parse_game_text(minimal(
      R"({"kind": "empirical", "samples": [[0.0, 1.0], [1.0, 0.0]]})")));
}

TEST_CASE("payoff tensors must have the declared shape") {
  const std::string ragged = R"({
    "players": [
      {"name": "1", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 1}},
      {"name": "2", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 1}}
    ],
    "payoffs": [[[0, 1], [2]], [[3, 2], [1, 0]]]
  })";
  CHECK_THROWS_AS(parse_game_text(ragged), ParseError);

  const std::string shallow = R"({
    "players": [
      {"name": "1", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 1}},
      {"name": "2", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 1}}
    ],
    "payoffs": [[0, 1], [2, 3]]
  })";
  CHECK_THROWS_AS(parse_game_text(shallow), ParseError);
}

TEST_CASE("game-level invariants are enforced after parsing") {
  const std::string duplicate_actions = R"({
    "players": [
      {"name": "1", "actions": ["x", "x"], "distribution": {"kind": "extreme_value", "lambda": 1}},
      {"name": "2", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 1}}
    ],
    "payoffs": [[[0, 1], [2, 3]], [[3, 2], [1, 0]]]
  })";
  CHECK_THROWS_AS(parse_game_text(duplicate_actions), ParseError);
}

TEST_CASE("missing files are reported with the path") {
  try {
    load_game_file(kGamesDir + "/no_such_game.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("no_such_game") != std::string::npos);
  }
}

TEST_CASE("a three-player file round-trips") {
  const std::string three = R"({
    "players": [
      {"name": "1", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 1}},
      {"name": "2", "actions": ["x", "y"], "distribution": {"kind": "uniform_box", "lo": -1, "hi": 1}},
      {"name": "3", "actions": ["x", "y"], "distribution": {"kind": "extreme_value", "lambda": 2}}
    ],
    "payoffs": [
      [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
      [[[0, 1], [1, 0]], [[1, 0], [0, 1]]],
      [[[1, 1], [0, 0]], [[0, 0], [1, 1]]]
    ]
  })";
  const GameBundle bundle = parse_game_text(three);
  CHECK(bundle.game.player_count() == 3);
  CHECK(bundle.game.payoffs[0].size() == 8);
  const std::vector<int> profile = {0, 0, 0};
  CHECK(bundle.game.payoff(0, profile) == 1.0);
  const std::vector<int> last = {1, 1, 1};
  CHECK(bundle.game.payoff(2, last) == 1.0);
}

TEST_SUITE_END();
