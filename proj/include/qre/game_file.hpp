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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qre/distribution.hpp"
#include "qre/game.hpp"

namespace qre {

// Declarative game file (JSON):
//
// {
//   "players": [
//     {"name": "1", "actions": ["NV", "V"],
//      "distribution": {"kind": "extreme_value", "lambda": 0.5}},
//     ...
//   ],
//   "payoffs": [  // one tensor per player, nested in player order
//     [[0, 7], [1, 3]],
//     [[1, 2], [16, 4]]
//   ]
// }
//
// Distribution kinds: extreme_value {lambda}, uniform_box {lo, hi},
// empirical {samples: [[...], ...]}. Unknown keys are rejected so the
// bundled games stay bit-exact fixtures.

struct GameBundle {
  StaticGame game;
  std::vector<TypeDistribution> dists;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ParseError on malformed JSON (with a line:column diagnostic), on
// schema violations, and on games that fail validate_game.
GameBundle parse_game_text(const std::string& text);
GameBundle load_game_file(const std::string& path);

}  // namespace qre
