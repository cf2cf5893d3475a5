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

#include <cstdint>
#include <span>
#include <vector>

#include "qre/game.hpp"
#include "qre/rng.hpp"

namespace qre {

enum class DistKind { kExtremeValue, kUniformBox, kEmpirical };

// Per-player model of the additive payoff idiosyncrasies. The random vector
// has one coordinate per own action; for the extreme_value and uniform_box
// kinds the coordinates are independent and identically distributed.
//
//   extreme_value(lambda): coordinate CDF F(x) = exp(-exp(-lambda x)).
//   uniform_box(lo, hi):   each coordinate uniform on [lo, hi].
//   empirical(samples):    the discrete measure putting equal weight on each
//                          stored vector (one coordinate per action).
class TypeDistribution {
 public:
  static TypeDistribution extreme_value(double lambda);
  static TypeDistribution uniform_box(double lo, double hi);
  static TypeDistribution empirical(std::vector<std::vector<double>> samples);

  DistKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  const std::vector<std::vector<double>>& samples() const { return samples_; }

  // Coordinate count fixed by the empirical samples; 0 means "any" (iid kinds).
  int dimension() const;

 private:
  TypeDistribution() = default;

  DistKind kind_ = DistKind::kExtremeValue;
  double lambda_ = 1.0;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<std::vector<double>> samples_;
};

// The polyhedron { theta : theta[base] - theta[a'] >= thresholds[a'] for all
// a' != base }. Thresholds may be -infinity (no restriction on that pair);
// the entry at base_action is ignored.
struct ForcedRegionSpec {
  int base_action = 0;
  std::vector<double> thresholds;
};

// Budget for the Monte-Carlo paths. The seed is caller-visible so results are
// reproducible; `parallel` routes the sampling through the OpenMP kernels.
struct McOptions {
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 1;
  bool parallel = true;
};

// Probability estimate; std_error is 0 whenever a closed form was used.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// P(theta[a] - theta[b] >= x) for two distinct coordinates. Closed forms:
//   extreme_value(lambda):  1 / (1 + exp(lambda x))   (logistic survival)
//   uniform_box, w = hi-lo: (w-x)^2 / (2 w^2)          for x in [0, w]
//                           1 - (w+x)^2 / (2 w^2)      for x in [-w, 0]
//                           clamped to {0, 1} outside [-w, w]
//   empirical:              exact sample fraction.
// The coordinate indices only matter for the empirical kind.
double pairwise_survival(const TypeDistribution& dist, double x, int a = 0,
                         int b = 1);

// Mass of the forced region described by `spec`. Exact for two actions, for
// the extreme_value kind (see the note in the implementation), and for the
// empirical kind; Monte Carlo otherwise, which requires opts.samples > 0.
McEstimate forced_region_probability(const TypeDistribution& dist,
                                     const ForcedRegionSpec& spec,
                                     const McOptions& opts = {});

// The probability that each own action is a best response against
// `opponents` when the payoff shock is drawn from `dist`: the quantal
// response of player i. Closed forms where available (logit for
// extreme_value, triangular survival for two-action uniform_box, exact tally
// for empirical), Monte Carlo otherwise. The result sums to 1 within 1e-9.
std::vector<double> quantal_response(const TypeDistribution& dist,
                                     const StaticGame& game, int i,
                                     const MixedProfile& opponents,
                                     const McOptions& opts = {});

// One draw of the idiosyncrasy vector. extreme_value uses the inverse CDF
// x = -ln(-ln u) / lambda; uniform_box an affine transform; empirical a
// uniformly random stored sample.
void sample_type_into(const TypeDistribution& dist, std::span<double> out,
                      Rng& rng);
std::vector<double> sample_type(const TypeDistribution& dist, int n_actions,
                                Rng& rng);

}  // namespace qre
