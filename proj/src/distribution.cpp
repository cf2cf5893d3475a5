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

#include "qre/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qre/mc.hpp"
#include "qre/rng.hpp"

namespace qre {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Survival of the difference of two iid uniform[lo,hi] coordinates: the
// difference is triangular on [-w, w].
double triangular_survival(double width, double x) {
  if (x >= width) return 0.0;
  if (x <= -width) return 1.0;
  const double denom = 2.0 * width * width;
  if (x >= 0.0) return (width - x) * (width - x) / denom;
  return 1.0 - (width + x) * (width + x) / denom;
}

double logistic_survival(double lambda, double x) {
  // 1 / (1 + e^{lambda x}), stable for large |x|.
  if (lambda * x > 0.0) {
    const double e = std::exp(-lambda * x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(lambda * x));
}

void check_region_spec(const TypeDistribution& dist,
                       const ForcedRegionSpec& spec) {
  const int n = static_cast<int>(spec.thresholds.size());
  if (n < 2) {
    throw std::invalid_argument("forced region needs >= 2 actions");
  }
  if (spec.base_action < 0 || spec.base_action >= n) {
    throw std::invalid_argument("forced region base action out of range");
  }
  if (dist.dimension() != 0 && dist.dimension() != n) {
    throw std::invalid_argument(
        "empirical sample width does not match the action count");
  }
  for (int a = 0; a < n; ++a) {
    if (a == spec.base_action) continue;
    if (std::isnan(spec.thresholds[a])) {
      throw std::invalid_argument("forced region threshold is NaN");
    }
  }
}

bool all_unbounded(const ForcedRegionSpec& spec) {
  for (int a = 0; a < static_cast<int>(spec.thresholds.size()); ++a) {
    if (a != spec.base_action && spec.thresholds[a] != -kInf) return false;
  }
  return true;
}

double empirical_region_fraction(const TypeDistribution& dist,
                                 const ForcedRegionSpec& spec) {
  std::int64_t hits = 0;
  for (const auto& sample : dist.samples()) {
    bool inside = true;
    for (int a = 0; a < static_cast<int>(spec.thresholds.size()) && inside;
         ++a) {
      if (a == spec.base_action) continue;
      inside = sample[spec.base_action] - sample[a] >= spec.thresholds[a];
    }
    if (inside) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(dist.samples().size());
}

}  // namespace

TypeDistribution TypeDistribution::extreme_value(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("extreme_value requires lambda > 0");
  }
  TypeDistribution d;
  d.kind_ = DistKind::kExtremeValue;
  d.lambda_ = lambda;
  return d;
}

TypeDistribution TypeDistribution::uniform_box(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("uniform_box requires lo < hi");
  }
  TypeDistribution d;
  d.kind_ = DistKind::kUniformBox;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

TypeDistribution TypeDistribution::empirical(
    std::vector<std::vector<double>> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical requires >= 1 sample");
  }
  const std::size_t width = samples.front().size();
  if (width < 2) {
    throw std::invalid_argument("empirical samples need >= 2 coordinates");
  }
  for (const auto& s : samples) {
    if (s.size() != width) {
      throw std::invalid_argument("empirical samples have uneven widths");
    }
    for (double v : s) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("empirical sample has a non-finite entry");
      }
    }
  }
  TypeDistribution d;
  d.kind_ = DistKind::kEmpirical;
  d.samples_ = std::move(samples);
  return d;
}

int TypeDistribution::dimension() const {
  return kind_ == DistKind::kEmpirical
             ? static_cast<int>(samples_.front().size())
             : 0;
}

double pairwise_survival(const TypeDistribution& dist, double x, int a,
                         int b) {
  if (a == b) throw std::invalid_argument("pairwise_survival needs a != b");
  switch (dist.kind()) {
    case DistKind::kExtremeValue:
      return logistic_survival(dist.lambda(), x);
    case DistKind::kUniformBox:
      return triangular_survival(dist.width(), x);
    case DistKind::kEmpirical: {
      const auto& samples = dist.samples();
      if (a < 0 || b < 0 || a >= dist.dimension() || b >= dist.dimension()) {
        throw std::invalid_argument("pairwise_survival coordinate out of range");
      }
      std::int64_t hits = 0;
      for (const auto& s : samples) {
        if (s[a] - s[b] >= x) ++hits;
      }
      return static_cast<double>(hits) / static_cast<double>(samples.size());
    }
  }
  return 0.0;
}

McEstimate forced_region_probability(const TypeDistribution& dist,
                                     const ForcedRegionSpec& spec,
                                     const McOptions& opts) {
  check_region_spec(dist, spec);
  if (all_unbounded(spec)) return {1.0, 0.0};

  const int n = static_cast<int>(spec.thresholds.size());
  if (n == 2) {
    const int other = 1 - spec.base_action;
    return {pairwise_survival(dist, spec.thresholds[other], spec.base_action,
                              other),
            0.0};
  }

  switch (dist.kind()) {
    case DistKind::kExtremeValue: {
      // Substituting u = F(theta_base) in the integral of the region mass
      // turns each factor F(x - t) into u^{exp(lambda t)}, so the integral
      // collapses to 1 / (1 + sum_a exp(lambda t_a)). This is the logit
      // best-response mass with utility margins -t_a.
      double sum = 0.0;
      for (int a = 0; a < n; ++a) {
        if (a == spec.base_action) continue;
        sum += std::exp(dist.lambda() * spec.thresholds[a]);
      }
      return {1.0 / (1.0 + sum), 0.0};
    }
    case DistKind::kEmpirical:
      return {empirical_region_fraction(dist, spec), 0.0};
    case DistKind::kUniformBox: {
      if (opts.samples == 0) {
        throw std::invalid_argument(
            "forced_region_probability needs a Monte Carlo sample budget");
      }
      const auto total = static_cast<std::int64_t>(opts.samples);
      const std::int64_t hits =
          mc::region_hits(dist, spec, total, opts.seed, opts.parallel);
      const double p = static_cast<double>(hits) / static_cast<double>(total);
      return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) /
                           static_cast<double>(total))};
    }
  }
  return {};
}

std::vector<double> quantal_response(const TypeDistribution& dist,
                                     const StaticGame& game, int i,
                                     const MixedProfile& opponents,
                                     const McOptions& opts) {
  const std::vector<double> utils = expected_payoffs(game, i, opponents);
  const int n = static_cast<int>(utils.size());
  if (dist.dimension() != 0 && dist.dimension() != n) {
    throw std::invalid_argument(
        "empirical sample width does not match the player's action count");
  }

  std::vector<double> out(n, 0.0);
  switch (dist.kind()) {
    case DistKind::kExtremeValue: {
      // Logit with a max shift for overflow safety.
      const double shift = *std::max_element(utils.begin(), utils.end());
      double denom = 0.0;
      for (int a = 0; a < n; ++a) {
        out[a] = std::exp(dist.lambda() * (utils[a] - shift));
        denom += out[a];
      }
      for (double& v : out) v /= denom;
      return out;
    }
    case DistKind::kUniformBox: {
      if (n == 2) {
        out[0] = pairwise_survival(dist, utils[1] - utils[0], 0, 1);
        out[1] = pairwise_survival(dist, utils[0] - utils[1], 1, 0);
        return out;
      }
      if (opts.samples == 0) {
        throw std::invalid_argument(
            "quantal_response needs a Monte Carlo sample budget");
      }
      const auto tally =
          mc::tally_argmax(dist, utils, static_cast<std::int64_t>(opts.samples),
                           opts.seed, opts.parallel);
      for (int a = 0; a < n; ++a) {
        out[a] = static_cast<double>(tally.counts[a]) /
                 static_cast<double>(tally.total);
      }
      return out;
    }
    case DistKind::kEmpirical: {
      // The measure is finite, so the pushforward is an exact tally.
      for (const auto& sample : dist.samples()) {
        int best = 0;
        double best_value = utils[0] + sample[0];
        for (int a = 1; a < n; ++a) {
          const double v = utils[a] + sample[a];
          if (v > best_value) {
            best_value = v;
            best = a;
          }
        }
        out[best] += 1.0;
      }
      for (double& v : out) v /= static_cast<double>(dist.samples().size());
      return out;
    }
  }
  return out;
}

void sample_type_into(const TypeDistribution& dist, std::span<double> out,
                      Rng& rng) {
  switch (dist.kind()) {
    case DistKind::kExtremeValue:
      for (double& v : out) {
        v = -std::log(-std::log(rng.next_open_unit())) / dist.lambda();
      }
      return;
    case DistKind::kUniformBox:
      for (double& v : out) {
        v = dist.lo() + rng.next_unit() * dist.width();
      }
      return;
    case DistKind::kEmpirical: {
      const auto& samples = dist.samples();
      const auto& pick = samples[rng.next_index(samples.size())];
      if (pick.size() != out.size()) {
        throw std::invalid_argument(
            "empirical sample width does not match the requested dimension");
      }
      std::copy(pick.begin(), pick.end(), out.begin());
      return;
    }
  }
}

std::vector<double> sample_type(const TypeDistribution& dist, int n_actions,
                                Rng& rng) {
  std::vector<double> theta(n_actions);
  sample_type_into(dist, theta, rng);
  return theta;
}

}  // namespace qre
