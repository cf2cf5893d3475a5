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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qre/distribution.hpp"
#include "qre/rng.hpp"
#include "test_support.hpp"

using namespace qre;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Direct-sampling estimate of P(theta[a0] - theta[a1] >= x); the independent
// check for the closed-form survival functions.
double mc_pairwise(const TypeDistribution& dist, double x, std::int64_t n,
                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(2);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    sample_type_into(dist, theta, rng);
    if (theta[0] - theta[1] >= x) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

// Simpson-rule evaluation of P(theta[base] - theta[a] >= t_a for all a) for
// iid coordinates with density f and CDF F: integral of f(x) prod F(x - t_a).
template <typename Density, typename Cdf>
double quadrature_region(Density f, Cdf F, double lo, double hi,
                         const ForcedRegionSpec& spec, int intervals) {
  auto integrand = [&](double x) {
    double value = f(x);
    for (int a = 0; a < static_cast<int>(spec.thresholds.size()); ++a) {
      if (a == spec.base_action) continue;
      value *= F(x - spec.thresholds[a]);
    }
    return value;
  };
  const double h = (hi - lo) / intervals;
  double sum = integrand(lo) + integrand(hi);
  for (int k = 1; k < intervals; ++k) {
    sum += integrand(lo + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_SUITE_BEGIN("distribution");

TEST_CASE("construction rejects degenerate parameters") {
  CHECK_THROWS_AS(TypeDistribution::extreme_value(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::extreme_value(-2.0), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::uniform_box(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::uniform_box(2.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::empirical({}), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::empirical({{1.0, 2.0}, {0.5}}),
                  std::invalid_argument);
}

TEST_CASE("triangular survival of the uniform difference") {
  const auto box = TypeDistribution::uniform_box(-2.0, 2.0);
  CHECK(pairwise_survival(box, 1.0) == doctest::Approx(9.0 / 32.0).epsilon(1e-15));
  CHECK(pairwise_survival(box, 0.0) == 0.5);
  CHECK(pairwise_survival(box, 4.0) == 0.0);
  CHECK(pairwise_survival(box, -4.0) == 1.0);
  CHECK(pairwise_survival(box, 7.0 / 16.0) ==
        doctest::Approx(3249.0 / 8192.0).epsilon(1e-15));
}

TEST_CASE("logistic survival of the extreme-value difference") {
  const auto gumbel = TypeDistribution::extreme_value(5.0);
  CHECK(pairwise_survival(gumbel, 0.0) == 0.5);
  CHECK(pairwise_survival(gumbel, 1.0) ==
        doctest::Approx(1.0 / (1.0 + std::exp(5.0))).epsilon(1e-14));

  // The logistic-difference identity, checked against direct sampling.
  CHECK_NEAR(mc_pairwise(gumbel, 1.0, 1'000'000, 20260105),
             1.0 / (1.0 + std::exp(5.0)), 0.002);
}

TEST_CASE("survival is monotone and complementary") {
  for (const auto& dist : {TypeDistribution::extreme_value(0.7),
                           TypeDistribution::uniform_box(-1.5, 2.5)}) {
    double previous = 1.0;
    for (double x = -6.0; x <= 6.0; x += 0.125) {
      const double s = pairwise_survival(dist, x);
      CHECK(s <= previous);
      CHECK(s + pairwise_survival(dist, -x) == doctest::Approx(1.0).epsilon(1e-15));
      previous = s;
    }
  }
}

TEST_CASE("empirical survival is the sample fraction") {
  const auto emp = TypeDistribution::empirical(
      {{1.0, 0.0}, {0.2, 0.9}, {3.0, -1.0}, {0.0, 0.0}});
  CHECK(pairwise_survival(emp, 0.0, 0, 1) == 0.75);
  CHECK(pairwise_survival(emp, 1.0, 0, 1) == 0.5);
  CHECK(pairwise_survival(emp, 0.5, 1, 0) == 0.25);
}

TEST_CASE("forced region closed forms") {
  const auto box = TypeDistribution::uniform_box(-2.0, 2.0);
  ForcedRegionSpec two;
  two.base_action = 0;
  two.thresholds = {-kInf, 7.0 / 16.0};
  CHECK(forced_region_probability(box, two).value ==
        doctest::Approx(3249.0 / 8192.0).epsilon(1e-15));

  ForcedRegionSpec open;
  open.base_action = 1;
  open.thresholds = {-kInf, -kInf, -kInf};
  CHECK(forced_region_probability(box, open).value == 1.0);

  const auto gumbel = TypeDistribution::extreme_value(1.0);
  ForcedRegionSpec thirds;
  thirds.base_action = 0;
  thirds.thresholds = {-kInf, 0.0, 0.0};
  CHECK(forced_region_probability(gumbel, thirds).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("extreme-value region mass matches quadrature at mixed thresholds") {
  const double lambda = 2.0;
  const auto gumbel = TypeDistribution::extreme_value(lambda);
  ForcedRegionSpec spec;
  spec.base_action = 1;
  spec.thresholds = {0.3, -kInf, -0.7, 1.2};

  const double closed = forced_region_probability(gumbel, spec).value;
  const auto density = [&](double x) {
    return lambda * std::exp(-lambda * x - std::exp(-lambda * x));
  };
  const auto cdf = [&](double x) { return std::exp(-std::exp(-lambda * x)); };
  const double integral =
      quadrature_region(density, cdf, -12.0, 14.0, spec, 20'000);
  CHECK_NEAR(closed, integral, 1e-9);
}

TEST_CASE("uniform region mass beyond two actions is sampled") {
  const auto box = TypeDistribution::uniform_box(-2.0, 2.0);
  ForcedRegionSpec spec;
  spec.base_action = 0;
  spec.thresholds = {-kInf, 0.4, -0.2};

  McOptions opts;
  opts.samples = 400'000;
  opts.seed = 17;
  const McEstimate est = forced_region_probability(box, spec, opts);
  CHECK(est.std_error > 0.0);

  const double width = 4.0;
  const auto density = [&](double x) {
    return (x >= -2.0 && x <= 2.0) ? 1.0 / width : 0.0;
  };
  const auto cdf = [&](double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return (x + 2.0) / width;
  };
  const double integral =
      quadrature_region(density, cdf, -2.0, 2.0, spec, 20'000);
  CHECK_NEAR(est.value, integral, 5.0 * est.std_error);

  McOptions empty;
  empty.samples = 0;
  CHECK_THROWS_AS(forced_region_probability(box, spec, empty),
                  std::invalid_argument);
}

TEST_CASE("forced region mass never rises when thresholds rise") {
  const auto box = TypeDistribution::uniform_box(-2.0, 2.0);
  const auto gumbel = TypeDistribution::extreme_value(0.8);
  Rng rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    ForcedRegionSpec spec;
    spec.base_action = 0;
    spec.thresholds = {-kInf, -2.0 + 4.0 * rng.next_unit(),
                       -2.0 + 4.0 * rng.next_unit()};
    for (const auto& dist : {box, gumbel}) {
      McOptions opts;
      opts.samples = 100'000;
      opts.seed = 99;  // common random numbers keep the comparison exact
      const double before = forced_region_probability(dist, spec, opts).value;
      ForcedRegionSpec raised = spec;
      raised.thresholds[1] += 0.5;
      const double after = forced_region_probability(dist, raised, opts).value;
      CHECK(after <= before);
    }
  }
}

TEST_CASE("quantal response ties give a fifty-fifty split") {
  const StaticGame mp = test::matching_pennies();
  const auto box = TypeDistribution::uniform_box(-2.0, 2.0);
  MixedProfile half;
  half.dist = {{0.5, 0.5}, {0.5, 0.5}};
  const auto response = quantal_response(box, mp, 0, half);
  CHECK(response[0] == 0.5);
  CHECK(response[1] == 0.5);
}

TEST_CASE("logit quantal response on the vaccination table") {
  const StaticGame vac = test::vaccination();
  const auto gumbel = TypeDistribution::extreme_value(0.5);
  MixedProfile half;
  half.dist = {{0.5, 0.5}, {0.5, 0.5}};
  const auto response = quantal_response(gumbel, vac, 0, half);
  const double expected = 1.0 / (1.0 + std::exp(0.5 * (2.0 - 3.5)));
  CHECK(response[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(response[0] == doctest::Approx(0.67918).epsilon(1e-4));

  // Independent route: tally best responses over raw draws.
  Rng rng(8);
  std::vector<double> theta(2);
  std::int64_t favored = 0;
  const std::int64_t n = 1'000'000;
  for (std::int64_t i = 0; i < n; ++i) {
    sample_type_into(gumbel, theta, rng);
    if (3.5 + theta[0] >= 2.0 + theta[1]) ++favored;
  }
  CHECK_NEAR(response[0], static_cast<double>(favored) / n, 0.002);
}

TEST_CASE("vanishing noise sensitivity gives the uniform response") {
  const StaticGame vac = test::vaccination();
  const auto nearly_flat = TypeDistribution::extreme_value(1e-9);
  const auto response =
      quantal_response(nearly_flat, vac, 1, uniform_profile(vac));
  CHECK_NEAR(response[0], 0.5, 1e-6);
  CHECK_NEAR(response[1], 0.5, 1e-6);
}

TEST_CASE("quantal response is a strictly positive distribution") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const StaticGame g = test::random_game(rng, {3, 2});
    const auto gumbel = TypeDistribution::extreme_value(0.5 + rng.next_unit());
    const MixedProfile belief = test::random_profile(rng, g);
    const auto response = quantal_response(gumbel, g, 0, belief);
    double sum = 0.0;
    for (double p : response) {
      CHECK(p > 0.0);
      sum += p;
    }
    CHECK_NEAR(sum, 1.0, 1e-9);
  }
}

TEST_CASE("sampled quantal response for a wide uniform player") {
  Rng rng(47);
  StaticGame g = test::random_game(rng, {3, 2});
  const auto box = TypeDistribution::uniform_box(-1.0, 1.0);
  const MixedProfile belief = uniform_profile(g);

  McOptions opts;
  opts.samples = 300'000;
  opts.seed = 4;
  const auto response = quantal_response(box, g, 0, belief, opts);
  double sum = 0.0;
  for (double p : response) sum += p;
  CHECK_NEAR(sum, 1.0, 1e-9);

  McOptions empty;
  empty.samples = 0;
  CHECK_THROWS_AS(quantal_response(box, g, 0, belief, empty),
                  std::invalid_argument);
}

TEST_CASE("empirical quantal response is an exact tally") {
  const StaticGame mp = test::matching_pennies();
  const auto emp = TypeDistribution::empirical(
      {{2.0, 0.0}, {0.0, 2.0}, {1.0, 0.0}, {0.0, 0.0}});
  MixedProfile half;
  half.dist = {{0.5, 0.5}, {0.5, 0.5}};
  // Utilities tie at 0.5 each; theta decides, exact ties go to H.
  const auto response = quantal_response(emp, mp, 0, half);
  CHECK(response[0] == 0.75);
  CHECK(response[1] == 0.25);
}

TEST_CASE("empirical forced regions beyond two actions are exact fractions") {
  const auto emp = TypeDistribution::empirical({{2.0, 0.0, 0.0},
                                                {0.0, 2.0, 0.0},
                                                {1.0, 0.5, 0.0},
                                                {0.0, 0.0, 3.0}});
  ForcedRegionSpec spec;
  spec.base_action = 0;
  spec.thresholds = {-kInf, 0.25, 0.25};
  // Samples 1 and 4 fail against coordinate 1 or 2; samples 0 and 2 pass.
  CHECK(forced_region_probability(emp, spec).value == 0.5);

  spec.thresholds = {-kInf, 2.5, 0.0};
  CHECK(forced_region_probability(emp, spec).value == 0.0);
}

TEST_CASE("empirical draws cover the sample set uniformly") {
  const auto emp = TypeDistribution::empirical({{1.0, 0.0}, {2.0, 0.0},
                                                {3.0, 0.0}, {4.0, 0.0}});
  Rng rng(64);
  std::vector<int> histogram(4, 0);
  std::vector<double> theta(2);
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    sample_type_into(emp, theta, rng);
    ++histogram[static_cast<int>(theta[0]) - 1];
  }
  for (int count : histogram) {
    CHECK_NEAR(static_cast<double>(count) / n, 0.25, 0.006);
  }
}

TEST_CASE("type sampling matches the stated supports and laws") {
  Rng rng(123);
  const auto box = TypeDistribution::uniform_box(-2.0, 2.0);
  std::vector<double> theta(3);
  for (int i = 0; i < 100'000; ++i) {
    sample_type_into(box, theta, rng);
    for (double v : theta) {
      CHECK(v >= -2.0);
      CHECK(v < 2.0);
    }
  }

  const auto gumbel = TypeDistribution::extreme_value(0.5);
  std::int64_t diff_positive = 0, below_zero = 0;
  const std::int64_t n = 1'000'000;
  std::vector<double> pair(2);
  for (std::int64_t i = 0; i < n; ++i) {
    sample_type_into(gumbel, pair, rng);
    if (pair[0] - pair[1] >= 0.0) ++diff_positive;
    if (pair[0] <= 0.0) ++below_zero;
  }
  CHECK_NEAR(static_cast<double>(diff_positive) / n, 0.5, 0.002);
  CHECK_NEAR(static_cast<double>(below_zero) / n, std::exp(-1.0), 0.002);
}

TEST_SUITE_END();
