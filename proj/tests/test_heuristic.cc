// Copyright 2026 The pssched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "pssched/bench.h"
#include "pssched/dynamics.h"
#include "pssched/heuristic.h"
#include "near.h"
#include "support.h"

namespace pssched {
namespace {

using testing::near;

using testing::max_abs_diff;

// Least-squares nondecreasing fit by pooling adjacent violators.
std::vector<double> isotonic(std::span<const double> y) {
  std::vector<double> level;
  std::vector<int> width;
  for (double v : y) {
    level.push_back(v);
    width.push_back(1);
    while (level.size() > 1 && level[level.size() - 2] > level.back()) {
      const int w = width.back() + width[width.size() - 2];
      const double merged =
          (level.back() * width.back() + level[level.size() - 2] * width[width.size() - 2]) / w;
      level.pop_back();
      width.pop_back();
      level.back() = merged;
      width.back() = w;
    }
  }
  std::vector<double> out;
  for (std::size_t b = 0; b < level.size(); ++b) out.insert(out.end(), width[b], level[b]);
  return out;
}

TEST_CASE("zero sojourn weight schedule hits every due date") {
  testing::Rng rng(83);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng, 30);
    const auto a = solve_gamma_zero(inst.with_gamma(0));
    worst = std::max(worst, cost_of_arrivals(inst.with_gamma(0), a));
  }
  CHECK(worst <= 1e-12);

  const Instance example(1.0 / 6, 0.5, 0.0, {2.5, 3.75, 5.25});
  CHECK(max_abs_diff(solve_gamma_zero(example), std::vector<double>{0, 1, 3}) <= 1e-12);
}

TEST_CASE("no-overlap limit matches an isotonic fit") {
  testing::Rng rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(rng, 30);
    const int n = inst.n();
    const double gap = 1 / inst.beta();
    // With z_i = a_i - i/beta the spacing constraint becomes z nondecreasing.
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = inst.d_star(i) - gap - i * gap;
    auto z = isotonic(y);
    for (int i = 0; i < n; ++i) z[i] += i * gap;
    CHECK(max_abs_diff(solve_gamma_inf(inst), z) <= 1e-8);
  }
}

TEST_CASE("initial points interpolate the two extremes") {
  const Instance inst(0.05, 1, 1, {-1, 0, 0.2, 2});
  const auto zero = solve_gamma_zero(inst);
  const auto inf = solve_gamma_inf(inst);
  const auto one = initial_points(inst, 1);
  REQUIRE(one.size() == 1);
  CHECK(max_abs_diff(one[0], zero) <= 1e-12);
  const auto three = initial_points(inst, 3);
  REQUIRE(three.size() == 3);
  CHECK(max_abs_diff(three[0], inf) <= 1e-12);
  CHECK(max_abs_diff(three[2], zero) <= 1e-12);
  for (int i = 0; i < inst.n(); ++i) {
    CHECK(three[1][i] == near(0.5 * (zero[i] + inf[i])));
  }
  for (const auto& p : initial_points(inst, 5)) CHECK(is_sorted(p));
}

TEST_CASE("combined search keeps the best start and is thread independent") {
  testing::Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testing::random_instance(rng, 12);
    const auto r = combined_search(inst, 3, kDefaultEpsilon, 1);
    const auto parallel = combined_search(inst, 3, kDefaultEpsilon, 3);
    CHECK(r.value == parallel.value);
    CHECK(r.a_star == parallel.a_star);
    CHECK(r.best_start == parallel.best_start);
    REQUIRE(r.starts.size() == 3);
    for (const auto& s : r.starts) {
      CHECK(r.value <= s.value);
      CHECK(s.value <= s.cpi_value + 1e-12);
      for (std::size_t v = 1; v < s.neighbour_trajectory.size(); ++v) {
        CHECK(s.neighbour_trajectory[v] < s.neighbour_trajectory[v - 1]);
      }
    }
    CHECK(r.value == near(cost_of_arrivals(inst, r.a_star)).epsilon(1e-9));
  }
}

// Reference schedules for fifteen users: arrival + 1 and departure.
struct ReferenceSchedule {
  double gamma;
  // The reference large-weight schedule costs about 9e-4 more than ours and
  // sits up to 2e-4 away from it.
  double tolerance;
  std::vector<double> shifted_arrivals;
  std::vector<double> departures;
};

const std::vector<ReferenceSchedule> kReference{
    {0.1, 1e-4,
     {-1.5875571, -1.5073526, -1.4438297, -1.3869439, -1.3214492, -1.2524939, -1.1844134,
      -1.0902795, -0.9723277, -0.8188977, -0.6103866, -0.3115126, 0.1138602, 0.4367769,
      0.746287},
     {-0.88602495, -0.69198188, -0.56310801, -0.4542124, -0.34841317, -0.25380006,
      -0.16672851, -0.0645832, 0.04411745, 0.16407181, 0.30190121, 0.46794233, 0.66475661,
      0.81299596, 0.97317648}},
    {1, 1e-4,
     {-1.55712068, -1.44345342, -1.35080819, -1.23855835, -1.06881044, -0.94504264,
      -0.76603086, -0.48430565, -0.26790878, -0.08653336, 0.20068554, 0.41262452,
      0.73240807, 0.99384417, 1.30998006},
     {-1.2680003, -1.0866241, -0.9466784, -0.7992043, -0.5895157, -0.4465012, -0.2674814,
      -0.0062453, 0.1786758, 0.3241266, 0.5629188, 0.7346174, 0.9887159, 1.1912356,
      1.4300715}},
    {20, 3e-4,
     {-2.9550767, -2.3113216, -1.9351066, -1.6160803, -1.2333256, -0.8348559, -0.4967773,
      -0.1140166, 0.284459, 0.6225377, 1.0052983, 1.403774, 1.7420466, 2.1247953, 2.84228},
     {-2.935000582, -2.23341924, -1.834742404, -1.496669664, -1.113902574, -0.71542603,
      -0.377347325, 0.005413805, 0.403889551, 0.741961302, 1.124710001, 1.523173666,
      1.842393374, 2.203583592, 2.861555608}},
};

TEST_CASE("fifteen-user schedules match the reference ones") {
  const auto spec = ExperimentSpec::diagram_family();
  for (const auto& reference : kReference) {
    CAPTURE(reference.gamma);
    const Instance inst = generate_instance(spec, 15, reference.gamma);
    std::vector<double> their_arrivals(reference.shifted_arrivals);
    for (auto& v : their_arrivals) v -= 1 / inst.beta();
    CHECK(max_abs_diff(forward_dynamics(inst, their_arrivals).times, reference.departures) <=
          1e-6);

    const auto r = combined_search(inst, spec.starts, spec.epsilon);
    CHECK(r.value <= cost_of_arrivals(inst, their_arrivals) + 1e-9);
    std::vector<double> shifted(r.a_star);
    for (auto& v : shifted) v += 1 / inst.beta();
    const auto d = forward_dynamics(inst, r.a_star).times;
    CHECK(max_abs_diff(shifted, reference.shifted_arrivals) <= reference.tolerance);
    CHECK(max_abs_diff(d, reference.departures) <= reference.tolerance);
  }
}

}  // namespace
}  // namespace pssched
