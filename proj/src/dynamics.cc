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

#include "pssched/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pssched {
namespace {

void require_sorted(std::span<const double> values, const char* what) {
  if (!is_sorted(values)) {
    throw ContractViolation(std::string(what) + " not sorted");
  }
}

void require_size(const Instance& instance, std::span<const double> values) {
  if (static_cast<int>(values.size()) != instance.n()) {
    throw ContractViolation("vector size does not match the instance");
  }
}

}  // namespace

DynamicsResult forward_dynamics(const Instance& instance,
                                std::span<const double> arrivals) {
  require_size(instance, arrivals);
  require_sorted(arrivals, "arrivals");
  const int n = instance.n();
  const double alpha = instance.alpha();
  const double beta = instance.beta();

  // prefix_a[j] = a_0 + ... + a_{j-1}; same for prefix_d as d fills in.
  std::vector<double> prefix_a(n + 1, 0.0), prefix_d(n + 1, 0.0);
  for (int j = 0; j < n; ++j) prefix_a[j + 1] = prefix_a[j] + arrivals[j];

  DynamicsResult result;
  result.times.resize(n);
  result.profile.k.resize(n);
  result.profile.h.resize(n);
  auto& d = result.times;
  auto& k = result.profile.k;
  auto& h = result.profile.h;

  int first_present = 0;
  for (int i = 0; i < n; ++i) {
    while (first_present < i && k[first_present] < i) ++first_present;
    const int hi = first_present;
    const double earlier = prefix_d[i] - prefix_d[hi];
    const double own = (beta - alpha * (i - hi)) * arrivals[i];
    int ki = i > 0 ? std::max(i, k[i - 1]) : i;
    auto candidate = [&](int last) {
      ++result.evaluations;
      const double later = prefix_a[last + 1] - prefix_a[i + 1];
      return (1.0 + own + alpha * (earlier - later)) /
             (beta - alpha * (last - i));
    };
    double di = candidate(ki);
    while (ki + 1 < n && di > arrivals[ki + 1] + kTimeTolerance) {
      ++ki;
      di = candidate(ki);
    }
    // Order is guaranteed in exact arithmetic; equal arrivals can come out
    // an ulp apart.
    if (i > 0) di = std::max(di, d[i - 1]);
    d[i] = di;
    k[i] = ki;
    h[i] = hi;
    prefix_d[i + 1] = prefix_d[i] + di;
  }
  return result;
}

DynamicsResult inverse_dynamics(const Instance& instance,
                                std::span<const double> departures) {
  require_size(instance, departures);
  require_sorted(departures, "departures");
  const int n = instance.n();
  const double alpha = instance.alpha();
  const double beta = instance.beta();

  std::vector<double> prefix_d(n + 1, 0.0), suffix_a(n + 1, 0.0);
  for (int j = 0; j < n; ++j) prefix_d[j + 1] = prefix_d[j] + departures[j];

  DynamicsResult result;
  result.times.resize(n);
  result.profile.k.resize(n);
  result.profile.h.resize(n);
  auto& a = result.times;
  auto& k = result.profile.k;
  auto& h = result.profile.h;

  // suffix_a[j] = a_j + ... + a_{n-1}, filled from the right.
  int last_present = n - 1;
  for (int i = n - 1; i >= 0; --i) {
    while (last_present > i && h[last_present] > i) --last_present;
    const int ki = last_present;
    const double later = suffix_a[i + 1] - suffix_a[ki + 1];
    const double own = (beta - alpha * (ki - i)) * departures[i];
    int hi = i + 1 < n ? std::min(i, h[i + 1]) : i;
    auto candidate = [&](int first) {
      ++result.evaluations;
      const double earlier = prefix_d[i] - prefix_d[first];
      return (own - alpha * (earlier - later) - 1.0) /
             (beta - alpha * (i - first));
    };
    double ai = candidate(hi);
    while (hi > 0 && ai < departures[hi - 1] - kTimeTolerance) {
      --hi;
      ai = candidate(hi);
    }
    if (i + 1 < n) ai = std::min(ai, a[i + 1]);
    a[i] = ai;
    k[i] = ki;
    h[i] = hi;
    suffix_a[i] = suffix_a[i + 1] + ai;
  }
  return result;
}

BalanceMatrices build_matrices(const Instance& instance,
                               const OrderProfile& profile) {
  if (profile.size() != instance.n() || !profile.is_valid()) {
    throw ContractViolation("invalid order profile");
  }
  const int n = instance.n();
  const double alpha = instance.alpha();
  const double beta = instance.beta();
  BalanceMatrices m{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    const int ki = profile.k[i];
    const int hi = profile.h[i];
    m.arrival(i, i) = beta - alpha * (i - hi);
    for (int j = i + 1; j <= ki; ++j) m.arrival(i, j) = -alpha;
    m.departure(i, i) = beta - alpha * (ki - i);
    for (int j = hi; j < i; ++j) m.departure(i, j) = -alpha;
  }
  return m;
}

double balance_residual(const Instance& instance, const OrderProfile& profile,
                        std::span<const double> arrivals,
                        std::span<const double> departures) {
  const auto m = build_matrices(instance, profile);
  const int n = instance.n();
  const Eigen::Map<const Eigen::VectorXd> a(arrivals.data(), n);
  const Eigen::Map<const Eigen::VectorXd> d(departures.data(), n);
  return (m.departure * d - m.arrival * a - Eigen::VectorXd::Ones(n))
      .lpNorm<Eigen::Infinity>();
}

std::vector<double> simulate_oracle(const Instance& instance,
                                    std::span<const double> arrivals) {
  require_size(instance, arrivals);
  require_sorted(arrivals, "arrivals");
  const int n = instance.n();
  constexpr double kWorkEpsilon = 1e-13;

  struct Present {
    int user;
    double remaining;
  };
  std::vector<Present> present;
  std::vector<double> departures(n);
  int next_arrival = 0;
  double now = arrivals.empty() ? 0.0 : arrivals[0];

  while (next_arrival < n || !present.empty()) {
    double exhaustion = std::numeric_limits<double>::infinity();
    double rate = 0;
    if (!present.empty()) {
      rate = instance.rate(static_cast<int>(present.size()));
      double least = present.front().remaining;
      for (const auto& p : present) least = std::min(least, p.remaining);
      exhaustion = now + least / rate;
    }
    const double arrival = next_arrival < n
                               ? arrivals[next_arrival]
                               : std::numeric_limits<double>::infinity();
    // A departure coinciding with an arrival is processed first.
    const double next = std::min(exhaustion, arrival);
    const double served = rate * (next - now);
    for (auto& p : present) p.remaining -= served;
    now = next;
    if (exhaustion <= arrival) {
      std::erase_if(present, [&](const Present& p) {
        if (p.remaining > kWorkEpsilon) return false;
        departures[p.user] = now;
        return true;
      });
    } else {
      present.push_back({next_arrival, 1.0});
      ++next_arrival;
    }
  }
  return departures;
}

double cost_of_arrivals(const Instance& instance,
                        std::span<const double> arrivals) {
  require_size(instance, arrivals);
  const int n = instance.n();
  std::vector<int> users(n);
  for (int i = 0; i < n; ++i) users[i] = i;
  std::stable_sort(users.begin(), users.end(),
                   [&](int x, int y) { return arrivals[x] < arrivals[y]; });
  std::vector<double> sorted(n);
  for (int s = 0; s < n; ++s) sorted[s] = arrivals[users[s]];
  const auto departures = forward_dynamics(instance, sorted).times;
  double cost = 0;
  for (int s = 0; s < n; ++s) {
    const double late = departures[s] - instance.d_star(users[s]);
    cost += late * late + instance.gamma() * (departures[s] - sorted[s]);
  }
  return cost;
}

}  // namespace pssched
