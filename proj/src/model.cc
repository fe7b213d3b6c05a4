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

#include "pssched/model.h"

#include <algorithm>
#include <cmath>

namespace pssched {

bool OrderProfile::is_valid() const {
  const int n = size();
  if (n == 0 || static_cast<int>(h.size()) != n) return false;
  if (k[n - 1] != n - 1 || h[0] != 0) return false;
  for (int i = 0; i < n; ++i) {
    if (k[i] < i || k[i] >= n || h[i] > i || h[i] < 0) return false;
    if (i > 0 && (k[i] < k[i - 1] || h[i] < h[i - 1])) return false;
  }
  return h_from_k(k) == h;
}

OrderProfile OrderProfile::isolated(int n) {
  OrderProfile p;
  p.k.resize(n);
  p.h.resize(n);
  for (int i = 0; i < n; ++i) p.k[i] = p.h[i] = i;
  return p;
}

OrderProfile OrderProfile::from_k(std::vector<int> k) {
  const int n = static_cast<int>(k.size());
  if (n == 0 || k[n - 1] != n - 1) {
    throw ContractViolation("profile must end with k_n = n");
  }
  for (int i = 0; i < n; ++i) {
    if (k[i] < i || k[i] >= n || (i > 0 && k[i] < k[i - 1])) {
      throw ContractViolation("profile k must be nondecreasing with k_i >= i");
    }
  }
  OrderProfile p;
  p.h = h_from_k(k);
  p.k = std::move(k);
  return p;
}

OrderProfile OrderProfile::from_one_based(const std::vector<int>& k,
                                          const std::vector<int>& h) {
  OrderProfile p;
  p.k.reserve(k.size());
  p.h.reserve(h.size());
  for (int v : k) p.k.push_back(v - 1);
  for (int v : h) p.h.push_back(v - 1);
  if (!p.is_valid()) throw ContractViolation("invalid order profile");
  return p;
}

std::vector<int> h_from_k(std::span<const int> k) {
  const int n = static_cast<int>(k.size());
  std::vector<int> h(n);
  int j = 0;
  for (int i = 0; i < n; ++i) {
    while (j < i && k[j] < i) ++j;
    h[i] = j;
  }
  return h;
}

std::vector<int> k_from_h(std::span<const int> h) {
  const int n = static_cast<int>(h.size());
  std::vector<int> k(n);
  int j = n - 1;
  for (int i = n - 1; i >= 0; --i) {
    while (j > i && h[j] > i) --j;
    k[i] = std::max(j, i);
  }
  return k;
}

Instance::Instance(double alpha, double beta, double gamma,
                   std::vector<double> d_star)
    : alpha_(alpha), beta_(beta), gamma_(gamma), d_star_(std::move(d_star)) {
  if (!std::isfinite(alpha_) || alpha_ < 0) {
    throw ContractViolation("alpha must be finite and nonnegative");
  }
  if (!std::isfinite(beta_) || beta_ <= 0) {
    throw ContractViolation("beta must be finite and positive");
  }
  if (!std::isfinite(gamma_) || gamma_ < 0) {
    throw ContractViolation("gamma must be finite and nonnegative");
  }
  if (d_star_.empty()) throw ContractViolation("d_star must not be empty");
  for (double v : d_star_) {
    if (!std::isfinite(v)) throw ContractViolation("d_star must be finite");
  }
  if (!is_sorted(d_star_)) throw ContractViolation("d_star not sorted");
  // The slowest rate beta - alpha (n - 1) must stay positive.
  if (rate(n()) <= 0) {
    throw ContractViolation("n must satisfy n < beta / alpha + 1");
  }
}

Instance Instance::with_gamma(double gamma) const {
  return Instance(alpha_, beta_, gamma, d_star_);
}

double total_cost(const Instance& instance, std::span<const double> arrivals,
                  std::span<const double> departures) {
  const int n = instance.n();
  if (static_cast<int>(arrivals.size()) != n ||
      static_cast<int>(departures.size()) != n) {
    throw ContractViolation("schedule size does not match the instance");
  }
  double cost = 0;
  for (int i = 0; i < n; ++i) {
    const double late = departures[i] - instance.d_star(i);
    cost += late * late + instance.gamma() * (departures[i] - arrivals[i]);
  }
  return cost;
}

double total_cost(const Instance& instance, const Schedule& schedule) {
  if (!schedule.departures) {
    throw ContractViolation("schedule has no departures");
  }
  return total_cost(instance, schedule.arrivals, *schedule.departures);
}

SearchBounds bounds(const Instance& instance) {
  const int n = instance.n();
  const double clearing = n / instance.rate(n);
  return {instance.d_star().front() - clearing,
          instance.d_star().back() + clearing};
}

std::vector<double> order(std::span<const double> arrivals) {
  std::vector<double> sorted(arrivals.begin(), arrivals.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool is_sorted(std::span<const double> values) {
  return std::is_sorted(values.begin(), values.end());
}

}  // namespace pssched
