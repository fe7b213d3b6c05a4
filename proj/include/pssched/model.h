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

// Problem instances, schedules and the total cost of a schedule.
//
// N users with unit service demand share a processor. While q users are
// present each of them is served at rate beta - alpha * (q - 1). User i pays
// (d_i - d*_i)^2 + gamma * (d_i - a_i) for arriving at a_i and departing at
// d_i. Users are indexed from 0; the ideal departures d* are sorted.

#ifndef PSSCHED_MODEL_H_
#define PSSCHED_MODEL_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pssched {

// Absolute tolerance used when comparing event times.
inline constexpr double kTimeTolerance = 1e-9;

// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Interleaving of arrivals and departures of an ordered schedule.
//
// k[i] is the slot of the last arrival not after d_i, h[i] the slot of the
// first departure not before a_i. Both are 0-based, nondecreasing, with
// k[i] >= i, k[n-1] = n-1, h[i] <= i and h[0] = 0. Each determines the other.
struct OrderProfile {
  std::vector<int> k;
  std::vector<int> h;

  int size() const { return static_cast<int>(k.size()); }
  bool operator==(const OrderProfile&) const = default;

  // Checks the structural invariants and the k/h duality.
  bool is_valid() const;

  // Profile of a schedule without any overlap: k = h = (0, 1, ..., n-1).
  static OrderProfile isolated(int n);
  // Builds the profile from k alone; throws ContractViolation if k is not
  // a member of the profile set.
  static OrderProfile from_k(std::vector<int> k);
  // Convenience for the 1-based notation used in tables and files.
  static OrderProfile from_one_based(const std::vector<int>& k,
                                     const std::vector<int>& h);
};

// h_i = min{j : k_j >= i}.
std::vector<int> h_from_k(std::span<const int> k);
// k_i = max{j : h_j <= i}.
std::vector<int> k_from_h(std::span<const int> h);

class Instance {
 public:
  // Throws ContractViolation unless alpha >= 0, beta > 0, gamma >= 0, d_star
  // is nonempty and nondecreasing and n < beta / alpha + 1.
  Instance(double alpha, double beta, double gamma, std::vector<double> d_star);

  int n() const { return static_cast<int>(d_star_.size()); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  const std::vector<double>& d_star() const { return d_star_; }
  double d_star(int i) const { return d_star_[i]; }

  // Service rate seen by each of `present` users.
  double rate(int present) const { return beta_ - alpha_ * (present - 1); }

  // Same instance with another sojourn weight.
  Instance with_gamma(double gamma) const;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  std::vector<double> d_star_;
};

struct Schedule {
  std::vector<double> arrivals;
  std::optional<std::vector<double>> departures;
  std::optional<OrderProfile> profile;
};

// Sum over users of (d_i - d*_i)^2 + gamma * (d_i - a_i).
double total_cost(const Instance& instance, std::span<const double> arrivals,
                  std::span<const double> departures);
// Throws ContractViolation when the schedule carries no departures.
double total_cost(const Instance& instance, const Schedule& schedule);

// Box [lower, upper] that contains every coordinate of an optimal schedule.
struct SearchBounds {
  double lower;
  double upper;
};
SearchBounds bounds(const Instance& instance);

// Ordering operator: ascending sort. Never increases the total cost.
std::vector<double> order(std::span<const double> arrivals);

bool is_sorted(std::span<const double> values);

}  // namespace pssched

#endif  // PSSCHED_MODEL_H_
