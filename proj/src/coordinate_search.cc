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

#include "pssched/coordinate_search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pssched/dynamics.h"

namespace pssched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Segments shorter than this are not used to cross-check the profile.
constexpr double kValidationMinLength = 1e-7;
constexpr double kValidationTolerance = 1e-7;

bool improves(double candidate, double incumbent) {
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

int sign_of(double slope) {
  if (slope > kSlopeThreshold) return 1;
  if (slope < -kSlopeThreshold) return -1;
  return 0;
}

// Re-derives the profile at `at` from the forward dynamics. Throws when the
// tracked departures disagree; returns true when k had to be replaced.
bool reconcile(const Instance& instance, SearchState& state,
               const Coefficients& coeffs, double at) {
  std::vector<double> arrivals = state.arrivals;
  arrivals[state.slot()] = at;
  const auto fresh = forward_dynamics(instance, arrivals);
  double gap = 0, scale = 1;
  for (int s = 0; s < state.size(); ++s) {
    const double tracked = coeffs.theta[s] * at + coeffs.eta[s];
    gap = std::max(gap, std::abs(fresh.times[s] - tracked));
    scale = std::max(scale, std::abs(fresh.times[s]));
  }
  if (gap > kValidationTolerance * scale) {
    std::ostringstream msg;
    msg << "line search lost track of the departures: user " << state.user
        << " at x=" << at << ", max gap " << gap;
    throw std::logic_error(msg.str());
  }
  if (fresh.profile == state.profile) return false;
  state.profile = fresh.profile;
  return true;
}

}  // namespace

SearchState SearchState::start(const Instance& instance,
                               std::span<const double> arrivals, int user,
                               double x) {
  const int n = instance.n();
  if (static_cast<int>(arrivals.size()) != n || user < 0 || user >= n) {
    throw ContractViolation("line search input does not match the instance");
  }
  SearchState state;
  state.user = user;
  state.x = x;
  std::vector<int> others;
  for (int u = 0; u < n; ++u) {
    if (u != user) others.push_back(u);
  }
  std::stable_sort(others.begin(), others.end(),
                   [&](int a, int b) { return arrivals[a] < arrivals[b]; });
  const auto position = std::partition_point(
      others.begin(), others.end(), [&](int u) { return arrivals[u] < x; });
  others.insert(position, user);
  state.user_at = std::move(others);
  state.slot_of.assign(n, 0);
  state.arrivals.resize(n);
  for (int s = 0; s < n; ++s) {
    const int u = state.user_at[s];
    state.slot_of[u] = s;
    state.arrivals[s] = u == user ? x : arrivals[u];
  }
  state.profile = forward_dynamics(instance, state.arrivals).profile;
  return state;
}

Coefficients coefficients(const Instance& instance, const SearchState& state) {
  const int n = state.size();
  const int p = state.slot();
  const double alpha = instance.alpha();
  const double beta = instance.beta();
  const auto& k = state.profile.k;
  const auto& h = state.profile.h;

  // Prefix sums over slots; the swept arrival is left out of fixed_prefix.
  std::vector<double> fixed_prefix(n + 1, 0.0);
  for (int s = 0; s < n; ++s) {
    fixed_prefix[s + 1] = fixed_prefix[s] + (s == p ? 0.0 : state.arrivals[s]);
  }
  std::vector<double> theta_prefix(n + 1, 0.0), eta_prefix(n + 1, 0.0);
  Coefficients c{std::vector<double>(n), std::vector<double>(n)};
  for (int s = 0; s < n; ++s) {
    const double den = beta - alpha * (k[s] - s);
    const double own = beta - alpha * (s - h[s]);
    const double earlier_theta = theta_prefix[s] - theta_prefix[h[s]];
    const double earlier_eta = eta_prefix[s] - eta_prefix[h[s]];
    const double later_fixed = fixed_prefix[k[s] + 1] - fixed_prefix[s + 1];
    double theta = alpha * earlier_theta;
    if (s == p) theta += own;
    if (s < p && p <= k[s]) theta -= alpha;
    double eta = 1.0 + alpha * earlier_eta - alpha * later_fixed;
    if (s != p) eta += own * state.arrivals[s];
    c.theta[s] = theta / den;
    c.eta[s] = eta / den;
    theta_prefix[s + 1] = theta_prefix[s] + c.theta[s];
    eta_prefix[s + 1] = eta_prefix[s] + c.eta[s];
  }
  return c;
}

Breakpoint next_breakpoint(const SearchState& state, const Coefficients& coeffs,
                           double upper) {
  const int n = state.size();
  const int p = state.slot();
  const double x = state.x;
  const auto& k = state.profile.k;
  std::vector<BreakpointEvent> candidates;

  if (p + 1 < n) {
    candidates.push_back(
        {BreakpointKind::kArrivalOvertakes, p, state.arrivals[p + 1] - x});
  }
  for (int s = 0; s < n; ++s) {
    const double departure = coeffs.theta[s] * x + coeffs.eta[s];
    // Relative speed of the departure against the arrival it may cross.
    auto relative = [&](int target) {
      return coeffs.theta[s] - (target == p ? 1.0 : 0.0);
    };
    if (k[s] + 1 < n) {
      const int target = k[s] + 1;
      const double speed = relative(target);
      if (speed > kSlopeThreshold) {
        candidates.push_back({BreakpointKind::kDepartureOvertakes, s,
                              (state.arrivals[target] - departure) / speed});
      }
    }
    if (k[s] > s) {
      const int target = k[s];
      const double speed = relative(target);
      if (speed < -kSlopeThreshold) {
        candidates.push_back({target == p
                                  ? BreakpointKind::kDepartureOvertaken
                                  : BreakpointKind::kDepartureFallsBehind,
                              s, (state.arrivals[target] - departure) / speed});
      }
    }
  }
  candidates.push_back({BreakpointKind::kTerminal, -1, upper - x});

  Breakpoint bp;
  bp.tau = kInf;
  for (auto& e : candidates) {
    e.t = std::max(e.t, 0.0);
    bp.tau = std::min(bp.tau, e.t);
  }
  for (const auto& e : candidates) {
    if (e.t <= bp.tau + kTimeTolerance) bp.events.push_back(e);
  }
  return bp;
}

void apply_event(SearchState& state, const BreakpointEvent& event) {
  auto& k = state.profile.k;
  switch (event.kind) {
    case BreakpointKind::kArrivalOvertakes: {
      const int p = state.slot();
      const int q = p + 1;
      // Snap onto the overtaken arrival so the slots stay sorted.
      state.x = std::max(state.x, state.arrivals[q]);
      std::swap(state.user_at[p], state.user_at[q]);
      state.slot_of[state.user_at[p]] = p;
      state.slot_of[state.user_at[q]] = q;
      state.arrivals[p] = state.arrivals[q];
      state.arrivals[q] = state.x;
      break;
    }
    case BreakpointKind::kDepartureOvertaken:
    case BreakpointKind::kDepartureFallsBehind:
      --k[event.slot];
      break;
    case BreakpointKind::kDepartureOvertakes:
      ++k[event.slot];
      break;
    case BreakpointKind::kTerminal:
      break;
  }
}

void refresh_h(SearchState& state) {
  state.profile.h = h_from_k(state.profile.k);
}

SegmentCost segment_cost(const Instance& instance, const SearchState& state,
                         const Coefficients& coeffs) {
  const int n = state.size();
  const int p = state.slot();
  const double gamma = instance.gamma();
  SegmentCost cost;
  double theta_sum = 0, eta_sum = 0, fixed_sum = 0;
  for (int s = 0; s < n; ++s) {
    const double theta = coeffs.theta[s];
    const double offset = coeffs.eta[s] - instance.d_star(state.user_at[s]);
    cost.quadratic += theta * theta;
    cost.linear += 2 * theta * offset;
    cost.constant += offset * offset;
    theta_sum += theta;
    eta_sum += coeffs.eta[s];
    if (s != p) fixed_sum += state.arrivals[s];
  }
  // Sojourns: sum of departures minus the fixed arrivals minus x.
  cost.linear += gamma * (theta_sum - 1.0);
  cost.constant += gamma * (eta_sum - fixed_sum);
  return cost;
}

std::optional<SegmentMinimum> segment_minimum(const SegmentCost& cost,
                                              double x, double tau) {
  if (cost.derivative(x) >= 0) return std::nullopt;
  const double end = x + tau;
  double at = end;
  if (cost.quadratic > 0) at = std::min(end, -cost.linear / (2 * cost.quadratic));
  return SegmentMinimum{at, cost(at)};
}

std::int64_t breakpoint_bound(int n) {
  const std::int64_t m = n;
  return (m * m * m - 3 * m * m + 8 * m - 6) / 3;
}

LineSearchResult line_search(const Instance& instance,
                             std::span<const double> arrivals, int user,
                             const LineSearchOptions& options) {
  const int n = instance.n();
  const auto box = bounds(instance);
  SearchState state = SearchState::start(instance, arrivals, user, box.lower);

  LineSearchResult result;
  result.a_star.assign(arrivals.begin(), arrivals.end());
  double best_x = arrivals[user];
  result.value = cost_of_arrivals(instance, arrivals);
  auto consider = [&](double x, double value) {
    if (improves(value, result.value)) {
      result.value = value;
      best_x = x;
    }
  };

  Coefficients coeffs = coefficients(instance, state);
  consider(state.x, segment_cost(instance, state, coeffs)(state.x));

  LineSearchTrace* trace = options.trace;
  std::vector<int> last_sign(n, 0);
  if (trace) {
    *trace = {};
    trace->initial_slot = state.slot_of;
    trace->sign_changes.assign(n, 0);
    for (int s = 0; s < n; ++s) last_sign[state.user_at[s]] = sign_of(coeffs.theta[s]);
  }

  const std::int64_t segment_cap = 10 * std::int64_t{n} * n * n + 10;
  int since_check = 0;
  bool checked_here = false;
  while (true) {
    if (result.segments > segment_cap) {
      throw std::logic_error("line search exceeded its segment cap");
    }
    const Breakpoint bp = next_breakpoint(state, coeffs, box.upper);
    const double tau = bp.tau;
    const bool terminal = bp.events.back().kind == BreakpointKind::kTerminal;
    const bool due = terminal || (options.validate_every > 0 &&
                                  since_check >= options.validate_every);
    if (due && !checked_here && tau > kValidationMinLength) {
      checked_here = true;
      since_check = 0;
      if (reconcile(instance, state, coeffs, state.x + tau / 2)) {
        if (trace) ++trace->resyncs;
        coeffs = coefficients(instance, state);
        continue;
      }
    }

    const SegmentCost cost = segment_cost(instance, state, coeffs);
    ++result.segments;
    if (tau > kTimeTolerance) {
      if (auto m = segment_minimum(cost, state.x, tau)) consider(m->x, m->value);
      if (trace) trace->segments.push_back({state.x, state.x + tau, cost});
    }
    if (terminal) break;

    state.x += tau;
    state.arrivals[state.slot()] = state.x;
    std::vector<double> before(n);
    for (int s = 0; s < n; ++s) before[s] = coeffs.theta[s] * state.x + coeffs.eta[s];
    for (const auto& event : bp.events) {
      apply_event(state, event);
      ++result.breakpoints;
      ++since_check;
      if (trace) trace->crossings.push_back({state.x, event.kind, event.slot});
    }
    checked_here = false;
    refresh_h(state);
    if (!state.profile.is_valid()) {
      state.profile = forward_dynamics(instance, state.arrivals).profile;
      if (trace) ++trace->resyncs;
    }
    coeffs = coefficients(instance, state);
    if (trace) {
      for (int s = 0; s < n; ++s) {
        const double after = coeffs.theta[s] * state.x + coeffs.eta[s];
        trace->max_continuity_gap =
            std::max(trace->max_continuity_gap, std::abs(after - before[s]));
        const int u = state.user_at[s];
        const int sign = sign_of(coeffs.theta[s]);
        if (sign != 0) {
          if (last_sign[u] != 0 && sign != last_sign[u]) ++trace->sign_changes[u];
          last_sign[u] = sign;
        }
      }
    }
  }
  result.a_star[user] = best_x;
  return result;
}

CpiResult cpi(const Instance& instance, std::span<const double> start,
              double epsilon) {
  if (!(epsilon > 0)) throw ContractViolation("epsilon must be positive");
  CpiResult result;
  result.a_star = order(start);
  result.value = cost_of_arrivals(instance, result.a_star);
  result.cycle_costs.push_back(result.value);
  double improvement = epsilon + 1;
  while (improvement > epsilon) {
    ++result.cycles;
    std::vector<double> current = result.a_star;
    for (int r = 0; r < instance.n(); ++r) {
      auto step = line_search(instance, current, r);
      result.breakpoints += step.breakpoints;
      current = std::move(step.a_star);
    }
    result.a_star = order(current);
    const double value = cost_of_arrivals(instance, result.a_star);
    improvement = result.value - value;
    result.value = value;
    result.cycle_costs.push_back(value);
  }
  return result;
}

}  // namespace pssched
