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

// Exact minimisation of the cost along one arrival coordinate, sweeping the
// coordinate across the search box and tracking every change of the order
// profile, plus the cyclic driver over all coordinates.
//
// During a sweep the arrivals are kept in slots sorted by time. Slot
// quantities (arrivals, departures, k, h) follow the ordered system; users
// keep their own ideal departure through user_at / slot_of.

#ifndef PSSCHED_COORDINATE_SEARCH_H_
#define PSSCHED_COORDINATE_SEARCH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pssched/model.h"

namespace pssched {

struct SearchState {
  int user = 0;  // the coordinate being swept
  double x = 0;  // its current arrival
  std::vector<int> user_at;      // slot -> user
  std::vector<int> slot_of;      // user -> slot
  std::vector<double> arrivals;  // by slot; arrivals[slot()] == x
  OrderProfile profile;          // by slot

  int slot() const { return slot_of[user]; }
  int size() const { return static_cast<int>(user_at.size()); }

  // Places `user` at `x` ahead of any other arrival at the same time and
  // derives the profile with the forward dynamics.
  static SearchState start(const Instance& instance,
                           std::span<const double> arrivals, int user,
                           double x);
};

// Departures by slot as affine functions of x: d_s = theta_s * x + eta_s.
struct Coefficients {
  std::vector<double> theta;
  std::vector<double> eta;
};
Coefficients coefficients(const Instance& instance, const SearchState& state);

// Slopes below this magnitude are treated as zero.
inline constexpr double kSlopeThreshold = 1e-12;

enum class BreakpointKind {
  kArrivalOvertakes,       // the swept arrival passes the next arrival
  kDepartureOvertaken,     // the swept arrival passes a departure
  kDepartureOvertakes,     // a departure passes a later arrival
  kDepartureFallsBehind,   // a fixed arrival passes a departure
  kTerminal,               // end of the search box
};
inline constexpr int kBreakpointKinds = 5;

struct BreakpointEvent {
  BreakpointKind kind;
  int slot;  // slot whose departure is involved; the swept slot for 1a
  double t;  // time to the event
};

struct Breakpoint {
  double tau = 0;
  // Events tied with the earliest one, in processing order: the swept
  // arrival first, then by slot, then termination.
  std::vector<BreakpointEvent> events;
};

Breakpoint next_breakpoint(const SearchState& state, const Coefficients& coeffs,
                           double upper);

// Applies one event's update to the slots and to k; h is refreshed by
// refresh_h once every event of a breakpoint is applied.
void apply_event(SearchState& state, const BreakpointEvent& event);
void refresh_h(SearchState& state);

// Cost along the segment as quadratic * x^2 + linear * x + constant.
struct SegmentCost {
  double quadratic = 0;
  double linear = 0;
  double constant = 0;

  double operator()(double x) const {
    return (quadratic * x + linear) * x + constant;
  }
  double derivative(double x) const { return 2 * quadratic * x + linear; }
};
SegmentCost segment_cost(const Instance& instance, const SearchState& state,
                         const Coefficients& coeffs);

struct SegmentMinimum {
  double x;
  double value;
};
// Minimiser of the segment cost on [x, x + tau], or nullopt when the cost
// is nondecreasing there.
std::optional<SegmentMinimum> segment_minimum(const SegmentCost& cost,
                                              double x, double tau);

// Largest number of breakpoints one sweep can meet for n users:
// n^3/3 - n^2 + 8n/3 - 2.
std::int64_t breakpoint_bound(int n);

struct LineSearchTrace {
  struct Crossing {
    double x;
    BreakpointKind kind;
    int slot;
  };
  struct Segment {
    double begin;
    double end;
    SegmentCost cost;
  };
  std::vector<Crossing> crossings;
  std::vector<Segment> segments;
  // Largest jump of any departure across a breakpoint.
  double max_continuity_gap = 0;
  // Per user: slot at the start of the sweep and strict sign changes of
  // the departure slope.
  std::vector<int> initial_slot;
  std::vector<int> sign_changes;
  // Times the profile was re-derived from the forward dynamics.
  int resyncs = 0;
};

struct LineSearchOptions {
  // Check the tracked departures against the forward dynamics after this
  // many breakpoints; 1 checks every segment, 0 only at the end.
  int validate_every = 50;
  LineSearchTrace* trace = nullptr;
};

struct LineSearchResult {
  std::vector<double> a_star;  // unordered; differs from the input at user
  double value = 0;
  int breakpoints = 0;
  int segments = 0;
};

// Global minimum of the cost over coordinate `user` in the search box with
// the other arrivals fixed. The input point itself is the starting
// incumbent. Throws std::logic_error if the tracked profile diverges from
// the forward dynamics.
LineSearchResult line_search(const Instance& instance,
                             std::span<const double> arrivals, int user,
                             const LineSearchOptions& options = {});

inline constexpr double kDefaultEpsilon = 1e-3;

struct CpiResult {
  std::vector<double> a_star;  // sorted
  double value = 0;
  int cycles = 0;
  std::int64_t breakpoints = 0;
  // Cost before the first cycle followed by the cost after each cycle.
  std::vector<double> cycle_costs;
};

// Cycles of line searches over every user, each cycle closed by sorting,
// until a cycle improves the cost by at most epsilon.
CpiResult cpi(const Instance& instance, std::span<const double> start,
              double epsilon = kDefaultEpsilon);

}  // namespace pssched

#endif  // PSSCHED_COORDINATE_SEARCH_H_
