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

// The cost restricted to one order profile: an affine departure map, a
// convex quadratic objective and the convex program over the profile's
// polytope.

#ifndef PSSCHED_POLYTOPE_H_
#define PSSCHED_POLYTOPE_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pssched/model.h"

namespace pssched {

// d = theta * a + eta on the polytope of a fixed profile.
struct AffineMap {
  Eigen::MatrixXd theta;
  Eigen::VectorXd eta;
};

// cost(a) = a'Qa + b'a + c0 on the polytope.
struct QuadraticForm {
  Eigen::MatrixXd q;
  Eigen::VectorXd b;
  double c0 = 0;

  double evaluate(std::span<const double> arrivals) const;
};

AffineMap affine_map(const Instance& instance, const OrderProfile& profile);
QuadraticForm quadratic_form(const Instance& instance, const AffineMap& map);

// Slack threshold below which an interval constraint counts as active.
inline constexpr double kActivityThreshold = 1e-7;

// True iff a_{k_i} <= d_i <= a_{k_i + 1} for every user, with d from the
// profile's affine map. Tolerance kTimeTolerance.
bool membership(const Instance& instance, const OrderProfile& profile,
                std::span<const double> arrivals);

// What a row of the constraint matrix encodes.
struct ConstraintTag {
  enum class Kind { kOrdering, kLower, kUpper } kind;
  int user;  // for kLower/kUpper
};

// Linear constraints C a >= l describing the polytope intersected with the
// ordered search box.
struct PolytopeConstraints {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd lower;
  std::vector<ConstraintTag> tags;
};
PolytopeConstraints polytope_constraints(const Instance& instance,
                                         const OrderProfile& profile,
                                         const AffineMap& map);

struct QPSolution {
  bool feasible = false;
  std::vector<double> a_star;
  double value = 0;
  // Users with d_i on a_{k_i + 1} (upper) or on a_{k_i} (lower).
  std::vector<int> active_upper;
  std::vector<int> active_lower;
};

// Minimises the cost over the polytope of `profile` within the ordered
// search box. Empty polytopes yield feasible == false.
QPSolution solve_qp(const Instance& instance, const OrderProfile& profile);

}  // namespace pssched

#endif  // PSSCHED_POLYTOPE_H_
