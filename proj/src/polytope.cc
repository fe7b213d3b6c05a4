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

#include "pssched/polytope.h"

#include "pssched/dynamics.h"
#include "pssched/qp_solver.h"

namespace pssched {

double QuadraticForm::evaluate(std::span<const double> arrivals) const {
  const Eigen::Map<const Eigen::VectorXd> a(arrivals.data(),
                                            static_cast<Eigen::Index>(arrivals.size()));
  return a.dot(q * a) + b.dot(a) + c0;
}

AffineMap affine_map(const Instance& instance, const OrderProfile& profile) {
  const auto m = build_matrices(instance, profile);
  const int n = instance.n();
  // D has nonzeros only on the diagonal and to its left.
  const auto d = m.departure.triangularView<Eigen::Lower>();
  return {d.solve(m.arrival), d.solve(Eigen::VectorXd::Ones(n))};
}

QuadraticForm quadratic_form(const Instance& instance, const AffineMap& map) {
  const int n = instance.n();
  const Eigen::Map<const Eigen::VectorXd> d_star(instance.d_star().data(), n);
  const Eigen::VectorXd offset = map.eta - d_star;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double gamma = instance.gamma();
  QuadraticForm form;
  form.q = map.theta.transpose() * map.theta;
  form.b = 2.0 * map.theta.transpose() * offset +
           gamma * (map.theta.transpose() * ones - ones);
  form.c0 = offset.squaredNorm() + gamma * map.eta.sum();
  return form;
}

bool membership(const Instance& instance, const OrderProfile& profile,
                std::span<const double> arrivals) {
  const int n = instance.n();
  const auto map = affine_map(instance, profile);
  const Eigen::Map<const Eigen::VectorXd> a(arrivals.data(), n);
  const Eigen::VectorXd d = map.theta * a + map.eta;
  for (int i = 0; i < n; ++i) {
    const int ki = profile.k[i];
    if (d[i] < a[ki] - kTimeTolerance) return false;
    if (ki + 1 < n && d[i] > a[ki + 1] + kTimeTolerance) return false;
  }
  return true;
}

PolytopeConstraints polytope_constraints(const Instance& instance,
                                         const OrderProfile& profile,
                                         const AffineMap& map) {
  const int n = instance.n();
  const auto box = bounds(instance);
  int rows = n + 1 + n;
  for (int i = 0; i < n; ++i) rows += profile.k[i] + 1 < n ? 1 : 0;

  PolytopeConstraints out{Eigen::MatrixXd::Zero(rows, n),
                          Eigen::VectorXd::Zero(rows), {}};
  out.tags.reserve(rows);
  int row = 0;
  auto ordering = [&] { out.tags.push_back({ConstraintTag::Kind::kOrdering, -1}); };

  out.matrix(row, 0) = 1.0;
  out.lower[row++] = box.lower;
  ordering();
  for (int i = 0; i + 1 < n; ++i) {
    out.matrix(row, i + 1) = 1.0;
    out.matrix(row, i) = -1.0;
    ++row;
    ordering();
  }
  out.matrix(row, n - 1) = -1.0;
  out.lower[row++] = -box.upper;
  ordering();

  for (int i = 0; i < n; ++i) {
    const int ki = profile.k[i];
    // d_i - a_{k_i} >= 0
    out.matrix.row(row) = map.theta.row(i);
    out.matrix(row, ki) -= 1.0;
    out.lower[row++] = -map.eta[i];
    out.tags.push_back({ConstraintTag::Kind::kLower, i});
    if (ki + 1 < n) {
      // a_{k_i + 1} - d_i >= 0
      out.matrix.row(row) = -map.theta.row(i);
      out.matrix(row, ki + 1) += 1.0;
      out.lower[row++] = map.eta[i];
      out.tags.push_back({ConstraintTag::Kind::kUpper, i});
    }
  }
  return out;
}

QPSolution solve_qp(const Instance& instance, const OrderProfile& profile) {
  const auto map = affine_map(instance, profile);
  const auto form = quadratic_form(instance, map);
  auto constraints = polytope_constraints(instance, profile, map);

  const QpResult qp = solve_dual_active_set(
      {2.0 * form.q, form.b, constraints.matrix, constraints.lower});
  QPSolution out;
  if (qp.status != QpStatus::kOptimal) return out;

  out.feasible = true;
  out.a_star.assign(qp.x.data(), qp.x.data() + qp.x.size());
  out.value = form.evaluate(out.a_star);
  const Eigen::VectorXd slack = constraints.matrix * qp.x - constraints.lower;
  for (int row = 0; row < slack.size(); ++row) {
    if (slack[row] > kActivityThreshold) continue;
    const auto& tag = constraints.tags[row];
    if (tag.kind == ConstraintTag::Kind::kUpper) out.active_upper.push_back(tag.user);
    if (tag.kind == ConstraintTag::Kind::kLower) out.active_lower.push_back(tag.user);
  }
  return out;
}

}  // namespace pssched
