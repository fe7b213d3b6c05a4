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

#include <Eigen/Dense>

#include "pssched/dynamics.h"
#include "pssched/polytope.h"
#include "near.h"
#include "support.h"

namespace pssched {
namespace {

using testing::near;

using testing::max_abs_diff;

const Instance kExample(1.0 / 6, 0.5, 0.0, {2.5, 3.75, 5.25});

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

TEST_CASE("affine map small cases") {
  const Instance single(0, 0.5, 0, {5});
  const auto m1 = affine_map(single, OrderProfile::isolated(1));
  CHECK(m1.theta(0, 0) == 1.0);
  CHECK(m1.eta(0) == 2.0);

  const auto profile = OrderProfile::from_one_based({2, 3, 3}, {1, 1, 2});
  const auto m = affine_map(kExample, profile);
  CHECK(max_abs_diff(to_vector(m.eta), std::vector<double>{3, 4.5, 3.5}) <= 1e-12);
  const Eigen::Vector3d d = m.theta * Eigen::Vector3d(0, 1, 3) + m.eta;
  CHECK(max_abs_diff(to_vector(d), std::vector<double>{2.5, 3.75, 5.25}) <= 1e-12);

  const Instance four(0.1, 1.25, 0, {0, 1, 2, 3});
  const auto iso = affine_map(four, OrderProfile::isolated(4));
  CHECK((iso.theta - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((iso.eta.array() - 0.8).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("quadratic form small cases") {
  const Instance single(0, 0.5, 0, {5});
  const auto f = quadratic_form(single, affine_map(single, OrderProfile::isolated(1)));
  CHECK(f.q(0, 0) == 1.0);
  CHECK(f.b(0) == -6.0);
  CHECK(f.c0 == 9.0);
  CHECK(f.evaluate(std::vector<double>{3}) == 0.0);

  const Instance four(0.1, 1.25, 2.0, {0, 1, 2, 3});
  const Instance four_zero = four.with_gamma(0);
  const auto map = affine_map(four, OrderProfile::isolated(4));
  const auto with = quadratic_form(four, map);
  const auto without = quadratic_form(four_zero, map);
  CHECK((with.b - without.b).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(with.c0 - without.c0 == near(2.0 * 4 * 0.8));
}

TEST_CASE("membership small cases") {
  const std::vector<double> a{0, 1, 3};
  CHECK(membership(kExample, OrderProfile::from_one_based({2, 3, 3}, {1, 1, 2}), a));
  CHECK_FALSE(membership(kExample, OrderProfile::isolated(3), a));
  const Instance single(0, 1, 0, {0});
  CHECK(membership(single, OrderProfile::isolated(1), std::vector<double>{-3}));
}

TEST_CASE("solve_qp small cases") {
  const Instance single(0, 0.5, 0, {5});
  auto s = solve_qp(single, OrderProfile::isolated(1));
  REQUIRE(s.feasible);
  CHECK(s.a_star[0] == near(3));
  CHECK(std::abs(s.value) <= 1e-12);
  CHECK(s.active_upper.empty());
  CHECK(s.active_lower.empty());

  s = solve_qp(single.with_gamma(1), OrderProfile::isolated(1));
  CHECK(s.a_star[0] == near(3));
  CHECK(s.value == near(2));

  const Instance pair(0, 1, 0, {0, 0});
  s = solve_qp(pair, OrderProfile::isolated(2));
  REQUIRE(s.feasible);
  CHECK(max_abs_diff(s.a_star, std::vector<double>{-1.5, -0.5}) <= 1e-9);
  CHECK(s.value == near(0.5));
  CHECK(s.active_upper == std::vector<int>{0});
}

TEST_CASE("random points: objective and affine consistency, PSD") {
  testing::Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = testing::random_instance(rng, 12);
    const auto a = testing::random_arrivals(rng, inst, testing::uniform(rng, 0.2, 1.5));
    const auto fwd = forward_dynamics(inst, a);
    const auto map = affine_map(inst, fwd.profile);
    const auto form = quadratic_form(inst, map);
    const Eigen::Map<const Eigen::VectorXd> av(a.data(), inst.n());
    const Eigen::VectorXd d = map.theta * av + map.eta;
    CHECK(max_abs_diff(to_vector(d), fwd.times) <= 1e-8);
    const double cost = total_cost(inst, a, fwd.times);
    CHECK(form.evaluate(a) == near(cost).epsilon(1e-10).scale(1));
    CHECK(membership(inst, fwd.profile, a));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(form.q);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    CHECK((form.q - form.q.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("constraint rows agree with membership") {
  testing::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = testing::random_instance(rng, 8);
    const auto a = testing::random_arrivals(rng, inst);
    const auto fwd = forward_dynamics(inst, a);
    std::vector<int> k = fwd.profile.k;
    // Some random profile, often not the one a belongs to.
    for (int i = inst.n() - 2; i >= 0; --i) {
      k[i] = testing::uniform_int(rng, i, k[i + 1]);
    }
    const auto profile = OrderProfile::from_k(k);
    const auto c = polytope_constraints(inst, profile, affine_map(inst, profile));
    const Eigen::Map<const Eigen::VectorXd> av(a.data(), inst.n());
    const Eigen::VectorXd slack = c.matrix * av - c.lower;
    bool interval_rows_hold = true;
    for (int r = 0; r < slack.size(); ++r) {
      if (c.tags[r].kind != ConstraintTag::Kind::kOrdering && slack(r) < -1e-9)
        interval_rows_hold = false;
    }
    CHECK(interval_rows_hold == membership(inst, profile, a));
  }
}

TEST_CASE("QP optimality under feasible perturbations and KKT") {
  testing::Rng rng(43);
  int solved = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = testing::random_instance(rng, 7);
    const int n = inst.n();
    std::vector<int> k(n);
    k[n - 1] = n - 1;
    for (int i = n - 2; i >= 0; --i) k[i] = testing::uniform_int(rng, i, k[i + 1]);
    const auto profile = OrderProfile::from_k(k);
    const auto sol = solve_qp(inst, profile);
    if (!sol.feasible) continue;
    ++solved;
    const auto map = affine_map(inst, profile);
    const auto form = quadratic_form(inst, map);
    const auto c = polytope_constraints(inst, profile, map);
    const Eigen::Map<const Eigen::VectorXd> x(sol.a_star.data(), n);
    CHECK((c.matrix * x - c.lower).minCoeff() >= -1e-8);
    CHECK(form.evaluate(sol.a_star) == near(sol.value).epsilon(1e-12));
    for (int probe = 0; probe < 50; ++probe) {
      Eigen::VectorXd dir(n);
      for (int i = 0; i < n; ++i) dir(i) = testing::uniform(rng, -1, 1);
      dir *= 1e-4 / dir.norm();
      const Eigen::VectorXd y = x + dir;
      if ((c.matrix * y - c.lower).minCoeff() < 0) continue;
      const std::vector<double> yv = to_vector(y);
      CHECK(form.evaluate(yv) >= sol.value - 1e-10);
    }
    // The gradient lies in the span of the near-active rows.
    const Eigen::VectorXd grad = 2 * form.q * x + form.b;
    std::vector<int> rows;
    const Eigen::VectorXd slack = c.matrix * x - c.lower;
    for (int r = 0; r < slack.size(); ++r)
      if (slack(r) <= 1e-7) rows.push_back(r);
    Eigen::MatrixXd act(n, static_cast<int>(rows.size()));
    for (std::size_t e = 0; e < rows.size(); ++e) act.col(e) = c.matrix.row(rows[e]).transpose();
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(static_cast<int>(rows.size()));
    if (!rows.empty()) lambda = act.completeOrthogonalDecomposition().solve(grad);
    const Eigen::VectorXd residual = grad - act * lambda;
    CHECK(residual.cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, grad.cwiseAbs().maxCoeff()));
  }
  CHECK(solved > 50);
}

}  // namespace
}  // namespace pssched
