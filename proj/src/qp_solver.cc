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

#include "pssched/qp_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pssched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kViolationTolerance = 1e-11;

// Factorisation state of the dual method. J holds an orthogonal basis such
// that the first `size` columns span the active normals in the metric of H,
// and R is the matching upper triangular factor.
class ActiveSetFactor {
 public:
  ActiveSetFactor(const Eigen::MatrixXd& cholesky_inverse_t)
      : j_(cholesky_inverse_t),
        r_(Eigen::MatrixXd::Zero(j_.rows(), j_.rows())) {}

  int size() const { return size_; }
  const Eigen::MatrixXd& basis() const { return j_; }

  // Back substitution with the leading size x size block of R.
  Eigen::VectorXd solve_r(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd out = rhs.head(size_);
    r_.topLeftCorner(size_, size_)
        .triangularView<Eigen::Upper>()
        .solveInPlace(out);
    return out;
  }

  // Appends a constraint whose projected normal is d = J' n. Returns false
  // when the normal is numerically dependent on the active ones.
  bool add(Eigen::VectorXd d) {
    const int n = static_cast<int>(j_.rows());
    for (int col = n - 1; col > size_; --col) {
      double cc = d[col - 1];
      double ss = d[col];
      const double h = std::hypot(cc, ss);
      if (h == 0.0) continue;
      d[col] = 0.0;
      ss /= h;
      cc /= h;
      if (cc < 0) {
        cc = -cc;
        ss = -ss;
        d[col - 1] = -h;
      } else {
        d[col - 1] = h;
      }
      const double xny = ss / (1.0 + cc);
      for (int row = 0; row < n; ++row) {
        const double t1 = j_(row, col - 1);
        const double t2 = j_(row, col);
        j_(row, col - 1) = t1 * cc + t2 * ss;
        j_(row, col) = xny * (t1 + j_(row, col - 1)) - t2;
      }
    }
    const double pivot = std::abs(d[size_]);
    if (pivot <= std::numeric_limits<double>::epsilon() * r_norm_) {
      return false;
    }
    r_.col(size_).head(size_ + 1) = d.head(size_ + 1);
    ++size_;
    r_norm_ = std::max(r_norm_, pivot);
    return true;
  }

  // Removes the active constraint at position `pos` and restores the
  // triangular shape of R.
  void remove(int pos) {
    const int n = static_cast<int>(j_.rows());
    for (int col = pos; col < size_ - 1; ++col) r_.col(col) = r_.col(col + 1);
    r_.col(size_ - 1).setZero();
    --size_;
    for (int col = pos; col < size_; ++col) {
      double cc = r_(col, col);
      double ss = r_(col + 1, col);
      const double h = std::hypot(cc, ss);
      if (h == 0.0) continue;
      cc /= h;
      ss /= h;
      r_(col + 1, col) = 0.0;
      if (cc < 0) {
        r_(col, col) = -h;
        cc = -cc;
        ss = -ss;
      } else {
        r_(col, col) = h;
      }
      const double xny = ss / (1.0 + cc);
      for (int k = col + 1; k < size_; ++k) {
        const double t1 = r_(col, k);
        const double t2 = r_(col + 1, k);
        r_(col, k) = t1 * cc + t2 * ss;
        r_(col + 1, k) = xny * (t1 + r_(col, k)) - t2;
      }
      for (int row = 0; row < n; ++row) {
        const double t1 = j_(row, col);
        const double t2 = j_(row, col + 1);
        j_(row, col) = t1 * cc + t2 * ss;
        j_(row, col + 1) = xny * (j_(row, col) + t1) - t2;
      }
    }
  }

 private:
  Eigen::MatrixXd j_;
  Eigen::MatrixXd r_;
  int size_ = 0;
  double r_norm_ = 1.0;
};

Eigen::MatrixXd cholesky_inverse_transpose(const Eigen::MatrixXd& hessian) {
  const int n = static_cast<int>(hessian.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(hessian);
  if (llt.info() != Eigen::Success) {
    const double ridge = 1e-10 * std::max(1.0, hessian.diagonal().cwiseAbs().maxCoeff());
    llt.compute(hessian + ridge * Eigen::MatrixXd::Identity(n, n));
  }
  // J = L^{-T}
  Eigen::MatrixXd lower_inverse = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
  return lower_inverse.transpose();
}

}  // namespace

QpResult solve_dual_active_set(const QuadraticProgram& program) {
  const int n = static_cast<int>(program.hessian.rows());
  const int m = static_cast<int>(program.constraint.rows());
  const Eigen::MatrixXd& c = program.constraint;
  const Eigen::VectorXd& l = program.lower;

  const Eigen::MatrixXd j0 = cholesky_inverse_transpose(program.hessian);
  ActiveSetFactor factor(j0);

  QpResult result;
  // Unconstrained minimiser: x = -H^{-1} f = -J J' f.
  Eigen::VectorXd x = -(j0 * (j0.transpose() * program.linear));
  std::vector<int> active;
  std::vector<double> u;  // multipliers of `active`
  std::vector<char> in_active(m, 0), excluded(m, 0);

  const int iteration_cap = 50 * (m + n) + 100;
  auto rebuild = [&](const std::vector<int>& keep,
                     const std::vector<double>& keep_u) {
    factor = ActiveSetFactor(j0);
    active.clear();
    u.clear();
    std::fill(in_active.begin(), in_active.end(), 0);
    for (std::size_t q = 0; q < keep.size(); ++q) {
      const int p = keep[q];
      if (factor.add(factor.basis().transpose() * c.row(p).transpose())) {
        active.push_back(p);
        u.push_back(keep_u[q]);
        in_active[p] = 1;
      }
    }
  };

  while (true) {
    if (++result.iterations > iteration_cap) {
      result.status = QpStatus::kIterationLimit;
      break;
    }
    // Choose the most violated constraint.
    int p = -1;
    double worst = -kViolationTolerance;
    for (int i = 0; i < m; ++i) {
      if (in_active[i] || excluded[i]) continue;
      const double slack = c.row(i).dot(x) - l[i];
      const double scale = 1.0 + std::abs(l[i]);
      if (slack < worst * scale) {
        worst = slack / scale;
        p = i;
      }
    }
    if (p < 0) {
      result.status = QpStatus::kOptimal;
      break;
    }

    const Eigen::VectorXd normal = c.row(p).transpose();
    const std::vector<int> saved_active = active;
    const std::vector<double> saved_u = u;
    const Eigen::VectorXd saved_x = x;
    double pending = 0.0;  // multiplier of p
    double slack_p = normal.dot(x) - l[p];
    bool infeasible = false;

    while (true) {
      const Eigen::MatrixXd& j = factor.basis();
      const Eigen::VectorXd d = j.transpose() * normal;
      const int q = factor.size();
      const Eigen::VectorXd z = j.rightCols(n - q) * d.tail(n - q);
      const Eigen::VectorXd r = factor.solve_r(d);

      double t1 = kInf;
      int drop = -1;
      for (int k = 0; k < q; ++k) {
        if (r[k] > 0 && u[k] / r[k] < t1) {
          t1 = u[k] / r[k];
          drop = k;
        }
      }
      const double zn = z.dot(normal);
      const double t2 = z.squaredNorm() > 1e-30 && zn > 0 ? -slack_p / zn : kInf;
      const double t = std::min(t1, t2);
      if (t == kInf) {
        infeasible = true;
        break;
      }
      for (int k = 0; k < q; ++k) u[k] -= t * r[k];
      pending += t;
      if (t2 == kInf) {
        // Dual step only.
        in_active[active[drop]] = 0;
        active.erase(active.begin() + drop);
        u.erase(u.begin() + drop);
        factor.remove(drop);
        continue;
      }
      x += t * z;
      if (t == t2) {
        if (factor.add(d)) {
          active.push_back(p);
          u.push_back(pending);
          in_active[p] = 1;
        } else {
          excluded[p] = 1;
          x = saved_x;
          rebuild(saved_active, saved_u);
        }
        break;
      }
      in_active[active[drop]] = 0;
      active.erase(active.begin() + drop);
      u.erase(u.begin() + drop);
      factor.remove(drop);
      slack_p = normal.dot(x) - l[p];
    }
    if (infeasible) {
      result.status = QpStatus::kInfeasible;
      break;
    }
  }

  result.x = x;
  result.objective = 0.5 * x.dot(program.hessian * x) + program.linear.dot(x);
  result.active = active;
  result.multipliers = u;
  if (result.status == QpStatus::kOptimal && m > 0) {
    const double violation = (l - c * x).maxCoeff();
    if (violation > kInfeasibilityThreshold) result.status = QpStatus::kInfeasible;
  }
  return result;
}

}  // namespace pssched
