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

#include "pssched/bench.h"

#include <chrono>
#include <cmath>
#include <numbers>

#include "pssched/dynamics.h"
#include "pssched/exhaustive.h"

namespace pssched {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ContractViolation("quantile needs 0 < p < 1");
  // Rational approximation (Acklam), relative error about 1e-9, followed by
  // one Halley step against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

ExperimentSpec ExperimentSpec::scaling_family() {
  ExperimentSpec spec;
  spec.sigma = 0.04;
  spec.sigma_per_user = true;
  spec.starts = 1;
  return spec;
}

ExperimentSpec ExperimentSpec::diagram_family() {
  ExperimentSpec spec;
  spec.sigma = 0.5;
  spec.starts = 3;
  return spec;
}

Instance generate_instance(const ExperimentSpec& spec, int n, double gamma) {
  if (n < 1) throw ContractViolation("need at least one user");
  const double sigma = spec.sigma_per_user ? spec.sigma * n : spec.sigma;
  std::vector<double> d_star(n);
  // Positions are symmetric about 1/2; the upper half mirrors the lower
  // half so the quantiles come out exactly antisymmetric.
  auto standard = [&](int i) {
    const int mirror = n + 1 - i;  // 1-based
    if (i == mirror) return 0.0;
    const bool upper = i > mirror;
    const int j = upper ? mirror : i;
    const double p = spec.rule == QuantileRule::kUniform
                         ? static_cast<double>(j) / (n + 1)
                         : (j - 0.5) / n;
    const double z = normal_quantile(p);
    return upper ? -z : z;
  };
  for (int i = 1; i <= n; ++i) {
    d_star[i - 1] = spec.location + sigma * standard(i);
  }
  return Instance(spec.alpha_scale / n, spec.beta, gamma, std::move(d_star));
}

std::optional<bool> ExperimentRow::matches_exhaustive() const {
  if (!exhaustive_value) return std::nullopt;
  return std::abs(value - *exhaustive_value) <=
         1e-6 * std::max(1.0, std::abs(*exhaustive_value));
}

std::vector<ExperimentRow> run_experiment(
    const ExperimentSpec& spec,
    const std::function<void(const ExperimentRow&)>& on_row) {
  using Clock = std::chrono::steady_clock;
  auto seconds_since = [](Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  std::vector<ExperimentRow> rows;
  for (int n : spec.sizes) {
    for (double gamma : spec.gammas) {
      const Instance instance = generate_instance(spec, n, gamma);
      ExperimentRow row;
      row.n = n;
      row.gamma = gamma;
      row.beta = instance.beta();
      row.d_star = instance.d_star();

      const auto t0 = Clock::now();
      const auto heuristic =
          combined_search(instance, spec.starts, spec.epsilon, spec.threads);
      row.seconds = seconds_since(t0);
      const auto& best = heuristic.starts[heuristic.best_start];
      row.value = heuristic.value;
      row.cpi_cycles = best.cpi_cycles;
      row.breakpoints = best.breakpoints;
      row.neighbour_qps = best.neighbour_qps;
      row.arrivals = heuristic.a_star;
      row.departures = forward_dynamics(instance, row.arrivals).times;

      if (spec.exhaustive && n <= spec.exhaustive_limit) {
        const auto t1 = Clock::now();
        const auto exact = exhaustive_search(instance, spec.threads);
        row.exhaustive_seconds = seconds_since(t1);
        row.exhaustive_value = exact.value;
        row.profiles = exact.profiles;
      }
      if (on_row) on_row(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace pssched
