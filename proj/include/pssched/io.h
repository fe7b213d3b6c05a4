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

// Instance and experiment documents (JSON) and CSV tables.

#ifndef PSSCHED_IO_H_
#define PSSCHED_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pssched/bench.h"
#include "pssched/model.h"

namespace pssched {

// Malformed document: syntax error, missing or mistyped field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Either {n, alpha, beta, gamma, d_star} or a generator block
// {family: "normal-quantile", n, sigma, gamma[, beta, alpha, location]},
// at the top level or under "generator". Structural problems raise
// InputError, broken instance invariants ContractViolation.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

// {n: [...], gamma: [...]} plus optional beta, alpha_scale, sigma,
// sigma_per_user, location, quantile ("uniform" | "midpoint"), M, epsilon,
// exhaustive, exhaustive_limit.
ExperimentSpec parse_experiment(std::string_view text);
ExperimentSpec load_experiment(const std::filesystem::path& path);

// Numbers separated by commas and/or whitespace.
std::vector<double> parse_number_list(std::string_view text);

// 12 significant digits, '.' decimal point.
std::string format_number(double value);

// user, arrival, departure, ideal_departure, sojourn, deviation_cost.
// Users are numbered from 1.
void write_schedule_csv(std::ostream& out, const Instance& instance,
                        std::span<const double> arrivals,
                        std::span<const double> departures);

struct ScheduleTable {
  std::vector<double> arrivals;
  std::vector<double> departures;
};
ScheduleTable read_schedule_csv(std::istream& in);

// user, arrival, free_flow_departure, departure, ideal_departure.
void write_diagram_csv(std::ostream& out, const ExperimentRow& row);

void write_summary_csv(std::ostream& out, std::span<const ExperimentRow> rows);

}  // namespace pssched

#endif  // PSSCHED_IO_H_
