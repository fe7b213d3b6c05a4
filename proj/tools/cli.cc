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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pssched/bench.h"
#include "pssched/coordinate_search.h"
#include "pssched/dynamics.h"
#include "pssched/exhaustive.h"
#include "pssched/heuristic.h"
#include "pssched/io.h"
#include "pssched/neighbour_search.h"

namespace pssched {
namespace {

// Raised for a refused exhaustive search.
struct GuardRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path.string());
  return file;
}

struct DynamicsOptions {
  std::string instance;
  std::string arrivals;
  std::string departures;
  std::string out;
};

void write_dynamics_table(std::ostream& out, char sep,
                          std::span<const double> arrivals,
                          const DynamicsResult& result,
                          std::span<const double> departures) {
  out << "user" << sep << "arrival" << sep << "departure" << sep << 'k' << sep
      << "h\n";
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    out << i + 1 << sep << format_number(arrivals[i]) << sep
        << format_number(departures[i]) << sep << result.profile.k[i] + 1 << sep
        << result.profile.h[i] + 1 << '\n';
  }
}

void cmd_dynamics(const DynamicsOptions& opt, std::ostream& out) {
  const Instance instance = load_instance(opt.instance);
  const bool inverse = !opt.departures.empty();
  const auto given = parse_number_list(inverse ? opt.departures : opt.arrivals);
  if (static_cast<int>(given.size()) != instance.n()) {
    throw InputError("expected " + std::to_string(instance.n()) + " times, got " +
                     std::to_string(given.size()));
  }
  const DynamicsResult result =
      inverse ? inverse_dynamics(instance, given) : forward_dynamics(instance, given);
  const auto& arrivals = inverse ? result.times : given;
  const auto& departures = inverse ? given : result.times;
  write_dynamics_table(out, ' ', arrivals, result, departures);
  if (!opt.out.empty()) {
    auto file = open_output(opt.out);
    write_dynamics_table(file, ',', arrivals, result, departures);
  }
}

struct SolveOptions {
  std::string instance;
  std::string method = "combined";
  int starts = kDefaultStarts;
  double epsilon = kDefaultEpsilon;
  int threads = 0;
  bool force = false;
  std::string out;
};

void cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(opt.instance);
  std::vector<double> arrivals;
  std::vector<std::string> notes;
  double method_value = 0;
  auto note = [&](const std::string& key, const std::string& value) {
    notes.push_back(key + ": " + value);
  };

  if (opt.method == "combined") {
    const auto r = combined_search(instance, opt.starts, opt.epsilon, opt.threads);
    arrivals = r.a_star;
    method_value = r.value;
    note("best_start", std::to_string(r.best_start));
    for (std::size_t m = 0; m < r.starts.size(); ++m) {
      const auto& s = r.starts[m];
      note("start " + std::to_string(m),
           "cpi_value=" + format_number(s.cpi_value) +
               " cpi_cycles=" + std::to_string(s.cpi_cycles) +
               " breakpoints=" + std::to_string(s.breakpoints) +
               " ns_value=" + (s.neighbour_ran ? format_number(s.neighbour_value) : "-") +
               " ns_qps=" + std::to_string(s.neighbour_qps));
    }
  } else if (opt.method == "cpi") {
    const auto points = initial_points(instance, opt.starts);
    for (std::size_t m = 0; m < points.size(); ++m) {
      const auto r = cpi(instance, points[m], opt.epsilon);
      note("start " + std::to_string(m),
           "value=" + format_number(r.value) + " cycles=" + std::to_string(r.cycles) +
               " breakpoints=" + std::to_string(r.breakpoints));
      if (m == 0 || r.value < method_value) {
        method_value = r.value;
        arrivals = r.a_star;
      }
    }
  } else if (opt.method == "neighbour") {
    const auto start = forward_dynamics(instance, solve_gamma_zero(instance)).profile;
    const auto r = neighbour_search(instance, start);
    arrivals = r.a_star;
    method_value = r.value;
    note("qp_solves", std::to_string(r.qp_solves));
    note("accepted", std::to_string(r.accepted_values.size()));
  } else if (opt.method == "exhaustive") {
    if (instance.n() > kExhaustiveGuard) {
      if (!opt.force) {
        throw GuardRefusal("exhaustive search above n=" + std::to_string(kExhaustiveGuard) +
                           " needs --force");
      }
      err << "warning: exhaustive search over " << catalan(instance.n())
          << " profiles\n";
    }
    const auto r = exhaustive_search(instance, opt.threads);
    arrivals = r.a_star;
    method_value = r.value;
    note("profiles", std::to_string(r.profiles));
    note("feasible_profiles", std::to_string(r.feasible_profiles));
  } else if (opt.method == "gamma0") {
    arrivals = solve_gamma_zero(instance);
    method_value = cost_of_arrivals(instance, arrivals);
  } else if (opt.method == "gammainf") {
    arrivals = solve_gamma_inf(instance);
    method_value = cost_of_arrivals(instance, arrivals);
  } else {
    throw InputError("unknown method '" + opt.method + "'");
  }

  arrivals = order(arrivals);
  const auto departures = forward_dynamics(instance, arrivals).times;
  out << "method: " << opt.method << '\n';
  out << "value: " << format_number(total_cost(instance, arrivals, departures)) << '\n';
  out << "method_value: " << format_number(method_value) << '\n';
  for (const auto& line : notes) out << line << '\n';
  if (opt.out.empty()) {
    out << '\n';
    write_schedule_csv(out, instance, arrivals, departures);
  } else {
    auto file = open_output(opt.out);
    write_schedule_csv(file, instance, arrivals, departures);
  }
}

struct BenchOptions {
  std::string spec;
  std::string out = ".";
  int threads = 0;
};

void cmd_bench(const BenchOptions& opt, std::ostream& out) {
  ExperimentSpec spec = load_experiment(opt.spec);
  spec.threads = opt.threads;
  const std::filesystem::path dir(opt.out);
  std::filesystem::create_directories(dir);
  auto cell_name = [](const char* kind, const ExperimentRow& row) {
    return std::string(kind) + "_n" + std::to_string(row.n) + "_gamma" +
           format_number(row.gamma) + ".csv";
  };
  const auto rows = run_experiment(spec, [&](const ExperimentRow& row) {
    const Instance instance = generate_instance(spec, row.n, row.gamma);
    auto schedule = open_output(dir / cell_name("schedule", row));
    write_schedule_csv(schedule, instance, row.arrivals, row.departures);
    auto diagram = open_output(dir / cell_name("diagram", row));
    write_diagram_csv(diagram, row);
  });
  auto summary = open_output(dir / "summary.csv");
  write_summary_csv(summary, rows);
  write_summary_csv(out, rows);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Processor-sharing arrival scheduling"};
  app.require_subcommand(1);

  DynamicsOptions dyn;
  auto* dynamics = app.add_subcommand("dynamics", "Departures from arrivals or the reverse");
  dynamics->add_option("instance", dyn.instance, "Instance document")->required();
  auto* arr = dynamics->add_option("--arrivals", dyn.arrivals, "Sorted arrival times");
  auto* dep = dynamics->add_option("--departures", dyn.departures, "Sorted departure times");
  arr->excludes(dep);
  dep->excludes(arr);
  dynamics->add_option("--out", dyn.out, "CSV output path");

  SolveOptions sol;
  auto* solve = app.add_subcommand("solve", "Optimise an instance");
  solve->add_option("instance", sol.instance, "Instance document")->required();
  solve->add_option("--method", sol.method, "Solver")
      ->check(CLI::IsMember(
          {"combined", "cpi", "neighbour", "exhaustive", "gamma0", "gammainf"}));
  solve->add_option("--M", sol.starts, "Number of initial points")
      ->check(CLI::PositiveNumber);
  solve->add_option("--epsilon", sol.epsilon, "CPI stopping threshold")
      ->check(CLI::PositiveNumber);
  solve->add_option("--threads", sol.threads, "Worker threads (0: all cores)");
  solve->add_flag("--force", sol.force, "Allow exhaustive search on large instances");
  solve->add_option("--out", sol.out, "Schedule CSV output path");

  BenchOptions ben;
  auto* bench = app.add_subcommand("bench", "Run an experiment grid");
  bench->add_option("spec", ben.spec, "Experiment document")->required();
  bench->add_option("--out", ben.out, "Output directory");
  bench->add_option("--threads", ben.threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitMalformed;
  }

  try {
    if (*dynamics) {
      if (dyn.arrivals.empty() && dyn.departures.empty()) {
        throw InputError("give --arrivals or --departures");
      }
      cmd_dynamics(dyn, out);
    } else if (*solve) {
      cmd_solve(sol, out, err);
    } else if (*bench) {
      cmd_bench(ben, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const GuardRefusal& e) {
    err << "error: " << e.what() << '\n';
    return kExitGuard;
  }
  return 0;
}

}  // namespace pssched
