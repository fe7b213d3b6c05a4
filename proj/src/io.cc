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

#include "pssched/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pssched {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("syntax error: ") + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

double number(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& doc, const char* key, double fallback) {
  return doc.contains(key) ? number(doc, key) : fallback;
}

int integer(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) {
    throw InputError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

bool boolean_or(const json& doc, const char* key, bool fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_boolean()) throw InputError(std::string("field '") + key + "' must be true or false");
  return v.get<bool>();
}

template <typename T>
std::vector<T> array_of(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool ok = std::is_integral_v<T> ? v[i].is_number_integer() : v[i].is_number();
    if (!ok) {
      throw InputError(std::string("field '") + key + "' entry " + std::to_string(i) +
                       " has the wrong type");
    }
    out.push_back(v[i].get<T>());
  }
  return out;
}

Instance from_generator(const json& g) {
  const json& family = field(g, "family");
  if (!family.is_string() || family.get<std::string>() != "normal-quantile") {
    throw InputError("field 'family' must be \"normal-quantile\"");
  }
  const int n = integer(g, "n");
  if (n < 1) throw InputError("field 'n' must be positive");
  ExperimentSpec spec;
  spec.sigma = number(g, "sigma");
  spec.beta = number_or(g, "beta", 1.0);
  spec.location = number_or(g, "location", 0.0);
  if (g.contains("alpha")) {
    spec.alpha_scale = number(g, "alpha") * n;
  }
  return generate_instance(spec, n, number(g, "gamma"));
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw InputError("instance document must be an object");
  if (doc.contains("generator")) return from_generator(doc.at("generator"));
  if (doc.contains("family")) return from_generator(doc);
  const int n = integer(doc, "n");
  auto d_star = array_of<double>(doc, "d_star");
  if (static_cast<int>(d_star.size()) != n) {
    throw InputError("field 'd_star' must have n entries");
  }
  return Instance(number(doc, "alpha"), number(doc, "beta"), number(doc, "gamma"),
                  std::move(d_star));
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

ExperimentSpec parse_experiment(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw InputError("experiment document must be an object");
  ExperimentSpec spec;
  spec.sizes = array_of<int>(doc, "n");
  spec.gammas = array_of<double>(doc, "gamma");
  spec.beta = number_or(doc, "beta", spec.beta);
  spec.alpha_scale = number_or(doc, "alpha_scale", spec.alpha_scale);
  spec.sigma = number_or(doc, "sigma", spec.sigma);
  spec.sigma_per_user = boolean_or(doc, "sigma_per_user", spec.sigma_per_user);
  spec.location = number_or(doc, "location", spec.location);
  spec.epsilon = number_or(doc, "epsilon", spec.epsilon);
  spec.exhaustive = boolean_or(doc, "exhaustive", spec.exhaustive);
  if (doc.contains("M")) spec.starts = integer(doc, "M");
  if (doc.contains("exhaustive_limit")) spec.exhaustive_limit = integer(doc, "exhaustive_limit");
  if (doc.contains("quantile")) {
    const json& q = doc.at("quantile");
    if (q == "uniform") {
      spec.rule = QuantileRule::kUniform;
    } else if (q == "midpoint") {
      spec.rule = QuantileRule::kMidpoint;
    } else {
      throw InputError("field 'quantile' must be \"uniform\" or \"midpoint\"");
    }
  }
  for (int n : spec.sizes) {
    if (n < 1) throw InputError("field 'n' entries must be positive");
  }
  if (spec.starts < 1) throw InputError("field 'M' must be positive");
  if (!(spec.epsilon > 0)) throw InputError("field 'epsilon' must be positive");
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  return parse_experiment(read_file(path));
}

std::vector<double> parse_number_list(std::string_view text) {
  std::string cleaned(text);
  for (char& ch : cleaned) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw InputError("not a number: '" + token + "'");
    out.push_back(value);
  }
  return out;
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_schedule_csv(std::ostream& out, const Instance& instance,
                        std::span<const double> arrivals,
                        std::span<const double> departures) {
  out << "user,arrival,departure,ideal_departure,sojourn,deviation_cost\n";
  for (int i = 0; i < instance.n(); ++i) {
    const double late = departures[i] - instance.d_star(i);
    out << i + 1 << ',' << format_number(arrivals[i]) << ','
        << format_number(departures[i]) << ',' << format_number(instance.d_star(i))
        << ',' << format_number(departures[i] - arrivals[i]) << ','
        << format_number(late * late) << '\n';
  }
}

ScheduleTable read_schedule_csv(std::istream& in) {
  ScheduleTable table;
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty schedule table");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = parse_number_list(line);
    if (cells.size() != 6) throw InputError("schedule rows need 6 columns");
    table.arrivals.push_back(cells[1]);
    table.departures.push_back(cells[2]);
  }
  return table;
}

void write_diagram_csv(std::ostream& out, const ExperimentRow& row) {
  out << "user,arrival,free_flow_departure,departure,ideal_departure\n";
  for (std::size_t i = 0; i < row.arrivals.size(); ++i) {
    out << i + 1 << ',' << format_number(row.arrivals[i]) << ','
        << format_number(row.arrivals[i] + 1.0 / row.beta) << ','
        << format_number(row.departures[i]) << ',' << format_number(row.d_star[i])
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const ExperimentRow> rows) {
  out << "n,gamma,value,cpi_cycles,breakpoints,ns_qps,seconds,profiles,"
         "exhaustive_value,exhaustive_seconds,global_opt\n";
  for (const auto& row : rows) {
    out << row.n << ',' << format_number(row.gamma) << ',' << format_number(row.value)
        << ',' << row.cpi_cycles << ',' << row.breakpoints << ',' << row.neighbour_qps
        << ',' << format_number(row.seconds) << ',';
    if (row.profiles) out << *row.profiles;
    out << ',';
    if (row.exhaustive_value) out << format_number(*row.exhaustive_value);
    out << ',';
    if (row.exhaustive_seconds) out << format_number(*row.exhaustive_seconds);
    out << ',';
    if (auto match = row.matches_exhaustive()) out << (*match ? "yes" : "no");
    out << '\n';
  }
}

}  // namespace pssched
