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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "../tools/cli.h"
#include "pssched/dynamics.h"
#include "pssched/io.h"
#include "near.h"

namespace pssched {
namespace {

using testing::near;

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("pssched_cli_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pssched");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string value_line(const std::string& text) {
  for (const auto& l : lines(text))
    if (l.rfind("value: ", 0) == 0) return l.substr(7);
  return {};
}

const char* kExample =
    R"({"n": 3, "alpha": 0.16666666666666667, "beta": 0.5, "gamma": 0,
        "d_star": [2.5, 3.75, 5.25]})";

TEST_CASE("dynamics command") {
  TempDir dir;
  const auto file = dir.write("ex.json", kExample).string();
  auto r = run({"dynamics", file, "--arrivals", "0,1,3"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1] == "1 0 2.5 2 1");
  CHECK(rows[2] == "2 1 3.75 3 1");
  CHECK(rows[3] == "3 3 5.25 3 2");

  r = run({"dynamics", file, "--departures", "2.5,3.75,5.25"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[3] == "3 3 5.25 3 2");

  r = run({"dynamics", file, "--arrivals", "3,1,0"});
  CHECK(r.code == kExitInvariant);
  CHECK(r.err.find("arrivals not sorted") != std::string::npos);

  const auto single =
      dir.write("one.json", R"({"n": 1, "alpha": 0, "beta": 2, "gamma": 0, "d_star": [1]})");
  r = run({"dynamics", single.string(), "--arrivals", "0.25"});
  REQUIRE(r.code == 0);
  REQUIRE(lines(r.out).size() == 2);
  CHECK(lines(r.out)[1] == "1 0.25 0.75 1 1");

  const auto csv = (dir.path() / "dyn.csv").string();
  r = run({"dynamics", file, "--arrivals", "0,1,3", "--out", csv});
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "user,arrival,departure,k,h");
}

TEST_CASE("malformed inputs") {
  TempDir dir;
  auto r = run({"dynamics", dir.write("bad.json", "{not json").string(), "--arrivals", "0"});
  CHECK(r.code == kExitMalformed);
  CHECK_FALSE(r.err.empty());

  r = run({"dynamics",
           dir.write("short.json",
                     R"({"n": 3, "alpha": 0, "beta": 1, "gamma": 0, "d_star": [1, 2]})")
               .string(),
           "--arrivals", "0,1"});
  CHECK(r.code == kExitMalformed);

  r = run({"dynamics",
           dir.write("unsorted.json",
                     R"({"n": 2, "alpha": 0, "beta": 1, "gamma": 0, "d_star": [2, 1]})")
               .string(),
           "--arrivals", "0,1"});
  CHECK(r.code == kExitInvariant);

  r = run({"dynamics", (dir.path() / "missing.json").string(), "--arrivals", "0"});
  CHECK(r.code == kExitMalformed);

  r = run({"solve", dir.write("ok.json", kExample).string(), "--method", "simplex"});
  CHECK(r.code == kExitMalformed);

  r = run({"frobnicate"});
  CHECK(r.code == kExitMalformed);
}

TEST_CASE("solve command") {
  TempDir dir;
  const auto file = dir.write("ex.json", kExample).string();
  auto r = run({"solve", file, "--method", "gamma0"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(value_line(r.out)) <= 1e-12);

  const auto big = dir
                       .write("big.json",
                              R"({"generator": {"family": "normal-quantile", "n": 20,
                                                "sigma": 0.5, "gamma": 1}})")
                       .string();
  r = run({"solve", big, "--method", "exhaustive"});
  CHECK(r.code == kExitGuard);

  const auto five = dir
                        .write("five.json",
                               R"({"generator": {"family": "normal-quantile", "n": 5,
                                                 "sigma": 0.2, "gamma": 1}})")
                        .string();
  r = run({"solve", five, "--method", "exhaustive"});
  REQUIRE(r.code == 0);
  const double exact = std::stod(value_line(r.out));
  for (const char* method : {"combined", "cpi", "neighbour", "gammainf"}) {
    CAPTURE(method);
    const auto csv = (dir.path() / (std::string(method) + ".csv")).string();
    r = run({"solve", five, "--method", method, "--out", csv});
    REQUIRE(r.code == 0);
    const double value = std::stod(value_line(r.out));
    CHECK(value >= exact - 1e-8);
    std::ifstream in(csv);
    const auto table = read_schedule_csv(in);
    const Instance inst = load_instance(five);
    CHECK(cost_of_arrivals(inst, table.arrivals) == near(value).epsilon(1e-9));
    const auto d = forward_dynamics(inst, table.arrivals).times;
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(table.departures[i] == near(d[i]).epsilon(1e-10));
    }
  }
  r = run({"solve", five, "--method", "combined"});
  CHECK(std::stod(value_line(r.out)) == near(exact).epsilon(1e-6));
}

TEST_CASE("bench command") {
  TempDir dir;
  const auto spec =
      dir.write("spec.json", R"({"n": [3], "gamma": [1], "exhaustive": true})").string();
  const auto out = (dir.path() / "out").string();
  auto r = run({"bench", spec, "--out", out});
  REQUIRE(r.code == 0);
  std::ifstream summary(fs::path(out) / "summary.csv");
  std::string header, row;
  std::getline(summary, header);
  std::getline(summary, row);
  CHECK(header.find("profiles") != std::string::npos);
  std::vector<std::string> cells;
  std::istringstream cells_in(row);
  for (std::string c; std::getline(cells_in, c, ',');) cells.push_back(c);
  std::vector<std::string> names;
  std::istringstream names_in(header);
  for (std::string c; std::getline(names_in, c, ',');) names.push_back(c);
  REQUIRE(cells.size() == names.size());
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c] == "profiles") CHECK(cells[c] == "5");
    if (names[c] == "n") CHECK(cells[c] == "3");
  }
  CHECK(fs::exists(fs::path(out) / "schedule_n3_gamma1.csv"));
  CHECK(fs::exists(fs::path(out) / "diagram_n3_gamma1.csv"));

  const auto empty = dir.write("empty.json", R"({"n": [], "gamma": [1]})").string();
  const auto out2 = (dir.path() / "out2").string();
  r = run({"bench", empty, "--out", out2});
  REQUIRE(r.code == 0);
  std::ifstream summary2(fs::path(out2) / "summary.csv");
  std::string only;
  std::getline(summary2, only);
  CHECK_FALSE(std::getline(summary2, only));

  r = run({"bench", dir.write("broken.json", R"({"n": "three"})").string()});
  CHECK(r.code == kExitMalformed);
}

}  // namespace
}  // namespace pssched
