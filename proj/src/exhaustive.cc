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

#include "pssched/exhaustive.h"

#include <algorithm>
#include <limits>
#include <mutex>
#include <thread>

#include "pssched/polytope.h"

namespace pssched {

ProfileIterator::ProfileIterator(int n) : k_(std::max(n, 0)) {
  if (n < 1) throw ContractViolation("need at least one user");
  for (int i = 0; i < n; ++i) k_[i] = i;
}

void ProfileIterator::advance() {
  const int n = static_cast<int>(k_.size());
  const int last = n - 1;
  int i = last - 1;
  while (i >= 0 && k_[i] == last) --i;
  if (i < 0) {
    done_ = true;
    return;
  }
  ++k_[i];
  for (int j = i + 1; j < last; ++j) k_[j] = std::max(j, k_[i]);
}

ProfileIterator enumerate_profiles(int n) { return ProfileIterator(n); }

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t sequence = std::numeric_limits<std::uint64_t>::max();
  QPSolution solution;
  std::vector<int> k;
  std::uint64_t feasible = 0;

  bool improves(double v, std::uint64_t seq) const {
    return v < value || (v == value && seq < sequence);
  }
};

}  // namespace

ExhaustiveResult exhaustive_search(const Instance& instance, int threads) {
  const int n = instance.n();
  if (threads <= 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  constexpr int kChunk = 256;

  ProfileIterator cursor(n);
  std::uint64_t next_sequence = 0;
  std::mutex cursor_mutex;
  Best global;
  std::mutex global_mutex;

  auto worker = [&] {
    Best local;
    std::vector<std::vector<int>> chunk;
    while (true) {
      std::uint64_t first;
      chunk.clear();
      {
        std::lock_guard lock(cursor_mutex);
        first = next_sequence;
        while (!cursor.done() && static_cast<int>(chunk.size()) < kChunk) {
          chunk.push_back(cursor.k());
          cursor.advance();
        }
        next_sequence += chunk.size();
      }
      if (chunk.empty()) break;
      for (std::size_t c = 0; c < chunk.size(); ++c) {
        auto solution = solve_qp(instance, OrderProfile::from_k(chunk[c]));
        if (!solution.feasible) continue;
        ++local.feasible;
        if (local.improves(solution.value, first + c)) {
          local.value = solution.value;
          local.sequence = first + c;
          local.solution = std::move(solution);
          local.k = chunk[c];
        }
      }
    }
    std::lock_guard lock(global_mutex);
    global.feasible += local.feasible;
    if (global.improves(local.value, local.sequence)) {
      global.value = local.value;
      global.sequence = local.sequence;
      global.solution = std::move(local.solution);
      global.k = std::move(local.k);
    }
  };

  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  ExhaustiveResult result;
  result.profiles = next_sequence;
  result.feasible_profiles = global.feasible;
  if (global.k.empty()) {
    // Cannot happen: the ordered optimum lies in some polytope.
    throw std::logic_error("no feasible profile found");
  }
  result.a_star = std::move(global.solution.a_star);
  result.value = global.value;
  result.profile = OrderProfile::from_k(std::move(global.k));
  return result;
}

}  // namespace pssched
