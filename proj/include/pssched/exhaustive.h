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

// Enumeration of all order profiles and the exhaustive global optimum.

#ifndef PSSCHED_EXHAUSTIVE_H_
#define PSSCHED_EXHAUSTIVE_H_

#include <cstdint>
#include <vector>

#include "pssched/model.h"

namespace pssched {

// Walks all valid k vectors in lexicographic order using O(n) state.
class ProfileIterator {
 public:
  explicit ProfileIterator(int n);

  bool done() const { return done_; }
  const std::vector<int>& k() const { return k_; }
  OrderProfile profile() const { return OrderProfile::from_k(k_); }
  // Moves to the lexicographic successor; sets done() past the last one.
  void advance();

 private:
  std::vector<int> k_;
  bool done_ = false;
};

ProfileIterator enumerate_profiles(int n);

// Number of profiles for n users: C(2n, n) / (n + 1).
std::uint64_t catalan(int n);

// Above this many users the exhaustive search is impractical.
inline constexpr int kExhaustiveGuard = 15;

struct ExhaustiveResult {
  std::vector<double> a_star;
  double value = 0;
  OrderProfile profile;
  std::uint64_t profiles = 0;
  std::uint64_t feasible_profiles = 0;
};

// Solves the convex program of every profile and keeps the best; ties go to
// the lexicographically smallest k. `threads` <= 0 means hardware
// concurrency. The result does not depend on the thread count.
ExhaustiveResult exhaustive_search(const Instance& instance, int threads = 0);

}  // namespace pssched

#endif  // PSSCHED_EXHAUSTIVE_H_
