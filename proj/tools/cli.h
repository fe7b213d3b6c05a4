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

// Command-line front end. Exit codes: 0 success, 2 malformed input or
// usage, 3 broken invariant, 4 exhaustive search refused above the guard.

#ifndef PSSCHED_TOOLS_CLI_H_
#define PSSCHED_TOOLS_CLI_H_

#include <iosfwd>

namespace pssched {

inline constexpr int kExitMalformed = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitGuard = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace pssched

#endif  // PSSCHED_TOOLS_CLI_H_
