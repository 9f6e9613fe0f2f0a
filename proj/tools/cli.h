// Copyright 2026 The emsreloc Authors
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

#ifndef EMSRELOC_TOOLS_CLI_H_
#define EMSRELOC_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace emsreloc::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;  // solve only
inline constexpr int kExitUsage = 2;       // bad flags, documents or data
inline constexpr int kExitLimit = 3;       // node or time limit reached

// Runs one subcommand. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace emsreloc::cli

#endif  // EMSRELOC_TOOLS_CLI_H_
