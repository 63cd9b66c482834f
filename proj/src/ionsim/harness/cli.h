// Copyright 2026 The ionsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IONSIM_HARNESS_CLI_H
#define IONSIM_HARNESS_CLI_H

#include <iosfwd>

namespace ionsim {

constexpr int kExitOk = 0;
/// Bad arguments or configuration.
constexpr int kExitUsage = 1;
/// The experiment itself failed, e.g. a scan that does not bracket a plateau.
constexpr int kExitRuntime = 2;

/// Entry point of the `ionsim` tool.
///
///     ionsim <fig2|fig3|waist|table1|all> --seed N [--config FILE] [--shots N]
///            [--out DIR] [--format json|csv|both] [--quiet]
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace ionsim

#endif
