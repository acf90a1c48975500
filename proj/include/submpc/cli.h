// Copyright 2026 The SubMPC Authors
//
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

// Command-line front end: run, audit, distortion, comm-cost.
//
// Exit codes: 0 success or pass, 1 verification failure (an audit verdict
// of fail, a violated bound), 2 configuration or resource error (bad flags,
// parse errors, exceeded budgets).

#ifndef SUBMPC_CLI_H_
#define SUBMPC_CLI_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "submpc/analysis.h"

namespace submpc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;

// Extra audit targets by protocol name, for binaries that add variants the
// library does not ship.
using AuditTargetFactory = std::function<AuditTarget(const FunctionTable& f1, std::uint64_t n,
                                                     std::uint64_t m)>;
struct CliExtensions {
  std::map<std::string, AuditTargetFactory> audit_targets;
};

// Parses a key=value config file. Blank lines and lines starting with '#'
// are skipped; keys are flag names without the leading dashes.
std::map<std::string, std::string> ParseConfigText(const std::string& text);

// Entry point. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
           const CliExtensions& extensions = {});

}  // namespace submpc

#endif  // SUBMPC_CLI_H_
