// Copyright 2026 The QSTS Authors
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


#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "qsts/protocol.hpp"
#include "qsts/verify.hpp"

namespace qsts::cli {

enum class Mode { Run, Enumerate, VerifyTable, MonteCarlo };

const char *to_string(Mode mode);

struct RunConfig {
    Mode mode = Mode::Run;
    std::size_t n_agents = 2;
    std::optional<SecretState> secret;  // empty: generic secret drawn from `seed`
    std::uint64_t seed = 1;
    std::size_t trials = 64000;  // monte-carlo
    std::size_t secrets = 100;   // verify-table
    std::string output_path;     // empty or "-": standard output
    std::size_t qubit_cap = kDefaultQubitCap;
    std::uint64_t branch_cap = kDefaultBranchCap;
};

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitCapExceeded = 2;
inline constexpr int kExitUsage = 64;

/// "re,im,re,im,re,im,re,im" in the order alpha, beta, gamma, delta.
/// Throws UsageError on malformed or unnormalized input.
SecretState parse_secret(const std::string &text);

/// `args` includes the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(std::span<const std::string> args);

struct ExecutionResult {
    int exit_status = kExitOk;
    std::string report;  // JSON text, newline terminated
};

ExecutionResult execute(const RunConfig &config);

/// parse_args + execute + write the report; returns the process exit status.
int run_main(int argc, const char *const *argv);

}  // namespace qsts::cli
