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

#include "json.hpp"

#include "qsts/protocol.hpp"
#include "qsts/verify.hpp"

// JSON encoding of protocol records. Complex numbers are [re, im] pairs,
// signs are "+" / "-", Pauli operators are "U0".."U3". See docs/report-schema.md.

namespace qsts {

inline constexpr int kSchemaVersion = 1;

void to_json(nlohmann::json &j, Sign s);
void to_json(nlohmann::json &j, const SecretState &secret);
void to_json(nlohmann::json &j, const GhzOutcome &outcome);
void to_json(nlohmann::json &j, const ControllerOutcome &outcome);
void to_json(nlohmann::json &j, const PauliCorrection &correction);
void to_json(nlohmann::json &j, const ClassicalMessage &message);
void to_json(nlohmann::json &j, const ProtocolTranscript &transcript);
void to_json(nlohmann::json &j, const EfficiencyReport &report);
void to_json(nlohmann::json &j, const BranchReport &report);
void to_json(nlohmann::json &j, const TableSummary &summary);
void to_json(nlohmann::json &j, const ChiSquare &test);
void to_json(nlohmann::json &j, const MonteCarloStats &stats);

/// Inverse of to_json(ProtocolTranscript). Throws nlohmann::json::exception
/// or std::invalid_argument on malformed input.
ProtocolTranscript transcript_from_json(const nlohmann::json &j);

}  // namespace qsts
