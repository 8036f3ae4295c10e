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


#include "qsts/report.hpp"

#include <stdexcept>
#include <string>

namespace qsts {

using nlohmann::json;

namespace {

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex number must be [re, im]");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Sign sign_from(const json &j) {
    const auto s = j.get<std::string>();
    if (s == "+") {
        return Sign::Plus;
    }
    if (s == "-") {
        return Sign::Minus;
    }
    throw std::invalid_argument("sign must be \"+\" or \"-\", got " + s);
}

Pauli pauli_from(const json &j) {
    const auto s = j.get<std::string>();
    for (auto p : {Pauli::U0, Pauli::U1, Pauli::U2, Pauli::U3}) {
        if (s == to_string(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown Pauli operator " + s);
}

GhzOutcome ghz_from(const json &j) {
    GhzOutcome outcome{j.at("label_bits").get<std::vector<std::uint8_t>>(), sign_from(j.at("sign"))};
    family_index(outcome);  // validates the label
    return outcome;
}

}  // namespace

void to_json(json &j, Sign s) { j = to_string(s); }

void to_json(json &j, const SecretState &secret) {
    j = json{{"alpha", complex_json(secret.alpha())},
             {"beta", complex_json(secret.beta())},
             {"gamma", complex_json(secret.gamma())},
             {"delta", complex_json(secret.delta())}};
}

void to_json(json &j, const GhzOutcome &outcome) {
    j = json{{"label_bits", outcome.label_bits}, {"sign", outcome.sign}};
}

void to_json(json &j, const ControllerOutcome &outcome) {
    j = json{{"controller", outcome.controller}, {"b", outcome.b.sign}, {"d", outcome.d.sign}};
}

void to_json(json &j, const PauliCorrection &correction) {
    j = json{{"first", to_string(correction.first)}, {"second", to_string(correction.second)}};
}

void to_json(json &j, const ClassicalMessage &message) {
    j = json{{"sender", message.sender}, {"payload_bits", message.payload_bits}};
}

void to_json(json &j, const ProtocolTranscript &tr) {
    j = json{{"secret", tr.secret},
             {"n_agents", tr.n_agents},
             {"alice_outcome_1", tr.alice_outcome_1},
             {"alice_outcome_2", tr.alice_outcome_2},
             {"controller_outcomes", tr.controller_outcomes},
             {"t", tr.t},
             {"q", tr.q},
             {"correction", tr.correction},
             {"messages", tr.messages},
             {"branch_probability", tr.branch_probability},
             {"final_fidelity", tr.final_fidelity}};
}

void to_json(json &j, const EfficiencyReport &report) {
    j = json{{"qubits_used", report.qubits_used},
             {"qubits_carrying_information", report.qubits_carrying_information},
             {"ratio", report.ratio}};
}

void to_json(json &j, const BranchReport &report) {
    j = json{{"transcript", report.transcript},
             {"oracle_corrections", report.oracle_corrections},
             {"table_correction", report.table_correction},
             {"agree", report.agree}};
}

void to_json(json &j, const TableSummary &s) {
    json failures = json::array();
    for (const auto &f : s.failures) {
        failures.push_back({{"secret_index", f.secret_index},
                            {"branch", f.branch},
                            {"table_correction", f.table_correction},
                            {"oracle_corrections", f.oracle_corrections}});
    }
    j = json{{"n_secrets", s.n_secrets},         {"seed", s.seed},
             {"branches", s.branches},           {"agreements", s.agreements},
             {"unique_oracle", s.unique_oracle}, {"row_hits", s.row_hits},
             {"probability_mass", s.probability_mass}, {"min_fidelity", s.min_fidelity},
             {"failures", failures},             {"passed", s.passed()}};
}

void to_json(json &j, const ChiSquare &test) {
    j = json{{"statistic", test.statistic}, {"dof", test.dof}, {"p_value", test.p_value}, {"valid", test.valid}};
}

void to_json(json &j, const MonteCarloStats &s) {
    j = json{{"n_agents", s.n_agents},
             {"n_trials", s.n_trials},
             {"seed", s.seed},
             {"mean_fidelity", s.mean_fidelity},
             {"min_fidelity", s.min_fidelity},
             {"failed_trials", s.failed_trials},
             {"first_histogram", s.first_histogram},
             {"second_histogram", s.second_histogram},
             {"joint_histogram", s.joint_histogram},
             {"first_test", s.first_test},
             {"second_test", s.second_test},
             {"joint_test", s.joint_test}};
}

ProtocolTranscript transcript_from_json(const json &j) {
    const auto &sj = j.at("secret");
    ProtocolTranscript tr{
        .secret = SecretState::make(complex_from(sj.at("alpha")), complex_from(sj.at("beta")),
                                    complex_from(sj.at("gamma")), complex_from(sj.at("delta"))),
        .n_agents = j.at("n_agents").get<std::size_t>(),
        .alice_outcome_1 = ghz_from(j.at("alice_outcome_1")),
        .alice_outcome_2 = ghz_from(j.at("alice_outcome_2")),
    };
    for (const auto &c : j.at("controller_outcomes")) {
        tr.controller_outcomes.push_back(
            {c.at("controller").get<std::size_t>(), XOutcome{sign_from(c.at("b"))}, XOutcome{sign_from(c.at("d"))}});
    }
    tr.t = j.at("t").get<std::size_t>();
    tr.q = j.at("q").get<std::size_t>();
    tr.correction = {pauli_from(j.at("correction").at("first")), pauli_from(j.at("correction").at("second"))};
    for (const auto &m : j.at("messages")) {
        tr.messages.push_back({m.at("sender").get<std::string>(), m.at("payload_bits").get<std::vector<std::uint8_t>>()});
    }
    tr.branch_probability = j.at("branch_probability").get<double>();
    tr.final_fidelity = j.at("final_fidelity").get<double>();
    return tr;
}

}  // namespace qsts
