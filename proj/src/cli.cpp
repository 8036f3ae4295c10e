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


#include "qsts/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "qsts/report.hpp"

namespace qsts::cli {

using nlohmann::json;

namespace {

// Keeps the sampling stream distinct from the stream that draws a random secret.
constexpr std::uint64_t kSamplerSeedOffset = 0x9E3779B97F4A7C15ULL;

Mode mode_from(const std::string &name) {
    for (auto m : {Mode::Run, Mode::Enumerate, Mode::VerifyTable, Mode::MonteCarlo}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw UsageError("unknown mode " + name);
}

SecretState resolve_secret(const RunConfig &config) {
    if (config.secret) {
        return *config.secret;
    }
    std::mt19937_64 rng(config.seed);
    return generic_secret(rng);
}

json config_json(const RunConfig &c) {
    json j{{"mode", to_string(c.mode)},
           {"n_agents", c.n_agents},
           {"seed", c.seed},
           {"qubit_cap", c.qubit_cap}};
    j["secret"] = c.secret ? json(*c.secret) : json("random");
    if (c.mode == Mode::MonteCarlo) {
        j["trials"] = c.trials;
    }
    if (c.mode == Mode::VerifyTable) {
        j["secrets"] = c.secrets;
    }
    if (c.mode == Mode::Enumerate) {
        j["branch_cap"] = c.branch_cap;
    }
    return j;
}

std::size_t published_bits(const ProtocolTranscript &tr) {
    std::size_t bits = 0;
    for (const auto &m : tr.messages) {
        bits += m.payload_bits.size();
    }
    return bits;
}

bool run_mode(const RunConfig &c, json &report) {
    const SecretState secret = resolve_secret(c);
    SamplingSelector sampler(c.seed + kSamplerSeedOffset);
    const ProtocolTranscript tr = run_protocol(secret, c.n_agents, sampler, {.qubit_cap = c.qubit_cap});
    report["transcript"] = tr;
    report["efficiency"] = efficiency_report(tr);
    return tr.final_fidelity >= 1.0 - kFidelityTolerance && published_bits(tr) == 2 * (c.n_agents + 1);
}

bool enumerate_mode(const RunConfig &c, json &report) {
    const SecretState secret = resolve_secret(c);
    json branches = json::array();
    double mass = 0.0;
    double min_fidelity = 1.0;
    std::size_t disagreements = 0;
    std::size_t count = 0;
    enumerate_branches(
        secret, c.n_agents,
        [&](const BranchReport &r) {
            ++count;
            mass += r.transcript.branch_probability;
            min_fidelity = std::min(min_fidelity, r.transcript.final_fidelity);
            disagreements += r.agree ? 0 : 1;
            branches.push_back(r);
        },
        {.qubit_cap = c.qubit_cap, .branch_cap = c.branch_cap});
    report["secret"] = secret;
    report["summary"] = {{"branch_count", count},
                         {"expected_branch_count", branch_count(c.n_agents)},
                         {"probability_sum", mass},
                         {"min_fidelity", min_fidelity},
                         {"disagreements", disagreements}};
    report["branches"] = std::move(branches);
    return count == branch_count(c.n_agents) && std::abs(mass - 1.0) <= kProbabilityMassTolerance &&
           min_fidelity >= 1.0 - kFidelityTolerance && disagreements == 0;
}

bool verify_table_mode(const RunConfig &c, json &report) {
    const TableSummary summary = verify_table(c.secrets, c.seed);
    report["summary"] = summary;
    return summary.passed();
}

bool monte_carlo_mode(const RunConfig &c, json &report) {
    const SecretState secret = resolve_secret(c);
    const MonteCarloStats stats = monte_carlo(secret, c.n_agents, c.trials, c.seed + kSamplerSeedOffset, c.qubit_cap);
    report["secret"] = secret;
    report["statistics"] = stats;
    auto uniform_ok = [](const ChiSquare &t) { return !t.valid || t.p_value > kChiSquareMinPValue; };
    return stats.failed_trials == 0 && uniform_ok(stats.first_test) && uniform_ok(stats.second_test) &&
           uniform_ok(stats.joint_test);
}

}  // namespace

const char *to_string(Mode mode) {
    switch (mode) {
        case Mode::Run:
            return "run";
        case Mode::Enumerate:
            return "enumerate";
        case Mode::VerifyTable:
            return "verify-table";
        case Mode::MonteCarlo:
            return "monte-carlo";
    }
    return "?";
}

SecretState parse_secret(const std::string &text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &used);
        } catch (const std::exception &) {
            throw UsageError("malformed amplitude '" + field + "'");
        }
        if (used != field.size() || !std::isfinite(v)) {
            throw UsageError("malformed amplitude '" + field + "'");
        }
        values.push_back(v);
    }
    if (values.size() != 8 || (!text.empty() && text.back() == ',')) {
        throw UsageError("--secret takes 8 comma-separated reals (re,im for alpha, beta, gamma, delta)");
    }
    try {
        return SecretState::make({values[0], values[1]}, {values[2], values[3]}, {values[4], values[5]},
                                 {values[6], values[7]});
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

RunConfig parse_args(std::span<const std::string> args) {
    RunConfig config;
    std::string secret_text = "random";
    std::string mode_text;

    CLI::App app{"Multiparty sharing of an arbitrary two-qubit state over 2N EPR pairs", "qsts"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.add_option("--mode", mode_text, "Mode, alternative to a subcommand")
        ->check(CLI::IsMember({"run", "enumerate", "verify-table", "monte-carlo"}));
    app.add_option("--agents", config.n_agents, "Number of agents N (>= 2)");
    app.add_option("--secret", secret_text, "8 comma-separated reals (re,im of alpha,beta,gamma,delta) or 'random'");
    app.add_option("--seed", config.seed, "Seed for random secrets and sampling");
    auto *trials = app.add_option("--trials", config.trials, "Monte Carlo trials");
    auto *secrets = app.add_option("--secrets", config.secrets, "Secrets checked by verify-table");
    app.add_option("--output", config.output_path, "Report path ('-' for standard output)");
    app.add_option("--qubit-cap", config.qubit_cap, "Largest register to simulate");
    auto *branch_cap = app.add_option("--branch-cap", config.branch_cap, "Largest branch count to enumerate");
    app.add_subcommand("run", "Run the protocol once with sampled outcomes");
    app.add_subcommand("enumerate", "Check every measurement branch");
    app.add_subcommand("verify-table", "Check the correction rule against a brute-force oracle");
    app.add_subcommand("monte-carlo", "Sample many runs and test outcome uniformity");

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    const auto chosen = app.get_subcommands();
    if (!chosen.empty()) {
        const Mode sub = mode_from(chosen.front()->get_name());
        if (!mode_text.empty() && mode_from(mode_text) != sub) {
            throw UsageError("--mode " + mode_text + " conflicts with subcommand " + chosen.front()->get_name());
        }
        config.mode = sub;
    } else if (!mode_text.empty()) {
        config.mode = mode_from(mode_text);
    } else {
        throw UsageError("no mode given; use one of run, enumerate, verify-table, monte-carlo");
    }

    if (config.n_agents < 2) {
        throw UsageError("--agents must be at least 2");
    }
    if (trials->count() > 0 && config.mode != Mode::MonteCarlo) {
        throw UsageError("--trials only applies to monte-carlo");
    }
    if (secrets->count() > 0 && config.mode != Mode::VerifyTable) {
        throw UsageError("--secrets only applies to verify-table");
    }
    if (branch_cap->count() > 0 && config.mode != Mode::Enumerate) {
        throw UsageError("--branch-cap only applies to enumerate");
    }
    if (config.mode == Mode::MonteCarlo && config.trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    if (config.mode == Mode::VerifyTable && config.secrets == 0) {
        throw UsageError("--secrets must be at least 1");
    }
    if (secret_text != "random") {
        config.secret = parse_secret(secret_text);
    }
    return config;
}

ExecutionResult execute(const RunConfig &config) {
    json report{{"schema_version", kSchemaVersion}, {"mode", to_string(config.mode)}, {"config", config_json(config)}};
    int status = kExitOk;
    try {
        bool passed = false;
        switch (config.mode) {
            case Mode::Run:
                passed = run_mode(config, report);
                break;
            case Mode::Enumerate:
                passed = enumerate_mode(config, report);
                break;
            case Mode::VerifyTable:
                passed = verify_table_mode(config, report);
                break;
            case Mode::MonteCarlo:
                passed = monte_carlo_mode(config, report);
                break;
        }
        report["passed"] = passed;
        status = passed ? kExitOk : kExitAssertionFailed;
    } catch (const CapExceeded &e) {
        report["passed"] = false;
        report["error"] = e.what();
        status = kExitCapExceeded;
    }
    return {status, report.dump(2) + "\n"};
}

int run_main(int argc, const char *const *argv) {
    std::vector<std::string> args(argv, argv + argc);
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested &help) {
        std::cout << help.what();
        return kExitOk;
    } catch (const UsageError &e) {
        std::cerr << "qsts: " << e.what() << "\n";
        return kExitUsage;
    }

    const ExecutionResult result = execute(config);
    if (config.output_path.empty() || config.output_path == "-") {
        std::cout << result.report;
    } else {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out || !(out << result.report)) {
            std::cerr << "qsts: cannot write " << config.output_path << "\n";
            return kExitUsage;
        }
    }
    return result.exit_status;
}

}  // namespace qsts::cli
