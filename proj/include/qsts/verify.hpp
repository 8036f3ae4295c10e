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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qsts/protocol.hpp"
#include "qsts/statevec.hpp"

namespace qsts {

/// Acceptance threshold for "the secret was reconstructed".
inline constexpr double kFidelityTolerance = 1e-10;
/// Tolerance on summed branch probabilities.
inline constexpr double kProbabilityMassTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultBranchCap = std::uint64_t{1} << 16;

/// |<a|b>|^2, blind to global phase. Throws std::invalid_argument on a qubit
/// count mismatch.
double fidelity_up_to_phase(const StateVector &a, const StateVector &b);

/// Seeded secret whose amplitudes are all non-negligible: four standard
/// complex Gaussians, normalized, redrawn while any |amplitude| < 0.05.
SecretState generic_secret(std::mt19937_64 &rng);

struct BranchReport {
    ProtocolTranscript transcript;
    std::vector<PauliCorrection> oracle_corrections;  // sorted
    PauliCorrection table_correction;
    bool agree = false;
};

struct EnumerationLimits {
    std::size_t qubit_cap = kDefaultQubitCap;
    std::uint64_t branch_cap = kDefaultBranchCap;
};

/// 2^(2N+2) GHZ outcome pairs times 4^(N-1) controller sign patterns.
std::uint64_t branch_count(std::size_t n_agents);

/// Every candidate (U_i, U_j) whose application to `post_state` restores the
/// secret up to global phase, sorted. An empty result means the branch is
/// unrecoverable.
std::vector<PauliCorrection> brute_force_correction_oracle(const StateVector &post_state, const SecretState &secret);

/// Walks every nonzero-probability branch in deterministic order (Alice's
/// outcomes in family order, then controllers 1..N-1 in pair order) and
/// hands one report per branch to `sink`. Throws CapExceeded when the qubit
/// or branch cap would be exceeded.
void enumerate_branches(const SecretState &secret, std::size_t n_agents,
                        const std::function<void(const BranchReport &)> &sink, const EnumerationLimits &limits = {});

std::vector<BranchReport> enumerate_branches(const SecretState &secret, std::size_t n_agents,
                                             const EnumerationLimits &limits = {});

/// Position of a (V1, V2, s1, s2) class in the 16-row correction table, where
/// s1, s2 already include the controllers' parity. Rows run V1, V2, s1, s2
/// with 0 and + first.
std::size_t table_row(std::uint8_t v1, std::uint8_t v2, Sign s1, Sign s2);
std::size_t table_row(const ProtocolTranscript &transcript);

struct TableFailure {
    std::size_t secret_index = 0;
    std::string branch;
    PauliCorrection table_correction;
    std::vector<PauliCorrection> oracle_corrections;
};

struct TableSummary {
    std::size_t n_secrets = 0;
    std::uint64_t seed = 0;
    std::size_t branches = 0;
    std::size_t agreements = 0;
    std::size_t unique_oracle = 0;  // branches whose oracle set is a singleton
    std::array<std::size_t, 16> row_hits{};
    std::vector<double> probability_mass;  // per secret
    double min_fidelity = 1.0;
    std::vector<TableFailure> failures;

    bool passed() const;
};

/// Runs the oracle against the correction rule on every two-agent branch of
/// `n_secrets` generic secrets drawn from `seed`. Failures are collected,
/// never thrown.
TableSummary verify_table(std::size_t n_secrets, std::uint64_t seed);

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    /// Expected count per bin is at least 5.
    bool valid = false;
};

/// Pearson chi-square of `counts` against the uniform distribution.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

struct MonteCarloStats {
    std::size_t n_agents = 0;
    std::size_t n_trials = 0;
    std::uint64_t seed = 0;
    double mean_fidelity = 0.0;
    double min_fidelity = 1.0;
    std::size_t failed_trials = 0;  // fidelity below 1 - kFidelityTolerance
    std::vector<std::uint64_t> first_histogram;   // ghz_basis_family order
    std::vector<std::uint64_t> second_histogram;
    std::vector<std::uint64_t> joint_histogram;   // first * family_size + second
    ChiSquare first_test;
    ChiSquare second_test;
    ChiSquare joint_test;
};

inline constexpr double kChiSquareMinPValue = 1e-3;

/// Samples `n_trials` full protocol runs from the true outcome distribution.
MonteCarloStats monte_carlo(const SecretState &secret, std::size_t n_agents, std::size_t n_trials,
                            std::uint64_t seed, std::size_t qubit_cap = kDefaultQubitCap);

}  // namespace qsts
