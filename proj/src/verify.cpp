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


#include "qsts/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "qsts/random.hpp"

namespace qsts {

namespace {

constexpr double kGenericFloor = 0.05;

struct SkipBranch {};

// Picks one predetermined outcome; zero-weight outcomes abort the branch.
class IndexSelector final : public OutcomeSelector {
   public:
    explicit IndexSelector(std::size_t index) : index_(index) {}

    std::size_t choose(const SelectionContext &, std::span<const double> probabilities) override {
        if (probabilities[index_] < kZeroProbability) {
            throw SkipBranch{};
        }
        return index_;
    }

   private:
    std::size_t index_;
};

class Enumerator {
   public:
    Enumerator(const SecretState &secret, const std::function<void(const BranchReport &)> &sink)
        : secret_(secret), sink_(sink) {}

    void alice(const ProtocolSession &session, int which) {
        const std::size_t outcomes = std::size_t{1} << (session.n_agents() + 1);
        for (std::size_t i = 0; i < outcomes; ++i) {
            ProtocolSession next = session;
            IndexSelector pick(i);
            try {
                next.alice_measure(which, pick);
            } catch (const SkipBranch &) {
                continue;
            }
            if (which == 1) {
                alice(next, 2);
            } else {
                controllers(next, 1);
            }
        }
    }

    void controllers(const ProtocolSession &session, std::size_t controller) {
        if (controller == session.n_agents()) {
            leaf(session);
            return;
        }
        for (std::size_t i = 0; i < 4; ++i) {
            ProtocolSession next = session;
            IndexSelector pick(i);
            try {
                next.controller_measure(controller, pick);
            } catch (const SkipBranch &) {
                continue;
            }
            controllers(next, controller + 1);
        }
    }

   private:
    void leaf(const ProtocolSession &session) {
        BranchReport report{
            .transcript = session.finish(),
            .oracle_corrections = brute_force_correction_oracle(session.receiver_state(), secret_),
            .table_correction = session.correction(),
        };
        report.agree = std::binary_search(report.oracle_corrections.begin(), report.oracle_corrections.end(),
                                          report.table_correction);
        sink_(report);
    }

    const SecretState &secret_;
    const std::function<void(const BranchReport &)> &sink_;
};

}  // namespace

double fidelity_up_to_phase(const StateVector &a, const StateVector &b) {
    return std::clamp(std::norm(a.inner(b)), 0.0, 1.0);
}

SecretState generic_secret(std::mt19937_64 &rng) {
    for (;;) {
        std::array<Complex, 4> amps;
        double total = 0.0;
        for (auto &a : amps) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            a = Complex{re, im} / std::sqrt(2.0);
            total += std::norm(a);
        }
        const double scale = 1.0 / std::sqrt(total);
        bool generic = true;
        for (auto &a : amps) {
            a *= scale;
            generic = generic && std::abs(a) >= kGenericFloor;
        }
        if (generic) {
            return SecretState::make(amps[0], amps[1], amps[2], amps[3]);
        }
    }
}

std::uint64_t branch_count(std::size_t n_agents) {
    if (n_agents < 2) {
        throw std::invalid_argument("protocol needs at least two agents");
    }
    // 2^(2N+2) * 4^(N-1) = 2^(4N)
    if (4 * n_agents >= 64) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return std::uint64_t{1} << (4 * n_agents);
}

std::vector<PauliCorrection> brute_force_correction_oracle(const StateVector &post_state, const SecretState &secret) {
    const StateVector target = secret.as_state();
    std::vector<PauliCorrection> found;
    for (auto first : {Pauli::U0, Pauli::U1, Pauli::U2, Pauli::U3}) {
        for (auto second : {Pauli::U0, Pauli::U1, Pauli::U2, Pauli::U3}) {
            const PauliCorrection candidate{first, second};
            if (fidelity_up_to_phase(charlie_reconstruct(post_state, candidate), target) >= 1.0 - kFidelityTolerance) {
                found.push_back(candidate);
            }
        }
    }
    return found;
}

void enumerate_branches(const SecretState &secret, std::size_t n_agents,
                        const std::function<void(const BranchReport &)> &sink, const EnumerationLimits &limits) {
    const std::uint64_t count = branch_count(n_agents);
    if (count > limits.branch_cap) {
        throw CapExceeded(std::to_string(n_agents) + " agents give " + std::to_string(count) +
                          " branches, cap is " + std::to_string(limits.branch_cap));
    }
    Enumerator walker(secret, sink);
    walker.alice(ProtocolSession::start(secret, n_agents, limits.qubit_cap), 1);
}

std::vector<BranchReport> enumerate_branches(const SecretState &secret, std::size_t n_agents,
                                             const EnumerationLimits &limits) {
    std::vector<BranchReport> reports;
    enumerate_branches(secret, n_agents, [&](const BranchReport &r) { reports.push_back(r); }, limits);
    return reports;
}

std::size_t table_row(std::uint8_t v1, std::uint8_t v2, Sign s1, Sign s2) {
    return 8u * v1 + 4u * v2 + 2u * sign_bit(s1) + sign_bit(s2);
}

std::size_t table_row(const ProtocolTranscript &transcript) {
    return table_row(outcome_v(transcript.alice_outcome_1), outcome_v(transcript.alice_outcome_2),
                     outcome_p(transcript.alice_outcome_1) * parity_sign(transcript.t),
                     outcome_p(transcript.alice_outcome_2) * parity_sign(transcript.q));
}

bool TableSummary::passed() const {
    const bool masses_ok = std::all_of(probability_mass.begin(), probability_mass.end(), [](double m) {
        return std::abs(m - 1.0) <= kProbabilityMassTolerance;
    });
    const bool rows_covered =
        n_secrets == 0 || std::all_of(row_hits.begin(), row_hits.end(), [](std::size_t h) { return h > 0; });
    return failures.empty() && agreements == branches && unique_oracle == branches && masses_ok && rows_covered &&
           min_fidelity >= 1.0 - kFidelityTolerance;
}

TableSummary verify_table(std::size_t n_secrets, std::uint64_t seed) {
    TableSummary summary;
    summary.n_secrets = n_secrets;
    summary.seed = seed;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < n_secrets; ++k) {
        const SecretState secret = generic_secret(rng);
        double mass = 0.0;
        enumerate_branches(secret, 2, [&](const BranchReport &report) {
            const auto &tr = report.transcript;
            ++summary.branches;
            mass += tr.branch_probability;
            summary.min_fidelity = std::min(summary.min_fidelity, tr.final_fidelity);
            ++summary.row_hits[table_row(tr)];
            if (report.oracle_corrections.size() == 1) {
                ++summary.unique_oracle;
            }
            if (report.agree) {
                ++summary.agreements;
            } else {
                std::string branch = to_string(tr.alice_outcome_1) + "," + to_string(tr.alice_outcome_2);
                for (const auto &c : tr.controller_outcomes) {
                    branch += std::string(",") + to_string(c.b.sign) + to_string(c.d.sign);
                }
                summary.failures.push_back({k, branch, report.table_correction, report.oracle_corrections});
            }
        });
        summary.probability_mass.push_back(mass);
    }
    return summary;
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
    ChiSquare result;
    if (counts.size() < 2) {
        return result;
    }
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    if (total == 0) {
        return result;
    }
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    for (auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        result.statistic += diff * diff / expected;
    }
    result.dof = counts.size() - 1;
    result.p_value = boost::math::gamma_q(0.5 * static_cast<double>(result.dof), 0.5 * result.statistic);
    result.valid = expected >= 5.0;
    return result;
}

MonteCarloStats monte_carlo(const SecretState &secret, std::size_t n_agents, std::size_t n_trials,
                            std::uint64_t seed, std::size_t qubit_cap) {
    if (n_trials == 0) {
        throw std::invalid_argument("monte carlo needs at least one trial");
    }
    const ProtocolSession prepared = ProtocolSession::start(secret, n_agents, qubit_cap);
    const std::size_t family = std::size_t{1} << (n_agents + 1);

    MonteCarloStats stats;
    stats.n_agents = n_agents;
    stats.n_trials = n_trials;
    stats.seed = seed;
    stats.first_histogram.assign(family, 0);
    stats.second_histogram.assign(family, 0);
    stats.joint_histogram.assign(family * family, 0);

    // The first joint measurement always acts on the same resource state, so
    // branch it once per outcome and sample trials from the cached sessions.
    std::vector<std::optional<ProtocolSession>> after_first(family);
    std::vector<double> first_probabilities(family, 0.0);
    for (std::size_t i = 0; i < family; ++i) {
        ProtocolSession next = prepared;
        IndexSelector pick(i);
        try {
            first_probabilities[i] = next.alice_measure(1, pick).probability;
        } catch (const SkipBranch &) {
            continue;
        }
        after_first[i] = std::move(next);
    }

    SamplingSelector sampler(seed);
    double fidelity_sum = 0.0;
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
        const std::size_t first_choice = sampler.choose({Stage::AliceFirst, 0}, first_probabilities);
        ProtocolSession session = *after_first[first_choice];
        session.alice_measure(2, sampler);
        for (std::size_t c = 1; c < n_agents; ++c) {
            session.controller_measure(c, sampler);
        }
        const ProtocolTranscript tr = session.finish();
        fidelity_sum += tr.final_fidelity;
        stats.min_fidelity = std::min(stats.min_fidelity, tr.final_fidelity);
        if (tr.final_fidelity < 1.0 - kFidelityTolerance) {
            ++stats.failed_trials;
        }
        const std::size_t first = family_index(tr.alice_outcome_1);
        const std::size_t second = family_index(tr.alice_outcome_2);
        ++stats.first_histogram[first];
        ++stats.second_histogram[second];
        ++stats.joint_histogram[first * family + second];
    }
    stats.mean_fidelity = fidelity_sum / static_cast<double>(n_trials);
    stats.first_test = chi_square_uniform(stats.first_histogram);
    stats.second_test = chi_square_uniform(stats.second_histogram);
    stats.joint_test = chi_square_uniform(stats.joint_histogram);
    return stats;
}

}  // namespace qsts
