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
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsts/bases.hpp"
#include "qsts/statevec.hpp"

namespace qsts {

/// Default register limit: 2 + 4N <= 26, i.e. at most six agents.
inline constexpr std::size_t kDefaultQubitCap = 26;

/// Thrown when a requested run would exceed a configured resource cap.
class CapExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The two-particle state a|00> + b|01> + c|10> + d|11> being shared.
class SecretState {
   public:
    /// Throws std::invalid_argument unless |a|^2+|b|^2+|c|^2+|d|^2 = 1
    /// within kNormTolerance. No silent renormalization.
    static SecretState make(Complex alpha, Complex beta, Complex gamma, Complex delta);

    Complex alpha() const { return amps_[0]; }
    Complex beta() const { return amps_[1]; }
    Complex gamma() const { return amps_[2]; }
    Complex delta() const { return amps_[3]; }
    const std::array<Complex, 4> &amplitudes() const { return amps_; }

    /// Two-qubit state, particle x first.
    StateVector as_state() const;

   private:
    explicit SecretState(const std::array<Complex, 4> &amps) : amps_(amps) {}
    std::array<Complex, 4> amps_;
};

/// Role-based particle names for the N-agent resource, in register order
/// x, y, a1, b1, ..., aN, bN, c1, d1, ..., cN, dN.
class ParticleRegistry {
   public:
    /// Throws std::invalid_argument for n_agents < 2.
    explicit ParticleRegistry(std::size_t n_agents);

    std::size_t n_agents() const noexcept { return n_agents_; }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string> &names() const noexcept { return names_; }

    /// Throws std::out_of_range for unknown names.
    QubitIndex index_of(std::string_view name) const;
    const std::string &name_at(QubitIndex q) const { return names_.at(q.value); }

    static std::string particle(char role, std::size_t i) { return role + std::to_string(i); }

   private:
    std::size_t n_agents_;
    std::vector<std::string> names_;
};

struct InitialState {
    StateVector state;
    ParticleRegistry registry;
};

/// |secret>_xy (x) prod_i phi+_{a_i b_i} (x) prod_i phi+_{c_i d_i}, laid out
/// in registry order. Throws CapExceeded if 2 + 4N > qubit_cap.
InitialState build_initial_state(const SecretState &secret, std::size_t n_agents,
                                 std::size_t qubit_cap = kDefaultQubitCap);

/// Receiver's repair operators: U0 = I, U1 = sigma_z, U2 = sigma_x, U3 = i sigma_y.
enum class Pauli : std::uint8_t { U0, U1, U2, U3 };

SingleQubitOp pauli_op(Pauli p);
const char *to_string(Pauli p);

/// U_first on b_N, U_second on d_N.
struct PauliCorrection {
    Pauli first = Pauli::U0;
    Pauli second = Pauli::U0;

    friend auto operator<=>(const PauliCorrection &, const PauliCorrection &) = default;
};

/// Factorized correction table: each operator is picked by one (V, sign)
/// pair, (0,+)->U0, (0,-)->U1, (1,+)->U2, (1,-)->U3. The signs passed in are
/// already combined with the controllers' parity, s1 = P1 (-1)^t and
/// s2 = P2 (-1)^q.
PauliCorrection correction_for(std::uint8_t v1, std::uint8_t v2, Sign s1, Sign s2);

/// Applies `correction` to a two-qubit (b_N, d_N) state.
StateVector charlie_reconstruct(const StateVector &state, const PauliCorrection &correction);

struct ClassicalMessage {
    std::string sender;
    std::vector<std::uint8_t> payload_bits;

    friend bool operator==(const ClassicalMessage &, const ClassicalMessage &) = default;
};

struct ControllerOutcome {
    std::size_t controller = 0;  // 1-based, Bob_i
    XOutcome b;
    XOutcome d;

    friend bool operator==(const ControllerOutcome &, const ControllerOutcome &) = default;
};

struct ProtocolTranscript {
    SecretState secret;
    std::size_t n_agents = 0;
    GhzOutcome alice_outcome_1;
    GhzOutcome alice_outcome_2;
    std::vector<ControllerOutcome> controller_outcomes;  // in measurement order
    std::size_t t = 0;  // number of |-x> results on b_1..b_{N-1}
    std::size_t q = 0;  // same for d_1..d_{N-1}
    PauliCorrection correction;
    std::vector<ClassicalMessage> messages;
    double branch_probability = 0.0;
    double final_fidelity = 0.0;
};

// ---------------------------------------------------------------------------
// Outcome selection
// ---------------------------------------------------------------------------

enum class Stage { AliceFirst, AliceSecond, Controller };

struct SelectionContext {
    Stage stage = Stage::AliceFirst;
    std::size_t controller = 0;  // meaningful for Stage::Controller only
};

/// Chooses one outcome of a measurement given its probabilities. Indices
/// follow ghz_basis_family order for Alice and the controller pair order
/// (+,+), (+,-), (-,+), (-,-).
class OutcomeSelector {
   public:
    virtual ~OutcomeSelector() = default;
    virtual std::size_t choose(const SelectionContext &context, std::span<const double> probabilities) = 0;
};

/// Index of a controller sign pair in selection order.
std::size_t controller_pair_index(XOutcome b, XOutcome d);

/// Replays a fixed branch.
class ForcedSelector final : public OutcomeSelector {
   public:
    /// `controllers[i]` is the pair for Bob_{i+1}, regardless of the order in
    /// which the controllers measure.
    ForcedSelector(GhzOutcome first, GhzOutcome second, std::vector<std::pair<XOutcome, XOutcome>> controllers);

    std::size_t choose(const SelectionContext &context, std::span<const double> probabilities) override;

   private:
    std::size_t first_;
    std::size_t second_;
    std::vector<std::size_t> controllers_;
};

/// Samples from the true outcome distribution with a seeded generator.
class SamplingSelector final : public OutcomeSelector {
   public:
    explicit SamplingSelector(std::uint64_t seed) : rng_(seed) {}

    std::size_t choose(const SelectionContext &context, std::span<const double> probabilities) override;

   private:
    std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Protocol execution
// ---------------------------------------------------------------------------

struct AliceResult {
    GhzOutcome outcome;
    double probability = 0.0;  // conditional on the earlier results
};

struct ControllerResult {
    XOutcome b;
    XOutcome d;
    double probability = 0.0;
};

/// One run of the protocol, advanced measurement by measurement.
///
/// Alice measures (x, a_1..a_N) and then (y, c_1..c_N); afterwards each
/// controller Bob_i, i in [1, N-1], measures b_i and d_i in the sigma_x basis
/// once, in any order. Measured particles leave the register, so state()
/// always holds just the unmeasured ones in registry order.
///
/// Copies are cheap: the register is shared and never mutated.
class ProtocolSession {
   public:
    ProtocolSession(const SecretState &secret, InitialState initial);

    static ProtocolSession start(const SecretState &secret, std::size_t n_agents,
                                 std::size_t qubit_cap = kDefaultQubitCap);

    /// `which` is 1 or 2 and must follow that order. Throws std::logic_error
    /// on order violations and std::runtime_error if the selector picks a
    /// zero-probability outcome.
    AliceResult alice_measure(int which, OutcomeSelector &selector);

    /// Throws std::out_of_range for a controller outside [1, N-1] and
    /// std::logic_error if Alice is not done or the controller already measured.
    ControllerResult controller_measure(std::size_t controller, OutcomeSelector &selector);

    std::size_t n_agents() const noexcept { return n_agents_; }
    const SecretState &secret() const noexcept { return secret_; }
    const StateVector &state() const noexcept { return *state_; }
    const std::vector<std::string> &live_particles() const noexcept { return live_; }
    double branch_probability() const noexcept { return probability_; }
    bool complete() const noexcept;

    /// The receiver's (b_N, d_N) pair before correction. Requires complete().
    const StateVector &receiver_state() const;
    /// Correction derived from the published results. Requires complete().
    PauliCorrection correction() const;
    /// Applies the correction and returns the full record. Requires complete().
    ProtocolTranscript finish() const;

   private:
    std::vector<QubitIndex> live_indices(std::span<const std::string> names) const;
    double measure(std::span<const std::string> names, const std::vector<StateVector> &basis,
                   const SelectionContext &context, OutcomeSelector &selector, std::size_t &chosen);
    void require_complete() const;

    SecretState secret_;
    std::size_t n_agents_;
    std::shared_ptr<const StateVector> state_;
    std::vector<std::string> live_;
    double probability_ = 1.0;
    std::optional<GhzOutcome> first_;
    std::optional<GhzOutcome> second_;
    std::vector<ControllerOutcome> controllers_;
};

struct RunOptions {
    std::size_t qubit_cap = kDefaultQubitCap;
    /// Order in which Bob_1..Bob_{N-1} measure; empty means ascending.
    std::vector<std::size_t> controller_order;
};

/// Runs every step of the protocol with outcomes picked by `selector`.
ProtocolTranscript run_protocol(const SecretState &secret, std::size_t n_agents, OutcomeSelector &selector,
                                const RunOptions &options = {});

/// Same, starting from an already prepared session (e.g. a shared resource state).
ProtocolTranscript run_session(ProtocolSession session, OutcomeSelector &selector,
                               std::span<const std::size_t> controller_order = {});

struct EfficiencyReport {
    std::size_t qubits_used = 0;
    std::size_t qubits_carrying_information = 0;
    double ratio = 0.0;
};

/// EPR qubits consumed by the run versus those that carried protocol
/// information (every one of them: nothing is discarded).
EfficiencyReport efficiency_report(const ProtocolTranscript &transcript);

}  // namespace qsts
