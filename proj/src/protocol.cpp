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


#include "qsts/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsts/random.hpp"

namespace qsts {

SecretState SecretState::make(Complex alpha, Complex beta, Complex gamma, Complex delta) {
    const std::array<Complex, 4> amps{alpha, beta, gamma, delta};
    double total = 0.0;
    for (const auto &a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("secret amplitude is not finite");
        }
        total += std::norm(a);
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw std::invalid_argument("secret is not normalized: |alpha|^2+|beta|^2+|gamma|^2+|delta|^2 = " +
                                    std::to_string(total));
    }
    return SecretState(amps);
}

StateVector SecretState::as_state() const {
    return StateVector::make(2, {amps_.begin(), amps_.end()}, Normalization::Auto);
}

ParticleRegistry::ParticleRegistry(std::size_t n_agents) : n_agents_(n_agents) {
    if (n_agents < 2) {
        throw std::invalid_argument("protocol needs at least two agents");
    }
    names_ = {"x", "y"};
    for (char first : {'a', 'c'}) {
        const char second = static_cast<char>(first + 1);
        for (std::size_t i = 1; i <= n_agents; ++i) {
            names_.push_back(particle(first, i));
            names_.push_back(particle(second, i));
        }
    }
}

QubitIndex ParticleRegistry::index_of(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw std::out_of_range("unknown particle " + std::string(name));
    }
    return QubitIndex{static_cast<std::size_t>(it - names_.begin())};
}

InitialState build_initial_state(const SecretState &secret, std::size_t n_agents, std::size_t qubit_cap) {
    ParticleRegistry registry(n_agents);
    if (registry.size() > qubit_cap) {
        throw CapExceeded("resource for " + std::to_string(n_agents) + " agents needs " +
                          std::to_string(registry.size()) + " qubits, cap is " + std::to_string(qubit_cap));
    }
    const StateVector epr = bell_state(BellKind::PhiPlus);
    StateVector pairs = epr;
    for (std::size_t k = 1; k < 2 * n_agents; ++k) {
        pairs = tensor(pairs, epr);
    }
    return {tensor(secret.as_state(), pairs), std::move(registry)};
}

SingleQubitOp pauli_op(Pauli p) {
    switch (p) {
        case Pauli::U0:
            return SingleQubitOp::identity();
        case Pauli::U1:
            return SingleQubitOp::pauli_z();
        case Pauli::U2:
            return SingleQubitOp::pauli_x();
        case Pauli::U3:
            return SingleQubitOp::make({0.0, 1.0, -1.0, 0.0});
    }
    throw std::invalid_argument("unknown Pauli correction");
}

const char *to_string(Pauli p) {
    static constexpr const char *kNames[] = {"U0", "U1", "U2", "U3"};
    return kNames[static_cast<std::size_t>(p)];
}

PauliCorrection correction_for(std::uint8_t v1, std::uint8_t v2, Sign s1, Sign s2) {
    if (v1 > 1 || v2 > 1) {
        throw std::invalid_argument("V values are single bits");
    }
    auto pick = [](std::uint8_t v, Sign s) { return static_cast<Pauli>(2 * v + sign_bit(s)); };
    return {pick(v1, s1), pick(v2, s2)};
}

StateVector charlie_reconstruct(const StateVector &state, const PauliCorrection &correction) {
    if (state.n_qubits() != 2) {
        throw std::invalid_argument("receiver holds exactly two qubits, got " + std::to_string(state.n_qubits()));
    }
    const StateVector once = apply_single(state, QubitIndex{0}, pauli_op(correction.first));
    return apply_single(once, QubitIndex{1}, pauli_op(correction.second));
}

std::size_t controller_pair_index(XOutcome b, XOutcome d) { return 2 * sign_bit(b.sign) + sign_bit(d.sign); }

ForcedSelector::ForcedSelector(GhzOutcome first, GhzOutcome second,
                               std::vector<std::pair<XOutcome, XOutcome>> controllers)
    : first_(family_index(first)), second_(family_index(second)) {
    controllers_.reserve(controllers.size());
    for (const auto &[b, d] : controllers) {
        controllers_.push_back(controller_pair_index(b, d));
    }
}

std::size_t ForcedSelector::choose(const SelectionContext &context, std::span<const double>) {
    switch (context.stage) {
        case Stage::AliceFirst:
            return first_;
        case Stage::AliceSecond:
            return second_;
        case Stage::Controller:
            if (context.controller == 0 || context.controller > controllers_.size()) {
                throw std::out_of_range("no forced outcome for controller " + std::to_string(context.controller));
            }
            return controllers_[context.controller - 1];
    }
    throw std::logic_error("unknown stage");
}

std::size_t SamplingSelector::choose(const SelectionContext &, std::span<const double> probabilities) {
    const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    const double target = unit_uniform(rng_) * total;
    double cumulative = 0.0;
    std::size_t last_possible = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] < kZeroProbability) {
            continue;
        }
        cumulative += probabilities[i];
        last_possible = i;
        if (target < cumulative) {
            return i;
        }
    }
    return last_possible;
}

ProtocolSession::ProtocolSession(const SecretState &secret, InitialState initial)
    : secret_(secret),
      n_agents_(initial.registry.n_agents()),
      state_(std::make_shared<const StateVector>(std::move(initial.state))),
      live_(initial.registry.names()) {}

ProtocolSession ProtocolSession::start(const SecretState &secret, std::size_t n_agents, std::size_t qubit_cap) {
    return ProtocolSession(secret, build_initial_state(secret, n_agents, qubit_cap));
}

std::vector<QubitIndex> ProtocolSession::live_indices(std::span<const std::string> names) const {
    std::vector<QubitIndex> indices;
    for (const auto &name : names) {
        const auto it = std::find(live_.begin(), live_.end(), name);
        if (it == live_.end()) {
            throw std::logic_error("particle " + name + " is no longer available");
        }
        indices.push_back(QubitIndex{static_cast<std::size_t>(it - live_.begin())});
    }
    return indices;
}

double ProtocolSession::measure(std::span<const std::string> names, const std::vector<StateVector> &basis,
                                const SelectionContext &context, OutcomeSelector &selector, std::size_t &chosen) {
    const auto indices = live_indices(names);
    const auto probabilities = outcome_probabilities(*state_, indices, basis);
    chosen = selector.choose(context, probabilities);
    if (chosen >= probabilities.size()) {
        throw std::out_of_range("selector returned outcome " + std::to_string(chosen));
    }
    auto projection = project_subset(*state_, indices, basis[chosen]);
    if (!projection.post_state) {
        throw std::runtime_error("selected outcome has zero probability");
    }
    state_ = std::make_shared<const StateVector>(std::move(*projection.post_state));
    std::erase_if(live_, [&](const std::string &n) { return std::find(names.begin(), names.end(), n) != names.end(); });
    probability_ *= projection.probability;
    return projection.probability;
}

AliceResult ProtocolSession::alice_measure(int which, OutcomeSelector &selector) {
    if (which != 1 && which != 2) {
        throw std::invalid_argument("Alice performs joint measurement 1 or 2");
    }
    if (which == 1 && first_) {
        throw std::logic_error("first joint measurement already performed");
    }
    if (which == 2 && (!first_ || second_)) {
        throw std::logic_error(first_ ? "second joint measurement already performed"
                                      : "second joint measurement requested before the first");
    }
    const char side = which == 1 ? 'a' : 'c';
    std::vector<std::string> names{which == 1 ? "x" : "y"};
    for (std::size_t i = 1; i <= n_agents_; ++i) {
        names.push_back(ParticleRegistry::particle(side, i));
    }
    const auto family = ghz_basis_family(n_agents_);
    std::vector<StateVector> basis;
    basis.reserve(family.size());
    for (const auto &entry : family) {
        basis.push_back(entry.vector);
    }
    std::size_t chosen = 0;
    const double p = measure(names, basis, {which == 1 ? Stage::AliceFirst : Stage::AliceSecond, 0}, selector, chosen);
    (which == 1 ? first_ : second_) = family[chosen].outcome;
    return {family[chosen].outcome, p};
}

ControllerResult ProtocolSession::controller_measure(std::size_t controller, OutcomeSelector &selector) {
    if (controller < 1 || controller >= n_agents_) {
        throw std::out_of_range("controller index " + std::to_string(controller) + " outside [1, " +
                                std::to_string(n_agents_ - 1) + "]");
    }
    if (!second_) {
        throw std::logic_error("controllers measure after both of Alice's joint measurements");
    }
    for (const auto &done : controllers_) {
        if (done.controller == controller) {
            throw std::logic_error("controller " + std::to_string(controller) + " already measured");
        }
    }
    const std::vector<std::string> names{ParticleRegistry::particle('b', controller),
                                         ParticleRegistry::particle('d', controller)};
    const auto xs = x_basis();
    std::vector<StateVector> basis;
    for (const auto &b : xs) {
        for (const auto &d : xs) {
            basis.push_back(tensor(b.vector, d.vector));
        }
    }
    std::size_t chosen = 0;
    const double p = measure(names, basis, {Stage::Controller, controller}, selector, chosen);
    const XOutcome b = xs[chosen / 2].outcome;
    const XOutcome d = xs[chosen % 2].outcome;
    controllers_.push_back({controller, b, d});
    return {b, d, p};
}

bool ProtocolSession::complete() const noexcept { return second_ && controllers_.size() + 1 == n_agents_; }

void ProtocolSession::require_complete() const {
    if (!complete()) {
        throw std::logic_error("protocol has measurements outstanding");
    }
}

const StateVector &ProtocolSession::receiver_state() const {
    require_complete();
    return *state_;
}

PauliCorrection ProtocolSession::correction() const {
    require_complete();
    std::size_t t = 0;
    std::size_t q = 0;
    for (const auto &c : controllers_) {
        t += c.b.sign == Sign::Minus;
        q += c.d.sign == Sign::Minus;
    }
    return correction_for(outcome_v(*first_), outcome_v(*second_), outcome_p(*first_) * parity_sign(t),
                          outcome_p(*second_) * parity_sign(q));
}

ProtocolTranscript ProtocolSession::finish() const {
    require_complete();
    ProtocolTranscript transcript{
        .secret = secret_,
        .n_agents = n_agents_,
        .alice_outcome_1 = *first_,
        .alice_outcome_2 = *second_,
        .controller_outcomes = controllers_,
    };
    for (const auto &c : controllers_) {
        transcript.t += c.b.sign == Sign::Minus;
        transcript.q += c.d.sign == Sign::Minus;
    }
    transcript.correction = correction();
    for (const GhzOutcome *m : {&*first_, &*second_}) {
        transcript.messages.push_back({"Alice", {outcome_v(*m), sign_bit(outcome_p(*m))}});
    }
    for (const auto &c : controllers_) {
        transcript.messages.push_back(
            {"Bob_" + std::to_string(c.controller), {sign_bit(c.b.sign), sign_bit(c.d.sign)}});
    }
    transcript.branch_probability = probability_;
    const StateVector reconstructed = charlie_reconstruct(*state_, transcript.correction);
    transcript.final_fidelity = std::min(1.0, std::norm(secret_.as_state().inner(reconstructed)));
    return transcript;
}

ProtocolTranscript run_session(ProtocolSession session, OutcomeSelector &selector,
                               std::span<const std::size_t> controller_order) {
    session.alice_measure(1, selector);
    session.alice_measure(2, selector);
    if (controller_order.empty()) {
        for (std::size_t i = 1; i < session.n_agents(); ++i) {
            session.controller_measure(i, selector);
        }
    } else {
        for (std::size_t i : controller_order) {
            session.controller_measure(i, selector);
        }
    }
    return session.finish();
}

ProtocolTranscript run_protocol(const SecretState &secret, std::size_t n_agents, OutcomeSelector &selector,
                                const RunOptions &options) {
    return run_session(ProtocolSession::start(secret, n_agents, options.qubit_cap), selector,
                       options.controller_order);
}

EfficiencyReport efficiency_report(const ProtocolTranscript &transcript) {
    // Every EPR qubit is measured or corrected, so all 4N count.
    const std::size_t used = transcript.alice_outcome_1.label_bits.size() +
                             transcript.alice_outcome_2.label_bits.size() +
                             2 * transcript.controller_outcomes.size() + 2;
    const std::size_t carrying = used;
    return {used, carrying, static_cast<double>(carrying) / static_cast<double>(used)};
}

}  // namespace qsts
