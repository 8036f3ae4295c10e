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


#include <array>
#include <stdexcept>

#include "doctest.h"
#include "qsts/protocol.hpp"
#include "qsts/verify.hpp"
#include "test_support.hpp"

using namespace qsts;
using namespace qsts::testing;

namespace {

const XOutcome kPlusX{Sign::Plus};
const XOutcome kMinusX{Sign::Minus};

SecretState sample_secret(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return generic_secret(rng);
}

// Transcribed two-agent correction table. `state` gives, for alpha, beta,
// gamma, delta in turn, the (b2 d2) basis label and sign it carries in the
// receiver's state before correction.
struct TableRow {
    std::uint8_t v1, v2;
    Sign s1, s2;
    std::array<std::pair<const char *, int>, 4> state;
    PauliCorrection correction;
};

constexpr Sign P = Sign::Plus;
constexpr Sign M = Sign::Minus;

const TableRow kTable[16] = {
    {0, 0, P, P, {{{"00", +1}, {"01", +1}, {"10", +1}, {"11", +1}}}, {Pauli::U0, Pauli::U0}},
    {0, 0, P, M, {{{"00", +1}, {"01", -1}, {"10", +1}, {"11", -1}}}, {Pauli::U0, Pauli::U1}},
    {0, 0, M, P, {{{"00", +1}, {"01", +1}, {"10", -1}, {"11", -1}}}, {Pauli::U1, Pauli::U0}},
    {0, 0, M, M, {{{"00", +1}, {"01", -1}, {"10", -1}, {"11", +1}}}, {Pauli::U1, Pauli::U1}},
    {0, 1, P, P, {{{"01", +1}, {"00", +1}, {"11", +1}, {"10", +1}}}, {Pauli::U0, Pauli::U2}},
    {0, 1, P, M, {{{"01", +1}, {"00", -1}, {"11", +1}, {"10", -1}}}, {Pauli::U0, Pauli::U3}},
    {0, 1, M, P, {{{"01", +1}, {"00", +1}, {"11", -1}, {"10", -1}}}, {Pauli::U1, Pauli::U2}},
    {0, 1, M, M, {{{"01", +1}, {"00", -1}, {"11", -1}, {"10", +1}}}, {Pauli::U1, Pauli::U3}},
    {1, 0, P, P, {{{"10", +1}, {"11", +1}, {"00", +1}, {"01", +1}}}, {Pauli::U2, Pauli::U0}},
    {1, 0, P, M, {{{"10", +1}, {"11", -1}, {"00", +1}, {"01", -1}}}, {Pauli::U2, Pauli::U1}},
    {1, 0, M, P, {{{"10", +1}, {"11", +1}, {"00", -1}, {"01", -1}}}, {Pauli::U3, Pauli::U0}},
    {1, 0, M, M, {{{"10", +1}, {"11", -1}, {"00", -1}, {"01", +1}}}, {Pauli::U3, Pauli::U1}},
    {1, 1, P, P, {{{"11", +1}, {"10", +1}, {"01", +1}, {"00", +1}}}, {Pauli::U2, Pauli::U2}},
    {1, 1, P, M, {{{"11", +1}, {"10", -1}, {"01", +1}, {"00", -1}}}, {Pauli::U2, Pauli::U3}},
    {1, 1, M, P, {{{"11", +1}, {"10", +1}, {"01", -1}, {"00", -1}}}, {Pauli::U3, Pauli::U2}},
    {1, 1, M, M, {{{"11", +1}, {"10", -1}, {"01", -1}, {"00", +1}}}, {Pauli::U3, Pauli::U3}},
};

StateVector table_state(const TableRow &row, const SecretState &secret) {
    std::map<std::string, Complex> terms;
    for (std::size_t k = 0; k < 4; ++k) {
        terms[row.state[k].first] += static_cast<double>(row.state[k].second) * secret.amplitudes()[k];
    }
    return ref::ket(2, terms);
}

// Picks a fixed index for every measurement.
class ConstantSelector final : public OutcomeSelector {
   public:
    explicit ConstantSelector(std::size_t i) : i_(i) {}
    std::size_t choose(const SelectionContext &, std::span<const double>) override { return i_; }

   private:
    std::size_t i_;
};

}  // namespace

TEST_CASE("SecretState") {
    const auto s = SecretState::make(0.5, 0.5, 0.5, Complex{0.0, 0.5});
    CHECK(s.delta() == Complex{0.0, 0.5});
    CHECK(s.as_state().n_qubits() == 2);
    CHECK_THROWS_AS(SecretState::make(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SecretState::make(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ParticleRegistry") {
    const ParticleRegistry reg(3);
    CHECK(reg.size() == 14);
    CHECK(reg.names() == ref::particle_order(3));
    CHECK(reg.index_of("x").value == 0);
    CHECK(reg.index_of("y").value == 1);
    CHECK(reg.index_of("a1").value == 2);
    CHECK(reg.index_of("b1").value == 3);
    CHECK(reg.index_of("c1").value == 8);
    CHECK(reg.index_of("d3").value == 13);
    for (std::size_t k = 0; k < reg.size(); ++k) {
        CHECK(reg.index_of(reg.name_at(QubitIndex{k})).value == k);
    }
    CHECK_THROWS_AS(reg.index_of("e1"), std::out_of_range);
    CHECK_THROWS_AS(ParticleRegistry(1), std::invalid_argument);
}

TEST_CASE("build_initial_state") {
    const auto secret = sample_secret(21);
    SUBCASE("two agents: ten particles, matches the reference construction") {
        const auto init = build_initial_state(secret, 2);
        CHECK(init.state.n_qubits() == 10);
        CHECK(max_abs_diff(init.state, ref::resource_state(secret, 2)) < 1e-15);
    }
    SUBCASE("secret |00>: amplitude 1/4 on the all-zero pattern") {
        const auto init = build_initial_state(SecretState::make(1.0, 0.0, 0.0, 0.0), 2);
        // x y a1 b1 a2 b2 c1 d1 c2 d2
        CHECK(std::abs(init.state[ref::index("0000000000")] - Complex{0.25}) < 1e-15);
        CHECK(std::abs(init.state[ref::index("0011001100")] - Complex{0.25}) < 1e-15);
        CHECK(std::abs(init.state[ref::index("0010000000")]) == 0.0);
    }
    SUBCASE("three agents: fourteen particles") {
        const auto init = build_initial_state(secret, 3);
        CHECK(init.state.n_qubits() == 14);
        CHECK(max_abs_diff(init.state, ref::resource_state(secret, 3)) < 1e-15);
    }
    SUBCASE("caps and preconditions") {
        CHECK_THROWS_AS(build_initial_state(secret, 7), CapExceeded);
        CHECK_THROWS_AS(build_initial_state(secret, 3, 13), CapExceeded);
        CHECK_THROWS_AS(build_initial_state(secret, 1), std::invalid_argument);
    }
}

TEST_CASE("alice_measure") {
    const auto secret = sample_secret(3);
    const GhzOutcome g00p{{0, 0}, Sign::Plus};

    SUBCASE("G00+ twice leaves alpha|0000> + beta|0101> + gamma|1010> + delta|1111> on b1 d1 b2 d2") {
        auto session = ProtocolSession::start(secret, 2);
        ForcedSelector forced(g00p, g00p, {});
        const auto first = session.alice_measure(1, forced);
        const auto second = session.alice_measure(2, forced);
        CHECK(first.outcome == g00p);
        CHECK(std::abs(first.probability - 1.0 / 8) < 1e-12);
        CHECK(std::abs(second.probability - 1.0 / 8) < 1e-12);
        CHECK(std::abs(session.branch_probability() - 1.0 / 64) < 1e-12);
        CHECK(session.live_particles() == std::vector<std::string>{"b1", "b2", "d1", "d2"});

        const std::vector<QubitIndex> order{QubitIndex{0}, QubitIndex{2}, QubitIndex{1}, QubitIndex{3}};
        const auto sub = reorder_qubits(session.state(), order);
        const auto expected = ref::ket(4, {{"0000", secret.alpha()},
                                           {"0101", secret.beta()},
                                           {"1010", secret.gamma()},
                                           {"1111", secret.delta()}});
        CHECK(max_abs_diff(sub, expected) < 1e-12);
    }

    SUBCASE("every outcome of each joint measurement has probability 1/8 at two agents") {
        auto session = ProtocolSession::start(secret, 2);
        for (std::size_t i = 0; i < 8; ++i) {
            auto copy = session;
            ConstantSelector pick(i);
            CHECK(std::abs(copy.alice_measure(1, pick).probability - 1.0 / 8) < 1e-12);
            for (std::size_t j = 0; j < 8; ++j) {
                auto second = copy;
                ConstantSelector pick2(j);
                CHECK(std::abs(second.alice_measure(2, pick2).probability - 1.0 / 8) < 1e-12);
            }
        }
    }

    SUBCASE("three agents: 16 outcomes of 1/16, cross-checked against the reference projection") {
        const auto resource = ref::resource_state(secret, 3);
        const std::vector<std::size_t> subset{0, 2, 4, 6};  // x a1 a2 a3
        auto session = ProtocolSession::start(secret, 3);
        for (const auto &entry : ghz_basis_family(3)) {
            const double oracle = ref::project(resource, subset, entry.vector).probability;
            CHECK(std::abs(oracle - 1.0 / 16) < 1e-12);
            auto copy = session;
            ForcedSelector forced(entry.outcome, entry.outcome, {});
            CHECK(std::abs(copy.alice_measure(1, forced).probability - 1.0 / 16) < 1e-12);
        }
    }

    SUBCASE("ordering and selection errors") {
        auto session = ProtocolSession::start(secret, 2);
        ForcedSelector forced(g00p, g00p, {{kPlusX, kPlusX}});
        CHECK_THROWS_AS(session.alice_measure(2, forced), std::logic_error);
        CHECK_THROWS_AS(session.alice_measure(3, forced), std::invalid_argument);
        CHECK_THROWS_AS(session.controller_measure(1, forced), std::logic_error);
        session.alice_measure(1, forced);
        CHECK_THROWS_AS(session.alice_measure(1, forced), std::logic_error);
        ConstantSelector bogus(8);
        CHECK_THROWS_AS(session.alice_measure(2, bogus), std::out_of_range);
    }

    SUBCASE("selecting a zero-probability outcome is an error") {
        // Resource with every particle in |0>: only G00+ and G00- can occur.
        auto session = ProtocolSession(secret, InitialState{StateVector::basis(10, 0), ParticleRegistry(2)});
        ForcedSelector forced({{0, 1}, Sign::Plus}, g00p, {});
        CHECK_THROWS_AS(session.alice_measure(1, forced), std::runtime_error);
    }
}

TEST_CASE("controller_measure") {
    const auto secret = sample_secret(8);
    const GhzOutcome g00p{{0, 0}, Sign::Plus};
    auto after_alice = ProtocolSession::start(secret, 2);
    {
        ForcedSelector forced(g00p, g00p, {});
        after_alice.alice_measure(1, forced);
        after_alice.alice_measure(2, forced);
    }
    const auto a = secret.alpha(), b = secret.beta(), c = secret.gamma(), d = secret.delta();

    SUBCASE("each sign pair has probability 1/4") {
        for (std::size_t i = 0; i < 4; ++i) {
            auto s = after_alice;
            ConstantSelector pick(i);
            const auto r = s.controller_measure(1, pick);
            CHECK(std::abs(r.probability - 0.25) < 1e-12);
            CHECK(s.state().n_qubits() == 2);
            CHECK(s.live_particles() == std::vector<std::string>{"b2", "d2"});
        }
    }
    SUBCASE("(+,+) hands the receiver the secret itself") {
        auto s = after_alice;
        ForcedSelector forced(g00p, g00p, {{kPlusX, kPlusX}});
        s.controller_measure(1, forced);
        const auto expected = ref::ket(2, {{"00", a}, {"01", b}, {"10", c}, {"11", d}});
        CHECK(distance_up_to_phase(s.receiver_state(), expected) < 1e-12);
    }
    SUBCASE("(-,-) flips beta and gamma") {
        auto s = after_alice;
        ForcedSelector forced(g00p, g00p, {{kMinusX, kMinusX}});
        const auto r = s.controller_measure(1, forced);
        CHECK(r.b == kMinusX);
        CHECK(r.d == kMinusX);
        const auto expected = ref::ket(2, {{"00", a}, {"01", -b}, {"10", -c}, {"11", d}});
        CHECK(distance_up_to_phase(s.receiver_state(), expected) < 1e-12);
    }
    SUBCASE("errors") {
        auto s = after_alice;
        ForcedSelector forced(g00p, g00p, {{kPlusX, kPlusX}});
        CHECK_THROWS_AS(s.controller_measure(0, forced), std::out_of_range);
        CHECK_THROWS_AS(s.controller_measure(2, forced), std::out_of_range);
        CHECK_THROWS_AS(s.receiver_state(), std::logic_error);
        CHECK_THROWS_AS(s.finish(), std::logic_error);
        s.controller_measure(1, forced);
        CHECK_THROWS_AS(s.controller_measure(1, forced), std::logic_error);
    }
}

TEST_CASE("correction_for reproduces the transcribed table") {
    CHECK(correction_for(0, 0, P, P) == PauliCorrection{Pauli::U0, Pauli::U0});
    CHECK(correction_for(1, 1, M, M) == PauliCorrection{Pauli::U3, Pauli::U3});
    CHECK(correction_for(0, 1, M, P) == PauliCorrection{Pauli::U1, Pauli::U2});
    for (const auto &row : kTable) {
        CHECK(correction_for(row.v1, row.v2, row.s1, row.s2) == row.correction);
    }
    CHECK_THROWS_AS(correction_for(2, 0, P, P), std::invalid_argument);
}

TEST_CASE("parity-generalized signs agree with the two-agent table") {
    // With one controller, P (x) P_b1 is the same sign as P (-1)^t for t in {0, 1}.
    for (const auto &row : kTable) {
        for (Sign p1 : {P, M}) {
            for (Sign p2 : {P, M}) {
                for (std::size_t t = 0; t < 2; ++t) {
                    for (std::size_t q = 0; q < 2; ++q) {
                        const Sign s1 = p1 * parity_sign(t);
                        const Sign s2 = p2 * parity_sign(q);
                        if (s1 == row.s1 && s2 == row.s2) {
                            CHECK(correction_for(row.v1, row.v2, s1, s2) == row.correction);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("charlie_reconstruct") {
    const auto secret = sample_secret(13);
    SUBCASE("every transcribed row is repaired by its listed correction") {
        for (const auto &row : kTable) {
            const auto fixed = charlie_reconstruct(table_state(row, secret), row.correction);
            CHECK(distance_up_to_phase(fixed, secret.as_state()) < 1e-12);
        }
    }
    SUBCASE("row 4 with U1 U1") {
        const auto fixed = charlie_reconstruct(table_state(kTable[3], secret), {Pauli::U1, Pauli::U1});
        CHECK(max_abs_diff(fixed, secret.as_state()) < 1e-12);
    }
    SUBCASE("row 11 with U3 U0") {
        const auto fixed = charlie_reconstruct(table_state(kTable[10], secret), {Pauli::U3, Pauli::U0});
        CHECK(max_abs_diff(fixed, secret.as_state()) < 1e-12);
    }
    SUBCASE("identity leaves the secret alone") {
        CHECK(charlie_reconstruct(secret.as_state(), {}) == secret.as_state());
    }
    SUBCASE("wrong qubit count") {
        CHECK_THROWS_AS(charlie_reconstruct(StateVector::basis(3, 0), {}), std::invalid_argument);
    }
}

TEST_CASE("simulated two-agent branches land on the transcribed table states") {
    const auto secret = sample_secret(99);
    std::array<int, 16> seen{};
    for (const auto &m1 : ghz_basis_family(2)) {
        for (const auto &m2 : ghz_basis_family(2)) {
            for (Sign sb : {P, M}) {
                for (Sign sd : {P, M}) {
                    ForcedSelector forced(m1.outcome, m2.outcome, {{XOutcome{sb}, XOutcome{sd}}});
                    auto session = ProtocolSession::start(secret, 2);
                    session.alice_measure(1, forced);
                    session.alice_measure(2, forced);
                    session.controller_measure(1, forced);
                    const std::size_t row = table_row(session.finish());
                    ++seen[row];
                    CHECK(distance_up_to_phase(session.receiver_state(), table_state(kTable[row], secret)) < 1e-12);
                    CHECK(session.correction() == kTable[row].correction);
                }
            }
        }
    }
    for (int hits : seen) {
        CHECK(hits == 16);
    }
}

TEST_CASE("run_protocol") {
    const auto secret = sample_secret(4);
    SUBCASE("forced branch records everything") {
        ForcedSelector forced({{0, 0}, P}, {{0, 0}, P}, {{kPlusX, kPlusX}});
        const auto tr = run_protocol(secret, 2, forced);
        CHECK(tr.final_fidelity >= 1.0 - 1e-10);
        CHECK(std::abs(tr.branch_probability - 1.0 / 64 * 1.0 / 4) < 1e-12);
        CHECK(tr.t == 0);
        CHECK(tr.q == 0);
        CHECK(tr.correction == PauliCorrection{Pauli::U0, Pauli::U0});
        REQUIRE(tr.messages.size() == 3);
        CHECK(tr.messages[0] == ClassicalMessage{"Alice", {0, 0}});
        CHECK(tr.messages[1] == ClassicalMessage{"Alice", {0, 0}});
        CHECK(tr.messages[2] == ClassicalMessage{"Bob_1", {0, 0}});
    }
    SUBCASE("Alice publishes four bits, controllers two each") {
        for (std::size_t n : {2, 3, 4}) {
            SamplingSelector sampler(n);
            const auto tr = run_protocol(secret, n, sampler);
            std::size_t alice_bits = 0;
            std::size_t controller_messages = 0;
            for (const auto &m : tr.messages) {
                CHECK(m.payload_bits.size() == 2);
                if (m.sender == "Alice") {
                    alice_bits += m.payload_bits.size();
                } else {
                    ++controller_messages;
                }
            }
            CHECK(alice_bits == 4);
            CHECK(controller_messages == n - 1);
            CHECK(tr.final_fidelity >= 1.0 - 1e-10);
        }
    }
    SUBCASE("parities count minus signs per side") {
        ForcedSelector forced({{1, 0, 1}, M}, {{0, 1, 1}, P}, {{kMinusX, kPlusX}, {kMinusX, kMinusX}});
        const auto tr = run_protocol(secret, 3, forced);
        CHECK(tr.t == 2);
        CHECK(tr.q == 1);
        // V1 = 1, s1 = - (+) = -, V2 = 1, s2 = + (-) = -
        CHECK(tr.correction == PauliCorrection{Pauli::U3, Pauli::U3});
        CHECK(tr.final_fidelity >= 1.0 - 1e-10);
    }
    SUBCASE("controller order must be a permutation") {
        SamplingSelector sampler(1);
        RunOptions repeated{.controller_order = {1, 1}};
        CHECK_THROWS_AS(run_protocol(secret, 3, sampler, repeated), std::logic_error);
        RunOptions short_order{.controller_order = {2}};
        CHECK_THROWS_AS(run_protocol(secret, 3, sampler, short_order), std::logic_error);
    }
}

TEST_CASE("efficiency_report") {
    const auto secret = sample_secret(6);
    SamplingSelector sampler(6);
    const auto two = efficiency_report(run_protocol(secret, 2, sampler));
    CHECK(two.qubits_used == 8);
    CHECK(two.qubits_carrying_information == 8);
    CHECK(two.ratio == 1.0);
    const auto five = efficiency_report(run_protocol(secret, 5, sampler));
    CHECK(five.qubits_used == 20);
    CHECK(five.qubits_carrying_information == 20);
    CHECK(five.ratio == 1.0);
}

TEST_CASE("SamplingSelector never picks impossible outcomes and is reproducible") {
    const std::vector<double> probabilities{0.0, 0.5, 0.0, 0.5};
    SamplingSelector a(77);
    SamplingSelector b(77);
    std::array<int, 4> counts{};
    for (int i = 0; i < 2000; ++i) {
        const auto pick = a.choose({}, probabilities);
        CHECK(pick == b.choose({}, probabilities));
        ++counts[pick];
    }
    CHECK(counts[0] == 0);
    CHECK(counts[2] == 0);
    CHECK(counts[1] > 850);
    CHECK(counts[3] > 850);
}
