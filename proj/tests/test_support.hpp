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


// Shared test helpers and slow reference routines. The reference code works on
// bit strings ("0110", first qubit leftmost) rather than masks and offset
// tables, so it shares no index arithmetic with the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qsts/protocol.hpp"
#include "qsts/random.hpp"
#include "qsts/statevec.hpp"

namespace qsts::testing {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline StateVector random_state(std::mt19937_64 &rng, std::size_t n_qubits) {
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    for (auto &a : amps) {
        a = {standard_normal(rng), standard_normal(rng)};
    }
    return StateVector::make(n_qubits, std::move(amps), Normalization::Auto);
}

/// e^{i phi} [[a, -conj(b)], [b, conj(a)]] for a random unit (a, b).
inline SingleQubitOp random_unitary(std::mt19937_64 &rng) {
    Complex a{standard_normal(rng), standard_normal(rng)};
    Complex b{standard_normal(rng), standard_normal(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    const Complex phase = std::polar(1.0, 2.0 * M_PI * unit_uniform(rng));
    return SingleQubitOp::make({phase * a, -phase * std::conj(b), phase * b, phase * std::conj(a)});
}

/// Largest entrywise difference after removing the global phase of `b`
/// relative to `a`.
inline double distance_up_to_phase(const StateVector &a, const StateVector &b) {
    const Complex overlap = b.inner(a);
    const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        worst = std::max(worst, std::abs(a[i] - phase * b[i]));
    }
    return worst;
}

inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

namespace ref {

inline std::string bits(std::uint64_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t k = 0; k < n; ++k) {
        if (index % 2) {
            s[n - 1 - k] = '1';
        }
        index /= 2;
    }
    return s;
}

inline std::uint64_t index(const std::string &s) { return s.empty() ? 0 : std::stoull(s, nullptr, 2); }

/// State from a sparse {bit string: amplitude} map.
inline StateVector ket(std::size_t n, const std::map<std::string, Complex> &terms) {
    std::vector<Complex> amps(std::size_t{1} << n);
    for (const auto &[label, amp] : terms) {
        amps[index(label)] += amp;
    }
    return StateVector::make(n, std::move(amps), Normalization::Auto);
}

struct Projection {
    double probability = 0.0;
    std::vector<Complex> residual;  // unnormalized
};

/// <basis| on `subset` (listed order) applied to `state`, by splitting
/// every basis label character by character.
inline Projection project(const StateVector &state, const std::vector<std::size_t> &subset,
                          const StateVector &basis) {
    const std::size_t n = state.n_qubits();
    Projection out;
    out.residual.assign(std::size_t{1} << (n - subset.size()), Complex{});
    for (std::uint64_t i = 0; i < state.dimension(); ++i) {
        const std::string full = bits(i, n);
        std::string sub;
        for (auto q : subset) {
            sub += full[q];
        }
        std::string rest;
        for (std::size_t q = 0; q < n; ++q) {
            bool measured = false;
            for (auto m : subset) {
                measured = measured || m == q;
            }
            if (!measured) {
                rest += full[q];
            }
        }
        out.residual[index(rest)] += std::conj(basis[index(sub)]) * state[i];
    }
    for (const auto &r : out.residual) {
        out.probability += std::norm(r);
    }
    return out;
}

/// Particle names in register order, spelled out independently of
/// ParticleRegistry.
inline std::vector<std::string> particle_order(std::size_t n_agents) {
    std::vector<std::string> names{"x", "y"};
    for (std::size_t i = 1; i <= n_agents; ++i) {
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= n_agents; ++i) {
        names.push_back("c" + std::to_string(i));
        names.push_back("d" + std::to_string(i));
    }
    return names;
}

/// Secret on (x, y) times phi+ on every (a_i, b_i) and (c_i, d_i), built by
/// enumerating the bit assignments that carry weight.
inline StateVector resource_state(const SecretState &secret, std::size_t n_agents) {
    const auto names = particle_order(n_agents);
    const std::size_t n = names.size();
    const std::size_t pairs = 2 * n_agents;
    const double pair_weight = std::pow(kInvSqrt2, static_cast<double>(pairs));
    std::map<std::string, Complex> terms;
    for (std::uint64_t xy = 0; xy < 4; ++xy) {
        for (std::uint64_t e = 0; e < (std::uint64_t{1} << pairs); ++e) {
            std::map<std::string, char> bit;
            bit["x"] = (xy >> 1) ? '1' : '0';
            bit["y"] = (xy & 1) ? '1' : '0';
            for (std::size_t i = 1; i <= n_agents; ++i) {
                const char ab = ((e >> (i - 1)) & 1) ? '1' : '0';
                const char cd = ((e >> (n_agents + i - 1)) & 1) ? '1' : '0';
                bit["a" + std::to_string(i)] = bit["b" + std::to_string(i)] = ab;
                bit["c" + std::to_string(i)] = bit["d" + std::to_string(i)] = cd;
            }
            std::string label;
            for (const auto &name : names) {
                label += bit[name];
            }
            terms[label] += secret.amplitudes()[xy] * pair_weight;
        }
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    for (const auto &[label, amp] : terms) {
        amps[index(label)] = amp;
    }
    return StateVector::make(n, std::move(amps));
}

}  // namespace ref

}  // namespace qsts::testing
