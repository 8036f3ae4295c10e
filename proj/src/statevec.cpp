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

#include "qsts/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsts {

namespace {

constexpr std::size_t kMaxQubits = 40;

std::uint64_t dimension_for(std::size_t n_qubits) {
    if (n_qubits > kMaxQubits) {
        throw std::invalid_argument("too many qubits: " + std::to_string(n_qubits));
    }
    return std::uint64_t{1} << n_qubits;
}

std::uint64_t bit_of(std::size_t n_qubits, QubitIndex q) {
    return std::uint64_t{1} << (n_qubits - 1 - q.value);
}

double squared_norm(std::span<const Complex> v) {
    double total = 0.0;
    for (const auto &a : v) {
        total += std::norm(a);
    }
    return total;
}

// Amplitude offsets for every assignment of `qubits`, with qubits[0] as the
// most significant bit of the assignment index.
std::vector<std::uint64_t> offset_table(std::size_t n_qubits, std::span<const QubitIndex> qubits) {
    std::vector<std::uint64_t> offsets{0};
    offsets.reserve(std::size_t{1} << qubits.size());
    for (QubitIndex q : qubits) {
        const std::uint64_t mask = bit_of(n_qubits, q);
        std::vector<std::uint64_t> next(offsets.size() * 2);
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            next[2 * i] = offsets[i];
            next[2 * i + 1] = offsets[i] | mask;
        }
        offsets = std::move(next);
    }
    return offsets;
}

void check_subset(std::size_t n_qubits, std::span<const QubitIndex> qubits) {
    std::vector<bool> seen(n_qubits, false);
    for (QubitIndex q : qubits) {
        if (q.value >= n_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(q.value) + " out of range");
        }
        if (seen[q.value]) {
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q.value));
        }
        seen[q.value] = true;
    }
}

std::vector<QubitIndex> complement(std::size_t n_qubits, std::span<const QubitIndex> qubits) {
    std::vector<bool> measured(n_qubits, false);
    for (QubitIndex q : qubits) {
        measured[q.value] = true;
    }
    std::vector<QubitIndex> rest;
    for (std::size_t k = 0; k < n_qubits; ++k) {
        if (!measured[k]) {
            rest.push_back(QubitIndex{k});
        }
    }
    return rest;
}

// Splits a register into a measured subset and the rest; shared by the
// projection routines.
class SubsetSplit {
   public:
    SubsetSplit(std::size_t n_qubits, std::span<const QubitIndex> qubits)
        : subset_offsets_(offset_table(n_qubits, qubits)),
          rest_offsets_(offset_table(n_qubits, complement(n_qubits, qubits))) {}

    std::size_t rest_dimension() const { return rest_offsets_.size(); }

    // Unnormalized <basis|psi> on the subset, as a vector over the rest.
    std::vector<Complex> contract(const StateVector &state, const StateVector &basis_vector) const {
        std::vector<std::pair<std::uint64_t, Complex>> terms;
        for (std::size_t s = 0; s < subset_offsets_.size(); ++s) {
            if (basis_vector[s] != Complex{}) {
                terms.emplace_back(subset_offsets_[s], std::conj(basis_vector[s]));
            }
        }
        std::vector<Complex> out(rest_offsets_.size());
        const auto amps = state.amplitudes();
        for (std::size_t r = 0; r < rest_offsets_.size(); ++r) {
            Complex acc{};
            for (const auto &[offset, coeff] : terms) {
                acc += coeff * amps[rest_offsets_[r] | offset];
            }
            out[r] = acc;
        }
        return out;
    }

    // Squared norms of <b|psi> for every b, in one sweep over the register.
    std::vector<double> weights(const StateVector &state, std::span<const StateVector> basis) const {
        std::vector<std::vector<std::pair<std::size_t, Complex>>> terms(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            for (std::size_t s = 0; s < subset_offsets_.size(); ++s) {
                if (basis[k][s] != Complex{}) {
                    terms[k].emplace_back(s, std::conj(basis[k][s]));
                }
            }
        }
        std::vector<double> out(basis.size(), 0.0);
        std::vector<Complex> local(subset_offsets_.size());
        const auto amps = state.amplitudes();
        for (std::uint64_t rest : rest_offsets_) {
            for (std::size_t s = 0; s < subset_offsets_.size(); ++s) {
                local[s] = amps[rest | subset_offsets_[s]];
            }
            for (std::size_t k = 0; k < basis.size(); ++k) {
                Complex acc{};
                for (const auto &[s, coeff] : terms[k]) {
                    acc += coeff * local[s];
                }
                out[k] += std::norm(acc);
            }
        }
        return out;
    }

   private:
    std::vector<std::uint64_t> subset_offsets_;
    std::vector<std::uint64_t> rest_offsets_;
};

}  // namespace

StateVector StateVector::make(std::size_t n_qubits, std::vector<Complex> amplitudes, Normalization mode) {
    const std::uint64_t dim = dimension_for(n_qubits);
    if (amplitudes.size() != dim) {
        throw std::invalid_argument("expected " + std::to_string(dim) + " amplitudes, got " +
                                    std::to_string(amplitudes.size()));
    }
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
    }
    const double norm = std::sqrt(squared_norm(amplitudes));
    if (norm == 0.0) {
        throw std::invalid_argument("zero vector is not a state");
    }
    if (mode == Normalization::Auto) {
        for (auto &a : amplitudes) {
            a /= norm;
        }
    } else if (std::abs(norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state norm " + std::to_string(norm) + " differs from 1");
    }
    return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
    const std::uint64_t dim = dimension_for(n_qubits);
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

Complex StateVector::inner(const StateVector &other) const {
    if (n_qubits_ != other.n_qubits_) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    Complex acc{};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return acc;
}

SingleQubitOp SingleQubitOp::make(const Matrix &m) {
    // m m^dagger, entry (r, c) = sum_k m[r][k] conj(m[c][k])
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            Complex acc = m[2 * r] * std::conj(m[2 * c]) + m[2 * r + 1] * std::conj(m[2 * c + 1]);
            const Complex expected = r == c ? 1.0 : 0.0;
            if (std::abs(acc - expected) > kUnitaryTolerance) {
                throw std::invalid_argument("operator is not unitary");
            }
        }
    }
    return SingleQubitOp(m);
}

SingleQubitOp SingleQubitOp::identity() { return SingleQubitOp({1.0, 0.0, 0.0, 1.0}); }
SingleQubitOp SingleQubitOp::pauli_x() { return SingleQubitOp({0.0, 1.0, 1.0, 0.0}); }
SingleQubitOp SingleQubitOp::pauli_y() { return SingleQubitOp({0.0, Complex{0, -1}, Complex{0, 1}, 0.0}); }
SingleQubitOp SingleQubitOp::pauli_z() { return SingleQubitOp({1.0, 0.0, 0.0, -1.0}); }

StateVector tensor(const StateVector &a, const StateVector &b) {
    const std::size_t n = a.n_qubits() + b.n_qubits();
    std::vector<Complex> amps(dimension_for(n));
    const std::size_t db = b.dimension();
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            amps[i * db + j] = a[i] * b[j];
        }
    }
    return StateVector::make(n, std::move(amps));
}

StateVector apply_single(const StateVector &state, QubitIndex q, const SingleQubitOp &op) {
    if (q.value >= state.n_qubits()) {
        throw std::out_of_range("qubit index " + std::to_string(q.value) + " out of range");
    }
    const std::uint64_t mask = bit_of(state.n_qubits(), q);
    const auto in = state.amplitudes();
    std::vector<Complex> out(in.begin(), in.end());
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const Complex zero = in[i];
        const Complex one = in[i | mask];
        out[i] = op(0, 0) * zero + op(0, 1) * one;
        out[i | mask] = op(1, 0) * zero + op(1, 1) * one;
    }
    return StateVector::make(state.n_qubits(), std::move(out));
}

Projection project_subset(const StateVector &state, std::span<const QubitIndex> qubits,
                          const StateVector &basis_vector) {
    check_subset(state.n_qubits(), qubits);
    if (basis_vector.n_qubits() != qubits.size()) {
        throw std::invalid_argument("basis vector spans " + std::to_string(basis_vector.n_qubits()) +
                                    " qubits, subset has " + std::to_string(qubits.size()));
    }
    const SubsetSplit split(state.n_qubits(), qubits);
    std::vector<Complex> residual = split.contract(state, basis_vector);
    const double probability = squared_norm(residual);
    if (probability < kZeroProbability) {
        return {probability, std::nullopt};
    }
    const double scale = 1.0 / std::sqrt(probability);
    for (auto &a : residual) {
        a *= scale;
    }
    return {probability, StateVector::make(state.n_qubits() - qubits.size(), std::move(residual))};
}

std::vector<double> outcome_probabilities(const StateVector &state, std::span<const QubitIndex> qubits,
                                          std::span<const StateVector> basis) {
    check_subset(state.n_qubits(), qubits);
    const std::size_t dim = std::size_t{1} << qubits.size();
    if (basis.size() != dim) {
        throw std::invalid_argument("basis has " + std::to_string(basis.size()) + " vectors, expected " +
                                    std::to_string(dim));
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].n_qubits() != qubits.size()) {
            throw std::invalid_argument("basis vector dimension mismatch");
        }
        for (std::size_t j = i; j < basis.size(); ++j) {
            const Complex expected = i == j ? 1.0 : 0.0;
            if (std::abs(basis[i].inner(basis[j]) - expected) > kNormTolerance) {
                throw std::invalid_argument("basis is not orthonormal");
            }
        }
    }
    return SubsetSplit(state.n_qubits(), qubits).weights(state, basis);
}

StateVector reorder_qubits(const StateVector &state, std::span<const QubitIndex> order) {
    check_subset(state.n_qubits(), order);
    if (order.size() != state.n_qubits()) {
        throw std::invalid_argument("reorder must list every qubit exactly once");
    }
    const auto source_offsets = offset_table(state.n_qubits(), order);
    std::vector<Complex> amps(state.dimension());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = state[source_offsets[i]];
    }
    return StateVector::make(state.n_qubits(), std::move(amps));
}

}  // namespace qsts
