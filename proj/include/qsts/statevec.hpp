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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qsts {

using Complex = std::complex<double>;

/// Norm and probability assertions.
inline constexpr double kNormTolerance = 1e-10;
/// Unitarity of single-qubit operators.
inline constexpr double kUnitaryTolerance = 1e-12;
/// Projections with less weight than this are reported as impossible.
inline constexpr double kZeroProbability = 1e-14;

/// Position of a qubit inside a StateVector.
///
/// Qubit 0 is the most significant bit of the amplitude index, so the
/// ket |q0 q1 ... q(n-1)> reads left to right like the usual notation.
struct QubitIndex {
    std::size_t value = 0;

    friend auto operator<=>(QubitIndex, QubitIndex) = default;
};

enum class Normalization { Strict, Auto };

/// Dense, normalized pure state over n qubits.
class StateVector {
   public:
    /// Validates length 2^n_qubits and unit norm (or rescales under Auto).
    /// Bad input throws std::invalid_argument. Strict mode also rejects a
    /// norm outside kNormTolerance.
    static StateVector make(std::size_t n_qubits, std::vector<Complex> amplitudes,
                            Normalization mode = Normalization::Strict);

    /// Computational basis state |index>.
    static StateVector basis(std::size_t n_qubits, std::uint64_t index);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    /// <this|other>.
    Complex inner(const StateVector &other) const;

    friend bool operator==(const StateVector &, const StateVector &) = default;

   private:
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

    std::size_t n_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

/// 2x2 unitary, row-major.
class SingleQubitOp {
   public:
    using Matrix = std::array<Complex, 4>;

    /// Throws std::invalid_argument unless M M^dagger = I within kUnitaryTolerance.
    static SingleQubitOp make(const Matrix &m);

    static SingleQubitOp identity();
    static SingleQubitOp pauli_x();
    static SingleQubitOp pauli_y();
    static SingleQubitOp pauli_z();

    const Complex &operator()(std::size_t row, std::size_t col) const { return m_[2 * row + col]; }
    const Matrix &matrix() const noexcept { return m_; }

   private:
    explicit SingleQubitOp(const Matrix &m) : m_(m) {}
    Matrix m_;
};

/// Kronecker product; qubits of `a` come first.
StateVector tensor(const StateVector &a, const StateVector &b);

StateVector apply_single(const StateVector &state, QubitIndex q, const SingleQubitOp &op);

struct Projection {
    double probability = 0.0;
    /// Normalized state of the unmeasured qubits, in their original relative
    /// order. Empty when probability < kZeroProbability.
    std::optional<StateVector> post_state;
};

/// Projects `qubits` (in the listed order) onto `basis_vector` and removes
/// them from the register.
Projection project_subset(const StateVector &state, std::span<const QubitIndex> qubits,
                          const StateVector &basis_vector);

/// Outcome probabilities of a complete orthonormal measurement on `qubits`.
/// Throws std::invalid_argument if the basis is not orthonormal and complete
/// within kNormTolerance.
std::vector<double> outcome_probabilities(const StateVector &state, std::span<const QubitIndex> qubits,
                                          std::span<const StateVector> basis);

/// Permutes qubits: qubit k of the result is qubit order[k] of `state`.
StateVector reorder_qubits(const StateVector &state, std::span<const QubitIndex> order);

}  // namespace qsts
