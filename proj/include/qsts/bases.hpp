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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qsts/statevec.hpp"

namespace qsts {

enum class Sign : std::uint8_t { Plus, Minus };

/// +1 or -1.
int sign_factor(Sign s);
/// Sign product, (+)(-) = (-).
Sign operator*(Sign a, Sign b);
/// (-1)^count as a Sign.
Sign parity_sign(std::size_t minus_count);
/// Wire encoding: + -> 0, - -> 1.
std::uint8_t sign_bit(Sign s);
const char *to_string(Sign s);

/// Result of an (N+1)-particle GHZ-basis measurement, |G_{ij..k +/-}>.
struct GhzOutcome {
    std::vector<std::uint8_t> label_bits;
    Sign sign = Sign::Plus;

    friend bool operator==(const GhzOutcome &, const GhzOutcome &) = default;
};

/// Result of a sigma_x measurement, |+x> or |-x>.
struct XOutcome {
    Sign sign = Sign::Plus;

    friend bool operator==(const XOutcome &, const XOutcome &) = default;
};

/// "G01-" style label.
std::string to_string(const GhzOutcome &outcome);

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

StateVector bell_state(BellKind kind);

/// (|0 ij..k> +/- |1 ~i~j..~k>)/sqrt(2) on label_bits.size() + 1 qubits.
StateVector ghz_basis_vector(const GhzOutcome &outcome);

struct GhzBasisEntry {
    GhzOutcome outcome;
    StateVector vector;
};

/// All 2^(n_label_bits+1) GHZ vectors. Labels run in lexicographic order with
/// + before - for each label, so entry index = 2 * label + (sign == Minus).
std::vector<GhzBasisEntry> ghz_basis_family(std::size_t n_label_bits);

/// Position of `outcome` within ghz_basis_family(outcome.label_bits.size()).
std::size_t family_index(const GhzOutcome &outcome);
GhzOutcome ghz_outcome_at(std::size_t n_label_bits, std::size_t index);

struct XBasisEntry {
    XOutcome outcome;
    StateVector vector;
};

/// [(+, |+x>), (-, |-x>)].
std::vector<XBasisEntry> x_basis();

/// Bit value V: the last label bit.
std::uint8_t outcome_v(const GhzOutcome &outcome);
/// Sign P.
Sign outcome_p(const GhzOutcome &outcome);

}  // namespace qsts
