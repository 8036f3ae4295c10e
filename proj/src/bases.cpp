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


#include "qsts/bases.hpp"

#include <cmath>
#include <stdexcept>

namespace qsts {

namespace {

void check_label(const std::vector<std::uint8_t> &bits) {
    if (bits.empty()) {
        throw std::invalid_argument("GHZ outcome needs at least one label bit");
    }
    for (auto b : bits) {
        if (b > 1) {
            throw std::invalid_argument("GHZ label bits must be 0 or 1");
        }
    }
}

}  // namespace

int sign_factor(Sign s) { return s == Sign::Plus ? 1 : -1; }

Sign operator*(Sign a, Sign b) { return a == b ? Sign::Plus : Sign::Minus; }

Sign parity_sign(std::size_t minus_count) { return minus_count % 2 == 0 ? Sign::Plus : Sign::Minus; }

std::uint8_t sign_bit(Sign s) { return s == Sign::Plus ? 0 : 1; }

const char *to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

std::string to_string(const GhzOutcome &outcome) {
    std::string out = "G";
    for (auto b : outcome.label_bits) {
        out += b ? '1' : '0';
    }
    out += to_string(outcome.sign);
    return out;
}

StateVector bell_state(BellKind kind) {
    switch (kind) {
        case BellKind::PhiPlus:
            return ghz_basis_vector({{0}, Sign::Plus});
        case BellKind::PhiMinus:
            return ghz_basis_vector({{0}, Sign::Minus});
        case BellKind::PsiPlus:
            return ghz_basis_vector({{1}, Sign::Plus});
        case BellKind::PsiMinus:
            return ghz_basis_vector({{1}, Sign::Minus});
    }
    throw std::invalid_argument("unknown Bell state");
}

StateVector ghz_basis_vector(const GhzOutcome &outcome) {
    check_label(outcome.label_bits);
    const std::size_t n = outcome.label_bits.size() + 1;
    std::uint64_t label = 0;
    for (auto b : outcome.label_bits) {
        label = (label << 1) | b;
    }
    const std::uint64_t all_ones = (std::uint64_t{1} << n) - 1;
    std::vector<Complex> amps(std::size_t{1} << n);
    const double h = 1.0 / std::sqrt(2.0);
    amps[label] = h;
    amps[all_ones ^ label] = h * sign_factor(outcome.sign);
    return StateVector::make(n, std::move(amps));
}

std::vector<GhzBasisEntry> ghz_basis_family(std::size_t n_label_bits) {
    if (n_label_bits == 0) {
        throw std::invalid_argument("GHZ family needs at least one label bit");
    }
    const std::size_t count = std::size_t{1} << (n_label_bits + 1);
    std::vector<GhzBasisEntry> family;
    family.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        GhzOutcome outcome = ghz_outcome_at(n_label_bits, i);
        StateVector v = ghz_basis_vector(outcome);
        family.push_back({std::move(outcome), std::move(v)});
    }
    return family;
}

std::size_t family_index(const GhzOutcome &outcome) {
    check_label(outcome.label_bits);
    std::size_t label = 0;
    for (auto b : outcome.label_bits) {
        label = (label << 1) | b;
    }
    return 2 * label + sign_bit(outcome.sign);
}

GhzOutcome ghz_outcome_at(std::size_t n_label_bits, std::size_t index) {
    if (n_label_bits == 0 || index >= (std::size_t{1} << (n_label_bits + 1))) {
        throw std::out_of_range("GHZ family index out of range");
    }
    GhzOutcome outcome;
    outcome.sign = index & 1 ? Sign::Minus : Sign::Plus;
    const std::size_t label = index >> 1;
    outcome.label_bits.resize(n_label_bits);
    for (std::size_t k = 0; k < n_label_bits; ++k) {
        outcome.label_bits[k] = (label >> (n_label_bits - 1 - k)) & 1;
    }
    return outcome;
}

std::vector<XBasisEntry> x_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    return {
        {XOutcome{Sign::Plus}, StateVector::make(1, {h, h})},
        {XOutcome{Sign::Minus}, StateVector::make(1, {h, -h})},
    };
}

std::uint8_t outcome_v(const GhzOutcome &outcome) {
    check_label(outcome.label_bits);
    return outcome.label_bits.back();
}

Sign outcome_p(const GhzOutcome &outcome) { return outcome.sign; }

}  // namespace qsts
