// Copyright 2026 The qcollide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcollide/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcollide/error.hpp"

namespace qcollide {
namespace {

constexpr double kNormTol = 1e-12;
constexpr double kBetaCap = 1e6;

void validate_qubit_count(std::size_t n_qubits) {
    if (n_qubits < kMinQubits || n_qubits > kMaxQubits) {
        throw Error(ErrorCode::OutOfRange, "register must hold 2 to 4 qubits, got " + std::to_string(n_qubits));
    }
}

}  // namespace

PureQubit PureQubit::plus() {
    const double h = 1.0 / std::sqrt(2.0);
    return {h, h};
}

PureQubit PureQubit::minus() {
    const double h = 1.0 / std::sqrt(2.0);
    return {h, -h};
}

void validate(const PureQubit& q) {
    const double norm = std::norm(q.a) + std::norm(q.b);
    if (!(std::abs(norm - 1.0) <= kNormTol)) {
        throw Error(ErrorCode::InvalidArgument, "pure qubit is not normalized: |a|^2 + |b|^2 = " + std::to_string(norm));
    }
}

void validate(const ThermalAncilla& t) {
    if (!(t.w_g >= 0.0 && t.w_g <= 1.0 && t.w_e >= 0.0 && t.w_e <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "thermal weights must lie in [0, 1]");
    }
    if (!(std::abs(t.w_g + t.w_e - 1.0) <= kNormTol)) {
        throw Error(ErrorCode::InvalidArgument, "thermal weights must sum to 1");
    }
}

void validate_pair(QubitPair pair, std::size_t n_qubits) {
    if (!(pair.first < pair.second && pair.second < n_qubits)) {
        throw Error(ErrorCode::OutOfRange, "invalid qubit pair (" + std::to_string(pair.first) + ", " +
                                               std::to_string(pair.second) + ") for " + std::to_string(n_qubits) +
                                               " qubits");
    }
}

ComplexMatrix pure_qubit_density(const PureQubit& q) {
    validate(q);
    return ComplexMatrix{{std::norm(q.a), q.a * std::conj(q.b)}, {std::conj(q.a) * q.b, std::norm(q.b)}};
}

ComplexMatrix thermal_density(const ThermalAncilla& t) {
    validate(t);
    const double w[] = {t.w_g, t.w_e};
    return ComplexMatrix::diagonal(w);
}

ThermalAncilla thermal_from_beta(double beta_gap) {
    if (std::isnan(beta_gap) || beta_gap < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "beta * (E_e - E_g) must be non-negative");
    }
    const double x = std::min(beta_gap, kBetaCap);
    // w_e / w_g = exp(-x) with w_g + w_e = 1.
    const double boltzmann = std::exp(-x);
    const double w_e = boltzmann / (1.0 + boltzmann);
    return {1.0 - w_e, w_e};
}

CollisionUnitary pair_collision_unitary(std::size_t n_qubits, QubitPair pair, double p) {
    validate_qubit_count(n_qubits);
    validate_pair(pair, n_qubits);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "interaction probability must lie in [0, 1]");
    }

    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t bit_i = std::size_t{1} << (n_qubits - 1 - pair.first);
    const std::size_t bit_j = std::size_t{1} << (n_qubits - 1 - pair.second);
    const double stay = std::sqrt(1.0 - p);
    const double hop = std::sqrt(p);

    ComplexMatrix u(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        const bool excited_i = (s & bit_i) != 0;
        const bool excited_j = (s & bit_j) != 0;
        if (excited_i == excited_j) {
            u(s, s) = 1.0;
            continue;
        }
        const std::size_t swapped = s ^ bit_i ^ bit_j;
        u(s, s) = stay;
        // Column s is the image of basis state s.
        u(swapped, s) = excited_i ? hop : -hop;
    }
    return {std::move(u), pair, p, n_qubits};
}

Register composite_initial(const PureQubit& system, std::span<const ThermalAncilla> ancillas) {
    if (ancillas.empty() || ancillas.size() > kMaxQubits - 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "between 1 and 3 ancillas are supported, got " + std::to_string(ancillas.size()));
    }
    static const char* const kLabels[] = {"A", "B", "C", "D"};

    Register reg;
    reg.rho = pure_qubit_density(system);
    reg.n_qubits = 1 + ancillas.size();
    reg.labels.emplace_back(kLabels[0]);
    for (std::size_t k = 0; k < ancillas.size(); ++k) {
        reg.rho = kron(reg.rho, thermal_density(ancillas[k]));
        reg.labels.emplace_back(kLabels[k + 1]);
    }
    return reg;
}

ComplexMatrix reduced_system(const Register& reg) {
    const auto dims = reg.dims();
    return partial_trace(reg.rho, dims, std::size_t{0});
}

ComplexMatrix reduced_environment(const Register& reg) {
    const auto dims = reg.dims();
    std::vector<std::size_t> keep(reg.n_qubits - 1);
    std::iota(keep.begin(), keep.end(), std::size_t{1});
    return partial_trace(reg.rho, dims, keep);
}

}  // namespace qcollide
