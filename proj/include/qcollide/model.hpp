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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qcollide/qmat.hpp"

namespace qcollide {

/// A pure system qubit a|g> + b|e>.
struct PureQubit {
    Complex a;
    Complex b;

    static PureQubit ground() { return {1.0, 0.0}; }
    static PureQubit excited() { return {0.0, 1.0}; }
    /// (|g> + |e>)/sqrt(2), the maximally coherent state.
    static PureQubit plus();
    /// (|g> - |e>)/sqrt(2), orthogonal to plus().
    static PureQubit minus();
};

/// Thermal qubit diag(w_g, w_e) in the energy basis.
struct ThermalAncilla {
    double w_g = 1.0;
    double w_e = 0.0;

    static ThermalAncilla from_ground_weight(double w_g) { return {w_g, 1.0 - w_g}; }

    /// w_e > w_g corresponds to a negative temperature. Allowed, but callers
    /// may want to warn about it.
    bool population_inverted() const { return w_e > w_g; }
};

/// Unordered qubit pair stored with first < second.
struct QubitPair {
    std::size_t first = 0;
    std::size_t second = 1;

    friend bool operator==(const QubitPair&, const QubitPair&) = default;
};

struct CollisionUnitary {
    ComplexMatrix matrix;
    QubitPair pair;
    double p = 0.0;
    std::size_t n_qubits = 2;
};

/// A system qubit (index 0) plus 1-3 ancillas, as one density matrix over
/// 2^n_qubits levels. Basis order is big-endian over (A, B, C, D).
struct Register {
    ComplexMatrix rho;
    std::size_t n_qubits = 2;
    std::vector<std::string> labels;

    std::vector<std::size_t> dims() const { return std::vector<std::size_t>(n_qubits, 2); }
};

inline constexpr std::size_t kMinQubits = 2;
inline constexpr std::size_t kMaxQubits = 4;

void validate(const PureQubit& q);
void validate(const ThermalAncilla& t);

ComplexMatrix pure_qubit_density(const PureQubit& q);
ComplexMatrix thermal_density(const ThermalAncilla& t);

/// Thermal weights for the dimensionless gap beta * (E_e - E_g).
/// Values above 1e6 are treated as the zero-temperature limit.
ThermalAncilla thermal_from_beta(double beta_gap);

/// Builds the collision unitary acting on qubits pair.first < pair.second
/// of an n-qubit register; every other qubit is a spectator.
///
/// With i = pair.first and j = pair.second:
///   |..e_i..g_j..> -> sqrt(1-p)|..e_i..g_j..> + sqrt(p)|..g_i..e_j..>
///   |..g_i..e_j..> -> sqrt(1-p)|..g_i..e_j..> - sqrt(p)|..e_i..g_j..>
/// and states with equal occupation of i and j are left unchanged.
CollisionUnitary pair_collision_unitary(std::size_t n_qubits, QubitPair pair, double p);

/// rho_A (x) rho_B (x) ... with the system first.
Register composite_initial(const PureQubit& system, std::span<const ThermalAncilla> ancillas);

/// Reduced state of the system qubit.
ComplexMatrix reduced_system(const Register& reg);
/// Reduced state of all ancillas together (dimension 2^(n-1)).
ComplexMatrix reduced_environment(const Register& reg);

/// Throws OutOfRange unless first < second < n_qubits.
void validate_pair(QubitPair pair, std::size_t n_qubits);

}  // namespace qcollide
