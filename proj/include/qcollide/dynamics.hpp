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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcollide/model.hpp"
#include "qcollide/qmat.hpp"

namespace qcollide {

// Bounds every evolved state must satisfy.
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityFloor = -1e-9;

struct StateCheck {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;

    bool ok() const {
        return trace_error < kTraceTol && hermiticity_error < kHermiticityTol && min_eigenvalue > kPositivityFloor;
    }
};

StateCheck check_state(const ComplexMatrix& rho);

/// Throws ErrorCode::NumericalInvariant when check_state(rho) fails.
void require_valid_state(const ComplexMatrix& rho, std::string_view context);

enum class PairSelection {
    AllPairs,
    SystemAncillaOnly,
};

struct Schedule {
    std::size_t n_qubits = 2;
    std::vector<QubitPair> events;
    std::optional<std::uint64_t> seed;  // set iff the events were drawn at random
};

/// All pairs (i, j), i < j, in lexicographic order.
std::vector<QubitPair> candidate_pairs(std::size_t n_qubits, PairSelection selection = PairSelection::AllPairs);

Schedule repeated_schedule(std::size_t n_qubits, QubitPair pair, std::size_t n_events);

/// Uniform, independent draws over candidate_pairs(). Reproducible across
/// platforms: uses std::mt19937_64 with an explicit rejection step rather
/// than std::uniform_int_distribution.
Schedule random_schedule(std::size_t n_qubits, std::size_t n_events, std::uint64_t seed,
                         PairSelection selection = PairSelection::AllPairs);

void validate_schedule(const Schedule& schedule);

void apply_collision(Register& reg, const CollisionUnitary& u);
Register collide(const Register& reg, QubitPair pair, double p);

struct StepRecord {
    std::size_t n = 0;
    double coherence_a = 0.0;
    std::optional<double> coherence_env;
    std::optional<double> negativity;  // across the A | environment cut
    std::optional<double> trace_distance;
    std::array<double, 2> rho_a_diagonal{};
};

struct Trajectory {
    std::vector<StepRecord> steps;  // steps[0] is the initial state
    double p = 0.0;
    std::vector<ThermalAncilla> ancillas;
    Schedule schedule;  // empty events for the Markovian map
    ComplexMatrix final_rho_a;
    std::optional<Register> final_register;
    std::optional<Register> final_partner;

    std::vector<double> coherence_series() const;
    std::vector<double> trace_distance_series() const;
    std::vector<double> negativity_series() const;
    std::vector<double> coherence_env_series() const;
};

struct TrajectoryOptions {
    bool validate_states = true;
    bool record_entanglement = true;  // negativity + environment coherence
};

/// Evolves one system state, or two under the identical schedule, against the
/// given ancillas. With two systems the trace distance between the reduced
/// system states is recorded at every step; all other metrics refer to the
/// first system.
Trajectory run_trajectory(std::span<const PureQubit> systems, std::span<const ThermalAncilla> ancillas, double p,
                          const Schedule& schedule, const TrajectoryOptions& options = {});

/// One collision with a fresh thermal ancilla, traced out afterwards.
ComplexMatrix markovian_step(const ComplexMatrix& rho_a, double p, const ThermalAncilla& ancilla);

Trajectory markovian_trajectory(const PureQubit& first, const PureQubit& second, double p,
                                const ThermalAncilla& ancilla, std::size_t n_steps);

enum class OrbitMetric {
    CoherenceSystem,
    CoherenceEnvironment,
    Negativity,
    TraceDistance,
};

/// Inclusive range of step indices.
struct StepWindow {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const { return last - first + 1; }
};

inline constexpr std::size_t kDefaultWindowLength = 60;

/// The last 60 steps (or all of them when fewer exist).
StepWindow default_window(std::size_t n_collisions);

struct OrbitScenario {
    OrbitMetric metric = OrbitMetric::CoherenceSystem;
    PureQubit system = PureQubit::plus();
    PureQubit partner = PureQubit::minus();  // only used for TraceDistance
    ThermalAncilla ancilla = ThermalAncilla::from_ground_weight(0.8);
};

struct OrbitColumn {
    double p = 0.0;
    std::vector<double> values;  // one per step in the window
};

struct OrbitDiagram {
    std::vector<OrbitColumn> columns;  // ordered as the p grid
    StepWindow window;
    std::size_t n_collisions = 0;
    OrbitMetric metric = OrbitMetric::CoherenceSystem;
};

/// Repeated system-ancilla collisions on a single ancilla for every p in the
/// ascending grid. Grid points are independent and are spread over `threads`
/// workers (0 = hardware concurrency); the result order never depends on it.
OrbitDiagram orbit_sweep(std::span<const double> p_grid, std::size_t n_collisions, StepWindow window,
                         const OrbitScenario& scenario, unsigned threads = 0);

/// start, start + step, ... up to stop (inclusive within step * 1e-9).
std::vector<double> make_grid(double start, double stop, double step);

}  // namespace qcollide
