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

#include "qcollide/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "qcollide/error.hpp"
#include "qcollide/metrics.hpp"

namespace qcollide {
namespace {

void validate_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "interaction probability must lie in [0, 1]");
}

// Unbiased draw from [0, bound) on top of the fully specified mt19937_64.
std::size_t draw_index(std::mt19937_64& engine, std::size_t bound) {
    const std::uint64_t range = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine();
    while (x >= limit) x = engine();
    return static_cast<std::size_t>(x % range);
}

std::array<double, 2> diagonal_of(const ComplexMatrix& rho_a) { return {rho_a(0, 0).real(), rho_a(1, 1).real()}; }

std::vector<double> collect(const std::vector<StepRecord>& steps, std::optional<double> StepRecord::*field,
                            const char* name) {
    std::vector<double> out;
    out.reserve(steps.size());
    for (const auto& s : steps) {
        if (!(s.*field)) throw Error(ErrorCode::InvalidArgument, std::string("trajectory does not record ") + name);
        out.push_back(*(s.*field));
    }
    return out;
}

double orbit_value(const StepRecord& step, OrbitMetric metric) {
    switch (metric) {
        case OrbitMetric::CoherenceSystem: return step.coherence_a;
        case OrbitMetric::CoherenceEnvironment: return step.coherence_env.value();
        case OrbitMetric::Negativity: return step.negativity.value();
        case OrbitMetric::TraceDistance: return step.trace_distance.value();
    }
    return 0.0;
}

}  // namespace

StateCheck check_state(const ComplexMatrix& rho) {
    StateCheck check;
    check.trace_error = std::abs(rho.trace() - 1.0);
    check.hermiticity_error = hermiticity_error(rho);
    if (check.hermiticity_error < kHermiticityTol) {
        check.min_eigenvalue = hermitian_eigenvalues(rho).front();
    } else {
        check.min_eigenvalue = -std::numeric_limits<double>::infinity();
    }
    return check;
}

void require_valid_state(const ComplexMatrix& rho, std::string_view context) {
    const StateCheck c = check_state(rho);
    if (!c.ok()) {
        throw Error(ErrorCode::NumericalInvariant,
                    std::string(context) + ": state left the physical region (|Tr - 1| = " +
                        std::to_string(c.trace_error) + ", hermiticity = " + std::to_string(c.hermiticity_error) +
                        ", min eigenvalue = " + std::to_string(c.min_eigenvalue) + ")");
    }
}

std::vector<QubitPair> candidate_pairs(std::size_t n_qubits, PairSelection selection) {
    if (n_qubits < kMinQubits || n_qubits > kMaxQubits) {
        throw Error(ErrorCode::OutOfRange, "register must hold 2 to 4 qubits");
    }
    std::vector<QubitPair> pairs;
    for (std::size_t i = 0; i < n_qubits; ++i) {
        if (selection == PairSelection::SystemAncillaOnly && i > 0) break;
        for (std::size_t j = i + 1; j < n_qubits; ++j) pairs.push_back({i, j});
    }
    return pairs;
}

Schedule repeated_schedule(std::size_t n_qubits, QubitPair pair, std::size_t n_events) {
    validate_pair(pair, n_qubits);
    return {n_qubits, std::vector<QubitPair>(n_events, pair), std::nullopt};
}

Schedule random_schedule(std::size_t n_qubits, std::size_t n_events, std::uint64_t seed, PairSelection selection) {
    if (n_events == 0) throw Error(ErrorCode::InvalidArgument, "random_schedule: need at least one event");
    const auto pairs = candidate_pairs(n_qubits, selection);
    std::mt19937_64 engine(seed);
    Schedule schedule{n_qubits, {}, seed};
    schedule.events.reserve(n_events);
    for (std::size_t k = 0; k < n_events; ++k) schedule.events.push_back(pairs[draw_index(engine, pairs.size())]);
    return schedule;
}

void validate_schedule(const Schedule& schedule) {
    for (const auto& e : schedule.events) validate_pair(e, schedule.n_qubits);
}

void apply_collision(Register& reg, const CollisionUnitary& u) {
    if (u.n_qubits != reg.n_qubits) {
        throw Error(ErrorCode::DimensionMismatch, "collision unitary and register differ in qubit count");
    }
    reg.rho = conjugate_by(u.matrix, reg.rho);
}

Register collide(const Register& reg, QubitPair pair, double p) {
    Register out = reg;
    apply_collision(out, pair_collision_unitary(reg.n_qubits, pair, p));
    return out;
}

std::vector<double> Trajectory::coherence_series() const {
    std::vector<double> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.coherence_a);
    return out;
}

std::vector<double> Trajectory::trace_distance_series() const {
    return collect(steps, &StepRecord::trace_distance, "trace distance");
}

std::vector<double> Trajectory::negativity_series() const {
    return collect(steps, &StepRecord::negativity, "negativity");
}

std::vector<double> Trajectory::coherence_env_series() const {
    return collect(steps, &StepRecord::coherence_env, "environment coherence");
}

Trajectory run_trajectory(std::span<const PureQubit> systems, std::span<const ThermalAncilla> ancillas, double p,
                          const Schedule& schedule, const TrajectoryOptions& options) {
    if (systems.empty() || systems.size() > 2) {
        throw Error(ErrorCode::InvalidArgument, "run_trajectory takes one or two system states");
    }
    validate_probability(p);
    if (schedule.n_qubits != ancillas.size() + 1) {
        throw Error(ErrorCode::DimensionMismatch, "schedule is for " + std::to_string(schedule.n_qubits) +
                                                      " qubits but the register has " +
                                                      std::to_string(ancillas.size() + 1));
    }
    validate_schedule(schedule);

    Trajectory traj;
    traj.p = p;
    traj.ancillas.assign(ancillas.begin(), ancillas.end());
    traj.schedule = schedule;

    std::vector<Register> regs;
    for (const auto& s : systems) regs.push_back(composite_initial(s, ancillas));

    const std::size_t n_qubits = regs.front().n_qubits;
    const std::size_t env_dim = std::size_t{1} << (n_qubits - 1);
    const std::size_t cut[] = {2, env_dim};

    // One unitary per distinct pair.
    std::vector<std::optional<CollisionUnitary>> unitaries(n_qubits * n_qubits);
    auto unitary_for = [&](QubitPair pair) -> const CollisionUnitary& {
        auto& slot = unitaries[pair.first * n_qubits + pair.second];
        if (!slot) slot = pair_collision_unitary(n_qubits, pair, p);
        return *slot;
    };

    auto record = [&](std::size_t n) {
        if (options.validate_states) {
            for (const auto& r : regs) require_valid_state(r.rho, "step " + std::to_string(n));
        }
        StepRecord step;
        step.n = n;
        const ComplexMatrix rho_a = reduced_system(regs.front());
        step.coherence_a = l1_coherence(rho_a);
        step.rho_a_diagonal = diagonal_of(rho_a);
        if (options.record_entanglement) {
            step.coherence_env = l1_coherence(reduced_environment(regs.front()));
            step.negativity = negativity(regs.front().rho, cut);
        }
        if (regs.size() == 2) step.trace_distance = trace_distance(rho_a, reduced_system(regs[1]));
        traj.steps.push_back(step);
    };

    traj.steps.reserve(schedule.events.size() + 1);
    record(0);
    for (std::size_t k = 0; k < schedule.events.size(); ++k) {
        const CollisionUnitary& u = unitary_for(schedule.events[k]);
        for (auto& r : regs) apply_collision(r, u);
        record(k + 1);
    }

    traj.final_rho_a = reduced_system(regs.front());
    traj.final_register = regs.front();
    if (regs.size() == 2) traj.final_partner = regs[1];
    return traj;
}

ComplexMatrix markovian_step(const ComplexMatrix& rho_a, double p, const ThermalAncilla& ancilla) {
    validate_probability(p);
    validate(ancilla);
    if (rho_a.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "markovian_step acts on a single qubit");

    // Closed form of Tr_env[U (rho (x) diag(w_g, w_e)) U^dagger] for the
    // collision unitary: populations relax towards (w_g, w_e) at rate p,
    // coherences shrink by sqrt(1 - p).
    const double g = rho_a(0, 0).real();
    const double e = rho_a(1, 1).real();
    const double w_g = ancilla.w_g;
    const double w_e = ancilla.w_e;
    const double damp = std::sqrt(1.0 - p);

    ComplexMatrix out(2);
    out(0, 0) = w_g * (g + p * e) + w_e * (1.0 - p) * g;
    out(1, 1) = w_g * (1.0 - p) * e + w_e * (e + p * g);
    out(0, 1) = damp * rho_a(0, 1);
    out(1, 0) = damp * rho_a(1, 0);
    return out;
}

Trajectory markovian_trajectory(const PureQubit& first, const PureQubit& second, double p,
                                const ThermalAncilla& ancilla, std::size_t n_steps) {
    validate_probability(p);
    validate(ancilla);

    Trajectory traj;
    traj.p = p;
    traj.ancillas = {ancilla};
    traj.schedule = Schedule{2, {}, std::nullopt};

    ComplexMatrix r1 = pure_qubit_density(first);
    ComplexMatrix r2 = pure_qubit_density(second);
    traj.steps.reserve(n_steps + 1);
    for (std::size_t n = 0;; ++n) {
        require_valid_state(r1, "markovian step " + std::to_string(n));
        require_valid_state(r2, "markovian step " + std::to_string(n));
        StepRecord step;
        step.n = n;
        step.coherence_a = l1_coherence(r1);
        step.trace_distance = trace_distance(r1, r2);
        step.rho_a_diagonal = diagonal_of(r1);
        traj.steps.push_back(step);
        if (n == n_steps) break;
        r1 = markovian_step(r1, p, ancilla);
        r2 = markovian_step(r2, p, ancilla);
    }
    traj.final_rho_a = r1;
    return traj;
}

StepWindow default_window(std::size_t n_collisions) {
    const std::size_t first = n_collisions + 1 > kDefaultWindowLength ? n_collisions + 1 - kDefaultWindowLength : 0;
    return {first, n_collisions};
}

OrbitDiagram orbit_sweep(std::span<const double> p_grid, std::size_t n_collisions, StepWindow window,
                         const OrbitScenario& scenario, unsigned threads) {
    if (p_grid.empty()) throw Error(ErrorCode::InvalidArgument, "orbit_sweep: empty p grid");
    for (std::size_t k = 0; k < p_grid.size(); ++k) {
        validate_probability(p_grid[k]);
        if (k > 0 && !(p_grid[k] > p_grid[k - 1])) {
            throw Error(ErrorCode::InvalidArgument, "orbit_sweep: p grid must be strictly ascending");
        }
    }
    if (window.first > window.last || window.last > n_collisions) {
        throw Error(ErrorCode::OutOfRange, "orbit_sweep: window must lie within [0, n_collisions]");
    }

    const bool paired = scenario.metric == OrbitMetric::TraceDistance;
    const bool entangled =
        scenario.metric == OrbitMetric::Negativity || scenario.metric == OrbitMetric::CoherenceEnvironment;
    std::vector<PureQubit> systems{scenario.system};
    if (paired) systems.push_back(scenario.partner);
    const ThermalAncilla ancillas[] = {scenario.ancilla};
    const Schedule schedule = repeated_schedule(2, {0, 1}, n_collisions);
    const TrajectoryOptions options{true, entangled};

    OrbitDiagram diagram;
    diagram.window = window;
    diagram.n_collisions = n_collisions;
    diagram.metric = scenario.metric;
    diagram.columns.resize(p_grid.size());

    auto compute = [&](std::size_t k) {
        const Trajectory traj = run_trajectory(systems, ancillas, p_grid[k], schedule, options);
        OrbitColumn col{p_grid[k], {}};
        col.values.reserve(window.size());
        for (std::size_t n = window.first; n <= window.last; ++n) col.values.push_back(orbit_value(traj.steps[n], scenario.metric));
        diagram.columns[k] = std::move(col);
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, p_grid.size()));
    if (workers <= 1) {
        for (std::size_t k = 0; k < p_grid.size(); ++k) compute(k);
        return diagram;
    }

    // Strided partition: each worker owns a disjoint set of columns.
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < p_grid.size(); k += workers) compute(k);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return diagram;
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw Error(ErrorCode::InvalidArgument, "grid step must be positive and bounds finite");
    }
    if (stop < start) throw Error(ErrorCode::InvalidArgument, "grid stop lies below start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
    return grid;
}

}  // namespace qcollide
