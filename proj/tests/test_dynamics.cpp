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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include <catch_amalgamated.hpp>

#include "qcollide/analysis.hpp"
#include "qcollide/dynamics.hpp"
#include "qcollide/error.hpp"
#include "qcollide/metrics.hpp"
#include "qcollide/model.hpp"
#include "support.hpp"

using namespace qcollide;
using Catch::Approx;
using qcollide::testing::Sampler;

namespace {

const ThermalAncilla kBath{0.8, 0.2};
const std::array<ThermalAncilla, 1> kOneBath{kBath};
const std::array<PureQubit, 1> kPlus{PureQubit::plus()};
const std::array<PureQubit, 2> kPaired{PureQubit::plus(), PureQubit::minus()};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Register initial_plus() { return composite_initial(PureQubit::plus(), kOneBath); }

}  // namespace

TEST_CASE("collide leaves the double ground state alone") {
    const std::array<ThermalAncilla, 1> cold{ThermalAncilla{1.0, 0.0}};
    const auto reg = composite_initial(PureQubit::ground(), cold);
    for (double p : {0.1, 0.5, 0.9}) CHECK(collide(reg, {0, 1}, p).rho == reg.rho);
}

TEST_CASE("collide with p = 0 is the identity") {
    Sampler s(2);
    const std::array<ThermalAncilla, 2> bath{kBath, ThermalAncilla{0.6, 0.4}};
    const auto reg = composite_initial(s.pure_qubit(), bath);
    for (const auto& pair : candidate_pairs(3)) CHECK(max_abs_diff(collide(reg, pair, 0.0).rho, reg.rho) == 0.0);
}

TEST_CASE("four collisions at p = 1/2 restore the system coherence") {
    auto reg = initial_plus();
    for (int k = 0; k < 4; ++k) reg = collide(reg, {0, 1}, 0.5);
    CHECK(l1_coherence(reduced_system(reg)) == Approx(1.0).margin(1e-12));
    // The swap rotation has turned by pi: the system now sits in the minus
    // state, and only after eight collisions is the register restored.
    CHECK(max_abs_diff(reduced_system(reg), pure_qubit_density(PureQubit::minus())) < 1e-12);
    for (int k = 0; k < 4; ++k) reg = collide(reg, {0, 1}, 0.5);
    CHECK(max_abs_diff(reg.rho, initial_plus().rho) < 1e-12);
}

TEST_CASE("collide rejects bad pairs") {
    CHECK_THROWS_AS(collide(initial_plus(), {0, 2}, 0.5), Error);
    CHECK_THROWS_AS(collide(initial_plus(), {0, 1}, 2.0), Error);
}

TEST_CASE("trajectory matches a hand-rolled 4x4 evolution") {
    for (double p : {0.3, 0.5, 0.8}) {
        const double c = std::sqrt(1.0 - p), s = std::sqrt(p);
        const ComplexMatrix u{{1, 0, 0, 0}, {0, c, s, 0}, {0, -s, c, 0}, {0, 0, 0, 1}};
        ComplexMatrix rho = initial_plus().rho;
        const auto traj = run_trajectory(kPlus, kOneBath, p, repeated_schedule(2, {0, 1}, 50));
        const std::array<std::size_t, 2> dims{2, 2};
        for (std::size_t n = 1; n <= 50; ++n) {
            rho = u * rho * u.adjoint();
            const auto rho_a = partial_trace(rho, dims, std::size_t{0});
            CHECK(std::abs(traj.steps[n].coherence_a - l1_coherence(rho_a)) < 1e-12);
            CHECK(std::abs(traj.steps[n].rho_a_diagonal[0] - rho_a(0, 0).real()) < 1e-12);
        }
        CHECK(max_abs_diff(traj.final_register->rho, rho) < 1e-12);
    }
}

TEST_CASE("paired trajectory cycles through three distances at p = 1/2") {
    const auto traj = run_trajectory(kPaired, kOneBath, 0.5, repeated_schedule(2, {0, 1}, 100));
    REQUIRE(traj.steps.size() == 101);
    const auto d = traj.trace_distance_series();
    for (std::size_t n = 0; n < d.size(); ++n) {
        const double expected[] = {1.0, kInvSqrt2, 0.0, kInvSqrt2};
        CHECK(std::abs(d[n] - expected[n % 4]) < 1e-10);
    }
    CHECK(!backflow_events(d).markovian());
}

TEST_CASE("trajectory with p = 0 keeps every metric constant") {
    const std::array<ThermalAncilla, 2> bath{kBath, kBath};
    const auto traj = run_trajectory(kPaired, bath, 0.0, random_schedule(3, 20, 1));
    for (const auto& step : traj.steps) {
        CHECK(step.coherence_a == Approx(traj.steps[0].coherence_a));
        CHECK(*step.trace_distance == Approx(*traj.steps[0].trace_distance));
        CHECK(*step.negativity == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("trajectory states stay physical over long runs") {
    const std::array<ThermalAncilla, 3> bath{kBath, ThermalAncilla{0.7, 0.3}, ThermalAncilla{0.9, 0.1}};
    const auto schedule = random_schedule(4, 1000, 77);
    const auto traj = run_trajectory(kPaired, bath, 0.63, schedule);
    const auto check = check_state(traj.final_register->rho);
    CHECK(check.ok());
    CHECK(check.trace_error < kTraceTol);
    CHECK(traj.steps.size() == schedule.events.size() + 1);
}

TEST_CASE("trajectory argument errors") {
    const auto schedule = repeated_schedule(3, {0, 1}, 5);
    CHECK_THROWS_AS(run_trajectory(kPlus, kOneBath, 0.5, schedule), Error);
    CHECK_THROWS_AS(run_trajectory(std::span<const PureQubit>{}, kOneBath, 0.5, repeated_schedule(2, {0, 1}, 3)),
                    Error);
}

TEST_CASE("random schedules") {
    SECTION("deterministic per seed") {
        const auto a = random_schedule(3, 100, 42), b = random_schedule(3, 100, 42);
        CHECK(a.events == b.events);
        CHECK(a.seed == std::optional<std::uint64_t>{42});
        CHECK(random_schedule(3, 100, 43).events != a.events);
    }
    SECTION("uniform over pairs") {
        const auto sched = random_schedule(3, 100000, 5);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
        for (const auto& e : sched.events) ++counts[{e.first, e.second}];
        REQUIRE(counts.size() == 3);
        for (const auto& [pair, count] : counts) CHECK(std::abs(count / 1e5 - 1.0 / 3.0) < 0.01);
    }
    SECTION("four-qubit domain") {
        const auto sched = random_schedule(4, 100, 9);
        for (const auto& e : sched.events) {
            CHECK(e.first < e.second);
            CHECK(e.second < 4);
        }
    }
    SECTION("system-ancilla restriction") {
        const auto sched = random_schedule(4, 200, 9, PairSelection::SystemAncillaOnly);
        for (const auto& e : sched.events) CHECK(e.first == 0);
    }
    SECTION("no events") { CHECK_THROWS_AS(random_schedule(3, 0, 1), Error); }
}

TEST_CASE("markovian step") {
    const std::array<double, 2> d{0.8, 0.2};
    const auto thermal = ComplexMatrix::diagonal(d);
    CHECK(max_abs_diff(markovian_step(thermal, 0.37, kBath), thermal) < 1e-12);

    Sampler s(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = s.density(2);
        CHECK(max_abs_diff(markovian_step(rho, 1.0, kBath), thermal) < 1e-15);
    }
}

TEST_CASE("markovian step equals a collision with a fresh ancilla") {
    Sampler s(37);
    const std::array<std::size_t, 2> dims{2, 2};
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = s.density(2);
        const double p = s.uniform();
        const auto bath = ThermalAncilla::from_ground_weight(s.uniform());
        const auto joint = conjugate_by(pair_collision_unitary(2, {0, 1}, p).matrix, kron(rho, thermal_density(bath)));
        CHECK(max_abs_diff(markovian_step(rho, p, bath), partial_trace(joint, dims, std::size_t{0})) < 1e-13);
    }
}

TEST_CASE("markovian trajectories") {
    const auto half = markovian_trajectory(PureQubit::plus(), PureQubit::minus(), 0.5, kBath, 200);
    const auto d = half.trace_distance_series();
    for (std::size_t n = 0; n + 1 < d.size(); ++n) {
        CHECK(d[n + 1] <= d[n]);
        if (d[n] > 1e-10) CHECK(d[n + 1] < d[n]);
    }
    for (std::size_t n = 0; n < 40; ++n) CHECK(d[n] == Approx(std::pow(0.5, n / 2.0)).margin(1e-12));
    CHECK(d.back() < 1e-12);

    const auto frozen = markovian_trajectory(PureQubit::plus(), PureQubit::minus(), 0.0, kBath, 20);
    for (double x : frozen.trace_distance_series()) CHECK(x == Approx(1.0).margin(1e-12));

    const auto slow = markovian_trajectory(PureQubit::plus(), PureQubit::minus(), 0.1, kBath, 500);
    CHECK(std::abs(slow.final_rho_a(0, 0).real() - 0.8) < 1e-6);
    CHECK(std::abs(slow.final_rho_a(1, 1).real() - 0.2) < 1e-6);
}

TEST_CASE("orbit sweeps") {
    const auto window = default_window(100);
    CHECK(window.first == 41);
    CHECK(window.last == 100);

    SECTION("p = 1/2 has three values") {
        const std::vector<double> grid{0.5};
        const auto diagram = orbit_sweep(grid, 100, window, {});
        REQUIRE(diagram.columns.size() == 1);
        CHECK(diagram.columns[0].values.size() == 60);
        CHECK(distinct_values(diagram.columns[0].values) == 3);
    }
    SECTION("p = 3/4 is a period-3 cycle that stays coherent") {
        const std::vector<double> grid{0.75};
        const auto values = orbit_sweep(grid, 100, window, {}).columns[0].values;
        CHECK(detect_period_tail(values).period == std::optional<std::size_t>{3});
        // The three orbit points take only two distinct coherence values.
        CHECK(distinct_values(values) == 2);
        CHECK(*std::min_element(values.begin(), values.end()) > 0.05);
    }
    SECTION("thread count does not change the result") {
        const auto grid = make_grid(0.5, 0.6, 0.01);
        const auto serial = orbit_sweep(grid, 100, window, {}, 1);
        const auto parallel = orbit_sweep(grid, 100, window, {}, 4);
        REQUIRE(serial.columns.size() == grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK(serial.columns[k].p == grid[k]);
            CHECK(serial.columns[k].values == parallel.columns[k].values);
        }
    }
    SECTION("errors") {
        CHECK_THROWS_AS(orbit_sweep(std::span<const double>{}, 100, window, {}), Error);
        const std::vector<double> descending{0.6, 0.5};
        CHECK_THROWS_AS(orbit_sweep(descending, 100, window, {}), Error);
        const std::vector<double> grid{0.5};
        CHECK_THROWS_AS(orbit_sweep(grid, 100, StepWindow{50, 101}, {}), Error);
    }
}

TEST_CASE("grids") {
    CHECK(make_grid(0.5, 0.85, 0.005).size() == 71);
    CHECK(make_grid(0.5, 0.5, 0.01).size() == 1);
    CHECK_THROWS_AS(make_grid(0.6, 0.5, 0.01), Error);
    CHECK_THROWS_AS(make_grid(0.5, 0.6, 0.0), Error);
}
