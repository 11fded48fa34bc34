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

// Exercises the shared library through its C header only.
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "qcollide/qcollide.h"

using Catch::Approx;

TEST_CASE("status names and version") {
    CHECK(std::strlen(qc_version()) > 0);
    CHECK(std::string(qc_status_name(QC_OK)) == "ok");
    CHECK(std::string(qc_status_name(QC_ERR_NUMERICAL)) == "numerical invariant violated");
}

TEST_CASE("null pointers are reported, not dereferenced") {
    CHECK(qc_register_create(nullptr, nullptr, 1, nullptr) == QC_ERR_NULL_POINTER);
    CHECK(qc_l1_coherence(nullptr, 2, nullptr) == QC_ERR_NULL_POINTER);
    CHECK(qc_schedule_size(nullptr, nullptr) == QC_ERR_NULL_POINTER);
    qc_register_free(nullptr);
    qc_schedule_free(nullptr);
    qc_trajectory_free(nullptr);
    qc_orbit_free(nullptr);
}

TEST_CASE("collision unitary through the C API") {
    std::vector<qc_complex> u(16);
    REQUIRE(qc_collision_unitary(2, 0, 1, 0.25, u.data(), u.size()) == QC_OK);
    CHECK(u[5].re == Approx(std::sqrt(0.75)));
    CHECK(u[6].re == Approx(0.5));
    CHECK(u[9].re == Approx(-0.5));
    CHECK(qc_collision_unitary(2, 0, 1, 0.25, u.data(), 4) == QC_ERR_BUFFER_TOO_SMALL);
    CHECK(qc_collision_unitary(2, 1, 0, 0.25, u.data(), u.size()) == QC_ERR_OUT_OF_RANGE);
    CHECK(qc_collision_unitary(2, 0, 1, 1.5, u.data(), u.size()) == QC_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(qc_last_error()) > 0);
}

TEST_CASE("register handle") {
    const qc_pure_qubit plus{{M_SQRT1_2, 0}, {M_SQRT1_2, 0}};
    const double w_g[] = {0.8};
    qc_register reg = nullptr;
    REQUIRE(qc_register_create(&plus, w_g, 1, &reg) == QC_OK);
    int n = 0;
    CHECK(qc_register_qubits(reg, &n) == QC_OK);
    CHECK(n == 2);

    CHECK(qc_register_collide(reg, 0, 1, 0.5) == QC_OK);
    double neg = 0.0;
    CHECK(qc_register_negativity(reg, &neg) == QC_OK);
    CHECK(neg == Approx(0.130565).margin(1e-6));

    qc_complex rho_a[4];
    CHECK(qc_register_system_state(reg, rho_a, 4) == QC_OK);
    double c = 0.0;
    CHECK(qc_l1_coherence(rho_a, 2, &c) == QC_OK);
    CHECK(c == Approx(M_SQRT1_2));

    qc_complex full[16];
    CHECK(qc_register_density(reg, full, 16) == QC_OK);
    CHECK(qc_negativity(full, 2, 2, &neg) == QC_OK);
    CHECK(neg == Approx(0.130565).margin(1e-6));

    CHECK(qc_register_collide(reg, 0, 2, 0.5) == QC_ERR_OUT_OF_RANGE);
    qc_register_free(reg);

    CHECK(qc_register_create(&plus, w_g, 4, &reg) == QC_ERR_INVALID_ARGUMENT);
    CHECK(reg == nullptr);
    const qc_pure_qubit bad{{1, 0}, {1, 0}};
    CHECK(qc_register_create(&bad, w_g, 1, &reg) == QC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("metrics through the C API") {
    const qc_complex plus[4] = {{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}};
    const qc_complex minus[4] = {{0.5, 0}, {-0.5, 0}, {-0.5, 0}, {0.5, 0}};
    double d = 0.0;
    CHECK(qc_trace_distance(plus, minus, 2, &d) == QC_OK);
    CHECK(d == Approx(1.0));
    const qc_complex skew[4] = {{0.5, 0}, {1.0, 0}, {0.0, 0}, {0.5, 0}};
    CHECK(qc_trace_distance(plus, skew, 2, &d) == QC_ERR_NOT_HERMITIAN);

    const double series[] = {1, M_SQRT1_2, 0, M_SQRT1_2, 1};
    qc_backflow_summary summary;
    size_t steps[4] = {};
    CHECK(qc_backflow(series, 5, 1e-9, &summary, steps, 4) == QC_OK);
    CHECK(summary.n_events == 2);
    CHECK(summary.total_backflow == Approx(1.0));
    CHECK(steps[0] == 2);
    CHECK(steps[1] == 3);
    size_t first_only[1] = {};
    CHECK(qc_backflow(series, 5, 1e-9, &summary, first_only, 1) == QC_OK);
    CHECK(summary.n_events == 2);
    CHECK(first_only[0] == 2);
    CHECK(qc_backflow(series, 1, 1e-9, &summary, nullptr, 0) == QC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("schedules and trajectories") {
    qc_schedule a = nullptr, b = nullptr;
    REQUIRE(qc_schedule_random(3, 100, 7, 0, &a) == QC_OK);
    REQUIRE(qc_schedule_random(3, 100, 7, 0, &b) == QC_OK);
    size_t n = 0;
    CHECK(qc_schedule_size(a, &n) == QC_OK);
    CHECK(n == 100);
    std::vector<int> pairs;
    for (size_t k = 0; k < n; ++k) {
        int i = 0, j = 0, i2 = 0, j2 = 0;
        qc_schedule_event(a, k, &i, &j);
        qc_schedule_event(b, k, &i2, &j2);
        CHECK(i == i2);
        CHECK(j == j2);
        pairs.push_back(i);
        pairs.push_back(j);
    }
    int has_seed = 0;
    uint64_t seed = 0;
    CHECK(qc_schedule_seed(a, &has_seed, &seed) == QC_OK);
    CHECK(has_seed == 1);
    CHECK(seed == 7);

    qc_schedule replay = nullptr;
    REQUIRE(qc_schedule_from_pairs(3, pairs.data(), n, &replay) == QC_OK);

    qc_trajectory_params params;
    qc_trajectory_params_default(&params);
    qc_trajectory t1 = nullptr, t2 = nullptr;
    REQUIRE(qc_trajectory_run(&params, a, &t1) == QC_OK);
    REQUIRE(qc_trajectory_run(&params, replay, &t2) == QC_OK);
    size_t len = 0;
    CHECK(qc_trajectory_length(t1, &len) == QC_OK);
    CHECK(len == 101);
    for (size_t k = 0; k < len; ++k) {
        qc_step s1, s2;
        qc_trajectory_step(t1, k, &s1);
        qc_trajectory_step(t2, k, &s2);
        CHECK(s1.trace_distance == s2.trace_distance);
        CHECK(s1.has_trace_distance == 1);
        CHECK(s1.has_entanglement == 1);
    }
    qc_step step;
    CHECK(qc_trajectory_step(t1, len, &step) == QC_ERR_OUT_OF_RANGE);

    const int bad_pairs[] = {0, 3};
    qc_schedule bad = nullptr;
    CHECK(qc_schedule_from_pairs(3, bad_pairs, 1, &bad) == QC_ERR_OUT_OF_RANGE);

    qc_trajectory_free(t1);
    qc_trajectory_free(t2);
    qc_schedule_free(a);
    qc_schedule_free(b);
    qc_schedule_free(replay);
}

TEST_CASE("markovian run through the C API") {
    qc_trajectory_params params;
    qc_trajectory_params_default(&params);
    params.p = 0.2;
    qc_trajectory t = nullptr;
    REQUIRE(qc_markovian_run(&params, 500, &t) == QC_OK);
    qc_complex rho[4];
    CHECK(qc_trajectory_final_system_state(t, rho, 4) == QC_OK);
    CHECK(std::abs(rho[0].re - 0.8) < 1e-6);
    CHECK(std::abs(rho[3].re - 0.2) < 1e-6);
    qc_trajectory_free(t);
}

TEST_CASE("orbit through the C API") {
    qc_orbit_params params;
    qc_orbit_params_default(&params);
    const double grid[] = {0.5, 0.75};
    qc_orbit orbit = nullptr;
    REQUIRE(qc_orbit_run(grid, 2, &params, &orbit) == QC_OK);
    size_t n = 0;
    CHECK(qc_orbit_size(orbit, &n) == QC_OK);
    CHECK(n == 2);
    double p = 0.0;
    const double* values = nullptr;
    size_t n_values = 0;
    CHECK(qc_orbit_column(orbit, 0, &p, &values, &n_values) == QC_OK);
    CHECK(p == 0.5);
    CHECK(n_values == 60);
    size_t clusters = 0, period = 0, distinct = 0;
    CHECK(qc_distinct_values(values, n_values, 1e-6, &clusters) == QC_OK);
    CHECK(clusters == 3);
    CHECK(qc_detect_period(values, n_values, 1e-8, 20, 3, &period, &distinct) == QC_OK);
    CHECK(period == 4);
    qc_orbit_free(orbit);

    CHECK(qc_orbit_run(grid, 0, &params, &orbit) == QC_ERR_INVALID_ARGUMENT);
}
