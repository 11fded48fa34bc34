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

#include "qcollide/qcollide.h"

#include <algorithm>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qcollide/analysis.hpp"
#include "qcollide/dynamics.hpp"
#include "qcollide/error.hpp"
#include "qcollide/metrics.hpp"
#include "qcollide/model.hpp"
#include "qcollide/qmat.hpp"

struct qc_register_s {
    qcollide::Register reg;
};

struct qc_schedule_s {
    qcollide::Schedule schedule;
};

struct qc_trajectory_s {
    qcollide::Trajectory traj;
};

struct qc_orbit_s {
    qcollide::OrbitDiagram diagram;
};

namespace {

thread_local std::string g_last_error;

qc_status fail(qc_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

qc_status to_status(qcollide::ErrorCode code) {
    switch (code) {
        case qcollide::ErrorCode::InvalidArgument: return QC_ERR_INVALID_ARGUMENT;
        case qcollide::ErrorCode::DimensionMismatch: return QC_ERR_DIMENSION;
        case qcollide::ErrorCode::NotHermitian: return QC_ERR_NOT_HERMITIAN;
        case qcollide::ErrorCode::OutOfRange: return QC_ERR_OUT_OF_RANGE;
        case qcollide::ErrorCode::NumericalInvariant: return QC_ERR_NUMERICAL;
    }
    return QC_ERR_INTERNAL;
}

struct BufferTooSmall {
    std::string message;
};

template <class F>
qc_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return QC_OK;
    } catch (const qcollide::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const BufferTooSmall& e) {
        return fail(QC_ERR_BUFFER_TOO_SMALL, e.message);
    } catch (const std::bad_alloc&) {
        return fail(QC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(QC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QC_ERR_INTERNAL, "unknown error");
    }
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
    return ((ptrs == nullptr) || ...);
}

qcollide::Complex from_c(qc_complex z) { return {z.re, z.im}; }
qc_complex to_c(qcollide::Complex z) { return {z.real(), z.imag()}; }

qcollide::PureQubit from_c(const qc_pure_qubit& q) { return {from_c(q.a), from_c(q.b)}; }
qc_pure_qubit to_c(const qcollide::PureQubit& q) { return {to_c(q.a), to_c(q.b)}; }

qcollide::ComplexMatrix matrix_from_c(const qc_complex* data, std::size_t dim) {
    std::vector<qcollide::Complex> entries(dim * dim);
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = from_c(data[k]);
    return qcollide::ComplexMatrix(dim, std::move(entries));
}

void matrix_to_c(const qcollide::ComplexMatrix& m, qc_complex* out, std::size_t out_len) {
    const auto data = m.data();
    if (out_len < data.size()) {
        throw BufferTooSmall{"output buffer holds " + std::to_string(out_len) + " entries, need " +
                             std::to_string(data.size())};
    }
    std::transform(data.begin(), data.end(), out, [](qcollide::Complex z) { return to_c(z); });
}

qcollide::QubitPair pair_from_c(int first, int second) {
    if (first < 0 || second < 0) throw qcollide::Error(qcollide::ErrorCode::OutOfRange, "negative qubit index");
    return {static_cast<std::size_t>(first), static_cast<std::size_t>(second)};
}

std::size_t qubits_from_c(int n_qubits) {
    if (n_qubits < 0) throw qcollide::Error(qcollide::ErrorCode::OutOfRange, "negative qubit count");
    return static_cast<std::size_t>(n_qubits);
}

qcollide::OrbitMetric metric_from_c(qc_metric m) {
    switch (m) {
        case QC_METRIC_COHERENCE: return qcollide::OrbitMetric::CoherenceSystem;
        case QC_METRIC_COHERENCE_ENV: return qcollide::OrbitMetric::CoherenceEnvironment;
        case QC_METRIC_NEGATIVITY: return qcollide::OrbitMetric::Negativity;
        case QC_METRIC_TRACE_DISTANCE: return qcollide::OrbitMetric::TraceDistance;
    }
    throw qcollide::Error(qcollide::ErrorCode::InvalidArgument, "unknown metric");
}

#define QC_REQUIRE_NONNULL(...) \
    if (any_null(__VA_ARGS__)) return fail(QC_ERR_NULL_POINTER, "null pointer argument")

}  // namespace

extern "C" {

const char* qc_version(void) { return "0.1.0"; }

const char* qc_last_error(void) { return g_last_error.c_str(); }

const char* qc_status_name(qc_status status) {
    switch (status) {
        case QC_OK: return "ok";
        case QC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QC_ERR_DIMENSION: return "dimension mismatch";
        case QC_ERR_NOT_HERMITIAN: return "not hermitian";
        case QC_ERR_OUT_OF_RANGE: return "out of range";
        case QC_ERR_NUMERICAL: return "numerical invariant violated";
        case QC_ERR_NULL_POINTER: return "null pointer";
        case QC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case QC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

qc_status qc_thermal_from_beta(double beta_gap, double* w_g, double* w_e) {
    QC_REQUIRE_NONNULL(w_g, w_e);
    return guarded([&] {
        const auto t = qcollide::thermal_from_beta(beta_gap);
        *w_g = t.w_g;
        *w_e = t.w_e;
    });
}

qc_status qc_collision_unitary(int n_qubits, int first, int second, double p, qc_complex* out, size_t out_len) {
    QC_REQUIRE_NONNULL(out);
    return guarded([&] {
        const auto u = qcollide::pair_collision_unitary(qubits_from_c(n_qubits), pair_from_c(first, second), p);
        matrix_to_c(u.matrix, out, out_len);
    });
}

qc_status qc_register_create(const qc_pure_qubit* system, const double* w_g, int n_ancillas, qc_register* out) {
    QC_REQUIRE_NONNULL(system, w_g, out);
    *out = nullptr;
    return guarded([&] {
        if (n_ancillas < 1 || n_ancillas > 3) {
            throw qcollide::Error(qcollide::ErrorCode::InvalidArgument, "between 1 and 3 ancillas are supported");
        }
        std::vector<qcollide::ThermalAncilla> ancillas;
        for (int k = 0; k < n_ancillas; ++k) ancillas.push_back(qcollide::ThermalAncilla::from_ground_weight(w_g[k]));
        *out = new qc_register_s{qcollide::composite_initial(from_c(*system), ancillas)};
    });
}

void qc_register_free(qc_register reg) { delete reg; }

qc_status qc_register_qubits(qc_register reg, int* n_qubits) {
    QC_REQUIRE_NONNULL(reg, n_qubits);
    *n_qubits = static_cast<int>(reg->reg.n_qubits);
    return QC_OK;
}

qc_status qc_register_collide(qc_register reg, int first, int second, double p) {
    QC_REQUIRE_NONNULL(reg);
    return guarded([&] { reg->reg = qcollide::collide(reg->reg, pair_from_c(first, second), p); });
}

qc_status qc_register_density(qc_register reg, qc_complex* out, size_t out_len) {
    QC_REQUIRE_NONNULL(reg, out);
    return guarded([&] { matrix_to_c(reg->reg.rho, out, out_len); });
}

qc_status qc_register_system_state(qc_register reg, qc_complex* out, size_t out_len) {
    QC_REQUIRE_NONNULL(reg, out);
    return guarded([&] { matrix_to_c(qcollide::reduced_system(reg->reg), out, out_len); });
}

qc_status qc_register_negativity(qc_register reg, double* out) {
    QC_REQUIRE_NONNULL(reg, out);
    return guarded([&] {
        const std::size_t dims[] = {2, std::size_t{1} << (reg->reg.n_qubits - 1)};
        *out = qcollide::negativity(reg->reg.rho, dims);
    });
}

qc_status qc_l1_coherence(const qc_complex* rho, size_t dim, double* out) {
    QC_REQUIRE_NONNULL(rho, out);
    return guarded([&] { *out = qcollide::l1_coherence(matrix_from_c(rho, dim)); });
}

qc_status qc_trace_distance(const qc_complex* r1, const qc_complex* r2, size_t dim, double* out) {
    QC_REQUIRE_NONNULL(r1, r2, out);
    return guarded([&] { *out = qcollide::trace_distance(matrix_from_c(r1, dim), matrix_from_c(r2, dim)); });
}

qc_status qc_negativity(const qc_complex* rho, size_t dim_a, size_t dim_b, double* out) {
    QC_REQUIRE_NONNULL(rho, out);
    return guarded([&] {
        const std::size_t dims[] = {dim_a, dim_b};
        *out = qcollide::negativity(matrix_from_c(rho, dim_a * dim_b), dims);
    });
}

qc_status qc_backflow(const double* series, size_t len, double tol, qc_backflow_summary* summary, size_t* events,
                      size_t events_len) {
    QC_REQUIRE_NONNULL(series, summary);
    return guarded([&] {
        const auto report = qcollide::backflow_events({series, len}, tol);
        summary->n_events = report.events.size();
        summary->total_backflow = report.total_backflow;
        summary->max_distance = report.max_distance;
        if (events != nullptr) {
            const std::size_t n = std::min(events_len, report.events.size());
            for (std::size_t k = 0; k < n; ++k) events[k] = report.events[k].step;
        }
    });
}

qc_status qc_detect_period(const double* series, size_t len, double tol, size_t max_period, size_t min_repeats,
                           size_t* period, size_t* n_distinct) {
    QC_REQUIRE_NONNULL(series, period);
    return guarded([&] {
        const auto verdict = qcollide::detect_period({series, len}, {tol, max_period, min_repeats});
        *period = verdict.period.value_or(0);
        if (n_distinct != nullptr) *n_distinct = verdict.n_distinct;
    });
}

qc_status qc_distinct_values(const double* series, size_t len, double cluster_tol, size_t* count) {
    QC_REQUIRE_NONNULL(series, count);
    return guarded([&] { *count = qcollide::distinct_values({series, len}, cluster_tol); });
}

qc_status qc_schedule_repeated(int n_qubits, int first, int second, size_t n_events, qc_schedule* out) {
    QC_REQUIRE_NONNULL(out);
    *out = nullptr;
    return guarded([&] {
        *out = new qc_schedule_s{
            qcollide::repeated_schedule(qubits_from_c(n_qubits), pair_from_c(first, second), n_events)};
    });
}

qc_status qc_schedule_random(int n_qubits, size_t n_events, uint64_t seed, int system_ancilla_only,
                             qc_schedule* out) {
    QC_REQUIRE_NONNULL(out);
    *out = nullptr;
    return guarded([&] {
        const auto selection = system_ancilla_only ? qcollide::PairSelection::SystemAncillaOnly
                                                   : qcollide::PairSelection::AllPairs;
        *out = new qc_schedule_s{qcollide::random_schedule(qubits_from_c(n_qubits), n_events, seed, selection)};
    });
}

qc_status qc_schedule_from_pairs(int n_qubits, const int* pairs, size_t n_events, qc_schedule* out) {
    QC_REQUIRE_NONNULL(out);
    if (n_events > 0 && pairs == nullptr) return fail(QC_ERR_NULL_POINTER, "null pointer argument");
    *out = nullptr;
    return guarded([&] {
        qcollide::Schedule schedule{qubits_from_c(n_qubits), {}, std::nullopt};
        for (std::size_t k = 0; k < n_events; ++k) schedule.events.push_back(pair_from_c(pairs[2 * k], pairs[2 * k + 1]));
        if (schedule.n_qubits < qcollide::kMinQubits || schedule.n_qubits > qcollide::kMaxQubits) {
            throw qcollide::Error(qcollide::ErrorCode::OutOfRange, "register must hold 2 to 4 qubits");
        }
        qcollide::validate_schedule(schedule);
        *out = new qc_schedule_s{std::move(schedule)};
    });
}

void qc_schedule_free(qc_schedule schedule) { delete schedule; }

qc_status qc_schedule_size(qc_schedule schedule, size_t* n_events) {
    QC_REQUIRE_NONNULL(schedule, n_events);
    *n_events = schedule->schedule.events.size();
    return QC_OK;
}

qc_status qc_schedule_event(qc_schedule schedule, size_t k, int* first, int* second) {
    QC_REQUIRE_NONNULL(schedule, first, second);
    if (k >= schedule->schedule.events.size()) return fail(QC_ERR_OUT_OF_RANGE, "schedule event index out of range");
    *first = static_cast<int>(schedule->schedule.events[k].first);
    *second = static_cast<int>(schedule->schedule.events[k].second);
    return QC_OK;
}

qc_status qc_schedule_seed(qc_schedule schedule, int* has_seed, uint64_t* seed) {
    QC_REQUIRE_NONNULL(schedule, has_seed, seed);
    *has_seed = schedule->schedule.seed.has_value() ? 1 : 0;
    *seed = schedule->schedule.seed.value_or(0);
    return QC_OK;
}

void qc_trajectory_params_default(qc_trajectory_params* params) {
    if (params == nullptr) return;
    params->p = 0.5;
    params->w_g = 0.8;
    params->system = to_c(qcollide::PureQubit::plus());
    params->partner = to_c(qcollide::PureQubit::minus());
    params->paired = 1;
    params->record_entanglement = 1;
}

qc_status qc_trajectory_run(const qc_trajectory_params* params, qc_schedule schedule, qc_trajectory* out) {
    QC_REQUIRE_NONNULL(params, schedule, out);
    *out = nullptr;
    return guarded([&] {
        std::vector<qcollide::PureQubit> systems{from_c(params->system)};
        if (params->paired) systems.push_back(from_c(params->partner));
        const std::size_t n_ancillas = schedule->schedule.n_qubits - 1;
        const std::vector<qcollide::ThermalAncilla> ancillas(n_ancillas,
                                                             qcollide::ThermalAncilla::from_ground_weight(params->w_g));
        qcollide::TrajectoryOptions options;
        options.record_entanglement = params->record_entanglement != 0;
        *out = new qc_trajectory_s{qcollide::run_trajectory(systems, ancillas, params->p, schedule->schedule, options)};
    });
}

qc_status qc_markovian_run(const qc_trajectory_params* params, size_t n_steps, qc_trajectory* out) {
    QC_REQUIRE_NONNULL(params, out);
    *out = nullptr;
    return guarded([&] {
        *out = new qc_trajectory_s{qcollide::markovian_trajectory(
            from_c(params->system), from_c(params->partner), params->p,
            qcollide::ThermalAncilla::from_ground_weight(params->w_g), n_steps)};
    });
}

void qc_trajectory_free(qc_trajectory traj) { delete traj; }

qc_status qc_trajectory_length(qc_trajectory traj, size_t* n_steps) {
    QC_REQUIRE_NONNULL(traj, n_steps);
    *n_steps = traj->traj.steps.size();
    return QC_OK;
}

qc_status qc_trajectory_step(qc_trajectory traj, size_t k, qc_step* out) {
    QC_REQUIRE_NONNULL(traj, out);
    if (k >= traj->traj.steps.size()) return fail(QC_ERR_OUT_OF_RANGE, "trajectory step index out of range");
    const auto& s = traj->traj.steps[k];
    *out = qc_step{};
    out->n = s.n;
    out->coherence_a = s.coherence_a;
    out->has_entanglement = s.negativity.has_value() ? 1 : 0;
    out->coherence_env = s.coherence_env.value_or(0.0);
    out->negativity = s.negativity.value_or(0.0);
    out->has_trace_distance = s.trace_distance.has_value() ? 1 : 0;
    out->trace_distance = s.trace_distance.value_or(0.0);
    out->rho_a_diagonal[0] = s.rho_a_diagonal[0];
    out->rho_a_diagonal[1] = s.rho_a_diagonal[1];
    return QC_OK;
}

qc_status qc_trajectory_final_system_state(qc_trajectory traj, qc_complex* out, size_t out_len) {
    QC_REQUIRE_NONNULL(traj, out);
    return guarded([&] { matrix_to_c(traj->traj.final_rho_a, out, out_len); });
}

void qc_orbit_params_default(qc_orbit_params* params) {
    if (params == nullptr) return;
    params->n_collisions = 100;
    const auto window = qcollide::default_window(100);
    params->window_first = window.first;
    params->window_last = window.last;
    params->metric = QC_METRIC_COHERENCE;
    params->w_g = 0.8;
    params->threads = 0;
}

qc_status qc_orbit_run(const double* p_grid, size_t n_points, const qc_orbit_params* params, qc_orbit* out) {
    QC_REQUIRE_NONNULL(params, out);
    if (n_points > 0 && p_grid == nullptr) return fail(QC_ERR_NULL_POINTER, "null pointer argument");
    *out = nullptr;
    return guarded([&] {
        qcollide::OrbitScenario scenario;
        scenario.metric = metric_from_c(params->metric);
        scenario.ancilla = qcollide::ThermalAncilla::from_ground_weight(params->w_g);
        *out = new qc_orbit_s{qcollide::orbit_sweep({p_grid, n_points}, params->n_collisions,
                                                    {params->window_first, params->window_last}, scenario,
                                                    params->threads)};
    });
}

void qc_orbit_free(qc_orbit orbit) { delete orbit; }

qc_status qc_orbit_size(qc_orbit orbit, size_t* n_points) {
    QC_REQUIRE_NONNULL(orbit, n_points);
    *n_points = orbit->diagram.columns.size();
    return QC_OK;
}

qc_status qc_orbit_column(qc_orbit orbit, size_t k, double* p, const double** values, size_t* n_values) {
    QC_REQUIRE_NONNULL(orbit, p, values, n_values);
    if (k >= orbit->diagram.columns.size()) return fail(QC_ERR_OUT_OF_RANGE, "orbit column index out of range");
    const auto& col = orbit->diagram.columns[k];
    *p = col.p;
    *values = col.values.data();
    *n_values = col.values.size();
    return QC_OK;
}

}  // extern "C"
