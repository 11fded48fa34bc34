/*
 * Copyright 2026 The qcollide Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the qcollide collision-model engine.
 *
 * Every function returns a qc_status. On failure a human-readable message is
 * available from qc_last_error() on the calling thread until the next call.
 * Objects are opaque handles created by a *_create / *_run function and
 * released with the matching *_free; freeing NULL is a no-op.
 *
 * Matrices cross the boundary as row-major arrays of qc_complex. Basis order
 * is big-endian over the qubits (A, B, C, D) with |g> = 0 and |e> = 1.
 */
#ifndef QCOLLIDE_QCOLLIDE_H
#define QCOLLIDE_QCOLLIDE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QCOLLIDE_BUILDING_LIBRARY)
#    define QC_API __declspec(dllexport)
#  else
#    define QC_API __declspec(dllimport)
#  endif
#else
#  define QC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
    QC_OK = 0,
    QC_ERR_INVALID_ARGUMENT = 1,
    QC_ERR_DIMENSION = 2,
    QC_ERR_NOT_HERMITIAN = 3,
    QC_ERR_OUT_OF_RANGE = 4,
    QC_ERR_NUMERICAL = 5, /* an evolved state left the physical region */
    QC_ERR_NULL_POINTER = 6,
    QC_ERR_BUFFER_TOO_SMALL = 7,
    QC_ERR_INTERNAL = 99
} qc_status;

typedef struct qc_complex {
    double re;
    double im;
} qc_complex;

/* a|g> + b|e> */
typedef struct qc_pure_qubit {
    qc_complex a;
    qc_complex b;
} qc_pure_qubit;

QC_API const char* qc_version(void);
QC_API const char* qc_last_error(void);
QC_API const char* qc_status_name(qc_status status);

/* ---- model --------------------------------------------------------------- */

QC_API qc_status qc_thermal_from_beta(double beta_gap, double* w_g, double* w_e);

/* Writes the 2^n x 2^n collision unitary for qubits first < second. */
QC_API qc_status qc_collision_unitary(int n_qubits, int first, int second, double p, qc_complex* out,
                                      size_t out_len);

typedef struct qc_register_s* qc_register;

/* System state plus n_ancillas (1-3) thermal ancillas with ground weights w_g[k]. */
QC_API qc_status qc_register_create(const qc_pure_qubit* system, const double* w_g, int n_ancillas,
                                    qc_register* out);
QC_API void qc_register_free(qc_register reg);
QC_API qc_status qc_register_qubits(qc_register reg, int* n_qubits);
QC_API qc_status qc_register_collide(qc_register reg, int first, int second, double p);
/* Full density matrix; out_len must be at least 4^n_qubits. */
QC_API qc_status qc_register_density(qc_register reg, qc_complex* out, size_t out_len);
/* Reduced 2x2 system state (4 entries). */
QC_API qc_status qc_register_system_state(qc_register reg, qc_complex* out, size_t out_len);
/* Negativity across the A | environment cut. */
QC_API qc_status qc_register_negativity(qc_register reg, double* out);

/* ---- metrics on raw matrices --------------------------------------------- */

QC_API qc_status qc_l1_coherence(const qc_complex* rho, size_t dim, double* out);
QC_API qc_status qc_trace_distance(const qc_complex* r1, const qc_complex* r2, size_t dim, double* out);
QC_API qc_status qc_negativity(const qc_complex* rho, size_t dim_a, size_t dim_b, double* out);

typedef struct qc_backflow_summary {
    size_t n_events;
    double total_backflow;
    double max_distance;
} qc_backflow_summary;

/* events (optional, may be NULL) receives up to events_len step indices. */
QC_API qc_status qc_backflow(const double* series, size_t len, double tol, qc_backflow_summary* summary,
                             size_t* events, size_t events_len);

/* ---- analysis ------------------------------------------------------------ */

/* *period = 0 signals an aperiodic series. */
QC_API qc_status qc_detect_period(const double* series, size_t len, double tol, size_t max_period,
                                  size_t min_repeats, size_t* period, size_t* n_distinct);
QC_API qc_status qc_distinct_values(const double* series, size_t len, double cluster_tol, size_t* count);

/* ---- schedules ----------------------------------------------------------- */

typedef struct qc_schedule_s* qc_schedule;

QC_API qc_status qc_schedule_repeated(int n_qubits, int first, int second, size_t n_events, qc_schedule* out);
QC_API qc_status qc_schedule_random(int n_qubits, size_t n_events, uint64_t seed, int system_ancilla_only,
                                    qc_schedule* out);
/* pairs holds 2 * n_events qubit indices. */
QC_API qc_status qc_schedule_from_pairs(int n_qubits, const int* pairs, size_t n_events, qc_schedule* out);
QC_API void qc_schedule_free(qc_schedule schedule);
QC_API qc_status qc_schedule_size(qc_schedule schedule, size_t* n_events);
QC_API qc_status qc_schedule_event(qc_schedule schedule, size_t k, int* first, int* second);
/* *has_seed = 0 for deterministic schedules. */
QC_API qc_status qc_schedule_seed(qc_schedule schedule, int* has_seed, uint64_t* seed);

/* ---- trajectories -------------------------------------------------------- */

typedef struct qc_trajectory_s* qc_trajectory;

typedef struct qc_trajectory_params {
    double p;
    double w_g;             /* ground weight shared by every ancilla */
    qc_pure_qubit system;   /* first system state */
    qc_pure_qubit partner;  /* second system state, used when paired != 0 */
    int paired;
    int record_entanglement;
} qc_trajectory_params;

/* Fills the default parameters: p = 0.5, w_g = 0.8, (|g>+|e>)/sqrt2
   paired with (|g>-|e>)/sqrt2, entanglement recorded. */
QC_API void qc_trajectory_params_default(qc_trajectory_params* params);

/* The register size follows the schedule: n_ancillas = n_qubits - 1. */
QC_API qc_status qc_trajectory_run(const qc_trajectory_params* params, qc_schedule schedule, qc_trajectory* out);
/* Iterated fresh-ancilla map; uses params->system and params->partner. */
QC_API qc_status qc_markovian_run(const qc_trajectory_params* params, size_t n_steps, qc_trajectory* out);
QC_API void qc_trajectory_free(qc_trajectory traj);

typedef struct qc_step {
    size_t n;
    double coherence_a;
    double coherence_env;  /* valid iff has_entanglement */
    double negativity;     /* valid iff has_entanglement */
    double trace_distance; /* valid iff has_trace_distance */
    double rho_a_diagonal[2];
    int has_entanglement;
    int has_trace_distance;
} qc_step;

QC_API qc_status qc_trajectory_length(qc_trajectory traj, size_t* n_steps);
QC_API qc_status qc_trajectory_step(qc_trajectory traj, size_t k, qc_step* out);
QC_API qc_status qc_trajectory_final_system_state(qc_trajectory traj, qc_complex* out, size_t out_len);

/* ---- orbit diagrams ------------------------------------------------------ */

typedef enum qc_metric {
    QC_METRIC_COHERENCE = 0,
    QC_METRIC_COHERENCE_ENV = 1,
    QC_METRIC_NEGATIVITY = 2,
    QC_METRIC_TRACE_DISTANCE = 3
} qc_metric;

typedef struct qc_orbit_s* qc_orbit;

typedef struct qc_orbit_params {
    size_t n_collisions;
    size_t window_first; /* inclusive step indices */
    size_t window_last;
    qc_metric metric;
    double w_g;
    unsigned threads; /* 0 = hardware concurrency */
} qc_orbit_params;

/* 100 collisions, last 60 steps, coherence, w_g = 0.8. */
QC_API void qc_orbit_params_default(qc_orbit_params* params);

QC_API qc_status qc_orbit_run(const double* p_grid, size_t n_points, const qc_orbit_params* params, qc_orbit* out);
QC_API void qc_orbit_free(qc_orbit orbit);
QC_API qc_status qc_orbit_size(qc_orbit orbit, size_t* n_points);
/* *values stays owned by the orbit handle. */
QC_API qc_status qc_orbit_column(qc_orbit orbit, size_t k, double* p, const double** values, size_t* n_values);

#ifdef __cplusplus
}
#endif

#endif /* QCOLLIDE_QCOLLIDE_H */
