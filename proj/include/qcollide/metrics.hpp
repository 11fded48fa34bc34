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

#include <cstddef>
#include <span>
#include <vector>

#include "qcollide/qmat.hpp"

namespace qcollide {

inline constexpr double kDefaultBackflowTol = 1e-9;

struct BackflowEvent {
    std::size_t step;  // increase observed between step and step + 1
    double increase;
};

struct BackflowReport {
    std::vector<BackflowEvent> events;
    double total_backflow = 0.0;
    double max_distance = 0.0;

    /// No increase beyond tolerance anywhere in the series.
    bool markovian() const { return events.empty(); }
};

/// Sum of |rho_ij| over i != j in the energy basis.
double l1_coherence(const ComplexMatrix& rho);

/// (||rho^{T_A}||_1 - 1) / 2 across the cut dims = {d_A, d_B}.
double negativity(const ComplexMatrix& rho, std::span<const std::size_t> dims);

/// Half the trace norm of r1 - r2.
double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2);

/// Every n with series[n+1] - series[n] > tol. Requires at least 2 samples.
BackflowReport backflow_events(std::span<const double> series, double tol = kDefaultBackflowTol);

}  // namespace qcollide
