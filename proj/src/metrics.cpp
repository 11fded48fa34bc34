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

#include "qcollide/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qcollide/error.hpp"

namespace qcollide {

double l1_coherence(const ComplexMatrix& rho) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c)
            if (r != c) sum += std::abs(rho(r, c));
    return sum;
}

double negativity(const ComplexMatrix& rho, std::span<const std::size_t> dims) {
    if (dims.size() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "negativity: expected a bipartition {d_A, d_B}");
    }
    const ComplexMatrix transposed = partial_transpose(rho, dims, 0);
    // Written as the sum of |negative eigenvalues| rather than via the trace
    // norm: identical in exact arithmetic, and it stays exactly zero for
    // separable inputs instead of picking up round-off from Tr(rho) != 1.
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(transposed))
        if (lambda < 0.0) sum -= lambda;
    return sum;
}

double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2) {
    if (r1.dim() != r2.dim()) throw Error(ErrorCode::DimensionMismatch, "trace_distance: dimension mismatch");
    return 0.5 * trace_norm_hermitian(r1 - r2);
}

BackflowReport backflow_events(std::span<const double> series, double tol) {
    if (series.size() < 2) throw Error(ErrorCode::InvalidArgument, "backflow_events: need at least two samples");
    if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "backflow_events: tolerance must be non-negative");

    BackflowReport report;
    report.max_distance = *std::max_element(series.begin(), series.end());
    for (std::size_t n = 0; n + 1 < series.size(); ++n) {
        const double delta = series[n + 1] - series[n];
        if (delta > tol) {
            report.events.push_back({n, delta});
            report.total_backflow += delta;
        }
    }
    return report;
}

}  // namespace qcollide
