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
#include <optional>
#include <span>

namespace qcollide {

struct PeriodOptions {
    double tol = 1e-8;
    std::size_t max_period = 32;
    std::size_t min_repeats = 3;
};

inline constexpr double kClusterTol = 1e-6;

struct SeriesVerdict {
    std::optional<std::size_t> period;  // absent means aperiodic
    std::size_t n_distinct = 0;         // clusters at kClusterTol

    bool periodic() const { return period.has_value(); }
};

/// Smallest k <= max_period with |x[n+k] - x[n]| < tol for every n of the
/// series. The caller chooses the analysed window. Throws if the series is
/// shorter than max_period * min_repeats.
SeriesVerdict detect_period(std::span<const double> series, const PeriodOptions& options = {});

/// detect_period over the last `tail` samples, with max_period clamped so
/// that min_repeats full periods fit in the tail.
SeriesVerdict detect_period_tail(std::span<const double> series, std::size_t tail = 60,
                                 const PeriodOptions& options = {});

/// Number of single-linkage clusters: sorted neighbours closer than
/// cluster_tol are merged.
std::size_t distinct_values(std::span<const double> series, double cluster_tol = kClusterTol);

}  // namespace qcollide
