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

#include "qcollide/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcollide/error.hpp"

namespace qcollide {

SeriesVerdict detect_period(std::span<const double> series, const PeriodOptions& options) {
    if (options.max_period == 0 || options.min_repeats == 0) {
        throw Error(ErrorCode::InvalidArgument, "detect_period: max_period and min_repeats must be positive");
    }
    if (series.size() < options.max_period * options.min_repeats) {
        throw Error(ErrorCode::InvalidArgument, "detect_period: series of length " + std::to_string(series.size()) +
                                                    " is shorter than max_period * min_repeats");
    }

    SeriesVerdict verdict;
    verdict.n_distinct = distinct_values(series);
    for (std::size_t k = 1; k <= options.max_period; ++k) {
        bool repeats = true;
        for (std::size_t n = 0; n + k < series.size() && repeats; ++n) {
            repeats = std::abs(series[n + k] - series[n]) < options.tol;
        }
        if (repeats) {
            verdict.period = k;
            break;
        }
    }
    return verdict;
}

SeriesVerdict detect_period_tail(std::span<const double> series, std::size_t tail, const PeriodOptions& options) {
    if (tail == 0 || series.size() < tail) {
        throw Error(ErrorCode::InvalidArgument, "detect_period_tail: series shorter than the tail window");
    }
    PeriodOptions clamped = options;
    clamped.max_period = std::min(options.max_period, tail / std::max<std::size_t>(options.min_repeats, 1));
    return detect_period(series.subspan(series.size() - tail), clamped);
}

std::size_t distinct_values(std::span<const double> series, double cluster_tol) {
    if (series.empty()) return 0;
    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t clusters = 1;
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] - sorted[k - 1] > cluster_tol) ++clusters;
    return clusters;
}

}  // namespace qcollide
