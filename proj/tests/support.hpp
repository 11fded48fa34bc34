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

// Shared helpers for the unit tests: seeded random states and unitaries.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qcollide/model.hpp"
#include "qcollide/qmat.hpp"

namespace qcollide::testing {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
    Complex gaussian() {
        std::normal_distribution<double> n;
        return {n(gen_), n(gen_)};
    }

    // Haar-ish unitary from Gram-Schmidt on a Gaussian matrix.
    ComplexMatrix unitary(std::size_t dim) {
        ComplexMatrix m(dim);
        for (auto& z : m.data()) z = gaussian();
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t k = 0; k < c; ++k) {
                Complex overlap = 0.0;
                for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(m(r, k)) * m(r, c);
                for (std::size_t r = 0; r < dim; ++r) m(r, c) -= overlap * m(r, k);
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < dim; ++r) norm += std::norm(m(r, c));
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < dim; ++r) m(r, c) /= norm;
        }
        return m;
    }

    ComplexMatrix hermitian(std::size_t dim) {
        ComplexMatrix m(dim);
        for (auto& z : m.data()) z = gaussian();
        return 0.5 * (m + m.adjoint());
    }

    // Full-rank mixed state G G^dagger / Tr.
    ComplexMatrix density(std::size_t dim) {
        ComplexMatrix g(dim);
        for (auto& z : g.data()) z = gaussian();
        ComplexMatrix rho = g * g.adjoint();
        const Complex tr = rho.trace();
        return (1.0 / tr) * rho;
    }

    PureQubit pure_qubit() {
        Complex a = gaussian(), b = gaussian();
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        return {a / n, b / n};
    }

private:
    std::mt19937_64 gen_;
};

inline ComplexMatrix bell_projector() {
    // (|ge> + |eg>)(<ge| + <eg|) / 2
    ComplexMatrix m(4);
    m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 0.5;
    return m;
}

}  // namespace qcollide::testing
