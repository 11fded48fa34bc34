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

#include "qcollide/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "qcollide/error.hpp"

namespace qcollide {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
    }
}

void require_hermitian(const ComplexMatrix& h, const char* op) {
    const double err = hermiticity_error(h);
    if (!(err < kHermiticityTol)) {
        throw Error(ErrorCode::NotHermitian,
                    std::string(op) + ": input is not Hermitian (max |h - h^dagger| = " +
                        std::to_string(err) + ")");
    }
}

// Mixed-radix layout of a composite index space, subsystem 0 most significant.
struct Layout {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> strides;
    std::size_t total = 1;

    explicit Layout(std::span<const std::size_t> d) : dims(d.begin(), d.end()), strides(d.size()) {
        for (std::size_t k = dims.size(); k-- > 0;) {
            strides[k] = total;
            total *= dims[k];
        }
    }

    std::size_t digit(std::size_t index, std::size_t subsystem) const {
        return (index / strides[subsystem]) % dims[subsystem];
    }
};

Layout checked_layout(const ComplexMatrix& rho, std::span<const std::size_t> dims, const char* op) {
    if (dims.empty()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": empty subsystem list");
    }
    for (std::size_t d : dims) {
        if (d == 0) throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": zero subsystem dimension");
    }
    Layout layout(dims);
    if (layout.total != rho.dim()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(op) + ": product of subsystem dims " + std::to_string(layout.total) +
                        " does not match matrix dimension " + std::to_string(rho.dim()));
    }
    return layout;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorCode::DimensionMismatch, "ComplexMatrix: entry count is not dim*dim");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "ComplexMatrix: rows must be square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& x : data_) x *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs, "operator*");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

double hermiticity_error(const ComplexMatrix& h) {
    double worst = 0.0;
    for (std::size_t r = 0; r < h.dim(); ++r)
        for (std::size_t c = r; c < h.dim(); ++c) worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
    return worst;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * u.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    const Layout layout = checked_layout(rho, dims, "partial_trace");
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= dims.size() || (k > 0 && keep[k] <= keep[k - 1])) {
            throw Error(ErrorCode::OutOfRange, "partial_trace: keep must be increasing subsystem indices");
        }
    }

    std::vector<bool> kept(dims.size(), false);
    std::size_t out_dim = 1;
    for (std::size_t k : keep) {
        kept[k] = true;
        out_dim *= dims[k];
    }

    // Split every composite index into (kept part, traced part).
    const std::size_t n = rho.dim();
    std::vector<std::size_t> kept_index(n, 0), traced_index(n, 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t kv = 0, tv = 0;
        for (std::size_t s = 0; s < dims.size(); ++s) {
            const std::size_t d = layout.digit(idx, s);
            if (kept[s]) kv = kv * dims[s] + d;
            else tv = tv * dims[s] + d;
        }
        kept_index[idx] = kv;
        traced_index[idx] = tv;
    }

    ComplexMatrix out(out_dim);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += rho(r, c);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims, std::size_t keep) {
    const std::size_t keep_list[] = {keep};
    return partial_trace(rho, dims, std::span<const std::size_t>(keep_list));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                                std::size_t subsystem) {
    const Layout layout = checked_layout(rho, dims, "partial_transpose");
    if (subsystem >= dims.size()) throw Error(ErrorCode::OutOfRange, "partial_transpose: subsystem index out of range");

    const std::size_t n = rho.dim();
    const std::size_t stride = layout.strides[subsystem];
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t dr = layout.digit(r, subsystem);
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t dc = layout.digit(c, subsystem);
            const std::size_t r2 = r - dr * stride + dc * stride;
            const std::size_t c2 = c - dc * stride + dr * stride;
            out(r2, c2) = rho(r, c);
        }
    }
    return out;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h) {
    require_hermitian(h, "hermitian_eigensystem");
    const std::size_t n = h.dim();

    // Work on the exactly Hermitian part so round-off in the input cannot
    // leak into the rotations.
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = h(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(c, r) = std::conj(a(r, c));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 1.0;
    for (const auto& x : a.data()) scale = std::max(scale, std::abs(x));
    const double threshold = 1e-13 * scale;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < threshold) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) continue;
                // G = D R with D = diag(.., e^{-i phi} at q, ..) making a(p,q)
                // real, then a real rotation annihilating it.
                const Complex phase = a(p, q) / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                // a <- a G (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                // a <- G^dagger a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigensystem out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) { return hermitian_eigensystem(h).values; }

double trace_norm_hermitian(const ComplexMatrix& h) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(h)) sum += std::abs(lambda);
    return sum;
}

}  // namespace qcollide
