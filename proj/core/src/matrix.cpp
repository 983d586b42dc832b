#include "pfaff/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pfaff/errors.hpp"
#include "pfaff/tolerances.hpp"

namespace pfaff {

namespace {

void require_nonempty(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix dimensions must be at least 1x1, got " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
}

void require_finite(std::span<const Complex> entries) {
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!std::isfinite(entries[k].real()) || !std::isfinite(entries[k].imag())) {
            throw NonFiniteError("non-finite matrix entry at flat index " + std::to_string(k));
        }
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("shape mismatch in elementwise operation");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_nonempty(rows, cols);
    entries_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require_nonempty(rows, cols);
    if (entries_.size() != rows * cols) {
        throw DimensionError("expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(entries_.size()));
    }
    require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    require_nonempty(rows_, cols_);
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("ragged matrix literal");
        }
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    require_finite(diag);
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        out[i] = (*this)(i, j);
    }
    return out;
}

void ComplexMatrix::set_column(std::size_t j, std::span<const Complex> values) {
    if (values.size() != rows_) {
        throw DimensionError("column length mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = values[i];
    }
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix c = *this;
    for (auto& z : c.entries_) {
        z = std::conj(z);
    }
    return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = std::conj((*this)(i, j));
        }
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const noexcept {
    double sum = 0.0;
    for (const auto& z : entries_) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (const auto& z : entries_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
    for (auto& z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }

void Tolerances::validate() const {
    if (!(eig_residual > 0.0) || !(cluster > 0.0) || !(unitarity > 0.0) || !(reconstruct > 0.0)) {
        throw std::invalid_argument("all tolerances must be strictly positive");
    }
    if (cluster < eig_residual) {
        throw std::invalid_argument("cluster tolerance must not be smaller than eig_residual");
    }
}

}  // namespace pfaff
