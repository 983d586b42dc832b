#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pfaff {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major storage.
///
/// Dimensions are always at least 1x1 and every entry supplied from outside
/// is checked to be finite. Results of arithmetic on finite inputs are not
/// re-validated.
class ComplexMatrix {
public:
    /// Zero matrix. Throws DimensionError if either dimension is 0.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major entries. Throws DimensionError on a count
    /// mismatch and NonFiniteError on NaN/Inf.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Row-by-row literal, e.g. {{0, 1}, {-1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

    std::span<Complex> row(std::size_t i) noexcept { return {entries_.data() + i * cols_, cols_}; }
    std::span<const Complex> row(std::size_t i) const noexcept { return {entries_.data() + i * cols_, cols_}; }

    std::span<Complex> entries() noexcept { return entries_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    std::vector<Complex> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const Complex> values);

    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    ComplexMatrix adjoint() const;

    double frobenius_norm() const noexcept;
    double max_abs() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);

}  // namespace pfaff
