#pragma once

#include <cstddef>

#include "pfaff/matrix.hpp"

namespace pfaff {

/// A ComplexMatrix validated to be skew-symmetric, ||A + A^T||_F <= 1e-12 (1 + ||A||_F).
///
/// Odd dimensions are allowed; their Pfaffian is 0 by convention.
class SkewMatrix {
public:
    static constexpr double kSkewTolerance = 1e-12;

    /// Throws DimensionError if A is not square or not skew-symmetric.
    explicit SkewMatrix(ComplexMatrix a);

    /// Antisymmetric part (A - A^T) / 2 of any square matrix; always valid.
    static SkewMatrix antisymmetrize(const ComplexMatrix& a);

    const ComplexMatrix& matrix() const noexcept { return a_; }
    std::size_t dim() const noexcept { return a_.rows(); }

private:
    struct Unchecked {};
    SkewMatrix(ComplexMatrix a, Unchecked) : a_(std::move(a)) {}

    ComplexMatrix a_;
};

/// Pfaffian by Householder reduction to skew-tridiagonal form, A = Q T Q^T.
/// Each reflector contributes det = -1 and pf(T) is the product of every
/// other super-diagonal entry.
Complex pf_skew_householder(const SkewMatrix& a);

/// Pfaffian by Parlett-Reid (skew L T L^T) elimination with partial
/// pivoting. Returns 0 once the best available pivot falls below
/// 1e-13 * max|A_ij|.
Complex pf_skew_parlett_reid(const SkewMatrix& a);

/// Largest 2n for which pf_polynomial will run.
inline constexpr std::size_t kPolynomialMaxDim = 12;

/// The Pfaffian polynomial (1 / (2^n n!)) sum_{pi in S_2n} sgn(pi) prod_i a(pi(2i-1), pi(2i))
/// evaluated on an arbitrary, not necessarily skew, matrix.
///
/// Summed over the (2n-1)!! perfect matchings instead of all (2n)!
/// permutations: the 2^n n! permutations realizing one matching differ by
/// pair reorderings and pair flips, so each matching {i < j} contributes
/// sign(matching) * prod (a(i, j) - a(j, i)) / 2.
///
/// Odd dimension returns 0. Throws DimensionError above kPolynomialMaxDim or
/// for non-square input.
Complex pf_polynomial(const ComplexMatrix& a);

}  // namespace pfaff
