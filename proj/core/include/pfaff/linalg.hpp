#pragma once

#include <cstddef>
#include <vector>

#include "pfaff/matrix.hpp"
#include "pfaff/tolerances.hpp"

namespace pfaff {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// A·B^T without materializing the transpose.
ComplexMatrix matmul_transposed(const ComplexMatrix& a, const ComplexMatrix& b);

/// LU factorization with partial pivoting, P A = L U, stored compactly.
class LuDecomposition {
public:
    explicit LuDecomposition(const ComplexMatrix& a);

    Complex determinant() const noexcept { return det_; }
    /// Smallest |U_ii| divided by max |A_ij|; 0 for an exactly singular matrix.
    double min_pivot_ratio() const noexcept { return min_pivot_ratio_; }
    bool singular(double relative_threshold) const noexcept { return min_pivot_ratio_ <= relative_threshold; }

    /// Solves A X = B. Throws SingularMatrixError if a pivot is exactly zero.
    ComplexMatrix solve(const ComplexMatrix& b) const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    Complex det_{1.0, 0.0};
    double min_pivot_ratio_ = 0.0;
};

Complex det_lu(const ComplexMatrix& a);
ComplexMatrix inverse(const ComplexMatrix& a);

struct QrResult {
    ComplexMatrix q;
    ComplexMatrix r;
};

/// Householder QR of a square matrix. R has exact zeros below the diagonal.
QrResult qr_householder(const ComplexMatrix& a);

struct SchurResult {
    ComplexMatrix t;  ///< upper triangular
    ComplexMatrix z;  ///< unitary, M = Z T Z^dagger
    bool converged = true;
};

/// Complex Schur form via Householder Hessenberg reduction and single-shift
/// QR iteration with Wilkinson shifts.
SchurResult complex_schur(const ComplexMatrix& m);

struct EigenDecomposition {
    std::vector<Complex> values;
    ComplexMatrix vectors;  ///< unitary; column k pairs with values[k]
    double residual = 0.0;  ///< ||M V - V diag(values)||_F
};

/// ||M M^dagger - M^dagger M||_F.
double normality_residual(const ComplexMatrix& m);

/// Eigendecomposition of a normal matrix. For normal input the Schur form is
/// diagonal, so the Schur vectors are an orthonormal eigenbasis, also inside
/// degenerate eigenspaces.
///
/// Throws NotNormalError when ||MM^dagger - M^dagger M|| > eig_residual * ||M||^2,
/// and NumericalError when the eigen-residual or unitarity contract fails.
EigenDecomposition eig_normal(const ComplexMatrix& m, const Tolerances& tol = {});

/// Singular values in ascending order, from the Hermitian eigenproblem of
/// [[0, A], [A^dagger, 0]] so small values carry absolute accuracy ~eps ||A||.
std::vector<double> singular_values(const ComplexMatrix& a);

/// ||U^dagger U - 1||_F.
double unitarity_residual(const ComplexMatrix& u);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);

/// Swaps rows i, j and columns i, j (a permutation congruence P A P^T).
void swap_rows_and_columns(ComplexMatrix& a, std::size_t i, std::size_t j);

}  // namespace pfaff
