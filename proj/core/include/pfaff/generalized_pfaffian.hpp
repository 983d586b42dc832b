#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfaff/matrix.hpp"
#include "pfaff/normal_form.hpp"
#include "pfaff/tolerances.hpp"

namespace pfaff {

enum class PfMethod { NormalForm, Antisymmetrized, Relation, Polynomial };

std::string_view to_string(PfMethod method) noexcept;

struct PfDiagnostics {
    Complex det_a;
    Complex det_as;  ///< det of (A - A^T) / 2
    double conjugate_normal_residual = 0.0;
    bool singular = false;
    /// |pf_normal_form - pf_relation| / |pf_normal_form|, when both exist.
    std::optional<double> cross_check_residual;
};

/// When diagnostics.singular is set the value is exactly 0.
struct PfResult {
    Complex value;
    PfMethod method;
    PfDiagnostics diagnostics;
};

/// i^k evaluated on the exact cycle {1, i, -1, -i}.
Complex i_power(std::uint64_t k) noexcept;

/// i^(n^2) det(U) sqrt|det Sigma| from the Wigner normal form A = U Sigma U^T.
///
/// Singular A (a zero 1x1 block) gives 0. A positive 1x1 block with
/// non-singular A throws PfaffianUndefinedError; this includes every
/// non-singular odd-dimensional input. The value is recomputed through the
/// antisymmetrized Pfaffian and the discrepancy stored as cross_check_residual.
PfResult generalized_pfaffian(const ComplexMatrix& a, const Tolerances& tol = {},
                              const NormalFormOptions& options = {});

/// pf((A - A^T) / 2) for any square A; 0 for odd dimensions.
PfResult antisymmetrized_pfaffian(const ComplexMatrix& a);

/// The Pfaffian polynomial on A itself (2n <= 12). Equals
/// antisymmetrized_pfaffian through an independent route.
PfResult polynomial_pfaffian(const ComplexMatrix& a);

/// sqrt(det A / det((A - A^T) / 2)) * pf((A - A^T) / 2), taking the positive
/// root of the real part of the ratio.
///
/// Throws NotConjugateNormalError when A is not conjugate-normal or the ratio
/// is not positive real (|Im/Re| > 1e-6 or Re <= 0), and
/// SingularMatrixError when the antisymmetric part is singular.
PfResult generalized_pfaffian_via_relation(const ComplexMatrix& a, const Tolerances& tol = {});

/// d pf(A(x)) / dx = pf(A) tr(A^{-1} dA) / 2. Throws SingularMatrixError for singular A.
Complex pfaffian_derivative(const ComplexMatrix& a, const ComplexMatrix& da, const Tolerances& tol = {});

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    bool evaluated = false;
    bool passed = false;
    std::string note;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    double threshold = 1e-8;
    Complex pfaffian;
    std::size_t half_dim = 0;

    bool all_passed() const noexcept;
    const IdentityCheck* find(std::string_view name) const noexcept;
};

struct IdentityOptions {
    double threshold = 1e-8;
    /// Seed of the random unitary used for the congruence check.
    std::uint64_t seed = 0;
    /// Second summand for the direct-sum check; defaults to A^dagger.
    std::optional<ComplexMatrix> partner;
    /// The phase check is skipped when |pf((A - A^T)/2)| is below this.
    double phase_floor = 1e-6;
};

/// Evaluates the algebraic identities of the generalized Pfaffian on A:
///
///   determinant         pf(A)^2 = det A
///   scaling             pf(lambda A) = lambda^n pf(A)
///   transpose           pf(A^T) = (-1)^n pf(A)
///   adjoint             pf(A^dagger) = (-1)^n conj(pf(A))
///   inverse             pf(A^-1) = (-1)^n / pf(A)
///   direct_sum          pf(A (+) A2) = pf(A) pf(A2)
///   tensor              pf(A (x) B) = (-1)^(n m (m-1) / 2) pf(A)^m det(B)^n   (B symmetric m x m)
///   row_swap            swapping rows/columns 0 and 2n-1 negates pf
///   unitary_congruence  pf(U A U^T) = det(U) pf(A)
///   bridge_relation     normal-form and relation routes agree
///   phase_agreement     |arg pf((A - A^T)/2) - arg pf(A)|, wrapped to [0, pi]
///
/// Residuals are relative to the reference magnitude (absolute when it is 0).
/// Throws std::invalid_argument if B is not symmetric; errors from the Pfaffian
/// of A itself propagate.
IdentityReport identity_report(const ComplexMatrix& a, const std::optional<ComplexMatrix>& b, Complex lambda,
                               const Tolerances& tol = {}, const IdentityOptions& options = {});

}  // namespace pfaff
