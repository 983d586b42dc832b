#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pfaff/matrix.hpp"
#include "pfaff/tolerances.hpp"

namespace pfaff {

// Throughout, the antilinear operator of A acts as v -> A conj(v),
// Lambda = A conj(A) is its square and M = A^T conj(A) is its adjoint times
// itself. A is conjugate-normal when A^T conj(A) = A A^dagger.

struct ConjugateNormalCheck {
    bool conjugate_normal = false;
    /// ||A^T A* - A A^dagger||_F / (1 + ||A||_F^2)
    double residual = 0.0;
};

ConjugateNormalCheck is_conjugate_normal(const ComplexMatrix& a, const Tolerances& tol = {});

/// (A - A^T) / 2.
ComplexMatrix antisymmetric_part(const ComplexMatrix& a);

enum class ClusterClass { ComplexPair, NegativeReal, NonNegativeReal };

struct SpectralCluster {
    Complex omega;             ///< mean eigenvalue of Lambda over the cluster
    std::size_t multiplicity;
    ClusterClass kind;
    std::optional<std::size_t> partner;  ///< conjugate cluster, ComplexPair only
    double mu;                 ///< mean of v^dagger M v over the cluster
    std::vector<std::size_t> columns;    ///< eigenvector columns belonging to the cluster
};

struct SpectralPairing {
    std::vector<SpectralCluster> clusters;
    ComplexMatrix eigvectors;  ///< unitary, first nonzero entry of each column real positive
    double cluster_tol;        ///< absolute clustering distance used
};

/// Eigendecomposes Lambda = A A*, merges eigenvalues closer than
/// tol.cluster_abs(||A||) (single linkage) and labels each cluster.
/// A cluster is real when |Im omega| <= cluster_tol / 2; it is NonNegativeReal
/// when additionally Re omega >= -cluster_tol, else NegativeReal.
///
/// Throws NotConjugateNormalError, and SpectralConsistencyError for an
/// unpaired complex cluster or an odd-multiplicity negative-real cluster.
SpectralPairing classify_spectrum(const ComplexMatrix& a, const Tolerances& tol = {});

/// 2x2 block [[0, s], [conj(s), 0]], Im s >= 0 and s not non-negative real.
struct OffDiagBlock {
    Complex s;
    std::size_t multiplicity = 1;
};

/// 1x1 block holding sigma = sqrt(omega) >= 0.
struct RealBlock {
    double sigma = 0.0;
    std::size_t multiplicity = 1;
};

using SigmaBlock = std::variant<OffDiagBlock, RealBlock>;

/// A = U Sigma U^T with U unitary. Sigma collects every off-diagonal block:
/// for p = half_dim, Sigma(j, p + j) = s_j and Sigma(p + j, j) = conj(s_j),
/// followed by the 1x1 blocks on the diagonal from index 2p.
struct NormalForm {
    ComplexMatrix u;
    std::vector<SigmaBlock> blocks;
    std::size_t half_dim = 0;  ///< number of 2x2 blocks counted with multiplicity
    Complex det_u;
    double reconstruction_residual = 0.0;  ///< ||A - U Sigma U^T||_F / ||A||_F
    double unitarity_residual = 0.0;       ///< ||U^dagger U - 1||_F
};

struct NormalFormOptions {
    /// When set, each eigenspace basis is rotated by a random unitary and the
    /// block order is shuffled instead of sorted, exposing the gauge freedom
    /// of U. det(U) does not change when every block is 2x2; 1x1 blocks
    /// leave a real orthogonal freedom that can flip its sign.
    std::optional<std::uint64_t> gauge_seed;
};

/// Off-diagonal blocks are sorted by descending |s| (ties by ascending
/// arg s), real blocks by ascending sigma, unless a gauge seed is given.
///
/// Throws NotConjugateNormalError, SpectralConsistencyError, and
/// NumericalError when the reconstruction or unitarity check fails.
NormalForm wigner_normal_form(const ComplexMatrix& a, const Tolerances& tol = {},
                              const NormalFormOptions& options = {});

ComplexMatrix sigma_matrix(const NormalForm& nf);

/// U Sigma U^T.
ComplexMatrix reconstruct(const NormalForm& nf);

}  // namespace pfaff
