#pragma once

#include <cmath>
#include <cstddef>

namespace pfaff {

/// Thresholds driving every numeric decision in the normal-form and Pfaffian
/// code.
///
/// `cluster` is relative: eigenvalues of A A* closer than
/// cluster * (1 + ||A||_F^2) are merged, since that spectrum scales as ||A||^2.
/// `unitarity` is scaled by sqrt(dim) when checked.
struct Tolerances {
    double eig_residual = 1e-10;
    double cluster = 1e-8;
    double unitarity = 1e-10;
    double reconstruct = 1e-9;

    /// Throws std::invalid_argument unless all are positive and cluster >= eig_residual.
    void validate() const;

    double cluster_abs(double norm_a) const noexcept { return cluster * (1.0 + norm_a * norm_a); }
    double unitarity_abs(std::size_t dim) const noexcept {
        return unitarity * std::sqrt(static_cast<double>(dim));
    }
};

}  // namespace pfaff
