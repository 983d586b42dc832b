#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pfaff/matrix.hpp"
#include "pfaff/skew_pfaffian.hpp"

namespace pfaff {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
/// z ^= z >> 31. Output is identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform integer in [0, bound), bound > 0.
    std::size_t below(std::size_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// Standard normal variates via Box-Muller from a SplitMix64 stream. Each
/// uniform pair yields two normals, consumed in order.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) noexcept : uniform_(seed) {}
    double next() noexcept;
    /// Real and imaginary parts drawn in that order, each N(0, 1).
    Complex next_complex() noexcept { const double re = next(); return {re, next()}; }

private:
    SplitMix64 uniform_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Derives an independent seed for a sub-stream, e.g. per matrix in a corpus.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Entries with independent N(0, 1) real and imaginary parts, drawn row-major.
ComplexMatrix random_ginibre(std::size_t dim, std::uint64_t seed);

/// Q of the Householder QR of a Ginibre matrix with R's diagonal phases
/// absorbed into Q, i.e. Q * diag(r_ii / |r_ii|).
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// (G - G^T) / 2 for a Ginibre G.
SkewMatrix random_skew(std::size_t dim, std::uint64_t seed);

enum class SpectrumClass { ComplexPair, NegativeReal, PositiveReal, Zero };

std::string_view to_string(SpectrumClass kind) noexcept;
std::optional<SpectrumClass> spectrum_class_from_string(std::string_view name) noexcept;

/// One eigenvalue of A A* with its multiplicity.
///
/// ComplexPair contributes omega and conj(omega) each `multiplicity` times
/// (2 * multiplicity dimensions). NegativeReal and PositiveReal contribute
/// `multiplicity` dimensions; NegativeReal multiplicities must be even.
/// Zero ignores `omega`.
struct SpectrumEntry {
    SpectrumClass kind;
    Complex omega;
    std::size_t multiplicity = 1;
};

struct SpectrumSpec {
    std::vector<SpectrumEntry> entries;
    std::uint64_t seed = 0;
    std::optional<std::size_t> dim;

    std::size_t assembled_dim() const noexcept;
    /// Throws std::invalid_argument for a malformed entry and DimensionError
    /// when `dim` disagrees with the assembled dimension.
    void validate() const;
};

/// Block-diagonal Sigma in collected order: every 2x2 off-diagonal block's
/// s = sqrt(omega) on the upper-right diagonal, conj(s) lower-left, then the
/// 1x1 blocks sqrt(omega) (PositiveReal) and 0 (Zero).
ComplexMatrix sigma_from_spec(const SpectrumSpec& spec);

/// U Sigma U^T with U = random_unitary(dim, spec.seed).
ComplexMatrix random_conjugate_normal(const SpectrumSpec& spec);

}  // namespace pfaff
