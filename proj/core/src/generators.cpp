#include "pfaff/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pfaff/errors.hpp"
#include "pfaff/linalg.hpp"

namespace pfaff {

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t SplitMix64::below(std::size_t bound) noexcept {
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
}

double GaussianStream::next() noexcept {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform_.uniform();  // (0, 1]
    const double u2 = uniform_.uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
    return mix.next();
}

ComplexMatrix random_ginibre(std::size_t dim, std::uint64_t seed) {
    ComplexMatrix g(dim, dim);
    GaussianStream gauss(seed);
    for (auto& z : g.entries()) {
        z = gauss.next_complex();
    }
    return g;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    QrResult qr = qr_householder(random_ginibre(dim, seed));
    for (std::size_t j = 0; j < dim; ++j) {
        const Complex r = qr.r(j, j);
        const Complex phase = std::abs(r) > 0.0 ? r / std::abs(r) : Complex{1.0};
        for (std::size_t i = 0; i < dim; ++i) {
            qr.q(i, j) *= phase;
        }
    }
    return std::move(qr.q);
}

SkewMatrix random_skew(std::size_t dim, std::uint64_t seed) {
    return SkewMatrix::antisymmetrize(random_ginibre(dim, seed));
}

std::string_view to_string(SpectrumClass kind) noexcept {
    switch (kind) {
        case SpectrumClass::ComplexPair: return "complex_pair";
        case SpectrumClass::NegativeReal: return "negative_real";
        case SpectrumClass::PositiveReal: return "positive_real";
        case SpectrumClass::Zero: return "zero";
    }
    return "unknown";
}

std::optional<SpectrumClass> spectrum_class_from_string(std::string_view name) noexcept {
    for (auto kind : {SpectrumClass::ComplexPair, SpectrumClass::NegativeReal, SpectrumClass::PositiveReal,
                      SpectrumClass::Zero}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

std::size_t SpectrumSpec::assembled_dim() const noexcept {
    std::size_t total = 0;
    for (const auto& e : entries) {
        total += e.kind == SpectrumClass::ComplexPair ? 2 * e.multiplicity : e.multiplicity;
    }
    return total;
}

void SpectrumSpec::validate() const {
    if (entries.empty()) {
        throw std::invalid_argument("spectrum spec has no entries");
    }
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        const std::string where = "spectrum entry " + std::to_string(k) + ": ";
        if (e.multiplicity == 0) {
            throw std::invalid_argument(where + "multiplicity must be at least 1");
        }
        if (!std::isfinite(e.omega.real()) || !std::isfinite(e.omega.imag())) {
            throw std::invalid_argument(where + "omega must be finite");
        }
        switch (e.kind) {
            case SpectrumClass::ComplexPair:
                if (!(e.omega.imag() > 0.0)) {
                    throw std::invalid_argument(where + "complex_pair requires Im(omega) > 0");
                }
                break;
            case SpectrumClass::NegativeReal:
                if (e.omega.imag() != 0.0 || !(e.omega.real() < 0.0)) {
                    throw std::invalid_argument(where + "negative_real requires real omega < 0");
                }
                if (e.multiplicity % 2 != 0) {
                    throw std::invalid_argument(where + "negative_real multiplicity must be even");
                }
                break;
            case SpectrumClass::PositiveReal:
                if (e.omega.imag() != 0.0 || !(e.omega.real() > 0.0)) {
                    throw std::invalid_argument(where + "positive_real requires real omega > 0");
                }
                break;
            case SpectrumClass::Zero:
                break;
        }
    }
    if (dim && *dim != assembled_dim()) {
        throw DimensionError("spectrum spec assembles to dimension " + std::to_string(assembled_dim()) +
                             " but dim = " + std::to_string(*dim));
    }
}

ComplexMatrix sigma_from_spec(const SpectrumSpec& spec) {
    spec.validate();
    std::vector<Complex> offdiag;
    std::vector<double> real;
    for (const auto& e : spec.entries) {
        switch (e.kind) {
            case SpectrumClass::ComplexPair:
                offdiag.insert(offdiag.end(), e.multiplicity, std::sqrt(e.omega));
                break;
            case SpectrumClass::NegativeReal:
                offdiag.insert(offdiag.end(), e.multiplicity / 2, Complex{0.0, std::sqrt(-e.omega.real())});
                break;
            case SpectrumClass::PositiveReal:
                real.insert(real.end(), e.multiplicity, std::sqrt(e.omega.real()));
                break;
            case SpectrumClass::Zero:
                real.insert(real.end(), e.multiplicity, 0.0);
                break;
        }
    }
    const std::size_t p = offdiag.size();
    ComplexMatrix sigma(spec.assembled_dim(), spec.assembled_dim());
    for (std::size_t j = 0; j < p; ++j) {
        sigma(j, p + j) = offdiag[j];
        sigma(p + j, j) = std::conj(offdiag[j]);
    }
    for (std::size_t l = 0; l < real.size(); ++l) {
        sigma(2 * p + l, 2 * p + l) = real[l];
    }
    return sigma;
}

ComplexMatrix random_conjugate_normal(const SpectrumSpec& spec) {
    const ComplexMatrix sigma = sigma_from_spec(spec);
    const ComplexMatrix u = random_unitary(sigma.rows(), spec.seed);
    return matmul_transposed(matmul(u, sigma), u);
}

}  // namespace pfaff
