#pragma once

// Brute-force references that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "pfaff/matrix.hpp"

namespace pfaff::testing {

inline int permutation_sign(const std::vector<std::size_t>& p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) {
                sign = -sign;
            }
        }
    }
    return sign;
}

/// (1 / (2^n n!)) sum over all (2n)! permutations of sgn(pi) prod a(pi(2i), pi(2i+1)).
inline Complex permutation_pfaffian(const ComplexMatrix& a) {
    const std::size_t dim = a.rows();
    if (dim % 2 != 0) {
        return {0.0, 0.0};
    }
    std::vector<std::size_t> p(dim);
    std::iota(p.begin(), p.end(), 0);
    Complex sum{0.0, 0.0};
    do {
        Complex term = static_cast<double>(permutation_sign(p));
        for (std::size_t i = 0; i < dim; i += 2) {
            term *= a(p[i], p[i + 1]);
        }
        sum += term;
    } while (std::next_permutation(p.begin(), p.end()));
    double norm = 1.0;
    for (std::size_t k = 1; k <= dim / 2; ++k) {
        norm *= 2.0 * static_cast<double>(k);
    }
    return sum / norm;
}

/// Leibniz formula; fine up to about 9x9.
inline Complex leibniz_det(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    Complex sum{0.0, 0.0};
    do {
        Complex term = static_cast<double>(permutation_sign(p));
        for (std::size_t i = 0; i < n; ++i) {
            term *= a(i, p[i]);
        }
        sum += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return sum;
}

/// Naive triple loop.
inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

inline double relative_error(Complex got, Complex want) {
    const double scale = std::abs(want);
    return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::norm(a.entries()[i] - b.entries()[i]);
    }
    return std::sqrt(s);
}

}  // namespace pfaff::testing
