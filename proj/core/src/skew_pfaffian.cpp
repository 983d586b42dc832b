#include "pfaff/skew_pfaffian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfaff/errors.hpp"

namespace pfaff {

SkewMatrix::SkewMatrix(ComplexMatrix a) : a_(std::move(a)) {
    if (!a_.is_square()) {
        throw DimensionError("SkewMatrix: matrix must be square");
    }
    const std::size_t n = a_.rows();
    double sym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            sym += std::norm(a_(i, j) + a_(j, i));
        }
    }
    sym = std::sqrt(sym);
    if (sym > kSkewTolerance * (1.0 + a_.frobenius_norm())) {
        throw std::invalid_argument("SkewMatrix: ||A + A^T|| = " + std::to_string(sym) + " exceeds tolerance");
    }
}

SkewMatrix SkewMatrix::antisymmetrize(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("antisymmetrize: matrix must be square");
    }
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = (a(i, j) - a(j, i)) * 0.5;
        }
    }
    return SkewMatrix(std::move(out), Unchecked{});
}

Complex pf_skew_householder(const SkewMatrix& skew) {
    const std::size_t n = skew.dim();
    if (n % 2 == 1) {
        return Complex{};
    }
    ComplexMatrix a = skew.matrix();
    Complex pf{1.0, 0.0};
    std::vector<Complex> v(n);
    std::vector<Complex> w(n);

    for (std::size_t i = 0; i + 2 < n; ++i) {
        const std::size_t len = n - i - 1;
        double tail = 0.0;
        for (std::size_t r = i + 2; r < n; ++r) {
            tail += std::norm(a(r, i));
        }
        const Complex x0 = a(i + 1, i);
        Complex alpha = x0;
        if (tail != 0.0) {
            const double xnorm = std::sqrt(std::norm(x0) + tail);
            const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
            alpha = -phase * xnorm;

            v[0] = x0 - alpha;
            double vnorm2 = std::norm(v[0]);
            for (std::size_t r = 1; r < len; ++r) {
                v[r] = a(i + 1 + r, i);
                vnorm2 += std::norm(v[r]);
            }
            const double inv = 1.0 / std::sqrt(vnorm2);
            for (std::size_t r = 0; r < len; ++r) {
                v[r] *= inv;
            }

            // w = 2 A22 conj(v); A22 += v w^T - w v^T
            for (std::size_t r = 0; r < len; ++r) {
                const Complex* row = a.row(i + 1 + r).data() + i + 1;
                Complex sum{};
                for (std::size_t c = 0; c < len; ++c) {
                    sum += row[c] * std::conj(v[c]);
                }
                w[r] = 2.0 * sum;
            }
            for (std::size_t r = 0; r < len; ++r) {
                Complex* row = a.row(i + 1 + r).data() + i + 1;
                const Complex vr = v[r];
                const Complex wr = w[r];
                for (std::size_t c = 0; c < len; ++c) {
                    row[c] += vr * w[c] - wr * v[c];
                }
            }
            pf = -pf;
        }
        a(i + 1, i) = alpha;
        a(i, i + 1) = -alpha;
        for (std::size_t r = i + 2; r < n; ++r) {
            a(r, i) = Complex{};
            a(i, r) = Complex{};
        }
        if (i % 2 == 0) {
            pf *= -alpha;
        }
    }
    return pf * a(n - 2, n - 1);
}

Complex pf_skew_parlett_reid(const SkewMatrix& skew) {
    const std::size_t n = skew.dim();
    if (n % 2 == 1) {
        return Complex{};
    }
    ComplexMatrix a = skew.matrix();
    const double threshold = 1e-13 * a.max_abs();
    Complex pf{1.0, 0.0};
    std::vector<Complex> tau(n);
    std::vector<Complex> col(n);

    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t kp = k + 1;
        double best = std::abs(a(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            const double mag = std::abs(a(i, k));
            if (mag > best) {
                best = mag;
                kp = i;
            }
        }
        if (!(best > threshold)) {
            return Complex{};
        }
        if (kp != k + 1) {
            std::swap_ranges(a.row(k + 1).begin(), a.row(k + 1).end(), a.row(kp).begin());
            for (std::size_t r = 0; r < n; ++r) {
                std::swap(a(r, k + 1), a(r, kp));
            }
            pf = -pf;
        }
        const Complex pivot = a(k, k + 1);
        pf *= pivot;
        if (k + 2 >= n) {
            break;
        }
        const std::size_t len = n - k - 2;
        for (std::size_t j = 0; j < len; ++j) {
            tau[j] = a(k, k + 2 + j) / pivot;
            col[j] = a(k + 2 + j, k + 1);
        }
        // A22 += tau a_{.,k+1}^T - a_{.,k+1} tau^T
        for (std::size_t r = 0; r < len; ++r) {
            Complex* row = a.row(k + 2 + r).data() + k + 2;
            const Complex tr = tau[r];
            const Complex cr = col[r];
            for (std::size_t c = 0; c < len; ++c) {
                row[c] += tr * col[c] - cr * tau[c];
            }
        }
    }
    return pf;
}

namespace {

Complex matching_sum(const ComplexMatrix& a, std::vector<std::size_t>& free) {
    if (free.empty()) {
        return Complex{1.0, 0.0};
    }
    const std::size_t first = free.front();
    Complex total{};
    for (std::size_t p = 1; p < free.size(); ++p) {
        const std::size_t partner = free[p];
        const Complex entry = (a(first, partner) - a(partner, first)) * 0.5;
        if (entry == Complex{}) {
            continue;
        }
        std::vector<std::size_t> rest;
        rest.reserve(free.size() - 2);
        for (std::size_t q = 1; q < free.size(); ++q) {
            if (q != p) {
                rest.push_back(free[q]);
            }
        }
        const Complex term = entry * matching_sum(a, rest);
        total += (p % 2 == 1) ? term : -term;
    }
    return total;
}

}  // namespace

Complex pf_polynomial(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("pf_polynomial: matrix must be square");
    }
    const std::size_t n = a.rows();
    if (n % 2 == 1) {
        return Complex{};
    }
    if (n > kPolynomialMaxDim) {
        throw DimensionError("pf_polynomial: dimension " + std::to_string(n) + " exceeds the factorial-cost guard of " +
                             std::to_string(kPolynomialMaxDim));
    }
    std::vector<std::size_t> free(n);
    for (std::size_t i = 0; i < n; ++i) {
        free[i] = i;
    }
    return matching_sum(a, free);
}

}  // namespace pfaff
