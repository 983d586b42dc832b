#include "pfaff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pfaff/errors.hpp"

namespace pfaff {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    }
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()) + ")");
    }
    ComplexMatrix c(a.rows(), b.cols());
    const std::size_t inner = a.cols();
    const std::size_t width = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex* out = c.row(i).data();
        for (std::size_t k = 0; k < inner; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            const Complex* brow = b.row(k).data();
            for (std::size_t j = 0; j < width; ++j) {
                out[j] += aik * brow[j];
            }
        }
    }
    return c;
}

ComplexMatrix matmul_transposed(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionError("matmul_transposed: inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto arow = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const auto brow = b.row(j);
            Complex sum{};
            for (std::size_t k = 0; k < arow.size(); ++k) {
                sum += arow[k] * brow[k];
            }
            c(i, j) = sum;
        }
    }
    return c;
}

LuDecomposition::LuDecomposition(const ComplexMatrix& a) : lu_(a), perm_(a.rows()) {
    require_square(a, "lu");
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        perm_[i] = i;
    }
    const double scale = a.max_abs();
    double min_pivot = scale > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(lu_(i, k));
            if (mag > best) {
                best = mag;
                p = i;
            }
        }
        min_pivot = std::min(min_pivot, best);
        if (p != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
            std::swap(perm_[k], perm_[p]);
            det_ = -det_;
        }
        const Complex pivot = lu_(k, k);
        det_ *= pivot;
        if (pivot == Complex{}) {
            continue;
        }
        const Complex* krow = lu_.row(k).data();
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex* irow = lu_.row(i).data();
            const Complex factor = irow[k] / pivot;
            irow[k] = factor;
            if (factor == Complex{}) {
                continue;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                irow[j] -= factor * krow[j];
            }
        }
    }
    min_pivot_ratio_ = scale > 0.0 ? min_pivot / scale : 0.0;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& b) const {
    const std::size_t n = lu_.rows();
    if (b.rows() != n) {
        throw DimensionError("lu solve: right-hand side has wrong row count");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (lu_(k, k) == Complex{}) {
            throw SingularMatrixError("lu solve: matrix is singular");
        }
    }
    ComplexMatrix x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(b.row(perm_[i]).begin(), b.row(perm_[i]).end(), x.row(i).begin());
    }
    const std::size_t m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        Complex* xi = x.row(i).data();
        for (std::size_t k = 0; k < i; ++k) {
            const Complex l = lu_(i, k);
            const Complex* xk = x.row(k).data();
            for (std::size_t j = 0; j < m; ++j) {
                xi[j] -= l * xk[j];
            }
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        Complex* xi = x.row(ii).data();
        for (std::size_t k = ii + 1; k < n; ++k) {
            const Complex u = lu_(ii, k);
            const Complex* xk = x.row(k).data();
            for (std::size_t j = 0; j < m; ++j) {
                xi[j] -= u * xk[j];
            }
        }
        const Complex pivot = lu_(ii, ii);
        for (std::size_t j = 0; j < m; ++j) {
            xi[j] /= pivot;
        }
    }
    return x;
}

Complex det_lu(const ComplexMatrix& a) { return LuDecomposition(a).determinant(); }

ComplexMatrix inverse(const ComplexMatrix& a) {
    return LuDecomposition(a).solve(ComplexMatrix::identity(a.rows()));
}

QrResult qr_householder(const ComplexMatrix& a) {
    require_square(a, "qr_householder");
    const std::size_t n = a.rows();
    ComplexMatrix r = a;
    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<Complex> v(n);

    for (std::size_t k = 0; k + 1 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            tail += std::norm(r(i, k));
        }
        if (tail == 0.0) {
            continue;
        }
        const Complex x0 = r(k, k);
        const double xnorm = std::sqrt(std::norm(x0) + tail);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
        const Complex alpha = -phase * xnorm;

        const std::size_t len = n - k;
        v[0] = x0 - alpha;
        for (std::size_t i = 1; i < len; ++i) {
            v[i] = r(k + i, k);
        }
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            vnorm2 += std::norm(v[i]);
        }
        const double beta = 2.0 / vnorm2;

        // R <- (1 - beta v v^dagger) R on rows k.., columns k+1..
        for (std::size_t j = k + 1; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = 0; i < len; ++i) {
                dot += std::conj(v[i]) * r(k + i, j);
            }
            dot *= beta;
            for (std::size_t i = 0; i < len; ++i) {
                r(k + i, j) -= v[i] * dot;
            }
        }
        r(k, k) = alpha;
        for (std::size_t i = k + 1; i < n; ++i) {
            r(i, k) = Complex{};
        }
        // Q <- Q (1 - beta v v^dagger)
        for (std::size_t i = 0; i < n; ++i) {
            Complex* qrow = q.row(i).data() + k;
            Complex dot{};
            for (std::size_t l = 0; l < len; ++l) {
                dot += qrow[l] * v[l];
            }
            dot *= beta;
            for (std::size_t l = 0; l < len; ++l) {
                qrow[l] -= dot * std::conj(v[l]);
            }
        }
    }
    return {std::move(q), std::move(r)};
}

double normality_residual(const ComplexMatrix& m) {
    const ComplexMatrix madj = m.adjoint();
    return (matmul(m, madj) - matmul(madj, m)).frobenius_norm();
}

EigenDecomposition eig_normal(const ComplexMatrix& m, const Tolerances& tol) {
    require_square(m, "eig_normal");
    const double norm = m.frobenius_norm();
    const double departure = normality_residual(m);
    if (departure > tol.eig_residual * norm * norm) {
        throw NotNormalError("eig_normal: matrix is not normal (||MM^H - M^H M|| = " + std::to_string(departure) + ")",
                             departure);
    }

    SchurResult schur = complex_schur(m);
    const std::size_t n = m.rows();
    EigenDecomposition out{std::vector<Complex>(n), std::move(schur.z), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = schur.t(i, i);
    }

    ComplexMatrix lhs = matmul(m, out.vectors);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            lhs(i, j) -= out.vectors(i, j) * out.values[j];
        }
    }
    out.residual = lhs.frobenius_norm();

    if (!schur.converged || out.residual > tol.eig_residual * norm) {
        throw NumericalError("eig_normal: eigen-residual " + std::to_string(out.residual) + " exceeds tolerance",
                             out.residual);
    }
    const double unitarity = unitarity_residual(out.vectors);
    if (unitarity > tol.unitarity_abs(n)) {
        throw NumericalError("eig_normal: eigenvectors lost unitarity", unitarity);
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    ComplexMatrix h(rows + cols, rows + cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            h(i, rows + j) = a(i, j);
            h(rows + j, i) = std::conj(a(i, j));
        }
    }
    const SchurResult schur = complex_schur(h);
    std::vector<double> eig(rows + cols);
    for (std::size_t i = 0; i < eig.size(); ++i) {
        eig[i] = schur.t(i, i).real();
    }
    std::sort(eig.begin(), eig.end());
    const std::size_t count = std::min(rows, cols);
    std::vector<double> sv(eig.end() - static_cast<std::ptrdiff_t>(count), eig.end());
    for (auto& s : sv) {
        s = std::abs(s);
    }
    std::sort(sv.begin(), sv.end());
    return sv;
}

double unitarity_residual(const ComplexMatrix& u) {
    ComplexMatrix g = matmul(u.adjoint(), u);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        g(i, i) -= 1.0;
    }
    return g.frobenius_norm();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j);
        }
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            out(a.rows() + i, a.cols() + j) = b(i, j);
        }
    }
    return out;
}

Complex trace(const ComplexMatrix& a) {
    require_square(a, "trace");
    Complex sum{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

void swap_rows_and_columns(ComplexMatrix& a, std::size_t i, std::size_t j) {
    require_square(a, "swap_rows_and_columns");
    if (i == j) {
        return;
    }
    std::swap_ranges(a.row(i).begin(), a.row(i).end(), a.row(j).begin());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::swap(a(r, i), a(r, j));
    }
}

}  // namespace pfaff
