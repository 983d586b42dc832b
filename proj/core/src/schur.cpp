#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pfaff/errors.hpp"
#include "pfaff/linalg.hpp"

namespace pfaff {

namespace {

/// Plane rotation G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
struct Givens {
    double c = 1.0;
    Complex s{};

    static Givens zeroing(Complex a, Complex b) {
        if (b == Complex{}) {
            return {1.0, Complex{}};
        }
        if (a == Complex{}) {
            return {0.0, std::conj(b) / std::abs(b)};
        }
        const double abs_a = std::abs(a);
        const double norm = std::hypot(abs_a, std::abs(b));
        return {abs_a / norm, (a / abs_a) * std::conj(b) / norm};
    }

    // rows p, p+1 <- G * rows, for columns [from, to)
    void apply_left(ComplexMatrix& m, std::size_t p, std::size_t from, std::size_t to) const {
        Complex* top = m.row(p).data();
        Complex* bot = m.row(p + 1).data();
        const Complex sc = std::conj(s);
        for (std::size_t j = from; j < to; ++j) {
            const Complex x = top[j];
            const Complex y = bot[j];
            top[j] = c * x + s * y;
            bot[j] = c * y - sc * x;
        }
    }

    // columns p, p+1 <- columns * G^dagger, for rows [0, rows)
    void apply_right_adjoint(ComplexMatrix& m, std::size_t p, std::size_t rows) const {
        const Complex sc = std::conj(s);
        for (std::size_t i = 0; i < rows; ++i) {
            const Complex x = m(i, p);
            const Complex y = m(i, p + 1);
            m(i, p) = c * x + sc * y;
            m(i, p + 1) = c * y - s * x;
        }
    }
};

void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix& z) {
    const std::size_t n = h.rows();
    std::vector<Complex> v(n);
    std::vector<Complex> work(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) {
            tail += std::norm(h(i, k));
        }
        if (tail == 0.0) {
            continue;
        }
        const Complex x0 = h(k + 1, k);
        const double xnorm = std::sqrt(std::norm(x0) + tail);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
        const Complex alpha = -phase * xnorm;
        const std::size_t len = n - k - 1;
        v[0] = x0 - alpha;
        double vnorm2 = std::norm(v[0]);
        for (std::size_t i = 1; i < len; ++i) {
            v[i] = h(k + 1 + i, k);
            vnorm2 += std::norm(v[i]);
        }
        const double beta = 2.0 / vnorm2;

        // H <- P H on rows k+1.., columns k+1.. (column k is set explicitly)
        std::fill(work.begin(), work.end(), Complex{});
        for (std::size_t i = 0; i < len; ++i) {
            const Complex vc = std::conj(v[i]);
            const Complex* hrow = h.row(k + 1 + i).data();
            for (std::size_t j = k + 1; j < n; ++j) {
                work[j] += vc * hrow[j];
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            const Complex f = beta * v[i];
            Complex* hrow = h.row(k + 1 + i).data();
            for (std::size_t j = k + 1; j < n; ++j) {
                hrow[j] -= f * work[j];
            }
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) {
            h(i, k) = Complex{};
        }

        // H <- H P and Z <- Z P on columns k+1..
        for (ComplexMatrix* m : {&h, &z}) {
            for (std::size_t i = 0; i < n; ++i) {
                Complex* row = m->row(i).data() + k + 1;
                Complex dot{};
                for (std::size_t l = 0; l < len; ++l) {
                    dot += row[l] * v[l];
                }
                dot *= beta;
                for (std::size_t l = 0; l < len; ++l) {
                    row[l] -= dot * std::conj(v[l]);
                }
            }
        }
    }
}

double norm1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

/// Eigenvalue of the trailing 2x2 block of the active window closest to its
/// bottom-right entry, with ad hoc exceptional shifts every 10 stalled sweeps.
Complex wilkinson_shift(const ComplexMatrix& t, std::size_t iu, std::size_t iter) {
    if (iter > 0 && iter % 10 == 0) {
        const double extra = iu >= 2 ? std::abs(t(iu - 1, iu - 2).real()) : 0.0;
        return std::abs(t(iu, iu - 1).real()) + extra + t(iu, iu);
    }
    Complex a = t(iu - 1, iu - 1);
    Complex b = t(iu - 1, iu);
    Complex c = t(iu, iu - 1);
    Complex d = t(iu, iu);
    const double scale = norm1(a) + norm1(b) + norm1(c) + norm1(d);
    if (scale == 0.0) {
        return Complex{};
    }
    a /= scale;
    b /= scale;
    c /= scale;
    d /= scale;
    const Complex bc = b * c;
    const Complex diff = a - d;
    const Complex disc = std::sqrt(diff * diff + 4.0 * bc);
    const Complex det = a * d - bc;
    const Complex tr = a + d;
    Complex e1 = (tr + disc) / 2.0;
    Complex e2 = (tr - disc) / 2.0;
    if (norm1(e1) > norm1(e2)) {
        e2 = det / e1;
    } else if (norm1(e2) != 0.0) {
        e1 = det / e2;
    }
    return scale * (norm1(e1 - d) < norm1(e2 - d) ? e1 : e2);
}

}  // namespace

SchurResult complex_schur(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw DimensionError("complex_schur: matrix must be square");
    }
    const std::size_t n = m.rows();
    SchurResult out{m, ComplexMatrix::identity(n), true};
    ComplexMatrix& t = out.t;
    ComplexMatrix& z = out.z;
    if (n == 1) {
        return out;
    }
    reduce_to_hessenberg(t, z);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double floor = eps * m.frobenius_norm();
    auto negligible = [&](std::size_t i) {
        const double sub = std::abs(t(i + 1, i));
        if (sub <= eps * (std::abs(t(i, i)) + std::abs(t(i + 1, i + 1))) || sub <= floor) {
            t(i + 1, i) = Complex{};
            return true;
        }
        return false;
    };

    const std::size_t max_iter = 30 * n;
    std::size_t total_iter = 0;
    std::size_t iter = 0;
    std::size_t iu = n - 1;
    while (true) {
        while (iu > 0 && negligible(iu - 1)) {
            iter = 0;
            --iu;
        }
        if (iu == 0) {
            break;
        }
        ++iter;
        if (++total_iter > max_iter) {
            out.converged = false;
            break;
        }
        std::size_t il = iu - 1;
        while (il > 0 && !negligible(il - 1)) {
            --il;
        }

        const Complex shift = wilkinson_shift(t, iu, iter);
        Givens g = Givens::zeroing(t(il, il) - shift, t(il + 1, il));
        g.apply_left(t, il, il, n);
        g.apply_right_adjoint(t, il, std::min(il + 2, iu) + 1);
        g.apply_right_adjoint(z, il, n);
        for (std::size_t i = il + 1; i < iu; ++i) {
            g = Givens::zeroing(t(i, i - 1), t(i + 1, i - 1));
            g.apply_left(t, i, i - 1, n);
            t(i + 1, i - 1) = Complex{};
            g.apply_right_adjoint(t, i, std::min(i + 2, iu) + 1);
            g.apply_right_adjoint(z, i, n);
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            t(i, j) = Complex{};
        }
    }
    return out;
}

}  // namespace pfaff
