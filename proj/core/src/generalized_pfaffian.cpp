#include "pfaff/generalized_pfaffian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pfaff/errors.hpp"
#include "pfaff/generators.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/skew_pfaffian.hpp"

namespace pfaff {

namespace {

constexpr double kRatioImagTolerance = 1e-6;
constexpr double kSingularPivotRatio = 1e-12;

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square");
    }
}

struct RelationFactor {
    Complex ratio;
    bool positive_real = false;
    double root = 0.0;
};

RelationFactor relation_factor(Complex det_a, Complex det_as) {
    RelationFactor f{det_a / det_as};
    const double re = f.ratio.real();
    f.positive_real = re > 0.0 && std::abs(f.ratio.imag()) <= kRatioImagTolerance * re;
    f.root = std::sqrt(std::max(re, 0.0));
    return f;
}

double relative(Complex value, Complex reference) {
    const double diff = std::abs(value - reference);
    const double scale = std::abs(reference);
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

std::string_view to_string(PfMethod method) noexcept {
    switch (method) {
        case PfMethod::NormalForm: return "normal_form";
        case PfMethod::Antisymmetrized: return "antisymmetrized";
        case PfMethod::Relation: return "relation";
        case PfMethod::Polynomial: return "polynomial";
    }
    return "unknown";
}

Complex i_power(std::uint64_t k) noexcept {
    static constexpr std::array<Complex, 4> cycle{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
    return cycle[k % 4];
}

PfResult generalized_pfaffian(const ComplexMatrix& a, const Tolerances& tol, const NormalFormOptions& options) {
    require_square(a, "generalized_pfaffian");
    const NormalForm nf = wigner_normal_form(a, tol, options);
    const ComplexMatrix as = antisymmetric_part(a);
    const LuDecomposition lu_a(a);

    PfResult out{Complex{}, PfMethod::NormalForm, {}};
    out.diagnostics.det_a = lu_a.determinant();
    out.diagnostics.det_as = det_lu(as);
    out.diagnostics.conjugate_normal_residual = is_conjugate_normal(a, tol).residual;

    const double zero_sigma = 1e-10 * a.frobenius_norm();
    bool singular = lu_a.singular(1e-14);
    bool positive_real = false;
    double magnitude = 1.0;
    for (const auto& block : nf.blocks) {
        if (const auto* b = std::get_if<OffDiagBlock>(&block)) {
            magnitude *= std::pow(std::abs(b->s), static_cast<double>(b->multiplicity));
        } else if (std::get<RealBlock>(block).sigma <= zero_sigma) {
            singular = true;
        } else {
            positive_real = true;
        }
    }
    if (singular) {
        out.diagnostics.singular = true;
        return out;
    }
    if (positive_real) {
        throw PfaffianUndefinedError(
            "A A* has a positive real eigenvalue: the antisymmetric part is singular while A is not, so the "
            "generalized Pfaffian is undefined");
    }

    const auto n = static_cast<std::uint64_t>(nf.half_dim);
    out.value = i_power(n * n) * nf.det_u * magnitude;

    const RelationFactor f = relation_factor(out.diagnostics.det_a, out.diagnostics.det_as);
    if (std::isfinite(f.root)) {
        const Complex via_relation = f.root * pf_skew_householder(SkewMatrix::antisymmetrize(a));
        out.diagnostics.cross_check_residual = relative(via_relation, out.value);
    }
    return out;
}

PfResult antisymmetrized_pfaffian(const ComplexMatrix& a) {
    require_square(a, "antisymmetrized_pfaffian");
    const SkewMatrix as = SkewMatrix::antisymmetrize(a);
    PfResult out{pf_skew_householder(as), PfMethod::Antisymmetrized, {}};
    out.diagnostics.det_a = det_lu(a);
    out.diagnostics.det_as = det_lu(as.matrix());
    out.diagnostics.conjugate_normal_residual = is_conjugate_normal(a).residual;
    out.diagnostics.singular = a.rows() % 2 == 1 || out.value == Complex{};
    if (out.diagnostics.singular) {
        out.value = Complex{};
    }
    return out;
}

PfResult polynomial_pfaffian(const ComplexMatrix& a) {
    require_square(a, "polynomial_pfaffian");
    PfResult out{pf_polynomial(a), PfMethod::Polynomial, {}};
    out.diagnostics.det_a = det_lu(a);
    out.diagnostics.det_as = det_lu(antisymmetric_part(a));
    out.diagnostics.conjugate_normal_residual = is_conjugate_normal(a).residual;
    out.diagnostics.singular = a.rows() % 2 == 1 || out.value == Complex{};
    if (out.diagnostics.singular) {
        out.value = Complex{};
    }
    return out;
}

PfResult generalized_pfaffian_via_relation(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "generalized_pfaffian_via_relation");
    const ConjugateNormalCheck check = is_conjugate_normal(a, tol);
    if (!check.conjugate_normal) {
        throw NotConjugateNormalError(
            "matrix is not conjugate-normal (residual " + std::to_string(check.residual) + ")", check.residual);
    }
    const SkewMatrix as = SkewMatrix::antisymmetrize(a);
    const LuDecomposition lu_as(as.matrix());
    if (a.rows() % 2 == 1 || lu_as.singular(kSingularPivotRatio)) {
        throw SingularMatrixError("antisymmetric part (A - A^T)/2 is singular");
    }
    PfResult out{Complex{}, PfMethod::Relation, {}};
    out.diagnostics.det_a = det_lu(a);
    out.diagnostics.det_as = lu_as.determinant();
    out.diagnostics.conjugate_normal_residual = check.residual;

    const RelationFactor f = relation_factor(out.diagnostics.det_a, out.diagnostics.det_as);
    if (!f.positive_real) {
        throw NotConjugateNormalError("det(A) / det((A - A^T)/2) = (" + std::to_string(f.ratio.real()) + ", " +
                                          std::to_string(f.ratio.imag()) + ") is not positive real",
                                      check.residual);
    }
    out.value = f.root * pf_skew_householder(as);
    return out;
}

Complex pfaffian_derivative(const ComplexMatrix& a, const ComplexMatrix& da, const Tolerances& tol) {
    require_square(a, "pfaffian_derivative");
    if (da.rows() != a.rows() || da.cols() != a.cols()) {
        throw DimensionError("pfaffian_derivative: dA must have the shape of A");
    }
    const PfResult pf = generalized_pfaffian(a, tol);
    if (pf.diagnostics.singular) {
        throw SingularMatrixError("pfaffian_derivative: A is singular");
    }
    const LuDecomposition lu(a);
    return 0.5 * pf.value * trace(lu.solve(da));
}

bool IdentityReport::all_passed() const noexcept {
    for (const auto& c : checks) {
        if (c.evaluated && !c.passed) {
            return false;
        }
    }
    return true;
}

const IdentityCheck* IdentityReport::find(std::string_view name) const noexcept {
    for (const auto& c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

IdentityReport identity_report(const ComplexMatrix& a, const std::optional<ComplexMatrix>& b, Complex lambda,
                               const Tolerances& tol, const IdentityOptions& options) {
    require_square(a, "identity_report");
    if (b) {
        require_square(*b, "identity_report (B)");
        if ((*b - b->transpose()).frobenius_norm() > 1e-12 * (1.0 + b->frobenius_norm())) {
            throw std::invalid_argument("identity_report: B must be symmetric");
        }
    }

    const PfResult base = generalized_pfaffian(a, tol);
    const Complex pf = base.value;
    const std::size_t dim = a.rows();
    const std::size_t n = dim / 2;
    const double sign_n = n % 2 == 0 ? 1.0 : -1.0;

    IdentityReport report;
    report.threshold = options.threshold;
    report.pfaffian = pf;
    report.half_dim = n;

    auto record = [&](std::string name, double residual, std::string note = {}) {
        report.checks.push_back({std::move(name), residual, true, residual <= options.threshold, std::move(note)});
    };
    auto skip = [&](std::string name, std::string note) {
        report.checks.push_back({std::move(name), 0.0, false, false, std::move(note)});
    };
    auto pf_of = [&](const ComplexMatrix& m) { return generalized_pfaffian(m, tol).value; };

    record("determinant", relative(pf * pf, base.diagnostics.det_a));
    record("scaling", relative(pf_of(lambda * a), std::pow(lambda, static_cast<int>(n)) * pf));
    record("transpose", relative(pf_of(a.transpose()), sign_n * pf));
    record("adjoint", relative(pf_of(a.adjoint()), sign_n * std::conj(pf)));

    if (base.diagnostics.singular) {
        skip("inverse", "A is singular");
    } else {
        record("inverse", relative(pf_of(inverse(a)), sign_n / pf));
    }

    const ComplexMatrix partner = options.partner ? *options.partner : a.adjoint();
    record("direct_sum", relative(pf_of(direct_sum(a, partner)), pf * pf_of(partner)));

    if (b) {
        const std::size_t m = b->rows();
        const std::uint64_t exponent = static_cast<std::uint64_t>(n) * m * (m - 1) / 2;
        const double sign = exponent % 2 == 0 ? 1.0 : -1.0;
        const Complex expected =
            sign * std::pow(pf, static_cast<int>(m)) * std::pow(det_lu(*b), static_cast<int>(n));
        record("tensor", relative(pf_of(kron(a, *b)), expected));
    } else {
        skip("tensor", "no symmetric partner B supplied");
    }

    if (dim >= 2) {
        ComplexMatrix swapped = a;
        swap_rows_and_columns(swapped, 0, dim - 1);
        record("row_swap", relative(pf_of(swapped), -pf));
    } else {
        skip("row_swap", "dimension below 2");
    }

    const ComplexMatrix u = random_unitary(dim, options.seed);
    const ComplexMatrix congruent = matmul_transposed(matmul(u, a), u);
    record("unitary_congruence", relative(pf_of(congruent), det_lu(u) * pf));

    if (base.diagnostics.singular) {
        skip("bridge_relation", "A is singular");
    } else {
        record("bridge_relation", relative(generalized_pfaffian_via_relation(a, tol).value, pf));
    }

    const Complex apf = antisymmetrized_pfaffian(a).value;
    if (std::abs(apf) < options.phase_floor || base.diagnostics.singular) {
        skip("phase_agreement", "antisymmetrized Pfaffian below the phase floor");
    } else {
        double diff = std::abs(std::remainder(std::arg(apf) - std::arg(pf), 2.0 * std::numbers::pi));
        record("phase_agreement", diff);
    }
    return report;
}

}  // namespace pfaff
