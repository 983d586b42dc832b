// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "pfaff/generalized_pfaffian.hpp"
#include "pfaff/generators.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/normal_form.hpp"
#include "pfaff/skew_pfaffian.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

using namespace pfaff;
using pfaff::testing::CorpusCase;
using pfaff::testing::distance;
using pfaff::testing::relative_error;

namespace {

constexpr std::uint64_t kCorpusSeed = 0x5EED2024;
constexpr std::size_t kCorpusSize = 300;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Verdict& v) {
    std::printf("%s  %2d  %-34s %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Verdict run_guarded(const std::function<Verdict()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

Verdict oracle_equivalence() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        const std::size_t dim = 2 * (1 + k % 4);
        const ComplexMatrix a = random_ginibre(dim, derive_seed(1, k));
        const Complex poly = pf_polynomial(a);
        const Complex skew = pf_skew_householder(SkewMatrix::antisymmetrize(a));
        worst = std::max(worst, relative_error(poly, skew));
    }
    const double t = seconds_since(start);
    return {worst <= 1e-11 && t <= 10.0, fmt("max rel err %.2e (<= 1e-11), %.2f s (<= 10 s)", worst, t)};
}

Verdict determinant_identity(const std::vector<CorpusCase>& corpus, double build_seconds) {
    const auto start = Clock::now();
    double worst = 0.0;
    std::size_t degenerate = 0;
    std::size_t max_dim = 0;
    for (const auto& c : corpus) {
        const Complex pf = generalized_pfaffian(c.a).value;
        const Complex det = det_lu(c.a);
        worst = std::max(worst, std::abs(pf * pf - det) / std::abs(det));
        degenerate += c.degenerate;
        max_dim = std::max(max_dim, c.a.rows());
    }
    const double t = seconds_since(start) + build_seconds;
    const bool pass = worst <= 1e-9 && degenerate >= 50 && max_dim <= 40 && t <= 30.0;
    return {pass, fmt("max |pf^2-det|/|det| %.2e (<= 1e-9), %zu degenerate, 2n <= %zu, %.2f s", worst, degenerate,
                      max_dim, t)};
}

Verdict identity_battery(const std::vector<CorpusCase>& corpus) {
    // Residuals of the identities exactly as listed: adjoint and inverse
    // without a sign factor.
    double worst_stated = 0.0;
    double worst_signed = 0.0;
    double worst_other = 0.0;
    std::size_t odd_violations = 0;
    std::size_t odd_total = 0;
    std::string worst_other_name;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const ComplexMatrix& a = corpus[k].a;
        IdentityOptions options;
        options.seed = derive_seed(3, k);
        const IdentityReport r = identity_report(a, std::nullopt, std::polar(1.1, 0.3 + 0.01 * static_cast<double>(k)),
                                                 Tolerances{}, options);
        for (const auto& c : r.checks) {
            if (!c.evaluated || c.name == "phase_agreement" || c.name == "bridge_relation") {
                continue;
            }
            if (c.name == "adjoint" || c.name == "inverse") {
                worst_signed = std::max(worst_signed, c.residual);
            } else if (c.residual > worst_other) {
                worst_other = c.residual;
                worst_other_name = c.name;
            }
        }
        const Complex pf = r.pfaffian;
        const double adjoint = relative_error(generalized_pfaffian(a.adjoint()).value, std::conj(pf));
        const double inv = relative_error(generalized_pfaffian(inverse(a)).value, 1.0 / pf);
        const double stated = std::max(adjoint, inv);
        worst_stated = std::max(worst_stated, stated);
        if (r.half_dim % 2 == 1) {
            ++odd_total;
            odd_violations += stated > 1e-8;
        }
    }

    // Tensor products with symmetric B, n <= 2 and m <= 3.
    double worst_tensor = 0.0;
    for (std::size_t k = 0; k < 24; ++k) {
        const ComplexMatrix a = testing::corpus_case(kCorpusSeed + 1, k, 2).a;
        const std::size_t m = 1 + k % 3;
        const ComplexMatrix g = random_ginibre(m, derive_seed(4, k));
        const IdentityReport r = identity_report(a, 0.5 * (g + g.transpose()), 1.0);
        worst_tensor = std::max(worst_tensor, r.find("tensor")->residual);
    }
    const ComplexMatrix j{{0.0, 1.0}, {-1.0, 0.0}};
    const std::vector<Complex> bd{2.0, 3.0};
    const ComplexMatrix b = ComplexMatrix::diagonal(bd);
    const double hand = std::abs(generalized_pfaffian(kron(j, b)).value - Complex{-6.0, 0.0}) / 6.0;
    const double hand_report = identity_report(j, b, 1.0).find("tensor")->residual;

    const bool others = std::max({worst_other, worst_tensor, hand, hand_report}) <= 1e-8;
    const bool pass = others && worst_stated <= 1e-8;
    std::string detail = fmt("other identities max %.2e (%s), tensor max %.2e, pf(J(x)diag(2,3)) = -6 err %.1e; ",
                             worst_other, worst_other_name.c_str(), std::max(worst_tensor, hand_report), hand);
    detail += fmt("adjoint pf(A^H)=conj pf(A) / inverse pf(A^-1)=1/pf(A) as listed: max %.2e, violated on %zu of %zu "
                  "odd-n instances; with the (-1)^n factor: max %.2e",
                  worst_stated, odd_violations, odd_total, worst_signed);
    return {pass, detail};
}

Verdict normal_form_contract(const std::vector<CorpusCase>& corpus) {
    const Tolerances tol;
    double rec = 0.0;
    double uni = 0.0;
    double as = 0.0;
    for (const auto& c : corpus) {
        const NormalForm nf = wigner_normal_form(c.a, tol);
        const double norm = c.a.frobenius_norm();
        rec = std::max(rec, distance(c.a, reconstruct(nf)) / norm);
        uni = std::max(uni, unitarity_residual(nf.u) / std::sqrt(static_cast<double>(c.a.rows())));
        ComplexMatrix im = sigma_matrix(nf);
        for (auto& x : im.entries()) {
            x = Complex{0.0, x.imag()};
        }
        as = std::max(as, distance(antisymmetric_part(c.a), matmul_transposed(matmul(nf.u, im), nf.u)) / norm);
    }
    return {rec <= 1e-9 && uni <= 1e-10 && as <= 1e-9,
            fmt("reconstruction %.2e*|A| (<= 1e-9), unitarity %.2e*sqrt(dim) (<= 1e-10), antisym %.2e*|A| (<= 1e-9)",
                rec, uni, as)};
}

Verdict gauge_invariance(const std::vector<CorpusCase>& corpus) {
    double worst = 0.0;
    std::size_t fourfold = 0;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const auto& c = corpus[k];
        const Complex pf = generalized_pfaffian(c.a).value;
        for (std::uint64_t g = 0; g < 3; ++g) {
            NormalFormOptions options;
            options.gauge_seed = derive_seed(derive_seed(5, k), g);
            worst = std::max(worst, relative_error(generalized_pfaffian(c.a, {}, options).value, pf));
        }
        fourfold += c.max_fold >= 4;
    }
    return {worst <= 1e-8 && fourfold > 0,
            fmt("max rel change %.2e (<= 1e-8) over 3 random gauges each, %zu instances with 4-fold blocks", worst,
                fourfold)};
}

Verdict bridge_relation(const std::vector<CorpusCase>& corpus) {
    double worst = 0.0;
    double worst_im = 0.0;
    double min_re = INFINITY;
    for (const auto& c : corpus) {
        const PfResult direct = generalized_pfaffian(c.a);
        const PfResult relation = generalized_pfaffian_via_relation(c.a);
        worst = std::max(worst, relative_error(relation.value, direct.value));
        const Complex ratio = direct.diagnostics.det_a / direct.diagnostics.det_as;
        worst_im = std::max(worst_im, std::abs(ratio.imag() / ratio.real()));
        min_re = std::min(min_re, ratio.real());
    }
    return {worst <= 1e-9 && worst_im <= 1e-8 && min_re > 0.0,
            fmt("max rel diff %.2e (<= 1e-9), max |Im/Re| of ratio %.2e (<= 1e-8), min Re %.3g (> 0)", worst, worst_im,
                min_re)};
}

Verdict jump_discontinuity() {
    double mag = 0.0;
    double flip = 0.0;
    for (double x : {0.1, 0.5, 1.0}) {
        const auto a = [](double y) { return ComplexMatrix{{0.0, Complex{1.0, y}}, {Complex{1.0, -y}, 0.0}}; };
        const Complex plus = generalized_pfaffian(a(x)).value;
        const Complex minus = generalized_pfaffian(a(-x)).value;
        const double want = std::sqrt(1.0 + x * x);
        mag = std::max({mag, std::abs(std::abs(plus) - want), std::abs(std::abs(minus) - want)});
        flip = std::max(flip, std::abs(plus + minus));
    }
    return {mag <= 1e-10 && flip <= 1e-10,
            fmt("max ||pf|-sqrt(1+x^2)| %.2e, max |pf(x)+pf(-x)| %.2e (both <= 1e-10)", mag, flip)};
}

Verdict derivative() {
    const double h = 1e-5;
    const double x0 = 0.3;
    double worst = 0.0;
    for (std::uint64_t p = 0; p < 20; ++p) {
        const auto path = testing::unitary_path(testing::corpus_case(kCorpusSeed + 2, p, 6).spec, derive_seed(6, p));
        const Complex analytic = pfaffian_derivative(path.at(x0), path.derivative(x0));
        const Complex numeric =
            (generalized_pfaffian(path.at(x0 + h)).value - generalized_pfaffian(path.at(x0 - h)).value) / (2.0 * h);
        worst = std::max(worst, relative_error(analytic, numeric));
    }
    return {worst <= 1e-5, fmt("max rel err vs central difference %.2e (<= 1e-5) on 20 paths", worst)};
}

Verdict phase_agreement(const std::vector<CorpusCase>& corpus) {
    double worst = 0.0;
    std::size_t used = 0;
    for (const auto& c : corpus) {
        const Complex apf = antisymmetrized_pfaffian(c.a).value;
        if (std::abs(apf) < 1e-6) {
            continue;
        }
        ++used;
        const Complex pf = generalized_pfaffian(c.a).value;
        worst = std::max(worst, std::abs(std::remainder(std::arg(apf) - std::arg(pf), 2.0 * std::numbers::pi)));
    }
    return {worst <= 1e-7 && used > 0, fmt("max phase diff %.2e rad (<= 1e-7) on %zu instances", worst, used)};
}

Verdict performance() {
    // 100 distinct complex pairs.
    SpectrumSpec big;
    big.seed = kCorpusSeed + 3;
    for (std::size_t k = 0; k < 100; ++k) {
        const double r = 0.5 + 1.5 * static_cast<double>(k) / 100.0;
        const double theta = std::numbers::pi * (0.1 + 0.8 * static_cast<double>((k * 37) % 100) / 100.0);
        big.entries.push_back({SpectrumClass::ComplexPair, std::polar(r, theta), 1});
    }
    big.dim = 200;
    const ComplexMatrix a = random_conjugate_normal(big);
    auto start = Clock::now();
    const Complex pf = generalized_pfaffian(a).value;
    const double t_gen = seconds_since(start);

    // Entries scaled by 1/sqrt(dim) keep |pf| inside double range.
    ComplexMatrix s = random_skew(1000, 77).matrix();
    s *= 1.0 / std::sqrt(1000.0);
    const SkewMatrix skew(std::move(s));
    start = Clock::now();
    const Complex ps = pf_skew_householder(skew);
    const double t_skew = seconds_since(start);
    const bool finite = std::isfinite(std::abs(pf)) && std::isfinite(std::abs(ps)) && std::abs(pf) > 0.0;
    return {t_gen <= 5.0 && t_skew <= 10.0 && finite,
            fmt("200x200 generalized pf %.2f s (<= 5 s), 1000x1000 skew pf %.2f s (<= 10 s)", t_gen, t_skew)};
}

Verdict cli_golden() {
    const std::filesystem::path dir{PFAFF_GOLDEN_DIR};
    struct Case {
        const char* input;
        const char* expected;
        int exit_code;
    };
    const Case cases[] = {{"skew.mtx", "pf_skew.expected.json", 0},
                          {"hermitian_offdiag.json", "pf_hermitian_offdiag.expected.json", 0},
                          {"diag_positive.json", "pf_diag_positive.expected.json", 4}};
    std::size_t ok = 0;
    std::string bad;
    for (const auto& c : cases) {
        cli::CommandOptions o;
        o.inputs = {(dir / c.input).string()};
        const cli::CommandResult r = cli::run_command("pf", o);
        std::ifstream in(dir / c.expected, std::ios::binary);
        std::ostringstream want;
        want << in.rdbuf();
        if (r.text == want.str() && r.exit_code == c.exit_code) {
            ++ok;
        } else {
            bad += std::string(" ") + c.input;
        }
    }
    return {ok == 3, fmt("%zu/3 pf examples byte-identical with matching exit codes%s", ok, bad.c_str())};
}

}  // namespace

int main() {
    std::printf("acceptance suite (corpus seed %#llx, %zu matrices)\n", static_cast<unsigned long long>(kCorpusSeed),
                kCorpusSize);
    report(1, "oracle equivalence", run_guarded(oracle_equivalence));

    const auto start = Clock::now();
    const std::vector<CorpusCase> corpus = testing::corpus(kCorpusSeed, kCorpusSize, 20);
    const double build = seconds_since(start);

    report(2, "determinant identity", run_guarded([&] { return determinant_identity(corpus, build); }));
    report(3, "identity battery", run_guarded([&] { return identity_battery(corpus); }));
    report(4, "normal-form contract", run_guarded([&] { return normal_form_contract(corpus); }));
    report(5, "gauge/ordering invariance", run_guarded([&] { return gauge_invariance(corpus); }));
    report(6, "bridge relation", run_guarded([&] { return bridge_relation(corpus); }));
    report(7, "jump discontinuity", run_guarded(jump_discontinuity));
    report(8, "derivative", run_guarded(derivative));
    report(9, "phase agreement", run_guarded([&] { return phase_agreement(corpus); }));
    report(10, "performance", run_guarded(performance));
    report(11, "CLI golden tests", run_guarded(cli_golden));
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
