#include "pfaff/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "pfaff/errors.hpp"
#include "pfaff/generators.hpp"
#include "pfaff/linalg.hpp"

namespace pfaff {

namespace {

using Vec = std::vector<Complex>;

Complex dot(const Vec& a, const Vec& b) {
    Complex sum{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

double norm(const Vec& a) {
    double sum = 0.0;
    for (const auto& z : a) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

void scale(Vec& a, Complex f) {
    for (auto& z : a) {
        z *= f;
    }
}

/// v -> A conj(v)
Vec apply_antilinear(const ComplexMatrix& a, const Vec& v) {
    Vec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto row = a.row(i);
        Complex sum{};
        for (std::size_t j = 0; j < row.size(); ++j) {
            sum += row[j] * std::conj(v[j]);
        }
        out[i] = sum;
    }
    return out;
}

void project_out(Vec& x, const Vec& q) {
    const Complex c = dot(q, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] -= c * q[i];
    }
}

/// Orthonormal basis of span(basis) minus span(taken), `count` vectors.
/// Both inputs are orthonormal; modified Gram-Schmidt with norm pivoting and
/// one re-orthogonalization pass.
std::vector<Vec> remaining_basis(std::vector<Vec> basis, const std::vector<Vec>& taken, std::size_t count) {
    for (auto& x : basis) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : taken) {
                project_out(x, q);
            }
        }
    }
    std::vector<Vec> out;
    out.reserve(count);
    while (out.size() < count) {
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const double nk = norm(basis[k]);
            if (nk > best_norm) {
                best_norm = nk;
                best = k;
            }
        }
        Vec q = std::move(basis[best]);
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(best));
        for (const auto& prev : out) {
            project_out(q, prev);
        }
        for (const auto& t : taken) {
            project_out(q, t);
        }
        scale(q, 1.0 / norm(q));
        for (auto& x : basis) {
            project_out(x, q);
        }
        out.push_back(std::move(q));
    }
    return out;
}

void fix_phase(Vec& v) {
    const double threshold = 1e-10 * norm(v);
    for (const auto& z : v) {
        if (std::abs(z) > threshold) {
            scale(v, std::abs(z) / z);
            return;
        }
    }
}

struct PairItem {
    Vec v;
    Vec w;
    Complex s;
    std::size_t cluster;
};

struct RealItem {
    Vec u;
    double sigma;
    std::size_t cluster;
};

/// Mixes a cluster basis with a random k x k unitary.
std::vector<Vec> mix_basis(const std::vector<Vec>& basis, std::uint64_t seed) {
    const std::size_t k = basis.size();
    const ComplexMatrix r = random_unitary(k, seed);
    std::vector<Vec> out(k, Vec(basis.front().size()));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
            const Complex f = r(l, j);
            for (std::size_t i = 0; i < out[j].size(); ++i) {
                out[j][i] += basis[l][i] * f;
            }
        }
    }
    return out;
}

template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[rng.below(i)]);
    }
}

}  // namespace

ConjugateNormalCheck is_conjugate_normal(const ComplexMatrix& a, const Tolerances& tol) {
    if (!a.is_square()) {
        throw DimensionError("is_conjugate_normal: matrix must be square");
    }
    const ComplexMatrix ac = a.conj();
    const ComplexMatrix lhs = matmul(a.transpose(), ac);
    const ComplexMatrix rhs = matmul(a, a.adjoint());
    const double norm_a = a.frobenius_norm();
    const double residual = (lhs - rhs).frobenius_norm() / (1.0 + norm_a * norm_a);
    return {residual <= tol.eig_residual, residual};
}

ComplexMatrix antisymmetric_part(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("antisymmetric_part: matrix must be square");
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = (a(i, j) - a(j, i)) / 2.0;
        }
    }
    return out;
}

SpectralPairing classify_spectrum(const ComplexMatrix& a, const Tolerances& tol) {
    tol.validate();
    const ConjugateNormalCheck check = is_conjugate_normal(a, tol);
    if (!check.conjugate_normal) {
        throw NotConjugateNormalError(
            "matrix is not conjugate-normal (residual " + std::to_string(check.residual) + ")", check.residual);
    }
    const std::size_t n = a.rows();
    const double norm_a = a.frobenius_norm();
    const double ctol = tol.cluster_abs(norm_a);

    const ComplexMatrix lambda = matmul(a, a.conj());
    EigenDecomposition eig = eig_normal(lambda, tol);

    // Single-linkage clustering by union-find.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(eig.values[i] - eig.values[j]) <= ctol) {
                parent[find(i)] = find(j);
            }
        }
    }

    SpectralPairing out{{}, std::move(eig.vectors), ctol};
    for (std::size_t j = 0; j < n; ++j) {
        Vec v = out.eigvectors.column(j);
        fix_phase(v);
        out.eigvectors.set_column(j, v);
    }

    std::vector<std::size_t> root_to_cluster(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (root_to_cluster[root] == n) {
            root_to_cluster[root] = out.clusters.size();
            out.clusters.push_back({Complex{}, 0, ClusterClass::NonNegativeReal, std::nullopt, 0.0, {}});
        }
        out.clusters[root_to_cluster[root]].columns.push_back(i);
    }

    const ComplexMatrix m = matmul(a.transpose(), a.conj());
    for (auto& c : out.clusters) {
        c.multiplicity = c.columns.size();
        Complex sum{};
        double mu = 0.0;
        for (std::size_t col : c.columns) {
            sum += eig.values[col];
            const Vec v = out.eigvectors.column(col);
            Vec mv(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) {
                    mv[i] += m(i, k) * v[k];
                }
            }
            mu += dot(v, mv).real();
        }
        c.omega = sum / static_cast<double>(c.multiplicity);
        c.mu = std::max(0.0, mu / static_cast<double>(c.multiplicity));
        if (std::abs(c.omega.imag()) <= ctol / 2.0) {
            c.kind = c.omega.real() >= -ctol ? ClusterClass::NonNegativeReal : ClusterClass::NegativeReal;
        } else {
            c.kind = ClusterClass::ComplexPair;
        }
    }

    for (std::size_t k = 0; k < out.clusters.size(); ++k) {
        auto& c = out.clusters[k];
        if (c.kind == ClusterClass::NegativeReal && c.multiplicity % 2 != 0) {
            throw SpectralConsistencyError("negative real eigenvalue " + std::to_string(c.omega.real()) +
                                           " of A A* has odd multiplicity " + std::to_string(c.multiplicity));
        }
        if (c.kind != ClusterClass::ComplexPair || c.partner) {
            continue;
        }
        std::optional<std::size_t> best;
        double best_dist = 0.0;
        for (std::size_t l = 0; l < out.clusters.size(); ++l) {
            const auto& d = out.clusters[l];
            if (l == k || d.kind != ClusterClass::ComplexPair || d.partner) {
                continue;
            }
            const double dist = std::abs(d.omega - std::conj(c.omega));
            if (!best || dist < best_dist) {
                best = l;
                best_dist = dist;
            }
        }
        const double pair_tol = ctol * static_cast<double>(std::max<std::size_t>(1, c.multiplicity));
        if (!best || best_dist > pair_tol || out.clusters[*best].multiplicity != c.multiplicity) {
            throw SpectralConsistencyError("complex eigenvalue (" + std::to_string(c.omega.real()) + ", " +
                                           std::to_string(c.omega.imag()) +
                                           ") of A A* has no conjugate partner of equal multiplicity");
        }
        c.partner = best;
        out.clusters[*best].partner = k;
    }
    return out;
}

NormalForm wigner_normal_form(const ComplexMatrix& a, const Tolerances& tol, const NormalFormOptions& options) {
    const SpectralPairing pairing = classify_spectrum(a, tol);
    const std::size_t n = a.rows();
    const double ctol = pairing.cluster_tol;

    std::vector<PairItem> pairs;
    std::vector<RealItem> reals;

    for (std::size_t k = 0; k < pairing.clusters.size(); ++k) {
        const SpectralCluster& c = pairing.clusters[k];
        std::vector<Vec> basis;
        basis.reserve(c.columns.size());
        for (std::size_t col : c.columns) {
            basis.push_back(pairing.eigvectors.column(col));
        }
        if (options.gauge_seed && basis.size() > 1) {
            basis = mix_basis(basis, derive_seed(*options.gauge_seed, k));
        } else if (options.gauge_seed) {
            SplitMix64 rng(derive_seed(*options.gauge_seed, k));
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            scale(basis.front(), std::polar(1.0, angle));
        }

        switch (c.kind) {
            case ClusterClass::ComplexPair: {
                // Only the Im omega > 0 member of the pair spawns blocks; its
                // partner eigenspace is reached as span{A conj(v)}.
                if (c.omega.imag() < 0.0) {
                    break;
                }
                const Complex s = std::sqrt(c.omega);
                const Complex phase = s / std::abs(s);
                for (auto& v : basis) {
                    Vec w = apply_antilinear(a, v);
                    scale(w, phase / norm(w));
                    pairs.push_back({std::move(v), std::move(w), s, k});
                }
                break;
            }
            case ClusterClass::NegativeReal: {
                const Complex s{0.0, std::sqrt(-c.omega.real())};
                std::vector<Vec> remaining = std::move(basis);
                while (!remaining.empty()) {
                    Vec v = remaining.front();
                    Vec w = apply_antilinear(a, v);
                    scale(w, Complex{0.0, 1.0} / norm(w));
                    const std::size_t left = remaining.size() - 2;
                    remaining = remaining_basis(std::move(remaining), {v, w}, left);
                    pairs.push_back({std::move(v), std::move(w), s, k});
                }
                break;
            }
            case ClusterClass::NonNegativeReal: {
                if (std::abs(c.omega) <= ctol) {
                    for (auto& v : basis) {
                        reals.push_back({std::move(v), 0.0, k});
                    }
                    break;
                }
                const double root = std::sqrt(std::max(c.omega.real(), 0.0));
                std::vector<Vec> remaining = std::move(basis);
                while (!remaining.empty()) {
                    const Vec v = remaining.front();
                    const Vec av = apply_antilinear(a, v);
                    Vec u(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        u[i] = v[i] + av[i] / root;
                    }
                    if (norm(u) < 1e-8 * norm(v)) {
                        const Complex i_unit{0.0, 1.0};
                        for (std::size_t i = 0; i < n; ++i) {
                            u[i] = i_unit * v[i] - i_unit * av[i] / root;
                        }
                    }
                    scale(u, 1.0 / norm(u));
                    const std::size_t left = remaining.size() - 1;
                    remaining = remaining_basis(std::move(remaining), {u}, left);
                    reals.push_back({std::move(u), root, k});
                }
                break;
            }
        }
    }

    if (options.gauge_seed) {
        SplitMix64 rng(derive_seed(*options.gauge_seed, pairing.clusters.size() + 1));
        shuffle(pairs, rng);
        shuffle(reals, rng);
    } else {
        // Keys are rounded so that rounding noise in |s| does not decide ties.
        const double quantum = 1e-9 * (1.0 + a.frobenius_norm());
        auto key = [quantum](double x) { return std::llround(x / quantum); };
        std::stable_sort(pairs.begin(), pairs.end(), [&](const PairItem& x, const PairItem& y) {
            const auto ax = key(std::abs(x.s));
            const auto ay = key(std::abs(y.s));
            if (ax != ay) {
                return ax > ay;
            }
            const auto gx = std::llround(std::arg(x.s) / 1e-9);
            const auto gy = std::llround(std::arg(y.s) / 1e-9);
            if (gx != gy) {
                return gx < gy;
            }
            return x.cluster < y.cluster;
        });
        std::stable_sort(reals.begin(), reals.end(), [&](const RealItem& x, const RealItem& y) {
            const auto sx = key(x.sigma);
            const auto sy = key(y.sigma);
            return sx != sy ? sx < sy : x.cluster < y.cluster;
        });
    }

    const std::size_t p = pairs.size();
    if (2 * p + reals.size() != n) {
        throw SpectralConsistencyError("normal form assembled " + std::to_string(2 * p + reals.size()) +
                                       " basis vectors for dimension " + std::to_string(n));
    }

    ComplexMatrix u(n, n);
    std::vector<SigmaBlock> blocks;
    for (std::size_t j = 0; j < p; ++j) {
        u.set_column(j, pairs[j].v);
        u.set_column(p + j, pairs[j].w);
        if (j > 0 && pairs[j].cluster == pairs[j - 1].cluster) {
            ++std::get<OffDiagBlock>(blocks.back()).multiplicity;
        } else {
            blocks.emplace_back(OffDiagBlock{pairs[j].s, 1});
        }
    }
    for (std::size_t l = 0; l < reals.size(); ++l) {
        u.set_column(2 * p + l, reals[l].u);
        if (l > 0 && reals[l].cluster == reals[l - 1].cluster) {
            ++std::get<RealBlock>(blocks.back()).multiplicity;
        } else {
            blocks.emplace_back(RealBlock{reals[l].sigma, 1});
        }
    }

    NormalForm nf{std::move(u), std::move(blocks), p, Complex{}, 0.0, 0.0};
    nf.det_u = det_lu(nf.u);
    nf.unitarity_residual = unitarity_residual(nf.u);
    const double norm_a = a.frobenius_norm();
    const double recon = (a - reconstruct(nf)).frobenius_norm();
    nf.reconstruction_residual = norm_a > 0.0 ? recon / norm_a : recon;

    if (nf.unitarity_residual > tol.unitarity_abs(n)) {
        throw NumericalError("normal form: U is not unitary (residual " + std::to_string(nf.unitarity_residual) + ")",
                             nf.unitarity_residual);
    }
    if (nf.reconstruction_residual > tol.reconstruct) {
        throw NumericalError("normal form: reconstruction residual " + std::to_string(nf.reconstruction_residual) +
                                 " exceeds tolerance",
                             nf.reconstruction_residual);
    }
    return nf;
}

ComplexMatrix sigma_matrix(const NormalForm& nf) {
    const std::size_t n = nf.u.rows();
    const std::size_t p = nf.half_dim;
    ComplexMatrix sigma(n, n);
    std::size_t off = 0;
    std::size_t diag = 2 * p;
    for (const auto& block : nf.blocks) {
        if (const auto* b = std::get_if<OffDiagBlock>(&block)) {
            for (std::size_t r = 0; r < b->multiplicity; ++r, ++off) {
                sigma(off, p + off) = b->s;
                sigma(p + off, off) = std::conj(b->s);
            }
        } else {
            const auto& rb = std::get<RealBlock>(block);
            for (std::size_t r = 0; r < rb.multiplicity; ++r, ++diag) {
                sigma(diag, diag) = rb.sigma;
            }
        }
    }
    return sigma;
}

ComplexMatrix reconstruct(const NormalForm& nf) {
    return matmul_transposed(matmul(nf.u, sigma_matrix(nf)), nf.u);
}

}  // namespace pfaff
