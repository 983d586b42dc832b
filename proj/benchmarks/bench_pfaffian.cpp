#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "pfaff/generalized_pfaffian.hpp"
#include "pfaff/generators.hpp"
#include "pfaff/linalg.hpp"
#include "pfaff/normal_form.hpp"
#include "pfaff/skew_pfaffian.hpp"

using namespace pfaff;

namespace {

SkewMatrix scaled_skew(std::size_t dim) {
    ComplexMatrix s = random_skew(dim, 1).matrix();
    s *= 1.0 / std::sqrt(static_cast<double>(dim));
    return SkewMatrix(std::move(s));
}

ComplexMatrix conjugate_normal(std::size_t dim) {
    SpectrumSpec spec;
    spec.seed = 2;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(dim / 2);
        spec.entries.push_back({SpectrumClass::ComplexPair, std::polar(0.5 + t, std::numbers::pi * (0.1 + 0.8 * t)), 1});
    }
    return random_conjugate_normal(spec);
}

void BM_SkewHouseholder(benchmark::State& state) {
    const SkewMatrix a = scaled_skew(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pf_skew_householder(a));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SkewHouseholder)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNCubed);

void BM_SkewParlettReid(benchmark::State& state) {
    const SkewMatrix a = scaled_skew(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pf_skew_parlett_reid(a));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SkewParlettReid)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNCubed);

void BM_Polynomial(benchmark::State& state) {
    const ComplexMatrix a = random_ginibre(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pf_polynomial(a));
    }
}
BENCHMARK(BM_Polynomial)->DenseRange(4, 12, 2);

void BM_EigNormal(benchmark::State& state) {
    const ComplexMatrix a = conjugate_normal(static_cast<std::size_t>(state.range(0)));
    const ComplexMatrix lambda = matmul(a, a.conj());
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_normal(lambda));
    }
}
BENCHMARK(BM_EigNormal)->RangeMultiplier(2)->Range(8, 128);

void BM_WignerNormalForm(benchmark::State& state) {
    const ComplexMatrix a = conjugate_normal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wigner_normal_form(a));
    }
}
BENCHMARK(BM_WignerNormalForm)->RangeMultiplier(2)->Range(8, 128);

void BM_GeneralizedPfaffian(benchmark::State& state) {
    const ComplexMatrix a = conjugate_normal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(generalized_pfaffian(a));
    }
}
BENCHMARK(BM_GeneralizedPfaffian)->RangeMultiplier(2)->Range(8, 256);

void BM_RelationRoute(benchmark::State& state) {
    const ComplexMatrix a = conjugate_normal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(generalized_pfaffian_via_relation(a));
    }
}
BENCHMARK(BM_RelationRoute)->RangeMultiplier(2)->Range(8, 256);

}  // namespace

BENCHMARK_MAIN();
