#include <benchmark/benchmark.h>

#include <cmath>
#include <span>

#include "uqcov/analysis.hpp"
#include "uqcov/cubature.hpp"
#include "uqcov/density.hpp"
#include "uqcov/lattice.hpp"
#include "uqcov/transform.hpp"

using namespace uqcov;

namespace {

double first(std::span<const double> x) {
    return x[0];
}

double product(std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= v;
    return p;
}

void BM_Erfinv(benchmark::State& state) {
    double y = -0.999;
    for (auto _ : state) {
        benchmark::DoNotOptimize(erfinv(y));
        y += 1e-6;
        if (y >= 0.999) y = -0.999;
    }
}
BENCHMARK(BM_Erfinv);

void BM_MidpointExp(benchmark::State& state) {
    const auto rho = Density::exponential(1.0);
    const auto g = TransformedIntegrand::homogeneous(first, 1, Transform::scaled_inverse_cdf(rho, 2.4557), rho);
    const auto rule = CubatureRule::midpoint(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(apply(rule, g));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MidpointExp)->RangeMultiplier(10)->Range(1000, 100000);

void BM_LatticeD4(benchmark::State& state) {
    const auto rho = Density::exponential(1.0);
    const auto n = std::size_t{1} << state.range(0);
    const auto g = TransformedIntegrand::homogeneous(product, 4, Transform::scaled_inverse_cdf(rho, 2.4557), rho);
    const auto rule = CubatureRule::lattice(n, builtin_korobov_vector(n, 4).components);
    for (auto _ : state) benchmark::DoNotOptimize(apply(rule, g));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_LatticeD4)->DenseRange(10, 16, 3);

void BM_NumericNorms(benchmark::State& state) {
    const auto rho = Density::gaussian(1.0);
    const auto tr = Transform::scaled_inverse_cdf(rho, 1.7);
    const auto p = PExponent::of(2.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(h1_sup_numeric(rho, tr, p));
        benchmark::DoNotOptimize(h2_lp_numeric(rho, tr, p));
    }
}
BENCHMARK(BM_NumericNorms);

void BM_OptimalA(benchmark::State& state) {
    const auto rho = Density::exponential(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_a(rho, PExponent::infinity()));
}
BENCHMARK(BM_OptimalA);

}  // namespace

BENCHMARK_MAIN();
