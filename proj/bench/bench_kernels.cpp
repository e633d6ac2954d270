// Serial reference vs OpenMP kernels. Arg 0 selects Exec::serial, 1 Exec::parallel.

#include <benchmark/benchmark.h>

#include "ncurv/catalog.hpp"
#include "ncurv/kernels.hpp"
#include "ncurv/random_models.hpp"

using namespace ncurv;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

template <class S>
void BM_phi(benchmark::State& state) {
    Rng rng(1);
    const auto dim = static_cast<std::size_t>(state.range(1));
    const auto mats = random_contraction<S>(2, dim, rng);
    const auto x = Matrix<S>::identity(dim);
    for (auto _ : state) benchmark::DoNotOptimize(phi_kernel(mats, x, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::serial ? "serial" : "parallel");
}

template <class S>
void BM_orbit_norms(benchmark::State& state) {
    const auto e = make_entry<S>("polynomial_isometry", {{"coefficients", "12:3/5;21:4/5"}});
    const TruncatedBasis basis(2, static_cast<std::size_t>(state.range(1)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(orbit_norm_kernel(e.subspace->generators, basis, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::serial ? "serial" : "parallel");
}

template <class S>
void BM_blocks_rank(benchmark::State& state) {
    Rng rng(2);
    std::vector<Matrix<S>> blocks;
    for (int b = 0; b < 64; ++b) {
        const auto mats = random_contraction<S>(2, static_cast<std::size_t>(state.range(1)), rng);
        auto g = Matrix<S>::identity(mats.front().rows());
        g -= phi_kernel(mats, Matrix<S>::identity(mats.front().rows()), Exec::serial);
        blocks.push_back(std::move(g));
    }
    for (auto _ : state) benchmark::DoNotOptimize(blocks_rank_kernel(blocks, 1e-9, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_phi<Float>)->ArgsProduct({{0, 1}, {32, 96}});
BENCHMARK(BM_phi<Exact>)->ArgsProduct({{0, 1}, {8, 16}});
BENCHMARK(BM_orbit_norms<Float>)->ArgsProduct({{0, 1}, {12, 16}});
BENCHMARK(BM_orbit_norms<Exact>)->ArgsProduct({{0, 1}, {12}});
BENCHMARK(BM_blocks_rank<Float>)->ArgsProduct({{0, 1}, {16, 32}});
BENCHMARK(BM_blocks_rank<Exact>)->ArgsProduct({{0, 1}, {6}});

BENCHMARK_MAIN();
