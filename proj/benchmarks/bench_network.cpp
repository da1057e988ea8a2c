#include <benchmark/benchmark.h>

#include "cigan/network.hpp"
#include "cigan/rng.hpp"

using namespace cigan;

namespace {

Matrix random_batch(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.flat()) v = rng.normal();
    return m;
}

} // namespace

static void BM_ForwardDefaultDiscriminator(benchmark::State& state) {
    const DenseNetwork net = init_network({12, 500, 400, 300, 200, 100, 1}, Activation::Selu,
                                          Activation::Sigmoid, 1);
    const Matrix batch = random_batch(state.range(0), 12, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(net, batch));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardDefaultDiscriminator)->Arg(32)->Arg(64)->Arg(256);

static void BM_BackwardDefaultDiscriminator(benchmark::State& state) {
    const DenseNetwork net = init_network({12, 500, 400, 300, 200, 100, 1}, Activation::Selu,
                                          Activation::Sigmoid, 1);
    const Matrix batch = random_batch(state.range(0), 12, 2);
    const Matrix labels(state.range(0), 1, 1.0);
    for (auto _ : state) {
        const ForwardCache cache = forward_cached(net, batch);
        benchmark::DoNotOptimize(backward(net, cache, bce_grad(cache.output(), labels)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BackwardDefaultDiscriminator)->Arg(32)->Arg(64);

static void BM_MatmulSquare(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const Matrix a = random_batch(n, n, 3);
    const Matrix b = random_batch(n, n, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul(a, b));
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_MatmulSquare)->Arg(64)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
