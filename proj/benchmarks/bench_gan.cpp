#include <benchmark/benchmark.h>

#include "cigan/gan.hpp"
#include "cigan/rng.hpp"

using namespace cigan;

namespace {

Matrix class_samples(std::size_t m, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix x(m, d);
    for (double& v : x.flat()) v = rng.uniform() * 1.6 - 0.8;
    return x;
}

} // namespace

// one epoch over a 230-sample class at the default architecture
static void BM_TrainEpochDefaultArch(benchmark::State& state) {
    GanConfig cfg;
    cfg.max_iter = 1;
    const Matrix samples = class_samples(230, 12, 5);
    for (auto _ : state) {
        GanModel model = build_gan(cfg, 12, "bench", 42);
        benchmark::DoNotOptimize(train_gan(model, samples, cfg));
    }
    state.SetItemsProcessed(state.iterations() * samples.rows());
}
BENCHMARK(BM_TrainEpochDefaultArch)->Unit(benchmark::kMillisecond);

static void BM_TrainEpochSmallArch(benchmark::State& state) {
    GanConfig cfg;
    cfg.max_iter = 1;
    cfg.generator_hidden_layer_sizes = {16, 16};
    cfg.discriminator_hidden_layer_sizes = {16, 16};
    const Matrix samples = class_samples(state.range(0), 2, 5);
    for (auto _ : state) {
        GanModel model = build_gan(cfg, 2, "bench", 42);
        benchmark::DoNotOptimize(train_gan(model, samples, cfg));
    }
    state.SetItemsProcessed(state.iterations() * samples.rows());
}
BENCHMARK(BM_TrainEpochSmallArch)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_Generate(benchmark::State& state) {
    GanConfig cfg;
    const GanModel model = build_gan(cfg, 12, "bench", 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate(model, state.range(0), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
