#include <benchmark/benchmark.h>

#include "cigan/classifier.hpp"
#include "cigan/rng.hpp"

using namespace cigan;

namespace {

struct Blobs {
    Matrix x;
    std::vector<std::string> y;
};

Blobs three_blobs(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Blobs blobs{Matrix(n, 4), {}};
    blobs.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i % 3;
        for (std::size_t j = 0; j < 4; ++j) {
            blobs.x(i, j) = static_cast<double>(c) * 1.5 + rng.normal();
        }
        blobs.y.push_back("c" + std::to_string(c));
    }
    return blobs;
}

} // namespace

static void BM_TrainBoostedTrees(benchmark::State& state) {
    const Blobs blobs = three_blobs(state.range(0), 1);
    ClassifierSpec spec;
    spec.tree_count = 100;
    spec.max_depth = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_classifier(blobs.x, blobs.y, spec, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainBoostedTrees)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_TrainSoftmaxRegression(benchmark::State& state) {
    const Blobs blobs = three_blobs(state.range(0), 2);
    ClassifierSpec spec;
    spec.kind = ClassifierSpec::Kind::SoftmaxRegression;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_classifier(blobs.x, blobs.y, spec, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainSoftmaxRegression)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_PredictBoostedTrees(benchmark::State& state) {
    const Blobs blobs = three_blobs(2000, 3);
    ClassifierSpec spec;
    spec.tree_count = 100;
    const Classifier clf = train_classifier(blobs.x, blobs.y, spec, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(clf.predict(blobs.x));
    }
    state.SetItemsProcessed(state.iterations() * blobs.x.rows());
}
BENCHMARK(BM_PredictBoostedTrees)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
