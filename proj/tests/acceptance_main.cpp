// Acceptance suite: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Runs on synthetic data only; no
// downloads, no external files.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cigan/adam.hpp"
#include "cigan/dataset.hpp"
#include "cigan/gan.hpp"
#include "cigan/metrics.hpp"
#include "cigan/pipeline.hpp"
#include "cigan/resampler.hpp"
#include "cigan/rng.hpp"
#include "cli.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cigan;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Balance contract on the drug-consumption-shaped fixture, defaults only.
bool balance_contract(std::string& detail) {
    const auto start = Clock::now();
    const Dataset train = test::make_dc_fixture();
    const ResampleResult result = fit_resample(train, GanConfig{});
    const auto counts = class_counts(result.balanced.data);
    bool ok = counts.at("1") == 976 && counts.at("2") == 976 && counts.at("3") == 976 &&
              result.balanced.data.size() == 2928;
    for (std::size_t i = 0; ok && i < train.size(); ++i) {
        if (result.balanced.data.target[i] != train.target[i]) ok = false;
        for (std::size_t j = 0; ok && j < train.dim(); ++j) {
            if (result.balanced.data.features(i, j) != train.features(i, j)) ok = false;
        }
    }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 300.0;
    std::ostringstream ss;
    ss << "counts 976/" << counts.at("2") << "/" << counts.at("3") << ", originals verbatim, "
       << elapsed << " s (budget 300)";
    detail = ss.str();
    return ok;
}

// 2. Analytic gradients vs central finite differences over random networks.
bool gradient_suite(std::string& detail) {
    const auto start = Clock::now();
    Rng rng(424242);
    double worst = 0.0;
    int checked = 0;
    const Activation hidden_pool[] = {Activation::Selu, Activation::Sigmoid, Activation::Tanh,
                                      Activation::Linear};
    for (int it = 0; it < 24; ++it) {
        const std::size_t max_sizes[4] = {5, 8, 8, 3};
        std::vector<std::size_t> sizes;
        const std::size_t depth = 2 + rng.below(3); // 2..4 sizes
        for (std::size_t l = 0; l < depth; ++l) {
            sizes.push_back(1 + rng.below(max_sizes[l + (4 - depth)]));
        }
        const Activation hidden = hidden_pool[it % 4];
        const bool softmax_ce = it % 5 == 0;
        const Activation output = softmax_ce ? Activation::Softmax : hidden_pool[(it + 1) % 4];
        const DenseNetwork net = init_network(sizes, hidden, output, 9000 + it);

        const std::size_t m = 1 + rng.below(4);
        Matrix batch(m, sizes.front());
        for (double& v : batch.flat()) v = rng.normal();

        Matrix target(m, sizes.back());
        if (softmax_ce) {
            for (std::size_t i = 0; i < m; ++i) {
                target(i, rng.below(sizes.back())) = 1.0;
            }
        } else {
            for (double& v : target.flat()) v = rng.normal() * 0.5;
        }

        auto loss_of = [&](const Matrix& out) {
            if (softmax_ce) {
                double sum = 0.0;
                for (std::size_t i = 0; i < out.flat().size(); ++i) {
                    if (target.flat()[i] > 0.0) {
                        sum -= std::log(std::max(out.flat()[i], 1e-300));
                    }
                }
                return sum / static_cast<double>(m);
            }
            double sum = 0.0;
            for (std::size_t i = 0; i < out.flat().size(); ++i) {
                const double d = out.flat()[i] - target.flat()[i];
                sum += d * d;
            }
            return sum / static_cast<double>(out.flat().size());
        };
        auto grad_of = [&](const Matrix& out) {
            Matrix g(out.rows(), out.cols());
            if (softmax_ce) {
                for (std::size_t i = 0; i < out.flat().size(); ++i) {
                    if (target.flat()[i] > 0.0) {
                        g.flat()[i] = -1.0 / (std::max(out.flat()[i], 1e-300) *
                                              static_cast<double>(m));
                    }
                }
            } else {
                for (std::size_t i = 0; i < out.flat().size(); ++i) {
                    g.flat()[i] = 2.0 * (out.flat()[i] - target.flat()[i]) /
                                  static_cast<double>(out.flat().size());
                }
            }
            return g;
        };

        const ForwardCache cache = forward_cached(net, batch);
        const Gradients analytic = backward(net, cache, grad_of(cache.output()));
        const Gradients numeric = test::finite_diff_gradients(
            net, [&](const DenseNetwork& n) { return loss_of(forward(n, batch)); }, 1e-5);
        worst = std::max(worst, test::gradient_rel_error(analytic, numeric));
        ++checked;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream ss;
    ss << checked << " networks, worst relative error " << worst << ", " << elapsed
       << " s (budget 10)";
    detail = ss.str();
    return worst < 1e-4 && elapsed < 10.0 && checked >= 20;
}

// 3. Hand-evaluated Adam recurrence at t=1, plus the zero-gradient no-op.
bool adam_oracle(std::string& detail) {
    DenseNetwork net = init_network({1, 1}, Activation::Linear, Activation::Linear, 1);
    net.layers[0].weights(0, 0) = 1.0;
    net.layers[0].bias[0] = 0.0;
    AdamState state = make_adam_state(net, AdamConfig{.learning_rate = 1e-4});
    Gradients grads;
    grads.weights.emplace_back(1, 1, 1.0);
    grads.biases.emplace_back(1, 0.0);
    adam_step(net, grads, state);
    const double expected = 1.0 - 1e-4 * (1.0 / (1.0 + 1e-8));
    const double got = net.layers[0].weights(0, 0);
    const bool step_ok = std::abs(got - expected) < 1e-9;

    DenseNetwork frozen = init_network({2, 3, 1}, Activation::Selu, Activation::Sigmoid, 2);
    const DenseNetwork before = frozen;
    AdamState fresh = make_adam_state(frozen, AdamConfig{.learning_rate = 0.5});
    Gradients zero;
    for (const auto& layer : frozen.layers) {
        zero.weights.emplace_back(layer.weights.rows(), layer.weights.cols());
        zero.biases.emplace_back(layer.bias.size(), 0.0);
    }
    for (int i = 0; i < 3; ++i) adam_step(frozen, zero, fresh);
    const bool noop_ok = frozen == before;

    std::ostringstream ss;
    ss << "w after one step " << got << " vs " << expected << "; zero-gradient no-op "
       << (noop_ok ? "holds" : "BROKEN");
    detail = ss.str();
    return step_ok && noop_ok;
}

// 4. Published-score consistency: every (precision, recall) pair reproduces
// the printed F1 through the harmonic-mean operation.
bool f1_consistency(std::string& detail) {
    struct Cell {
        double p, r, f1;
    };
    const Cell cells[] = {
        {0.647, 0.730, 0.686}, {0.308, 0.116, 0.168}, {0.636, 0.652, 0.644},
        {0.686, 0.730, 0.707}, {0.447, 0.246, 0.318}, {0.639, 0.677, 0.657},
    };
    double worst = 0.0;
    for (const auto& cell : cells) {
        worst = std::max(worst, std::abs(f1_score(cell.p, cell.r) - cell.f1));
    }
    std::ostringstream ss;
    ss << "6 pairs, worst deviation " << worst << " (tolerance 0.0015)";
    detail = ss.str();
    return worst <= 0.0015;
}

// 5. Two-mode distribution recovery across seeded runs.
bool bimodal_recovery(std::string& detail) {
    const auto start = Clock::now();
    GanConfig cfg;
    cfg.generator_hidden_layer_sizes = {16, 16};
    cfg.discriminator_hidden_layer_sizes = {16, 16};
    cfg.generator_learning_rate = 1e-3;
    cfg.discriminator_learning_rate = 1e-3;
    cfg.max_iter = 500;
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng data_rng(1000 + seed);
        Matrix data(256, 1);
        for (std::size_t i = 0; i < 256; ++i) {
            data(i, 0) = ((i % 2 == 0) ? -0.6 : 0.6) + 0.05 * data_rng.normal();
        }
        GanModel model = build_gan(cfg, 1, "toy", seed);
        train_gan(model, data, cfg);
        const Matrix gen = generate(model, 1000, 9000 + seed);
        int neg = 0;
        int pos = 0;
        for (double v : gen.flat()) (v < 0 ? neg : pos)++;
        if (neg >= 200 && pos >= 200) ++passed;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream ss;
    ss << passed << "/5 runs kept both modes above 20%, " << elapsed << " s (budget 180)";
    detail = ss.str();
    return passed >= 4 && elapsed < 180.0;
}

// 6. Downstream improvement direction on a 500/60/60 gaussian mixture.
bool downstream_improvement(std::string& detail) {
    auto make_mix = [](std::uint64_t seed) {
        struct C {
            const char* label;
            std::size_t n;
            double mx, my;
        };
        const C classes[] = {
            {"maj", 500, 0.0, 0.0}, {"minA", 60, 1.8, 0.3}, {"minB", 60, -0.3, 1.8}};
        Matrix f(620, 2);
        std::vector<std::string> y;
        Rng rng(seed);
        std::size_t r = 0;
        for (const auto& c : classes) {
            for (std::size_t i = 0; i < c.n; ++i, ++r) {
                f(r, 0) = c.mx + rng.normal();
                f(r, 1) = c.my + rng.normal();
                y.push_back(c.label);
            }
        }
        return make_dataset(std::move(f), std::move(y), {"x", "y"});
    };
    int wins = 0;
    std::ostringstream runs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Dataset d = make_mix(555 + seed);
        GanConfig cfg;
        cfg.generator_hidden_layer_sizes = {32, 32};
        cfg.discriminator_hidden_layer_sizes = {32, 32};
        cfg.generator_learning_rate = 1e-3;
        cfg.discriminator_learning_rate = 1e-3;
        cfg.max_iter = 30;
        cfg.random_seed = seed;
        SplitSpec split;
        split.seed = seed;
        ClassifierSpec clf;
        clf.tree_count = 50;
        const PipelineReport report = run_pipeline(d, cfg, split, clf);
        auto minority_recall = [](const ClassMetrics& m) {
            return 0.5 * (m.per_class[1].recall + m.per_class[2].recall);
        };
        const double baseline = minority_recall(report.baseline);
        const double augmented = minority_recall(report.augmented);
        if (augmented >= baseline) ++wins;
        runs << " " << baseline << "->" << augmented;
    }
    detail = std::to_string(wins) + "/5 runs with augmented minority recall >= baseline:" +
             runs.str();
    return wins >= 3;
}

// 7. Byte-identical pipeline reports across reruns and worker counts.
bool determinism(std::string& detail) {
    test::TempDir dir("accept7");
    const Dataset d = test::make_gaussian_dataset(
        {{"maj", 60, {0.0, 0.0}, 0.8}, {"minA", 14, {2.0, 0.3}, 0.8},
         {"minB", 11, {-0.3, 2.0}, 0.8}},
        2, 2024);
    const std::string csv = dir.file("data.csv");
    write_csv(d, csv, "label");
    test::spit(dir.file("cfg.json"), R"({
      "generator_hidden_layer_sizes": [8],
      "discriminator_hidden_layer_sizes": [8],
      "generator_learning_rate": 0.001,
      "discriminator_learning_rate": 0.001,
      "max_iter": 3,
      "classifier": {"kind": "trees", "tree_count": 10, "max_depth": 2}
    })");
    auto run_once = [&](const std::string& tag, const char* jobs) {
        std::ostringstream out, err;
        const int code = cli::run({"pipeline", "--data", csv, "--target", "label", "--out",
                                   dir.file(tag), "--config", dir.file("cfg.json"), "--seed",
                                   "7", "--n-jobs", jobs},
                                  out, err);
        if (code != 0) return std::string();
        return test::slurp(dir.file(tag) + "/report.json");
    };
    const std::string first = run_once("a", "1");
    const std::string second = run_once("b", "1");
    const std::string fourth = run_once("c", "4");
    const bool ok = !first.empty() && first == second && first == fourth;
    detail = ok ? "report.json byte-identical across two runs and n_jobs {1,4}"
                : "reports differ or a run failed";
    return ok;
}

// 8. The standalone property suites.
bool property_suites(std::string& detail) {
    std::vector<std::string> failures;

    { // scaler round-trip below 1e-9
        Rng rng(31);
        bool ok = true;
        for (int it = 0; it < 30 && ok; ++it) {
            const std::size_t n = 2 + rng.below(40);
            const std::size_t dim = 1 + rng.below(8);
            Matrix f(n, dim);
            for (double& v : f.flat()) v = (rng.uniform() - 0.5) * 300.0;
            std::vector<std::string> names;
            for (std::size_t j = 0; j < dim; ++j) names.push_back("f" + std::to_string(j));
            const Dataset ds = make_dataset(f, std::vector<std::string>(n, "c"), names);
            const FeatureScaler scaler = fit_scaler(ds);
            const Matrix round = scaler.inverse_transform(scaler.transform(f));
            for (std::size_t i = 0; i < f.flat().size(); ++i) {
                if (std::abs(round.flat()[i] - f.flat()[i]) >= 1e-9) ok = false;
            }
        }
        if (!ok) failures.push_back("scaler round-trip");
    }

    { // split partition and one-sample stratification bound
        Rng rng(32);
        bool ok = true;
        for (int it = 0; it < 15 && ok; ++it) {
            std::vector<test::ClassSpec> specs;
            const std::size_t k = 2 + rng.below(3);
            for (std::size_t c = 0; c < k; ++c) {
                specs.push_back({"c" + std::to_string(c), 3 + rng.below(60), {0.5, -0.5}, 0.4});
            }
            const Dataset d = test::make_gaussian_dataset(specs, 2, 500 + it);
            const SplitSpec spec{0.6, 0.2, 0.2, static_cast<std::uint64_t>(it)};
            const SplitResult parts = stratified_split(d, spec);
            if (parts.train.size() + parts.val.size() + parts.test.size() != d.size()) {
                ok = false;
            }
            const double fractions[3] = {0.6, 0.2, 0.2};
            const Dataset* split_parts[3] = {&parts.train, &parts.val, &parts.test};
            for (const auto& [label, count] : class_counts(d)) {
                for (int p = 0; p < 3 && ok; ++p) {
                    const auto counts = class_counts(*split_parts[p]);
                    const auto found = counts.find(label);
                    const double got =
                        found == counts.end() ? 0.0 : static_cast<double>(found->second);
                    if (std::abs(got - fractions[p] * static_cast<double>(count)) >
                        1.0 + 1e-9) {
                        ok = false;
                    }
                }
            }
        }
        if (!ok) failures.push_back("split partition/stratification");
    }

    { // synthetic rows stay in the fitted range
        const Dataset train = test::make_gaussian_dataset(
            {{"a", 30, {0.0, 5.0}, 1.0}, {"b", 8, {3.0, -2.0}, 1.0}}, 2, 33);
        GanConfig cfg;
        cfg.generator_hidden_layer_sizes = {8};
        cfg.discriminator_hidden_layer_sizes = {8};
        cfg.max_iter = 2;
        const ResampleResult result = fit_resample(train, cfg);
        const FeatureScaler scaler = fit_scaler(train);
        bool ok = true;
        for (std::size_t i = train.size(); i < result.balanced.data.size(); ++i) {
            for (std::size_t j = 0; j < train.dim(); ++j) {
                const double v = result.balanced.data.features(i, j);
                if (v < scaler.mins[j] || v > scaler.maxs[j]) ok = false;
            }
        }
        if (!ok) failures.push_back("synthetic rows in range");
    }

    { // max_iter = 0 leaves the model untouched
        GanConfig cfg;
        cfg.generator_hidden_layer_sizes = {8};
        cfg.discriminator_hidden_layer_sizes = {8};
        cfg.max_iter = 0;
        GanModel model = build_gan(cfg, 2, "c", 3);
        const GanModel before = model;
        Rng rng(34);
        Matrix samples(10, 2);
        for (double& v : samples.flat()) v = rng.uniform() - 0.5;
        const TrainLog log = train_gan(model, samples, cfg);
        if (!(log.epochs.empty() && model.generator == before.generator &&
              model.discriminator == before.discriminator)) {
            failures.push_back("max_iter=0 identity");
        }
    }

    { // confusion-matrix hand-count oracle
        const ConfusionMatrix cm =
            confusion({"a", "a", "b"}, {"a", "b", "b"}, {"a", "b"});
        if (!(cm.at(0, 0) == 1 && cm.at(0, 1) == 1 && cm.at(1, 0) == 0 && cm.at(1, 1) == 1)) {
            failures.push_back("confusion hand count");
        }
    }

    if (failures.empty()) {
        detail = "scaler, split, synthetic-range, max_iter=0, confusion: all green";
        return true;
    }
    detail = "failed:";
    for (const auto& f : failures) detail += " " + f;
    return false;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> check;
    };
    const Criterion criteria[] = {
        {"balance contract on 976/230/679", balance_contract},
        {"gradient-check suite", gradient_suite},
        {"adam oracle", adam_oracle},
        {"published F1 cells consistent", f1_consistency},
        {"two-mode distribution recovery", bimodal_recovery},
        {"downstream minority recall direction", downstream_improvement},
        {"byte-identical reports across runs and n_jobs", determinism},
        {"standalone property suites", property_suites},
    };
    int failed = 0;
    int index = 0;
    for (const auto& criterion : criteria) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %d: %s - %s\n", ok ? "PASS" : "FAIL", index, criterion.name,
                    detail.c_str());
        std::fflush(stdout);
        failed += ok ? 0 : 1;
    }
    if (failed) {
        std::printf("%d of 8 criteria FAILED\n", failed);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
