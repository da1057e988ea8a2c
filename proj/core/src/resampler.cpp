#include "cigan/resampler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "cigan/error.hpp"
#include "cigan/rng.hpp"

namespace cigan {

namespace {

constexpr std::uint64_t kNoiseStream = 4;

std::vector<std::pair<std::string, std::size_t>> counts_in_order(
    const std::vector<std::string>& y) {
    std::vector<std::pair<std::string, std::size_t>> counts;
    for (const auto& label : y) {
        auto it = std::find_if(counts.begin(), counts.end(),
                               [&](const auto& p) { return p.first == label; });
        if (it == counts.end()) {
            counts.emplace_back(label, 1);
        } else {
            ++it->second;
        }
    }
    return counts;
}

} // namespace

ResamplePlan make_plan(const std::vector<std::string>& y_train,
                       const std::optional<std::vector<std::string>>& minor_classes) {
    if (y_train.empty()) {
        throw Error(ErrorKind::EmptyDataset, "cannot plan augmentation for empty target");
    }
    const auto counts = counts_in_order(y_train);
    ResamplePlan plan;
    for (const auto& [label, count] : counts) {
        plan.majority_count = std::max(plan.majority_count, count);
    }
    for (const auto& [label, count] : counts) {
        plan.entries.push_back({label, count, plan.majority_count - count, false});
    }
    if (!minor_classes) {
        for (auto& e : plan.entries) e.augment = e.deficit > 0;
        return plan;
    }
    for (const auto& requested : *minor_classes) {
        auto it = std::find_if(plan.entries.begin(), plan.entries.end(),
                               [&](const auto& e) { return e.label == requested; });
        if (it == plan.entries.end()) {
            throw Error(ErrorKind::UnknownClass,
                        "class '" + requested + "' does not appear in the target");
        }
        if (it->deficit == 0) {
            throw Error(ErrorKind::MajorityInMinorList,
                        "class '" + requested + "' is already at the majority count");
        }
        it->augment = true;
    }
    return plan;
}

std::vector<std::string> majority_set(const std::map<std::string, std::size_t>& counts) {
    if (counts.empty()) {
        throw Error(ErrorKind::EmptyDataset, "majority_set of empty counts");
    }
    std::size_t max_count = 0;
    for (const auto& [label, count] : counts) max_count = std::max(max_count, count);
    std::vector<std::string> majority;
    for (const auto& [label, count] : counts) {
        if (count == max_count) majority.push_back(label);
    }
    return majority;
}

ResampleResult fit_resample(const Dataset& train, const GanConfig& config) {
    config.validate();
    ResampleResult result;
    result.plan = make_plan(train.target, config.minor_classes);

    if (!result.plan.anything_to_augment()) {
        result.balanced.data = train;
        result.balanced.origin.assign(train.size(), RowOrigin::Original);
        result.balanced.source_class = train.target;
        return result;
    }

    const FeatureScaler scaler = fit_scaler(train);

    struct ClassTask {
        std::size_t class_index;
        std::string label;
        std::size_t deficit;
    };
    std::vector<ClassTask> tasks;
    for (std::size_t c = 0; c < train.class_labels.size(); ++c) {
        const auto& entry = result.plan.entries[c];
        if (entry.augment) tasks.push_back({c, entry.label, entry.deficit});
    }
    for (const auto& task : tasks) {
        const std::size_t count = train.indices_of_class(task.label).size();
        if (count < 2) {
            throw Error(ErrorKind::DegenerateClass,
                        "class '" + task.label + "' has " + std::to_string(count) +
                            " samples, need at least 2 to train a GAN");
        }
    }

    struct ClassOutput {
        Matrix synthetic; // feature space
        TrainLog log;
        std::exception_ptr error;
    };
    std::vector<ClassOutput> outputs(tasks.size());

    auto run_task = [&](std::size_t t) {
        const auto& task = tasks[t];
        try {
            const Matrix scaled = scaler.transform(train.rows_of_class(task.label));
            // per-class seed stream: independent of scheduling and of the
            // other classes
            const std::uint64_t class_seed = mix_seed(config.random_seed, task.class_index);
            GanModel model = build_gan(config, train.dim(), task.label, class_seed);
            outputs[t].log = train_gan(model, scaled, config);
            Matrix synthetic_scaled =
                generate(model, task.deficit, mix_seed(class_seed, kNoiseStream));
            Matrix synthetic = scaler.inverse_transform(synthetic_scaled);
            // rounding at the tanh boundary can overshoot the fitted range by
            // one ulp; pin the contract exactly
            for (std::size_t i = 0; i < synthetic.rows(); ++i) {
                for (std::size_t j = 0; j < synthetic.cols(); ++j) {
                    synthetic(i, j) = std::clamp(synthetic(i, j), scaler.mins[j], scaler.maxs[j]);
                }
            }
            outputs[t].synthetic = std::move(synthetic);
        } catch (...) {
            outputs[t].error = std::current_exception();
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(config.n_jobs), tasks.size());
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size();
                     t = next.fetch_add(1)) {
                    run_task(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (outputs[t].error) std::rethrow_exception(outputs[t].error);
    }

    std::size_t total = train.size();
    for (const auto& task : tasks) total += task.deficit;

    Matrix features(total, train.dim());
    std::vector<std::string> target;
    target.reserve(total);
    BalancedDataset& balanced = result.balanced;
    balanced.origin.reserve(total);
    balanced.source_class.reserve(total);

    for (std::size_t i = 0; i < train.size(); ++i) {
        auto src = train.features.row(i);
        std::copy(src.begin(), src.end(), features.row(i).begin());
        target.push_back(train.target[i]);
        balanced.origin.push_back(RowOrigin::Original);
        balanced.source_class.push_back(train.target[i]);
    }
    std::size_t row = train.size();
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Matrix& synth = outputs[t].synthetic;
        for (std::size_t i = 0; i < synth.rows(); ++i, ++row) {
            auto src = synth.row(i);
            std::copy(src.begin(), src.end(), features.row(row).begin());
            target.push_back(tasks[t].label);
            balanced.origin.push_back(RowOrigin::Synthetic);
            balanced.source_class.push_back(tasks[t].label);
        }
        result.train_logs.push_back({tasks[t].label, std::move(outputs[t].log)});
    }

    balanced.data = make_dataset(std::move(features), std::move(target), train.feature_names);
    return result;
}

} // namespace cigan
