#include "cigan/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cigan/error.hpp"

namespace cigan {

namespace {

using nlohmann::json;

json activation_json(Activation a) { return activation_name(a); }

json gan_config_json(const GanConfig& c) {
    json j;
    j["minor_classes"] = c.minor_classes ? json(*c.minor_classes) : json("all");
    j["coding_size"] = c.coding_size ? json(*c.coding_size) : json("auto");
    j["batch_size"] = c.batch_size;
    j["max_iter"] = c.max_iter;
    j["generator_hidden_layer_sizes"] = c.generator_hidden_layer_sizes;
    j["discriminator_hidden_layer_sizes"] = c.discriminator_hidden_layer_sizes;
    j["generator_hidden_layer_activation"] = activation_json(c.generator_hidden_layer_activation);
    j["discriminator_hidden_layer_activation"] =
        activation_json(c.discriminator_hidden_layer_activation);
    j["generator_optimizer"] = c.generator_optimizer;
    j["discriminator_optimizer"] = c.discriminator_optimizer;
    j["generator_learning_rate"] = c.generator_learning_rate;
    j["discriminator_learning_rate"] = c.discriminator_learning_rate;
    j["random_seed"] = c.random_seed;
    j["n_jobs"] = c.n_jobs;
    return j;
}

std::string label_from_json(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw Error(ErrorKind::InvalidConfig, "class labels must be strings or integers");
}

std::vector<std::size_t> sizes_from_json(const json& v, const char* key) {
    if (!v.is_array() || v.empty()) {
        throw Error(ErrorKind::InvalidConfig, std::string(key) + " must be a non-empty array");
    }
    std::vector<std::size_t> sizes;
    for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<long long>() < 1) {
            throw Error(ErrorKind::InvalidConfig,
                        std::string(key) + " entries must be positive integers");
        }
        sizes.push_back(e.get<std::size_t>());
    }
    return sizes;
}

json metrics_json(const ClassMetrics& m) {
    json per_class = json::array();
    for (const auto& row : m.per_class) {
        per_class.push_back({{"label", row.label},
                             {"precision", row.precision},
                             {"recall", row.recall},
                             {"f1", row.f1},
                             {"support", row.support},
                             {"precision_defined", row.precision_defined},
                             {"recall_defined", row.recall_defined},
                             {"f1_defined", row.f1_defined}});
    }
    return {{"per_class", per_class},
            {"macro", {{"precision", m.macro_precision},
                       {"recall", m.macro_recall},
                       {"f1", m.macro_f1}}}};
}

json classifier_spec_json(const ClassifierSpec& spec) {
    json j{{"kind", spec.kind_name()}};
    if (spec.kind == ClassifierSpec::Kind::SoftmaxRegression) {
        j["learning_rate"] = spec.learning_rate;
        j["epochs"] = spec.epochs;
    } else {
        j["tree_count"] = spec.tree_count;
        j["max_depth"] = spec.max_depth;
        j["shrinkage"] = spec.shrinkage;
        j["histogram_bins"] = spec.histogram_bins;
    }
    return j;
}

json plan_json(const ResamplePlan& plan) {
    json classes = json::array();
    for (const auto& e : plan.entries) {
        classes.push_back({{"label", e.label},
                           {"count", e.count},
                           {"deficit", e.deficit},
                           {"augment", e.augment}});
    }
    return {{"majority_count", plan.majority_count}, {"classes", classes}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

} // namespace

std::string gan_config_to_json_text(const GanConfig& config) {
    return dump(gan_config_json(config));
}

GanConfig gan_config_from_json_text(const std::string& json_text, GanConfig base) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorKind::InvalidConfig, "config root must be a JSON object");
    }

    if (auto it = j.find("minor_classes"); it != j.end()) {
        if (it->is_string() && *it == "all") {
            base.minor_classes.reset();
        } else if (it->is_array()) {
            std::vector<std::string> labels;
            for (const auto& v : *it) labels.push_back(label_from_json(v));
            base.minor_classes = std::move(labels);
        } else {
            throw Error(ErrorKind::InvalidConfig, "minor_classes must be 'all' or a list");
        }
    }
    if (auto it = j.find("coding_size"); it != j.end()) {
        if (it->is_string() && *it == "auto") {
            base.coding_size.reset();
        } else if (it->is_number_integer()) {
            base.coding_size = it->get<int>();
        } else {
            throw Error(ErrorKind::InvalidCodingSize, "coding_size must be 'auto' or an integer");
        }
    }
    if (auto it = j.find("batch_size"); it != j.end()) {
        if (!it->is_number_integer()) {
            throw Error(ErrorKind::InvalidConfig, "batch_size must be an integer");
        }
        base.batch_size = it->get<int>();
    }
    if (auto it = j.find("max_iter"); it != j.end()) {
        if (!it->is_number_integer()) {
            throw Error(ErrorKind::InvalidConfig, "max_iter must be an integer");
        }
        base.max_iter = it->get<int>();
    }
    if (auto it = j.find("generator_hidden_layer_sizes"); it != j.end()) {
        base.generator_hidden_layer_sizes = sizes_from_json(*it, "generator_hidden_layer_sizes");
    }
    if (auto it = j.find("discriminator_hidden_layer_sizes"); it != j.end()) {
        base.discriminator_hidden_layer_sizes =
            sizes_from_json(*it, "discriminator_hidden_layer_sizes");
    }
    if (auto it = j.find("generator_hidden_layer_activation"); it != j.end()) {
        base.generator_hidden_layer_activation =
            activation_from_name(it->get<std::string>());
    }
    if (auto it = j.find("discriminator_hidden_layer_activation"); it != j.end()) {
        base.discriminator_hidden_layer_activation =
            activation_from_name(it->get<std::string>());
    }
    if (auto it = j.find("generator_optimizer"); it != j.end()) {
        base.generator_optimizer = it->get<std::string>();
    }
    if (auto it = j.find("discriminator_optimizer"); it != j.end()) {
        base.discriminator_optimizer = it->get<std::string>();
    }
    if (auto it = j.find("generator_learning_rate"); it != j.end()) {
        if (!it->is_number()) {
            throw Error(ErrorKind::InvalidConfig, "generator_learning_rate must be a number");
        }
        base.generator_learning_rate = it->get<double>();
    }
    if (auto it = j.find("discriminator_learning_rate"); it != j.end()) {
        if (!it->is_number()) {
            throw Error(ErrorKind::InvalidConfig, "discriminator_learning_rate must be a number");
        }
        base.discriminator_learning_rate = it->get<double>();
    }
    if (auto it = j.find("random_seed"); it != j.end()) {
        if (!it->is_number_integer() || (it->is_number_integer() && it->get<long long>() < 0 &&
                                         !it->is_number_unsigned())) {
            throw Error(ErrorKind::InvalidConfig, "random_seed must be a non-negative integer");
        }
        base.random_seed = it->get<std::uint64_t>();
    }
    if (auto it = j.find("n_jobs"); it != j.end()) {
        if (!it->is_number_integer()) {
            throw Error(ErrorKind::InvalidConfig, "n_jobs must be an integer");
        }
        base.n_jobs = it->get<int>();
    }
    return base;
}

std::string plan_to_json_text(const ResamplePlan& plan) { return dump(plan_json(plan)); }

std::string plan_to_text_table(const ResamplePlan& plan) {
    std::ostringstream out;
    out << "class        count   deficit  augment\n";
    for (const auto& e : plan.entries) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-12s %7zu %8zu  %s\n", e.label.c_str(), e.count,
                      e.deficit, e.augment ? "yes" : "no");
        out << line;
    }
    out << "majority count: " << plan.majority_count << "\n";
    return out.str();
}

std::string report_to_json_text(const PipelineReport& report) {
    json logs = json::object();
    for (const auto& class_log : report.gan_logs) {
        json d_loss = json::array();
        json g_loss = json::array();
        for (const auto& epoch : class_log.log.epochs) {
            d_loss.push_back(epoch.d_loss);
            g_loss.push_back(epoch.g_loss);
        }
        logs[class_log.label] = {{"d_loss", d_loss},
                                 {"g_loss", g_loss},
                                 {"minibatches_per_epoch", class_log.log.minibatches_per_epoch}};
    }
    // n_jobs is an execution knob with no effect on results; echoing it would
    // make identical experiments look different
    json config_echo = gan_config_json(report.gan_config);
    config_echo.erase("n_jobs");

    json j{{"class_order", report.class_order},
           {"baseline",
            {{"classifier", classifier_spec_json(report.baseline_choice)},
             {"validation_macro_f1", report.baseline_val_macro_f1},
             {"metrics", metrics_json(report.baseline)}}},
           {"augmented",
            {{"classifier", classifier_spec_json(report.augmented_choice)},
             {"validation_macro_f1", report.augmented_val_macro_f1},
             {"metrics", metrics_json(report.augmented)}}},
           {"gan_config", config_echo},
           {"gan_train_logs", logs},
           {"plan", plan_json(report.plan)},
           {"seeds",
            {{"random_seed", report.gan_config.random_seed},
             {"split_seed", report.split.seed},
             {"classifier_seed", report.classifier_seed}}},
           {"split",
            {{"train_fraction", report.split.train_fraction},
             {"val_fraction", report.split.val_fraction},
             {"test_fraction", report.split.test_fraction}}}};
    return dump(j);
}

std::string report_to_text_table(const PipelineReport& report) {
    const auto& classes = report.class_order;
    std::ostringstream out;
    auto block = [&](const char* name) {
        out << " | " << name;
        for (std::size_t pad = std::string(name).size(); pad < classes.size() * 8; ++pad) {
            out << ' ';
        }
    };
    out << "method    ";
    block("precision");
    block("recall");
    block("f1");
    out << "\n          ";
    for (int rep = 0; rep < 3; ++rep) {
        out << " | ";
        for (const auto& c : classes) {
            char cell[16];
            std::snprintf(cell, sizeof(cell), "%-8s", c.substr(0, 7).c_str());
            out << cell;
        }
    }
    out << "\n";
    auto row = [&](const char* method, const ClassMetrics& m) {
        char head[16];
        std::snprintf(head, sizeof(head), "%-10s", method);
        out << head;
        for (auto metric : {&ClassMetrics::Row::precision, &ClassMetrics::Row::recall,
                            &ClassMetrics::Row::f1}) {
            out << " | ";
            for (const auto& r : m.per_class) {
                char cell[16];
                std::snprintf(cell, sizeof(cell), "%-8s", fmt3(r.*metric).c_str());
                out << cell;
            }
        }
        out << "\n";
    };
    row("baseline", report.baseline);
    row("augmented", report.augmented);
    return out.str();
}

std::string sweep_result_to_json_text(const SweepResult& result) {
    json trials = json::array();
    for (const auto& t : result.trials) {
        json trial{{"config", gan_config_json(t.config)},
                   {"factors",
                    {{"generator_learning_rate", t.g_lr_factor},
                     {"discriminator_learning_rate", t.d_lr_factor},
                     {"hidden_layer_sizes", t.size_factor},
                     {"max_iter", t.iter_factor}}},
                   {"status", t.failed ? "failed" : "ok"}};
        if (t.failed) {
            trial["error"] = t.error;
        } else {
            trial["validation_macro_f1"] = t.val_macro_f1;
        }
        trials.push_back(std::move(trial));
    }
    return dump(json{{"best_index", result.best_index},
                     {"best_config", gan_config_json(result.best)},
                     {"trials", trials}});
}

} // namespace cigan
