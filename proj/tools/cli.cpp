#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cigan/error.hpp"
#include "cigan/pipeline.hpp"
#include "cigan/serialize.hpp"

namespace cigan::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kGanConfigKeys[] = {
    "minor_classes",
    "coding_size",
    "batch_size",
    "max_iter",
    "generator_hidden_layer_sizes",
    "discriminator_hidden_layer_sizes",
    "generator_hidden_layer_activation",
    "discriminator_hidden_layer_activation",
    "generator_optimizer",
    "discriminator_optimizer",
    "generator_learning_rate",
    "discriminator_learning_rate",
    "random_seed",
    "n_jobs",
};

std::string env_name(const std::string& key) {
    std::string name = "CIGAN_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

std::optional<std::string> env_value(const std::string& key) {
    const char* v = std::getenv(env_name(key).c_str());
    if (!v) return std::nullopt;
    return std::string(v);
}

/// Everything a command needs, resolved in precedence order:
/// flag > CIGAN_* environment > config file > default.
struct RunConfig {
    std::string data;
    std::string target;
    std::string out_dir;
    bool force = false;
    GanConfig gan;
    SplitSpec split;
    ClassifierSpec classifier;
    std::size_t max_trials = 54; // the full tuning grid
};

SplitSpec parse_split_fractions(const std::string& text) {
    SplitSpec spec;
    double f[3];
    std::stringstream ss(text);
    std::string cell;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, cell, ',')) {
            throw Error(ErrorKind::InvalidConfig,
                        "--split expects three comma-separated fractions");
        }
        try {
            f[i] = std::stod(cell);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidConfig, "bad split fraction '" + cell + "'");
        }
    }
    if (std::getline(ss, cell, ',')) {
        throw Error(ErrorKind::InvalidConfig, "--split expects exactly three fractions");
    }
    spec.train_fraction = f[0];
    spec.val_fraction = f[1];
    spec.test_fraction = f[2];
    spec.validate();
    return spec;
}

ClassifierSpec classifier_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        throw Error(ErrorKind::InvalidConfig, "classifier config needs a 'kind'");
    }
    ClassifierSpec spec = ClassifierSpec::from_kind_name(j.at("kind").get<std::string>());
    auto number = [&](const char* key, auto& field) {
        if (auto it = j.find(key); it != j.end()) {
            field = it->get<std::decay_t<decltype(field)>>();
        }
    };
    number("learning_rate", spec.learning_rate);
    number("epochs", spec.epochs);
    number("tree_count", spec.tree_count);
    number("max_depth", spec.max_depth);
    number("shrinkage", spec.shrinkage);
    number("histogram_bins", spec.histogram_bins);
    spec.validate();
    return spec;
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidConfig, "cannot open config file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    config.gan = gan_config_from_json_text(text, config.gan);

    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::InvalidConfig, path + ": config root must be a JSON object");
    }
    if (auto it = j.find("data"); it != j.end()) config.data = it->get<std::string>();
    if (auto it = j.find("target"); it != j.end()) config.target = it->get<std::string>();
    if (auto it = j.find("out"); it != j.end()) config.out_dir = it->get<std::string>();
    if (auto it = j.find("max_trials"); it != j.end()) {
        config.max_trials = it->get<std::size_t>();
    }
    if (auto it = j.find("split"); it != j.end()) {
        if (it->is_array() && it->size() == 3) {
            config.split.train_fraction = (*it)[0].get<double>();
            config.split.val_fraction = (*it)[1].get<double>();
            config.split.test_fraction = (*it)[2].get<double>();
        } else if (it->is_object()) {
            if (auto f = it->find("train_fraction"); f != it->end()) {
                config.split.train_fraction = f->get<double>();
            }
            if (auto f = it->find("val_fraction"); f != it->end()) {
                config.split.val_fraction = f->get<double>();
            }
            if (auto f = it->find("test_fraction"); f != it->end()) {
                config.split.test_fraction = f->get<double>();
            }
        } else {
            throw Error(ErrorKind::InvalidConfig,
                        "split must be [train,val,test] or an object of fractions");
        }
        config.split.validate();
    }
    if (auto it = j.find("classifier"); it != j.end()) {
        config.classifier = classifier_from_json(*it);
    }
}

void apply_env_overrides(RunConfig& config) {
    json gan_overrides = json::object();
    for (const char* key : kGanConfigKeys) {
        if (auto value = env_value(key)) {
            json parsed = json::parse(*value, nullptr, false);
            gan_overrides[key] = parsed.is_discarded() ? json(*value) : parsed;
        }
    }
    if (!gan_overrides.empty()) {
        config.gan = gan_config_from_json_text(gan_overrides.dump(), config.gan);
    }
    if (auto v = env_value("data")) config.data = *v;
    if (auto v = env_value("target")) config.target = *v;
    if (auto v = env_value("out")) config.out_dir = *v;
    if (auto v = env_value("split")) {
        const auto s = parse_split_fractions(*v);
        config.split.train_fraction = s.train_fraction;
        config.split.val_fraction = s.val_fraction;
        config.split.test_fraction = s.test_fraction;
    }
    if (auto v = env_value("classifier")) {
        config.classifier = ClassifierSpec::from_kind_name(*v);
    }
    if (auto v = env_value("max_trials")) {
        config.max_trials = std::stoull(*v);
    }
}

void prepare_out_dir(const RunConfig& config) {
    const fs::path dir(config.out_dir);
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) {
            throw Error(ErrorKind::InvalidConfig, config.out_dir + " is not a directory");
        }
        if (!fs::is_empty(dir) && !config.force) {
            throw Error(ErrorKind::InvalidConfig,
                        "output directory " + config.out_dir +
                            " is not empty (pass --force to overwrite)");
        }
    } else {
        fs::create_directories(dir);
    }
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << text;
}

std::string sanitize_label(const std::string& label) {
    std::string safe;
    for (char c : label) {
        safe += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
    }
    return safe.empty() ? "_" : safe;
}

void warn_architecture(const RunConfig& config, std::ostream& err) {
    for (const auto& warning : architecture_warnings(config.gan)) {
        err << "warning: " << warning << "\n";
    }
}

int cmd_resample(const RunConfig& config, std::ostream& out, std::ostream& err) {
    prepare_out_dir(config);
    warn_architecture(config, err);
    const Dataset dataset = load_csv(config.data, config.target);
    const ResampleResult result = fit_resample(dataset, config.gan);

    const fs::path dir(config.out_dir);
    ExtraColumn origin;
    origin.name = "__origin__";
    origin.values.reserve(result.balanced.origin.size());
    for (RowOrigin o : result.balanced.origin) {
        origin.values.emplace_back(o == RowOrigin::Original ? "original" : "synthetic");
    }
    write_csv(result.balanced.data, (dir / "balanced.csv").string(), config.target, &origin);
    write_text_file(dir / "plan.json", plan_to_json_text(result.plan));
    for (const auto& class_log : result.train_logs) {
        write_train_log_csv(class_log.log,
                            (dir / ("trainlog_" + sanitize_label(class_log.label) + ".csv"))
                                .string());
    }
    out << plan_to_text_table(result.plan);
    out << "balanced dataset: " << result.balanced.data.size() << " rows -> "
        << (dir / "balanced.csv").string() << "\n";
    return 0;
}

int cmd_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err) {
    prepare_out_dir(config);
    warn_architecture(config, err);
    const Dataset dataset = load_csv(config.data, config.target);
    const PipelineReport report =
        run_pipeline(dataset, config.gan, config.split, config.classifier);

    const fs::path dir(config.out_dir);
    write_text_file(dir / "report.json", report_to_json_text(report));
    write_text_file(dir / "report.txt", report_to_text_table(report));
    out << report_to_text_table(report);
    return 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.max_trials == 0) {
        throw Error(ErrorKind::InvalidConfig, "--max-trials must be at least 1");
    }
    prepare_out_dir(config);
    warn_architecture(config, err);
    const Dataset dataset = load_csv(config.data, config.target);
    const SweepResult result =
        sweep(dataset, config.gan, config.split, config.classifier, config.max_trials);

    const fs::path dir(config.out_dir);
    write_text_file(dir / "trials.json", sweep_result_to_json_text(result));
    write_text_file(dir / "best_config.json", gan_config_to_json_text(result.best));
    std::size_t ok = 0;
    for (const auto& t : result.trials) ok += t.failed ? 0 : 1;
    out << "evaluated " << result.trials.size() << " trials (" << ok
        << " succeeded); best validation macro-F1 = "
        << result.trials[result.best_index].val_macro_f1 << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"class rebalancing for tabular data: per-class GAN oversampling with a "
                 "built-in split/augment/train/score pipeline"};
    app.name("cigan");
    app.require_subcommand(1);

    std::string config_path;
    std::string data;
    std::string target;
    std::string out_dir;
    std::string split_text;
    std::string classifier_kind;
    std::optional<std::uint64_t> seed;
    std::optional<int> n_jobs;
    std::optional<std::size_t> max_trials;
    bool force = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--data", data, "input CSV path");
        cmd->add_option("--target", target, "target column name");
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "random seed (also seeds the split)");
        cmd->add_option("--n-jobs", n_jobs, "worker threads for per-class training");
        cmd->add_flag("--force", force, "allow writing into a non-empty output directory");
    };

    CLI::App* resample = app.add_subcommand("resample", "balance a CSV by GAN oversampling");
    add_common(resample);

    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "split, augment, train and score baseline vs augmented classifiers");
    add_common(pipeline);
    pipeline->add_option("--classifier", classifier_kind,
                         "downstream classifier: trees | softmax");
    pipeline->add_option("--split", split_text, "train,val,test fractions (default 0.6,0.2,0.2)");

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "grid-search the tuning parameters by validation macro-F1");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--classifier", classifier_kind,
                          "downstream classifier: trees | softmax");
    sweep_cmd->add_option("--split", split_text,
                          "train,val,test fractions (default 0.6,0.2,0.2)");
    sweep_cmd->add_option("--max-trials", max_trials, "trial budget (default: full grid)");

    std::vector<const char*> argv;
    argv.push_back("cigan");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) apply_config_file(config, config_path);
        apply_env_overrides(config);
        if (!data.empty()) config.data = data;
        if (!target.empty()) config.target = target;
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!split_text.empty()) {
            const auto s = parse_split_fractions(split_text);
            config.split.train_fraction = s.train_fraction;
            config.split.val_fraction = s.val_fraction;
            config.split.test_fraction = s.test_fraction;
        }
        if (!classifier_kind.empty()) {
            config.classifier = ClassifierSpec::from_kind_name(classifier_kind);
        }
        if (seed) config.gan.random_seed = *seed;
        if (n_jobs) config.gan.n_jobs = *n_jobs;
        if (max_trials) config.max_trials = *max_trials;
        if (force) config.force = true;
        config.split.seed = config.gan.random_seed;

        if (config.data.empty()) {
            throw Error(ErrorKind::InvalidConfig, "missing --data");
        }
        if (config.target.empty()) {
            throw Error(ErrorKind::InvalidConfig, "missing --target");
        }
        if (config.out_dir.empty()) {
            throw Error(ErrorKind::InvalidConfig, "missing --out");
        }
        config.gan.validate();
        config.split.validate();
        config.classifier.validate();

        if (resample->parsed()) return cmd_resample(config, out, err);
        if (pipeline->parsed()) return cmd_pipeline(config, out, err);
        return cmd_sweep(config, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.category() == ErrorCategory::Config) err << app.help();
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cigan::cli
