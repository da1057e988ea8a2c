#ifndef CIGAN_TESTS_FIXTURES_HPP
#define CIGAN_TESTS_FIXTURES_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <vector>

#include "cigan/dataset.hpp"
#include "cigan/rng.hpp"

namespace cigan::test {

struct ClassSpec {
    std::string label;
    std::size_t count;
    std::vector<double> mean; // length d
    double stddev = 0.5;
};

/// Gaussian blobs, one per class, emitted class by class so class_labels
/// order matches the spec order.
inline Dataset make_gaussian_dataset(const std::vector<ClassSpec>& specs, std::size_t d,
                                     std::uint64_t seed) {
    std::size_t n = 0;
    for (const auto& spec : specs) n += spec.count;
    Matrix features(n, d);
    std::vector<std::string> target;
    target.reserve(n);
    Rng rng(seed);
    std::size_t row = 0;
    for (const auto& spec : specs) {
        for (std::size_t i = 0; i < spec.count; ++i, ++row) {
            for (std::size_t j = 0; j < d; ++j) {
                features(row, j) = spec.mean[j] + spec.stddev * rng.normal();
            }
            target.push_back(spec.label);
        }
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    return make_dataset(std::move(features), std::move(target), std::move(names));
}

/// Synthetic stand-in with the drug-consumption class counts (976/230/679)
/// over 12 numeric features.
inline Dataset make_dc_fixture(std::uint64_t seed = 20240101) {
    const std::size_t d = 12;
    std::vector<ClassSpec> specs;
    const std::size_t counts[3] = {976, 230, 679};
    for (std::size_t c = 0; c < 3; ++c) {
        ClassSpec spec;
        spec.label = std::to_string(c + 1);
        spec.count = counts[c];
        spec.stddev = 0.5;
        for (std::size_t j = 0; j < d; ++j) {
            spec.mean.push_back((static_cast<double>(c) - 1.0) * (0.8 + 0.05 * static_cast<double>(j)));
        }
        specs.push_back(std::move(spec));
    }
    return make_gaussian_dataset(specs, d, seed);
}

/// Two interleaved XOR quadrant classes; not linearly separable.
inline Dataset make_xor_dataset(std::size_t n, std::uint64_t seed) {
    Matrix features(n, 2);
    std::vector<std::string> target;
    target.reserve(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        features(i, 0) = x;
        features(i, 1) = y;
        target.push_back(((x > 0.5) != (y > 0.5)) ? "odd" : "even");
    }
    std::vector<std::string> names{"x", "y"};
    return make_dataset(std::move(features), std::move(target), std::move(names));
}

/// Unique disposable directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("cigan_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

/// Counts the values of one column in a CSV file; tolerant of non-numeric
/// columns such as the resampler's __origin__ marker.
inline std::map<std::string, std::size_t> csv_column_counts(const std::string& path,
                                                            const std::string& column) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::size_t index = 0;
    {
        std::stringstream header(line);
        std::string cell;
        bool found = false;
        for (std::size_t i = 0; std::getline(header, cell, ','); ++i) {
            if (cell == column) {
                index = i;
                found = true;
            }
        }
        if (!found) throw std::runtime_error("column not found: " + column);
    }
    std::map<std::string, std::size_t> counts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        for (std::size_t i = 0; std::getline(row, cell, ','); ++i) {
            if (i == index) ++counts[cell];
        }
    }
    return counts;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace cigan::test

#endif
