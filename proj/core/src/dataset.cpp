#include "cigan/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cigan/error.hpp"
#include "cigan/rng.hpp"

namespace cigan {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size() && std::isfinite(out);
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> distinct_in_order(const std::vector<std::string>& target) {
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    for (const auto& t : target) {
        if (seen.insert(t).second) labels.push_back(t);
    }
    return labels;
}

} // namespace

Matrix Dataset::rows_of_class(const std::string& label) const {
    const auto idx = indices_of_class(label);
    Matrix out(idx.size(), dim());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        auto src = features.row(idx[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

std::vector<std::size_t> Dataset::indices_of_class(const std::string& label) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target[i] == label) idx.push_back(i);
    }
    return idx;
}

Dataset make_dataset(Matrix features, std::vector<std::string> target,
                     std::vector<std::string> feature_names) {
    if (features.rows() == 0) {
        throw Error(ErrorKind::EmptyDataset, "dataset has no rows");
    }
    if (features.cols() == 0) {
        throw Error(ErrorKind::EmptyDataset, "dataset has no feature columns");
    }
    if (features.rows() != target.size()) {
        throw Error(ErrorKind::LengthMismatch, "feature rows and target length differ");
    }
    if (features.cols() != feature_names.size()) {
        throw Error(ErrorKind::LengthMismatch, "feature columns and name count differ");
    }
    std::unordered_set<std::string> names(feature_names.begin(), feature_names.end());
    if (names.size() != feature_names.size()) {
        throw Error(ErrorKind::InvalidConfig, "duplicate feature names");
    }
    if (!features.all_finite()) {
        throw Error(ErrorKind::NonNumericFeatureCell, "non-finite feature value");
    }
    Dataset d{std::move(features), std::move(target), std::move(feature_names), {}};
    d.class_labels = distinct_in_order(d.target);
    return d;
}

Dataset load_csv(const std::string& path, const std::string& target_column) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::EmptyDataset, path + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const auto header = split_line(line);
    std::size_t target_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == target_column) target_idx = i;
    }
    if (target_idx == header.size()) {
        throw Error(ErrorKind::MissingTargetColumn,
                    "target column '" + target_column + "' not in header of " + path);
    }
    if (header.size() < 2) {
        throw Error(ErrorKind::EmptyDataset, path + ": no feature columns");
    }

    std::vector<std::string> feature_names;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != target_idx) feature_names.push_back(header[i]);
    }

    std::vector<double> values;
    std::vector<std::string> target;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::RaggedRow,
                        path + ": row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == target_idx) {
                target.push_back(cells[i]);
                continue;
            }
            double v;
            if (!parse_double(cells[i], v)) {
                throw Error(ErrorKind::NonNumericFeatureCell,
                            path + ": non-numeric cell at row " + std::to_string(row) +
                                ", column '" + header[i] + "'");
            }
            values.push_back(v);
        }
    }
    if (target.empty()) {
        throw Error(ErrorKind::EmptyDataset, path + ": no data rows");
    }
    Matrix features = Matrix::from_rows(target.size(), feature_names.size(), std::move(values));
    return make_dataset(std::move(features), std::move(target), std::move(feature_names));
}

void write_csv(const Dataset& dataset, const std::string& path,
               const std::string& target_name, const ExtraColumn* extra) {
    if (extra && extra->values.size() != dataset.size()) {
        throw Error(ErrorKind::LengthMismatch, "extra column length does not match dataset");
    }
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path);
    }
    for (std::size_t j = 0; j < dataset.feature_names.size(); ++j) {
        if (j) out << ',';
        out << dataset.feature_names[j];
    }
    out << ',' << target_name;
    if (extra) out << ',' << extra->name;
    out << '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (std::size_t j = 0; j < dataset.dim(); ++j) {
            if (j) out << ',';
            out << format_real(dataset.features(i, j));
        }
        out << ',' << dataset.target[i];
        if (extra) out << ',' << extra->values[i];
        out << '\n';
    }
}

std::map<std::string, std::size_t> class_counts(const Dataset& dataset) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : dataset.target) ++counts[t];
    return counts;
}

Matrix FeatureScaler::transform(const Matrix& features) const {
    if (features.cols() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "scaler dimension mismatch");
    }
    Matrix out(features.rows(), features.cols());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        for (std::size_t j = 0; j < features.cols(); ++j) {
            if (is_constant(j)) {
                out(i, j) = 0.0;
            } else {
                out(i, j) = 2.0 * ((features(i, j) - mins[j]) / (maxs[j] - mins[j])) - 1.0;
            }
        }
    }
    return out;
}

Matrix FeatureScaler::inverse_transform(const Matrix& scaled) const {
    if (scaled.cols() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "scaler dimension mismatch");
    }
    Matrix out(scaled.rows(), scaled.cols());
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) {
            if (is_constant(j)) {
                out(i, j) = mins[j];
            } else {
                out(i, j) = mins[j] + (scaled(i, j) + 1.0) * 0.5 * (maxs[j] - mins[j]);
            }
        }
    }
    return out;
}

FeatureScaler fit_scaler(const Dataset& dataset) {
    FeatureScaler s;
    s.mins.resize(dataset.dim());
    s.maxs.resize(dataset.dim());
    for (std::size_t j = 0; j < dataset.dim(); ++j) {
        double lo = dataset.features(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < dataset.size(); ++i) {
            lo = std::min(lo, dataset.features(i, j));
            hi = std::max(hi, dataset.features(i, j));
        }
        s.mins[j] = lo;
        s.maxs[j] = hi;
    }
    return s;
}

void SplitSpec::validate() const {
    const double sum = train_fraction + val_fraction + test_fraction;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidConfig, "split fractions must sum to 1");
    }
    for (double f : {train_fraction, val_fraction, test_fraction}) {
        if (!(f > 0.0 && f < 1.0)) {
            throw Error(ErrorKind::InvalidConfig, "split fractions must lie in (0,1)");
        }
    }
}

std::vector<std::size_t> allocate_partitions(std::size_t count,
                                             const std::vector<double>& fractions) {
    const std::size_t p = fractions.size();
    std::vector<std::size_t> alloc(p);
    std::vector<double> remainder(p);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < p; ++i) {
        const double ideal = fractions[i] * static_cast<double>(count);
        alloc[i] = static_cast<std::size_t>(std::floor(ideal));
        remainder[i] = ideal - std::floor(ideal);
        assigned += alloc[i];
    }
    // hand out the leftover items by largest remainder, ties to the earliest
    // partition
    for (std::size_t left = count - assigned; left > 0; --left) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p; ++i) {
            if (remainder[i] > remainder[best]) best = i;
        }
        ++alloc[best];
        remainder[best] = -1.0;
    }
    // guarantee one item per partition when count allows it
    if (count >= p) {
        for (std::size_t i = 0; i < p; ++i) {
            if (alloc[i] > 0) continue;
            std::size_t donor = 0;
            for (std::size_t k = 1; k < p; ++k) {
                if (alloc[k] > alloc[donor]) donor = k;
            }
            --alloc[donor];
            ++alloc[i];
        }
    }
    return alloc;
}

SplitResult stratified_split(const Dataset& dataset, const SplitSpec& spec) {
    spec.validate();
    const std::vector<double> fractions{spec.train_fraction, spec.val_fraction,
                                        spec.test_fraction};

    std::vector<std::vector<std::size_t>> splits(3);
    for (std::size_t c = 0; c < dataset.class_labels.size(); ++c) {
        const auto& label = dataset.class_labels[c];
        auto idx = dataset.indices_of_class(label);
        if (idx.size() < 3) {
            throw Error(ErrorKind::ClassTooSmall,
                        "class '" + label + "' has " + std::to_string(idx.size()) +
                            " samples, need at least 3 to split");
        }
        Rng rng(mix_seed(spec.seed, c));
        rng.shuffle(idx);
        const auto alloc = allocate_partitions(idx.size(), fractions);
        std::size_t pos = 0;
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t k = 0; k < alloc[p]; ++k) splits[p].push_back(idx[pos++]);
        }
    }

    SplitResult result;
    Dataset* outputs[3] = {&result.train, &result.val, &result.test};
    for (std::size_t p = 0; p < 3; ++p) {
        auto& idx = splits[p];
        std::sort(idx.begin(), idx.end()); // keep original row order within each split
        Matrix features(idx.size(), dataset.dim());
        std::vector<std::string> target(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            auto src = dataset.features.row(idx[i]);
            std::copy(src.begin(), src.end(), features.row(i).begin());
            target[i] = dataset.target[idx[i]];
        }
        *outputs[p] = make_dataset(std::move(features), std::move(target), dataset.feature_names);
    }
    return result;
}

} // namespace cigan
