#include "cigan/metrics.hpp"

#include <numeric>
#include <unordered_map>

#include "cigan/error.hpp"

namespace cigan {

std::size_t ConfusionMatrix::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::vector<std::string>& class_order) {
    if (y_true.size() != y_pred.size()) {
        throw Error(ErrorKind::LengthMismatch, "confusion: y_true and y_pred lengths differ");
    }
    ConfusionMatrix cm;
    cm.labels = class_order;
    cm.counts.assign(class_order.size() * class_order.size(), 0);

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < class_order.size(); ++i) index[class_order[i]] = i;

    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const auto ti = index.find(y_true[i]);
        const auto pi = index.find(y_pred[i]);
        if (ti == index.end()) {
            throw Error(ErrorKind::UnknownLabel, "true label '" + y_true[i] + "' not in class order");
        }
        if (pi == index.end()) {
            throw Error(ErrorKind::UnknownLabel,
                        "predicted label '" + y_pred[i] + "' not in class order");
        }
        ++cm.counts[ti->second * cm.k() + pi->second];
    }
    return cm;
}

double f1_score(double precision, double recall) {
    const double sum = precision + recall;
    return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

ClassMetrics precision_recall_f1(const ConfusionMatrix& cm) {
    ClassMetrics metrics;
    const std::size_t k = cm.k();
    metrics.per_class.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t row_sum = 0;
        std::size_t col_sum = 0;
        for (std::size_t j = 0; j < k; ++j) {
            row_sum += cm.at(c, j);
            col_sum += cm.at(j, c);
        }
        const std::size_t tp = cm.at(c, c);
        auto& row = metrics.per_class[c];
        row.label = cm.labels[c];
        row.support = row_sum;
        row.precision_defined = col_sum > 0;
        row.recall_defined = row_sum > 0;
        row.precision = col_sum > 0 ? static_cast<double>(tp) / static_cast<double>(col_sum) : 0.0;
        row.recall = row_sum > 0 ? static_cast<double>(tp) / static_cast<double>(row_sum) : 0.0;
        row.f1_defined = row.precision + row.recall > 0.0;
        row.f1 = f1_score(row.precision, row.recall);

        metrics.macro_precision += row.precision;
        metrics.macro_recall += row.recall;
        metrics.macro_f1 += row.f1;
    }
    if (k > 0) {
        metrics.macro_precision /= static_cast<double>(k);
        metrics.macro_recall /= static_cast<double>(k);
        metrics.macro_f1 /= static_cast<double>(k);
    }
    return metrics;
}

} // namespace cigan
