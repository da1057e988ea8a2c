#ifndef CIGAN_METRICS_HPP
#define CIGAN_METRICS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace cigan {

/// k x k counts, rows = true class, columns = predicted class, both in
/// `labels` order.
struct ConfusionMatrix {
    std::vector<std::string> labels;
    std::vector<std::size_t> counts; // row-major k*k

    std::size_t k() const noexcept { return labels.size(); }
    std::size_t at(std::size_t true_idx, std::size_t pred_idx) const {
        return counts[true_idx * k() + pred_idx];
    }
    std::size_t total() const noexcept;
};

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::vector<std::string>& class_order);

/// Per-class precision/recall/F1 plus unweighted macro averages. 0/0 cells
/// are defined as 0 and flagged via the *_defined fields.
struct ClassMetrics {
    struct Row {
        std::string label;
        double precision = 0.0;
        double recall = 0.0;
        double f1 = 0.0;
        std::size_t support = 0;
        bool precision_defined = true;
        bool recall_defined = true;
        bool f1_defined = true;
    };
    std::vector<Row> per_class;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

ClassMetrics precision_recall_f1(const ConfusionMatrix& cm);

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

} // namespace cigan

#endif
