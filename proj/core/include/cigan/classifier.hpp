#ifndef CIGAN_CLASSIFIER_HPP
#define CIGAN_CLASSIFIER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cigan/matrix.hpp"
#include "cigan/network.hpp"

namespace cigan {

struct ClassifierSpec {
    enum class Kind { SoftmaxRegression, GradientBoostedTrees };
    Kind kind = Kind::GradientBoostedTrees;

    // softmax-regression: full-batch gradient descent on cross-entropy
    double learning_rate = 0.1;
    int epochs = 500;

    // gradient-boosted-trees: additive depth-limited regression trees on
    // multiclass log-loss gradients, histogram-binned split search
    int tree_count = 100;
    int max_depth = 3;
    double shrinkage = 0.1;
    int histogram_bins = 256;

    void validate() const;
    static ClassifierSpec from_kind_name(const std::string& name);
    const char* kind_name() const;
};

/// One node of a regression tree, stored flat; leaves have feature == -1.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0; // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    double value = 0.0; // leaf output
};

struct RegressionTree {
    std::vector<TreeNode> nodes;
    double predict(std::span<const double> x) const;
};

class Classifier {
public:
    std::vector<std::string> predict(const Matrix& features) const;
    const std::vector<std::string>& classes() const noexcept { return classes_; }
    ClassifierSpec::Kind kind() const noexcept { return spec_.kind; }
    const ClassifierSpec& spec() const noexcept { return spec_; }

    /// Per-class raw scores (softmax probabilities or boosted sums).
    Matrix decision_scores(const Matrix& features) const;

private:
    friend Classifier train_classifier(const Matrix&, const std::vector<std::string>&,
                                       const ClassifierSpec&, std::uint64_t);
    ClassifierSpec spec_;
    std::vector<std::string> classes_; // first-appearance order
    DenseNetwork softmax_net_;         // SoftmaxRegression
    std::vector<std::vector<RegressionTree>> forest_; // [round][class]
};

Classifier train_classifier(const Matrix& features, const std::vector<std::string>& target,
                            const ClassifierSpec& spec, std::uint64_t seed);

inline std::vector<std::string> predict(const Classifier& classifier, const Matrix& features) {
    return classifier.predict(features);
}

} // namespace cigan

#endif
