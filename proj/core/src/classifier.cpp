#include "cigan/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cigan/error.hpp"

namespace cigan {

void ClassifierSpec::validate() const {
    if (kind == Kind::SoftmaxRegression) {
        if (!(learning_rate > 0.0) || epochs < 1) {
            throw Error(ErrorKind::InvalidConfig,
                        "softmax-regression needs positive learning_rate and epochs");
        }
    } else {
        if (tree_count < 1 || max_depth < 1 || !(shrinkage > 0.0) || histogram_bins < 2) {
            throw Error(ErrorKind::InvalidConfig,
                        "gradient-boosted-trees needs positive tree_count, max_depth, "
                        "shrinkage and at least 2 bins");
        }
    }
}

ClassifierSpec ClassifierSpec::from_kind_name(const std::string& name) {
    ClassifierSpec spec;
    if (name == "softmax" || name == "softmax-regression") {
        spec.kind = Kind::SoftmaxRegression;
    } else if (name == "trees" || name == "gradient-boosted-trees") {
        spec.kind = Kind::GradientBoostedTrees;
    } else {
        throw Error(ErrorKind::InvalidConfig, "unknown classifier kind '" + name + "'");
    }
    return spec;
}

const char* ClassifierSpec::kind_name() const {
    return kind == Kind::SoftmaxRegression ? "softmax-regression" : "gradient-boosted-trees";
}

double RegressionTree::predict(std::span<const double> x) const {
    int node = 0;
    while (nodes[node].feature >= 0) {
        node = x[static_cast<std::size_t>(nodes[node].feature)] <= nodes[node].threshold
                   ? nodes[node].left
                   : nodes[node].right;
    }
    return nodes[node].value;
}

namespace {

std::vector<std::string> distinct_labels(const std::vector<std::string>& target) {
    std::vector<std::string> classes;
    for (const auto& label : target) {
        if (std::find(classes.begin(), classes.end(), label) == classes.end()) {
            classes.push_back(label);
        }
    }
    return classes;
}

Matrix one_hot(const std::vector<std::string>& target,
               const std::vector<std::string>& classes) {
    Matrix y(target.size(), classes.size());
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;
    for (std::size_t i = 0; i < target.size(); ++i) y(i, index[target[i]]) = 1.0;
    return y;
}

void softmax_rows(Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        const double mx = *std::max_element(row.begin(), row.end());
        double sum = 0.0;
        for (double& v : row) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
}

DenseNetwork train_softmax(const Matrix& x, const Matrix& y, const ClassifierSpec& spec,
                           std::uint64_t seed) {
    DenseNetwork net = init_network({x.cols(), y.cols()}, Activation::Linear,
                                    Activation::Softmax, seed);
    const double n = static_cast<double>(x.rows());
    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        const ForwardCache cache = forward_cached(net, x);
        // cross-entropy gradient at the softmax output: -y/p, mean-reduced
        Matrix dloss(x.rows(), y.cols());
        for (std::size_t i = 0; i < dloss.flat().size(); ++i) {
            const double p = std::max(cache.output().flat()[i], 1e-12);
            dloss.flat()[i] = -y.flat()[i] / (p * n);
        }
        const Gradients grads = backward(net, cache, dloss);
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            auto w = net.layers[l].weights.flat();
            auto gw = grads.weights[l].flat();
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= spec.learning_rate * gw[i];
            for (std::size_t i = 0; i < net.layers[l].bias.size(); ++i) {
                net.layers[l].bias[i] -= spec.learning_rate * grads.biases[l][i];
            }
        }
    }
    return net;
}

// --- histogram gradient boosting -----------------------------------------

struct BinnedFeatures {
    std::vector<std::vector<std::uint16_t>> bins; // [feature][sample]
    std::vector<std::vector<double>> thresholds;  // [feature][bin boundary]
};

BinnedFeatures bin_features(const Matrix& x, int max_bins) {
    BinnedFeatures binned;
    binned.bins.resize(x.cols());
    binned.thresholds.resize(x.cols());
    const std::size_t n = x.rows();
    for (std::size_t j = 0; j < x.cols(); ++j) {
        std::vector<double> sorted(n);
        for (std::size_t i = 0; i < n; ++i) sorted[i] = x(i, j);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

        auto& cuts = binned.thresholds[j];
        if (sorted.size() <= static_cast<std::size_t>(max_bins)) {
            for (std::size_t v = 0; v + 1 < sorted.size(); ++v) {
                cuts.push_back(0.5 * (sorted[v] + sorted[v + 1]));
            }
        } else {
            // evenly spaced quantile ranks over the distinct values
            for (int b = 1; b < max_bins; ++b) {
                const std::size_t rank = sorted.size() * static_cast<std::size_t>(b) /
                                         static_cast<std::size_t>(max_bins);
                cuts.push_back(0.5 * (sorted[rank - 1] + sorted[rank]));
            }
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        }
        auto& bins = binned.bins[j];
        bins.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            bins[i] = static_cast<std::uint16_t>(
                std::upper_bound(cuts.begin(), cuts.end(), x(i, j)) - cuts.begin());
        }
    }
    return binned;
}

struct SplitSearch {
    const BinnedFeatures* binned;
    const std::vector<double>* grad;
    const std::vector<double>* hess;
    int max_depth;
    double lambda = 1e-3;

    RegressionTree tree;

    double leaf_value(double g_sum, double h_sum) const {
        return -g_sum / (h_sum + lambda);
    }

    int build(std::vector<std::size_t>& samples, int depth) {
        double g_sum = 0.0;
        double h_sum = 0.0;
        for (std::size_t i : samples) {
            g_sum += (*grad)[i];
            h_sum += (*hess)[i];
        }
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (depth >= max_depth || samples.size() < 2) {
            tree.nodes[node_id].value = leaf_value(g_sum, h_sum);
            return node_id;
        }

        const double parent_score = g_sum * g_sum / (h_sum + lambda);
        double best_gain = 0.0;
        int best_feature = -1;
        std::uint16_t best_bin = 0;

        const std::size_t n_features = binned->bins.size();
        for (std::size_t j = 0; j < n_features; ++j) {
            const std::size_t n_bins = binned->thresholds[j].size() + 1;
            if (n_bins < 2) continue;
            std::vector<double> bin_g(n_bins, 0.0);
            std::vector<double> bin_h(n_bins, 0.0);
            std::vector<std::size_t> bin_n(n_bins, 0);
            for (std::size_t i : samples) {
                const std::uint16_t b = binned->bins[j][i];
                bin_g[b] += (*grad)[i];
                bin_h[b] += (*hess)[i];
                ++bin_n[b];
            }
            double gl = 0.0, hl = 0.0;
            std::size_t nl = 0;
            for (std::size_t b = 0; b + 1 < n_bins; ++b) {
                gl += bin_g[b];
                hl += bin_h[b];
                nl += bin_n[b];
                if (nl == 0 || nl == samples.size()) continue;
                const double gr = g_sum - gl;
                const double hr = h_sum - hl;
                const double gain =
                    gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent_score;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_feature = static_cast<int>(j);
                    best_bin = static_cast<std::uint16_t>(b);
                }
            }
        }

        if (best_feature < 0) {
            tree.nodes[node_id].value = leaf_value(g_sum, h_sum);
            return node_id;
        }

        std::vector<std::size_t> left, right;
        for (std::size_t i : samples) {
            if (binned->bins[static_cast<std::size_t>(best_feature)][i] <= best_bin) {
                left.push_back(i);
            } else {
                right.push_back(i);
            }
        }
        samples.clear();
        samples.shrink_to_fit();

        tree.nodes[node_id].feature = best_feature;
        tree.nodes[node_id].threshold =
            binned->thresholds[static_cast<std::size_t>(best_feature)][best_bin];
        const int left_id = build(left, depth + 1);
        const int right_id = build(right, depth + 1);
        tree.nodes[node_id].left = left_id;
        tree.nodes[node_id].right = right_id;
        return node_id;
    }
};

std::vector<std::vector<RegressionTree>> train_forest(const Matrix& x, const Matrix& y,
                                                      const ClassifierSpec& spec) {
    const std::size_t n = x.rows();
    const std::size_t k = y.cols();
    const BinnedFeatures binned = bin_features(x, spec.histogram_bins);

    Matrix scores(n, k);
    std::vector<std::vector<RegressionTree>> forest;
    forest.reserve(static_cast<std::size_t>(spec.tree_count));

    std::vector<double> grad(n), hess(n);
    for (int round = 0; round < spec.tree_count; ++round) {
        Matrix probs = scores;
        softmax_rows(probs);
        std::vector<RegressionTree> round_trees;
        round_trees.reserve(k);
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                const double p = probs(i, c);
                grad[i] = p - y(i, c);
                hess[i] = std::max(p * (1.0 - p), 1e-12);
            }
            SplitSearch search{&binned, &grad, &hess, spec.max_depth};
            std::vector<std::size_t> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = i;
            search.build(all, 0);
            for (std::size_t i = 0; i < n; ++i) {
                scores(i, c) += spec.shrinkage * search.tree.predict(x.row(i));
            }
            round_trees.push_back(std::move(search.tree));
        }
        forest.push_back(std::move(round_trees));
    }
    return forest;
}

} // namespace

Classifier train_classifier(const Matrix& features, const std::vector<std::string>& target,
                            const ClassifierSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (features.rows() == 0) {
        throw Error(ErrorKind::EmptyTrainingSet, "cannot train on an empty set");
    }
    if (features.rows() != target.size()) {
        throw Error(ErrorKind::LengthMismatch, "feature rows and target length differ");
    }
    Classifier clf;
    clf.spec_ = spec;
    clf.classes_ = distinct_labels(target);
    if (spec.kind == ClassifierSpec::Kind::SoftmaxRegression && clf.classes_.size() < 2) {
        throw Error(ErrorKind::SingleClassSoftmax,
                    "softmax-regression needs at least 2 classes");
    }
    const Matrix y = one_hot(target, clf.classes_);
    if (spec.kind == ClassifierSpec::Kind::SoftmaxRegression) {
        clf.softmax_net_ = train_softmax(features, y, spec, seed);
    } else {
        clf.forest_ = train_forest(features, y, spec);
    }
    return clf;
}

Matrix Classifier::decision_scores(const Matrix& features) const {
    if (spec_.kind == ClassifierSpec::Kind::SoftmaxRegression) {
        return forward(softmax_net_, features);
    }
    Matrix scores(features.rows(), classes_.size());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        for (const auto& round : forest_) {
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                scores(i, c) += spec_.shrinkage * round[c].predict(features.row(i));
            }
        }
    }
    return scores;
}

std::vector<std::string> Classifier::predict(const Matrix& features) const {
    const Matrix scores = decision_scores(features);
    std::vector<std::string> labels(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        auto row = scores.row(i);
        std::size_t best = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (row[c] > row[best]) best = c; // ties keep the earliest class
        }
        labels[i] = classes_[best];
    }
    return labels;
}

} // namespace cigan
