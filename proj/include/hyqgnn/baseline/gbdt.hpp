#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyqgnn/errors.hpp"

namespace hyqgnn::baseline {

// ---------------------------------------------------------------------------
// Least-squares gradient boosting with exact greedy splits and gain-based
// feature importances. Deliberately plain: no second-order objective, no
// histogram approximations.
// ---------------------------------------------------------------------------

struct GbdtConfig {
    std::size_t n_trees = 200;
    std::size_t max_depth = 3;
    double learning_rate = 0.1;
    std::size_t min_samples_leaf = 2;
    double subsample = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
        if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
        if (!(learning_rate > 0.0) || learning_rate > 1.0) throw ConfigError("learning_rate must be in (0, 1]");
        if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
        if (!(subsample > 0.0) || subsample > 1.0) throw ConfigError("subsample must be in (0, 1]");
    }
};

/// Binary regression tree stored as a flat node array; node 0 is the root.
/// feature = -1 marks a leaf carrying `value`.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

using Tree = std::vector<TreeNode>;

inline double tree_predict(const Tree& tree, const std::vector<double>& row) {
    int at = 0;
    while (tree[static_cast<std::size_t>(at)].feature >= 0) {
        const TreeNode& node = tree[static_cast<std::size_t>(at)];
        at = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return tree[static_cast<std::size_t>(at)].value;
}

struct GbdtModel {
    double base_prediction = 0.0;
    double learning_rate = 0.1;
    std::size_t width = 0;
    std::vector<Tree> trees;
    std::vector<double> importances;  // accumulated squared-error gain per feature
};

namespace detail {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

/// Exact greedy split: for every feature, sort the node's samples and scan
/// all distinct-value boundaries for the largest variance-reduction gain.
inline SplitChoice best_split(const std::vector<std::vector<double>>& rows, const std::vector<double>& residuals,
                              const std::vector<std::size_t>& indices, std::size_t min_samples_leaf) {
    SplitChoice best;
    const std::size_t m = indices.size();
    if (m < 2 * min_samples_leaf) return best;

    double total_sum = 0.0, total_sq = 0.0;
    for (std::size_t idx : indices) {
        total_sum += residuals[idx];
        total_sq += residuals[idx] * residuals[idx];
    }
    const double parent_sse = total_sq - total_sum * total_sum / static_cast<double>(m);

    const std::size_t width = rows.front().size();
    std::vector<std::size_t> order(m);
    for (std::size_t f = 0; f < width; ++f) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rows[indices[a]][f] < rows[indices[b]][f];
        });
        double left_sum = 0.0, left_sq = 0.0;
        for (std::size_t p = 1; p < m; ++p) {
            const double r = residuals[indices[order[p - 1]]];
            left_sum += r;
            left_sq += r * r;
            const double v_prev = rows[indices[order[p - 1]]][f];
            const double v_next = rows[indices[order[p]]][f];
            if (v_prev >= v_next) continue;  // no boundary between equal values
            if (p < min_samples_leaf || m - p < min_samples_leaf) continue;
            const double right_sum = total_sum - left_sum;
            const double right_sq = total_sq - left_sq;
            const double sse = (left_sq - left_sum * left_sum / static_cast<double>(p)) +
                               (right_sq - right_sum * right_sum / static_cast<double>(m - p));
            const double gain = parent_sse - sse;
            if (gain > best.gain) {
                best.found = true;
                best.feature = static_cast<int>(f);
                best.threshold = 0.5 * (v_prev + v_next);
                best.gain = gain;
            }
        }
    }
    return best;
}

inline int grow_tree(Tree& tree, const std::vector<std::vector<double>>& rows, const std::vector<double>& residuals,
                     const std::vector<std::size_t>& indices, std::size_t depth, const GbdtConfig& cfg,
                     std::vector<double>& importances) {
    double mean = 0.0;
    for (std::size_t idx : indices) mean += residuals[idx];
    mean /= static_cast<double>(indices.size());

    const int node_id = static_cast<int>(tree.size());
    tree.push_back({});
    tree.back().value = mean;
    if (depth >= cfg.max_depth) return node_id;

    const SplitChoice split = best_split(rows, residuals, indices, cfg.min_samples_leaf);
    if (!split.found || !(split.gain > 0.0)) return node_id;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t idx : indices) {
        (rows[idx][static_cast<std::size_t>(split.feature)] <= split.threshold ? left_idx : right_idx).push_back(idx);
    }
    importances[static_cast<std::size_t>(split.feature)] += split.gain;

    tree[static_cast<std::size_t>(node_id)].feature = split.feature;
    tree[static_cast<std::size_t>(node_id)].threshold = split.threshold;
    const int left = grow_tree(tree, rows, residuals, left_idx, depth + 1, cfg, importances);
    tree[static_cast<std::size_t>(node_id)].left = left;
    const int right = grow_tree(tree, rows, residuals, right_idx, depth + 1, cfg, importances);
    tree[static_cast<std::size_t>(node_id)].right = right;
    return node_id;
}

}  // namespace detail

inline GbdtModel fit(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets,
                     const GbdtConfig& cfg) {
    cfg.validate();
    if (rows.size() != targets.size()) {
        throw WidthMismatch("row count " + std::to_string(rows.size()) + " != target count " +
                            std::to_string(targets.size()));
    }
    const std::size_t n = rows.size();
    if (n < 2 * cfg.min_samples_leaf) {
        throw InsufficientData("need at least " + std::to_string(2 * cfg.min_samples_leaf) + " rows, got " +
                               std::to_string(n));
    }
    const std::size_t width = rows.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != width) throw WidthMismatch("row " + std::to_string(i) + " has inconsistent width");
        for (double v : rows[i]) {
            if (!std::isfinite(v)) throw SchemaError("non-finite feature value in row " + std::to_string(i));
        }
        if (!std::isfinite(targets[i])) throw SchemaError("non-finite target in row " + std::to_string(i));
    }

    GbdtModel model;
    model.learning_rate = cfg.learning_rate;
    model.width = width;
    model.importances.assign(width, 0.0);
    model.base_prediction =
        std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(n);

    // Constant targets leave nothing to fit: constant model, zero importances.
    const bool degenerate =
        std::all_of(targets.begin(), targets.end(), [&](double y) { return y == targets.front(); });
    if (degenerate) return model;

    std::vector<double> predictions(n, model.base_prediction);
    std::vector<double> residuals(n, 0.0);
    std::mt19937_64 rng(cfg.seed);
    const std::size_t sample_count =
        std::max<std::size_t>(2 * cfg.min_samples_leaf,
                              static_cast<std::size_t>(std::floor(cfg.subsample * static_cast<double>(n))));

    std::vector<std::size_t> all_indices(n);
    std::iota(all_indices.begin(), all_indices.end(), std::size_t{0});

    for (std::size_t t = 0; t < cfg.n_trees; ++t) {
        for (std::size_t i = 0; i < n; ++i) residuals[i] = targets[i] - predictions[i];

        std::vector<std::size_t> indices = all_indices;
        if (sample_count < n) {
            for (std::size_t k = 0; k < sample_count; ++k) {
                std::uniform_int_distribution<std::size_t> pick(k, n - 1);
                std::swap(indices[k], indices[pick(rng)]);
            }
            indices.resize(sample_count);
        }

        Tree tree;
        detail::grow_tree(tree, rows, residuals, indices, 0, cfg, model.importances);
        for (std::size_t i = 0; i < n; ++i) {
            predictions[i] += cfg.learning_rate * tree_predict(tree, rows[i]);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

inline double predict(const GbdtModel& model, const std::vector<double>& row) {
    if (row.size() != model.width) {
        throw WidthMismatch("row width " + std::to_string(row.size()) + " != training width " +
                            std::to_string(model.width));
    }
    double acc = model.base_prediction;
    for (const Tree& tree : model.trees) acc += model.learning_rate * tree_predict(tree, row);
    return acc;
}

struct ImportanceEntry {
    std::size_t column = 0;
    std::string name;
    double share = 0.0;
};

/// Gains normalized to sum 1, sorted descending; ties keep column order.
/// An all-zero gain vector (constant-target model) is returned unnormalized.
inline std::vector<ImportanceEntry> feature_importances(const GbdtModel& model,
                                                        const std::vector<std::string>& names) {
    if (names.size() != model.width) {
        throw WidthMismatch("name count " + std::to_string(names.size()) + " != feature width " +
                            std::to_string(model.width));
    }
    const double total = std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
    std::vector<ImportanceEntry> out(model.width);
    for (std::size_t f = 0; f < model.width; ++f) {
        out[f] = {f, names[f], total > 0.0 ? model.importances[f] / total : 0.0};
    }
    std::stable_sort(out.begin(), out.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
        return a.share > b.share;
    });
    return out;
}

// ---------------------------------------------------------------------------
// JSON persistence.
// ---------------------------------------------------------------------------

inline nlohmann::json model_to_json(const GbdtModel& model) {
    nlohmann::json doc;
    doc["base_prediction"] = model.base_prediction;
    doc["learning_rate"] = model.learning_rate;
    doc["width"] = model.width;
    doc["importances"] = model.importances;
    doc["trees"] = nlohmann::json::array();
    for (const Tree& tree : model.trees) {
        nlohmann::json tj = nlohmann::json::array();
        for (const TreeNode& node : tree) {
            tj.push_back({{"f", node.feature},
                          {"t", node.threshold},
                          {"l", node.left},
                          {"r", node.right},
                          {"v", node.value}});
        }
        doc["trees"].push_back(std::move(tj));
    }
    return doc;
}

inline GbdtModel model_from_json(const nlohmann::json& doc) {
    GbdtModel model;
    try {
        model.base_prediction = doc.at("base_prediction").get<double>();
        model.learning_rate = doc.at("learning_rate").get<double>();
        model.width = doc.at("width").get<std::size_t>();
        model.importances = doc.at("importances").get<std::vector<double>>();
        for (const auto& tj : doc.at("trees")) {
            Tree tree;
            for (const auto& nj : tj) {
                tree.push_back({nj.at("f").get<int>(), nj.at("t").get<double>(), nj.at("l").get<int>(),
                                nj.at("r").get<int>(), nj.at("v").get<double>()});
            }
            model.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed model document: ") + e.what());
    }
    if (model.importances.size() != model.width) throw SchemaError("importance vector width mismatch");
    return model;
}

inline void save_model(const GbdtModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << model_to_json(model).dump(2) << "\n";
}

inline GbdtModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return model_from_json(doc);
}

}  // namespace hyqgnn::baseline
