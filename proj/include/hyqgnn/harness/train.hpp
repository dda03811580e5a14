#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyqgnn/baseline/gbdt.hpp"
#include "hyqgnn/baseline/report.hpp"
#include "hyqgnn/featurize/featurize.hpp"
#include "hyqgnn/harness/config.hpp"
#include "hyqgnn/harness/dataset.hpp"
#include "hyqgnn/harness/metrics.hpp"
#include "hyqgnn/harness/models.hpp"
#include "hyqgnn/harness/plots.hpp"
#include "hyqgnn/harness/threads.hpp"
#include "hyqgnn/optimize/optimize.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::harness {

// ---------------------------------------------------------------------------
// Target standardization (training-split statistics only).
// ---------------------------------------------------------------------------

struct Standardization {
    double mean = 0.0;
    double stddev = 1.0;

    double to_z(double ev) const { return (ev - mean) / stddev; }
    double to_ev(double z) const { return z * stddev + mean; }
};

inline Standardization fit_standardization(const std::vector<core::FeaturizedGraph>& train) {
    if (train.empty()) throw InsufficientData("cannot standardize an empty training split");
    Standardization s;
    for (const auto& g : train) s.mean += g.target;
    s.mean /= static_cast<double>(train.size());
    double var = 0.0;
    for (const auto& g : train) {
        const double d = g.target - s.mean;
        var += d * d;
    }
    var /= static_cast<double>(train.size());
    s.stddev = std::sqrt(var);
    if (s.stddev < 1e-12) {
        throw ConstantTarget("training targets are all equal; standardization is degenerate");
    }
    return s;
}

// ---------------------------------------------------------------------------
// Input standardization. Raw features mix scales from ~0.1 (radii) to
// hundreds (Coulomb off-diagonals), which strands an isotropic zero-start
// search in a predict-the-mean valley. Each feature column is z-scored with
// training-split statistics (pooled over nodes/edges) before the graphs are
// handed to the optimizer-trained models; the featurized dataset on disk
// stays raw.
// ---------------------------------------------------------------------------

struct FeatureScaling {
    std::array<double, core::kNodeFeatureCount> node_mean{};
    std::array<double, core::kNodeFeatureCount> node_std{};
    std::array<double, core::kEdgeFeatureCount> edge_mean{};
    std::array<double, core::kEdgeFeatureCount> edge_std{};

    core::FeaturizedGraph apply(const core::FeaturizedGraph& g) const {
        core::FeaturizedGraph out = g;
        for (auto& node : out.node_features) {
            for (std::size_t k = 0; k < core::kNodeFeatureCount; ++k) {
                node[k] = (node[k] - node_mean[k]) / node_std[k];
            }
        }
        for (auto& e : out.edges) {
            for (std::size_t k = 0; k < core::kEdgeFeatureCount; ++k) {
                e.features[k] = (e.features[k] - edge_mean[k]) / edge_std[k];
            }
        }
        return out;
    }

    std::vector<core::FeaturizedGraph> apply_all(const std::vector<core::FeaturizedGraph>& graphs) const {
        std::vector<core::FeaturizedGraph> out;
        out.reserve(graphs.size());
        for (const auto& g : graphs) out.push_back(apply(g));
        return out;
    }
};

inline FeatureScaling fit_feature_scaling(const std::vector<core::FeaturizedGraph>& train) {
    if (train.empty()) throw InsufficientData("cannot fit feature scaling on an empty training split");
    FeatureScaling fs;
    fs.node_std.fill(0.0);
    fs.edge_std.fill(0.0);
    std::size_t node_count = 0, edge_count = 0;
    for (const auto& g : train) {
        for (const auto& node : g.node_features) {
            ++node_count;
            for (std::size_t k = 0; k < core::kNodeFeatureCount; ++k) fs.node_mean[k] += node[k];
        }
        for (const auto& e : g.edges) {
            ++edge_count;
            for (std::size_t k = 0; k < core::kEdgeFeatureCount; ++k) fs.edge_mean[k] += e.features[k];
        }
    }
    for (double& m : fs.node_mean) m /= static_cast<double>(node_count);
    if (edge_count > 0) {
        for (double& m : fs.edge_mean) m /= static_cast<double>(edge_count);
    }
    for (const auto& g : train) {
        for (const auto& node : g.node_features) {
            for (std::size_t k = 0; k < core::kNodeFeatureCount; ++k) {
                const double d = node[k] - fs.node_mean[k];
                fs.node_std[k] += d * d;
            }
        }
        for (const auto& e : g.edges) {
            for (std::size_t k = 0; k < core::kEdgeFeatureCount; ++k) {
                const double d = e.features[k] - fs.edge_mean[k];
                fs.edge_std[k] += d * d;
            }
        }
    }
    for (double& v : fs.node_std) v = std::sqrt(v / static_cast<double>(node_count));
    for (double& v : fs.edge_std) v = edge_count > 0 ? std::sqrt(v / static_cast<double>(edge_count)) : 1.0;
    // Constant columns carry no signal; unit scale keeps them centered at 0.
    for (double& v : fs.node_std) {
        if (v < 1e-12) v = 1.0;
    }
    for (double& v : fs.edge_std) {
        if (v < 1e-12) v = 1.0;
    }
    return fs;
}

// ---------------------------------------------------------------------------
// Dataset-level objective: MSE of model predictions vs standardized targets.
// Per-graph errors land in per-index slots and are reduced sequentially, so
// the loss is bitwise identical for any HYQGNN_THREADS value.
// ---------------------------------------------------------------------------

class SetEvaluator {
public:
    SetEvaluator(const std::vector<core::FeaturizedGraph>& graphs, const Standardization& std_)
        : graphs_(graphs), z_targets_(graphs.size()), slots_(graphs.size()) {
        for (std::size_t i = 0; i < graphs.size(); ++i) z_targets_[i] = std_.to_z(graphs[i].target);
    }

    /// Mean squared error in standardized units; any per-graph failure
    /// (e.g. an unencodable all-zero weight matrix) makes the whole
    /// evaluation the penalty loss.
    double mse(const PreparedModel& model) const {
        parallel_for(graphs_.size(), [&](std::size_t i) {
            try {
                const double d = model.predict(graphs_[i]) - z_targets_[i];
                slots_[i] = d * d;
            } catch (const Error&) {
                slots_[i] = std::numeric_limits<double>::quiet_NaN();
            }
        });
        double acc = 0.0;
        for (double v : slots_) {
            if (std::isnan(v)) return optimize::kPenaltyLoss;
            acc += v;
        }
        return acc / static_cast<double>(graphs_.size());
    }

private:
    const std::vector<core::FeaturizedGraph>& graphs_;
    std::vector<double> z_targets_;
    mutable std::vector<double> slots_;
};

// ---------------------------------------------------------------------------
// Training loop (hybrid / classical models).
// ---------------------------------------------------------------------------

struct RunArtifacts {
    std::vector<optimize::HistoryEntry> loss_history;  // training MSE per iteration
    std::vector<optimize::HistoryEntry> val_history;   // validation MSE per iteration
    std::vector<double> best_params;                   // argmin of val_history
    std::size_t best_iteration = 0;                    // 1-based
    double best_val_mse = std::numeric_limits<double>::infinity();
    Standardization standardization;
    FeatureScaling feature_scaling;
    optimize::Algorithm algorithm = optimize::Algorithm::kOnePlusOneEs;
    std::vector<ParityPair> test_pairs;  // eV
    double r2_fit = std::numeric_limits<double>::quiet_NaN();
    double r2_identity = std::numeric_limits<double>::quiet_NaN();
    double test_mse_ev = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<ParityPair> predict_pairs(const PreparedModel& model,
                                             const std::vector<core::FeaturizedGraph>& graphs,
                                             const Standardization& std_) {
    std::vector<ParityPair> pairs(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) {
        double pred = std::numeric_limits<double>::quiet_NaN();
        try {
            pred = std_.to_ev(model.predict(graphs[i]));
        } catch (const Error&) {
            // leave NaN; metrics will reject if it matters
        }
        pairs[i] = {graphs[i].target, pred};
    });
    return pairs;
}

inline RunArtifacts train(const RunConfig& cfg, const std::vector<core::FeaturizedGraph>& data) {
    if (cfg.model == ModelKind::kGbdt) {
        throw ConfigError("train() drives the optimizer-based models; use run_baseline() for gbdt");
    }
    const ModelSpec spec = cfg.model_spec();
    const std::size_t dim = spec.param_dim();
    DatasetSplit split = split_dataset(data, cfg.split, cfg.seed);
    const Standardization std_ = fit_standardization(split.train);
    const FeatureScaling scaling = fit_feature_scaling(split.train);
    split.train = scaling.apply_all(split.train);
    split.val = scaling.apply_all(split.val);
    split.test = scaling.apply_all(split.test);
    const SetEvaluator train_eval(split.train, std_);
    const SetEvaluator val_eval(split.val, std_);

    RunArtifacts art;
    art.standardization = std_;
    art.feature_scaling = scaling;
    art.algorithm = cfg.algorithm.value_or(optimize::select_algorithm(dim, cfg.budget));
    optimize::Optimizer opt(dim, cfg.budget, cfg.seed, art.algorithm);

    art.loss_history.reserve(cfg.budget);
    art.val_history.reserve(cfg.budget);
    double best_val_running = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= cfg.budget; ++it) {
        const std::vector<double> candidate = opt.ask();
        const PreparedModel model(spec, candidate);
        const double train_loss = train_eval.mse(model);
        const double val_loss = val_eval.mse(model);  // candidate params, not running best
        opt.tell(candidate, train_loss);
        art.loss_history.push_back({it, train_loss, opt.best_loss()});
        if (val_loss < best_val_running) {
            best_val_running = val_loss;
            art.best_iteration = it;
            art.best_val_mse = val_loss;
            art.best_params = candidate;
        }
        art.val_history.push_back({it, val_loss, best_val_running});
    }

    const PreparedModel best_model(spec, art.best_params);
    art.test_pairs = predict_pairs(best_model, split.test, std_);
    try {
        art.r2_fit = evaluate_r2(art.test_pairs);
        art.r2_identity = evaluate_r2_identity(art.test_pairs);
    } catch (const Error&) {
        // degenerate predictions: leave the figures of merit as NaN
    }
    try {
        art.test_mse_ev = mean_squared_error(art.test_pairs);
    } catch (const Error&) {
    }
    return art;
}

// ---------------------------------------------------------------------------
// Artifact persistence.
// ---------------------------------------------------------------------------

inline void json_set_or_null(nlohmann::json& doc, const std::string& key, double value) {
    if (std::isfinite(value)) {
        doc[key] = value;
    } else {
        doc[key] = nullptr;
    }
}

inline void write_artifacts(const RunConfig& cfg, const RunArtifacts& art) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.outdir);
    const auto path = [&](const char* name) { return (fs::path(cfg.outdir) / name).string(); };

    {
        std::ofstream out(path("config.txt"));
        if (!out) throw IoError("cannot write " + path("config.txt"));
        out << render_config(cfg);
    }
    optimize::write_loss_history_csv(art.loss_history, path("loss.csv"));
    optimize::write_loss_history_csv(art.val_history, path("val.csv"));

    {
        nlohmann::json ckpt;
        ckpt["model"] = to_string(cfg.model);
        ckpt["hidden"] = cfg.hidden;
        ckpt["layers"] = cfg.layers;
        ckpt["algorithm"] = optimize::to_string(art.algorithm);
        ckpt["best_iteration"] = art.best_iteration;
        ckpt["standardization"] = {{"mean", art.standardization.mean}, {"stddev", art.standardization.stddev}};
        ckpt["feature_scaling"] = {{"node_mean", art.feature_scaling.node_mean},
                                   {"node_std", art.feature_scaling.node_std},
                                   {"edge_mean", art.feature_scaling.edge_mean},
                                   {"edge_std", art.feature_scaling.edge_std}};
        ckpt["params"] = art.best_params;
        std::ofstream out(path("checkpoint.json"));
        if (!out) throw IoError("cannot write " + path("checkpoint.json"));
        out << ckpt.dump(2) << "\n";
    }
    {
        std::ofstream out(path("checkpoint_manifest.txt"));
        if (!out) throw IoError("cannot write " + path("checkpoint_manifest.txt"));
        out << model_layout_manifest(cfg.model_spec());
    }
    emit_parity_plot(art.test_pairs, path("parity.svg"), path("parity.csv"));
    {
        nlohmann::json report;
        report["model"] = to_string(cfg.model);
        report["algorithm"] = optimize::to_string(art.algorithm);
        report["budget"] = cfg.budget;
        report["seed"] = cfg.seed;
        report["best_iteration"] = art.best_iteration;
        report["best_val_mse"] = art.best_val_mse;
        report["initial_val_mse"] = art.val_history.empty() ? nullptr : nlohmann::json(art.val_history.front().candidate_loss);
        json_set_or_null(report, "r2_fit", art.r2_fit);
        json_set_or_null(report, "r2_identity", art.r2_identity);
        json_set_or_null(report, "test_mse_ev", art.test_mse_ev);
        std::ofstream out(path("report.json"));
        if (!out) throw IoError("cannot write " + path("report.json"));
        out << report.dump(2) << "\n";
    }
}

// ---------------------------------------------------------------------------
// GBDT baseline path: flattened rows, importance report, parity artifacts.
// ---------------------------------------------------------------------------

struct BaselineArtifacts {
    baseline::GbdtModel model;
    std::vector<baseline::ImportanceEntry> importances;
    std::vector<ParityPair> test_pairs;  // eV
    double r2_fit = std::numeric_limits<double>::quiet_NaN();
    double r2_identity = std::numeric_limits<double>::quiet_NaN();
    double test_mse_ev = std::numeric_limits<double>::quiet_NaN();
};

inline BaselineArtifacts run_baseline(const RunConfig& cfg, const std::vector<core::FeaturizedGraph>& data,
                                      const baseline::GbdtConfig& gbdt_cfg) {
    const DatasetSplit split = split_dataset(data, cfg.split, cfg.seed);

    auto to_rows = [](const std::vector<core::FeaturizedGraph>& graphs) {
        std::vector<std::vector<double>> rows;
        rows.reserve(graphs.size());
        for (const auto& g : graphs) {
            const auto flat = featurize::flatten_graph(g);
            rows.emplace_back(flat.begin(), flat.end());
        }
        return rows;
    };
    std::vector<double> train_targets;
    train_targets.reserve(split.train.size());
    for (const auto& g : split.train) train_targets.push_back(g.target);

    BaselineArtifacts art;
    art.model = baseline::fit(to_rows(split.train), train_targets, gbdt_cfg);
    art.importances = baseline::feature_importances(art.model, featurize::flat_column_names());

    const auto test_rows = to_rows(split.test);
    art.test_pairs.resize(split.test.size());
    for (std::size_t i = 0; i < split.test.size(); ++i) {
        art.test_pairs[i] = {split.test[i].target, baseline::predict(art.model, test_rows[i])};
    }
    try {
        art.r2_fit = evaluate_r2(art.test_pairs);
        art.r2_identity = evaluate_r2_identity(art.test_pairs);
    } catch (const Error&) {
    }
    try {
        art.test_mse_ev = mean_squared_error(art.test_pairs);
    } catch (const Error&) {
    }
    return art;
}

inline void write_baseline_artifacts(const RunConfig& cfg, const BaselineArtifacts& art) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.outdir);
    const auto path = [&](const char* name) { return (fs::path(cfg.outdir) / name).string(); };

    {
        std::ofstream out(path("config.txt"));
        if (!out) throw IoError("cannot write " + path("config.txt"));
        out << render_config(cfg);
    }
    baseline::save_model(art.model, path("model.json"));
    baseline::write_importance_csv(art.importances, path("importance.csv"));
    baseline::write_importance_svg(art.importances, path("importance.svg"));
    emit_parity_plot(art.test_pairs, path("parity.svg"), path("parity.csv"));
    {
        nlohmann::json report;
        report["model"] = "gbdt";
        report["seed"] = cfg.seed;
        json_set_or_null(report, "r2_fit", art.r2_fit);
        json_set_or_null(report, "r2_identity", art.r2_identity);
        json_set_or_null(report, "test_mse_ev", art.test_mse_ev);
        std::ofstream out(path("report.json"));
        if (!out) throw IoError("cannot write " + path("report.json"));
        out << report.dump(2) << "\n";
    }
}

}  // namespace hyqgnn::harness
