#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <vector>

#include "hyqgnn/baseline/gbdt.hpp"
#include "hyqgnn/baseline/report.hpp"
#include "support.hpp"

using namespace hyqgnn;
using baseline::GbdtConfig;
using baseline::GbdtModel;

namespace {

struct Table {
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
};

// One informative feature among noise: y = 3*x2 + tiny jitter.
Table single_signal_table(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Table t;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(5);
        for (double& v : row) v = normal(rng);
        t.rows.push_back(row);
        t.targets.push_back(3.0 * row[2] + 0.01 * normal(rng));
    }
    return t;
}

// Brute-force exact greedy split: try every boundary of every feature.
baseline::detail::SplitChoice brute_force_split(const std::vector<std::vector<double>>& rows,
                                                const std::vector<double>& residuals,
                                                const std::vector<std::size_t>& indices,
                                                std::size_t min_samples_leaf) {
    baseline::detail::SplitChoice best;
    const std::size_t m = indices.size();
    if (m < 2 * min_samples_leaf) return best;
    double total_sum = 0.0, total_sq = 0.0;
    for (std::size_t idx : indices) {
        total_sum += residuals[idx];
        total_sq += residuals[idx] * residuals[idx];
    }
    const double parent_sse = total_sq - total_sum * total_sum / static_cast<double>(m);
    for (std::size_t f = 0; f < rows.front().size(); ++f) {
        std::vector<double> values;
        for (std::size_t idx : indices) values.push_back(rows[idx][f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t b = 1; b < values.size(); ++b) {
            const double threshold = 0.5 * (values[b - 1] + values[b]);
            double ls = 0.0, lq = 0.0;
            std::size_t ln = 0;
            for (std::size_t idx : indices) {
                if (rows[idx][f] <= threshold) {
                    ls += residuals[idx];
                    lq += residuals[idx] * residuals[idx];
                    ++ln;
                }
            }
            if (ln < min_samples_leaf || m - ln < min_samples_leaf) continue;
            const double rs = total_sum - ls, rq = total_sq - lq;
            const double sse = (lq - ls * ls / static_cast<double>(ln)) +
                               (rq - rs * rs / static_cast<double>(m - ln));
            const double gain = parent_sse - sse;
            if (gain > best.gain) {
                best = {true, static_cast<int>(f), threshold, gain};
            }
        }
    }
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Split search.
// ---------------------------------------------------------------------------

TEST(BestSplit, MatchesBruteForceOnRandomTables) {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> small(0, 2);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 12;
        std::vector<std::vector<double>> rows;
        std::vector<double> residuals;
        for (std::size_t i = 0; i < n; ++i) {
            // Low-cardinality integer features force ties and equal-value runs.
            rows.push_back({static_cast<double>(small(rng)), normal(rng), static_cast<double>(small(rng))});
            residuals.push_back(normal(rng));
        }
        std::vector<std::size_t> indices(n);
        std::iota(indices.begin(), indices.end(), std::size_t{0});

        const auto got = baseline::detail::best_split(rows, residuals, indices, 2);
        const auto want = brute_force_split(rows, residuals, indices, 2);
        ASSERT_EQ(got.found, want.found);
        if (got.found) {
            EXPECT_EQ(got.feature, want.feature);
            EXPECT_DOUBLE_EQ(got.threshold, want.threshold);
            EXPECT_NEAR(got.gain, want.gain, 1e-9 * std::max(1.0, std::abs(want.gain)));
        }
    }
}

TEST(BestSplit, TooFewSamplesFindsNothing) {
    const std::vector<std::vector<double>> rows = {{1.0}, {2.0}, {3.0}};
    const std::vector<double> residuals = {1.0, 2.0, 3.0};
    const std::vector<std::size_t> indices = {0, 1, 2};
    EXPECT_FALSE(baseline::detail::best_split(rows, residuals, indices, 2).found);
    EXPECT_TRUE(baseline::detail::best_split(rows, residuals, indices, 1).found);
}

TEST(BestSplit, ConstantFeatureFindsNothing) {
    const std::vector<std::vector<double>> rows = {{5.0}, {5.0}, {5.0}, {5.0}};
    const std::vector<double> residuals = {1.0, -1.0, 2.0, -2.0};
    const std::vector<std::size_t> indices = {0, 1, 2, 3};
    EXPECT_FALSE(baseline::detail::best_split(rows, residuals, indices, 1).found);
}

// ---------------------------------------------------------------------------
// Fitting.
// ---------------------------------------------------------------------------

TEST(GbdtFit, SingleInformativeFeatureDominatesImportances) {
    const Table t = single_signal_table(100, 62);
    GbdtConfig cfg;
    const GbdtModel model = baseline::fit(t.rows, t.targets, cfg);
    const auto ranked =
        baseline::feature_importances(model, {"noise_a", "noise_b", "signal", "noise_c", "noise_d"});
    ASSERT_EQ(ranked.size(), 5u);
    EXPECT_EQ(ranked[0].name, "signal");
    EXPECT_EQ(ranked[0].column, 2u);
    EXPECT_GT(ranked[0].share, 0.9);
    double total = 0.0;
    for (const auto& e : ranked) {
        total += e.share;
        EXPECT_GE(e.share, 0.0);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    // Descending order.
    for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_LE(ranked[i].share, ranked[i - 1].share);
}

TEST(GbdtFit, DeepModelDrivesTrainingErrorToZero) {
    const Table t = single_signal_table(20, 63);
    GbdtConfig cfg;
    cfg.max_depth = 6;
    cfg.n_trees = 500;
    cfg.learning_rate = 0.3;
    cfg.min_samples_leaf = 1;
    const GbdtModel model = baseline::fit(t.rows, t.targets, cfg);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_NEAR(baseline::predict(model, t.rows[i]), t.targets[i], 1e-3);
    }
}

TEST(GbdtFit, ConstantTargetsGiveConstantModel) {
    const std::vector<std::vector<double>> rows = {{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}, {7.0, 8.0}};
    const std::vector<double> targets(4, -1.5);
    const GbdtModel model = baseline::fit(rows, targets, GbdtConfig{});
    EXPECT_TRUE(model.trees.empty());
    EXPECT_DOUBLE_EQ(baseline::predict(model, {0.0, 0.0}), -1.5);
    const auto ranked = baseline::feature_importances(model, {"a", "b"});
    EXPECT_DOUBLE_EQ(ranked[0].share, 0.0);
    EXPECT_DOUBLE_EQ(ranked[1].share, 0.0);
}

TEST(GbdtFit, InputValidation) {
    const Table t = single_signal_table(10, 64);
    GbdtConfig cfg;

    auto bad_targets = t.targets;
    bad_targets.pop_back();
    EXPECT_THROW(baseline::fit(t.rows, bad_targets, cfg), WidthMismatch);

    auto ragged = t.rows;
    ragged[3].pop_back();
    EXPECT_THROW(baseline::fit(ragged, t.targets, cfg), WidthMismatch);

    auto poisoned = t.rows;
    poisoned[2][1] = std::nan("");
    EXPECT_THROW(baseline::fit(poisoned, t.targets, cfg), SchemaError);

    auto bad_y = t.targets;
    bad_y[0] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(baseline::fit(t.rows, bad_y, cfg), SchemaError);

    EXPECT_THROW(baseline::fit({{1.0}, {2.0}}, {1.0, 2.0},
                               [] { GbdtConfig c; c.min_samples_leaf = 2; return c; }()),
                 InsufficientData);
}

TEST(GbdtFit, ConfigValidation) {
    auto check = [](auto mutate) {
        GbdtConfig cfg;
        mutate(cfg);
        EXPECT_THROW(cfg.validate(), ConfigError);
    };
    check([](GbdtConfig& c) { c.n_trees = 0; });
    check([](GbdtConfig& c) { c.max_depth = 0; });
    check([](GbdtConfig& c) { c.learning_rate = 0.0; });
    check([](GbdtConfig& c) { c.learning_rate = 1.5; });
    check([](GbdtConfig& c) { c.min_samples_leaf = 0; });
    check([](GbdtConfig& c) { c.subsample = 0.0; });
    check([](GbdtConfig& c) { c.subsample = 1.2; });
    EXPECT_NO_THROW(GbdtConfig{}.validate());
}

// ---------------------------------------------------------------------------
// Invariances.
// ---------------------------------------------------------------------------

TEST(GbdtInvariance, MonotoneFeatureTransformKeepsTrainingPredictions) {
    // Trees split on order statistics only, so a strictly increasing remap of
    // one feature cannot change predictions at the training rows.
    const Table t = single_signal_table(40, 65);
    GbdtConfig cfg;
    cfg.n_trees = 50;
    const GbdtModel base = baseline::fit(t.rows, t.targets, cfg);

    Table warped = t;
    for (auto& row : warped.rows) row[2] = std::exp(row[2]);
    const GbdtModel remapped = baseline::fit(warped.rows, warped.targets, cfg);

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_NEAR(baseline::predict(base, t.rows[i]), baseline::predict(remapped, warped.rows[i]), 1e-9);
    }
}

TEST(GbdtInvariance, TargetShiftMovesPredictionsByTheShift) {
    const Table t = single_signal_table(40, 66);
    GbdtConfig cfg;
    cfg.n_trees = 50;
    const GbdtModel base = baseline::fit(t.rows, t.targets, cfg);

    auto shifted = t.targets;
    for (double& y : shifted) y += 7.25;
    const GbdtModel moved = baseline::fit(t.rows, shifted, cfg);

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_NEAR(baseline::predict(moved, t.rows[i]), baseline::predict(base, t.rows[i]) + 7.25, 1e-9);
    }
}

TEST(GbdtInvariance, SubsampledFitsAreSeedDeterministic) {
    const Table t = single_signal_table(60, 67);
    GbdtConfig cfg;
    cfg.subsample = 0.7;
    cfg.n_trees = 40;
    cfg.seed = 5;
    const GbdtModel a = baseline::fit(t.rows, t.targets, cfg);
    const GbdtModel b = baseline::fit(t.rows, t.targets, cfg);
    for (const auto& row : t.rows) {
        EXPECT_EQ(baseline::predict(a, row), baseline::predict(b, row));
    }
    cfg.seed = 6;
    const GbdtModel c = baseline::fit(t.rows, t.targets, cfg);
    bool any_different = false;
    for (const auto& row : t.rows) {
        any_different = any_different || baseline::predict(a, row) != baseline::predict(c, row);
    }
    EXPECT_TRUE(any_different);
}

// ---------------------------------------------------------------------------
// Persistence and reporting.
// ---------------------------------------------------------------------------

TEST(GbdtPersistence, JsonRoundTripKeepsPredictionsBitIdentical) {
    const Table t = single_signal_table(50, 68);
    GbdtConfig cfg;
    cfg.n_trees = 30;
    const GbdtModel model = baseline::fit(t.rows, t.targets, cfg);

    const auto path = std::filesystem::temp_directory_path() / "hyqgnn_gbdt_roundtrip.json";
    baseline::save_model(model, path.string());
    const GbdtModel loaded = baseline::load_model(path.string());
    std::filesystem::remove(path);

    EXPECT_EQ(loaded.width, model.width);
    EXPECT_EQ(loaded.trees.size(), model.trees.size());
    for (const auto& row : t.rows) {
        EXPECT_EQ(baseline::predict(loaded, row), baseline::predict(model, row));
    }
}

TEST(GbdtPersistence, LoadErrors) {
    EXPECT_THROW(baseline::load_model("/nonexistent/model.json"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "hyqgnn_gbdt_bad.json";
    support::write_file(path.string(), "{ not json");
    EXPECT_THROW(baseline::load_model(path.string()), ParseError);
    support::write_file(path.string(), "{\"base_prediction\": 1.0}");
    EXPECT_THROW(baseline::load_model(path.string()), SchemaError);
    std::filesystem::remove(path);
}

TEST(ImportanceReport, WidthMismatchAndFiles) {
    const Table t = single_signal_table(30, 69);
    const GbdtModel model = baseline::fit(t.rows, t.targets, GbdtConfig{});
    EXPECT_THROW(baseline::feature_importances(model, {"only", "four", "names", "here"}), WidthMismatch);

    const auto ranked =
        baseline::feature_importances(model, {"noise_a", "noise_b", "signal", "noise_c", "noise_d"});
    const auto csv_path = std::filesystem::temp_directory_path() / "hyqgnn_importance.csv";
    const auto svg_path = std::filesystem::temp_directory_path() / "hyqgnn_importance.svg";
    baseline::write_importance_csv(ranked, csv_path.string());
    baseline::write_importance_svg(ranked, svg_path.string());

    const std::string csv = support::read_file(csv_path.string());
    EXPECT_EQ(csv.rfind("rank,column,feature,share\n", 0), 0u);
    EXPECT_NE(csv.find("signal"), std::string::npos);
    const std::string svg = support::read_file(svg_path.string());
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("signal"), std::string::npos);
    std::filesystem::remove(csv_path);
    std::filesystem::remove(svg_path);
}
