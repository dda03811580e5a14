// Command-line front end: featurization, training, the boosted-trees
// baseline, metric evaluation, plotting and synthetic-corpus generation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyqgnn/baseline/gbdt.hpp"
#include "hyqgnn/baseline/report.hpp"
#include "hyqgnn/core/structure_io.hpp"
#include "hyqgnn/featurize/dataset_io.hpp"
#include "hyqgnn/featurize/featurize.hpp"
#include "hyqgnn/harness/config.hpp"
#include "hyqgnn/harness/plots.hpp"
#include "hyqgnn/harness/synthetic.hpp"
#include "hyqgnn/harness/train.hpp"

namespace {

using namespace hyqgnn;

int cmd_featurize(const std::string& in_path, const std::string& out_path, const std::string& csv_path,
                  double accuracy, double alpha, double cutoff) {
    const auto structures = core::read_structures(in_path);
    featurize::EwaldConfig fc;
    fc.relative_accuracy = accuracy;
    fc.splitting_parameter = alpha;
    std::vector<core::FeaturizedGraph> graphs;
    graphs.reserve(structures.size());
    for (const auto& s : structures) graphs.push_back(featurize::build_graph(s, fc, cutoff));
    featurize::write_dataset_json(graphs, out_path);
    if (!csv_path.empty()) featurize::write_dataset_csv(graphs, csv_path);
    std::cout << "featurized " << graphs.size() << " structures -> " << out_path << "\n";
    return 0;
}

int cmd_train(harness::RunConfig cfg, const std::string& config_path) {
    if (!config_path.empty()) {
        harness::RunConfig from_file = cfg;
        harness::apply_kv_config(from_file, harness::read_kv_config(config_path));
        cfg = from_file;
    }
    if (cfg.dataset_path.empty()) throw ConfigError("train needs --dataset (or dataset= in --config)");
    if (cfg.model == harness::ModelKind::kGbdt) {
        throw ConfigError("use the baseline subcommand for the gbdt model");
    }
    const auto data = harness::load_dataset(cfg.dataset_path);
    const harness::RunArtifacts art = harness::train(cfg, data);
    harness::write_artifacts(cfg, art);
    std::printf("model=%s algorithm=%s dim=%zu budget=%zu\n", harness::to_string(cfg.model).c_str(),
                optimize::to_string(art.algorithm).c_str(), cfg.model_spec().param_dim(), cfg.budget);
    std::printf("best validation MSE %.6g at iteration %zu (initial %.6g)\n", art.best_val_mse, art.best_iteration,
                art.val_history.front().candidate_loss);
    std::printf("test R^2 (fit) %.4f | R^2 (identity) %.4f | MSE %.4g eV^2\n", art.r2_fit, art.r2_identity,
                art.test_mse_ev);
    std::cout << "artifacts in " << cfg.outdir << "\n";
    return 0;
}

int cmd_baseline(harness::RunConfig cfg, const baseline::GbdtConfig& gc) {
    if (cfg.dataset_path.empty()) throw ConfigError("baseline needs --dataset");
    cfg.model = harness::ModelKind::kGbdt;
    const auto data = harness::load_dataset(cfg.dataset_path);
    const harness::BaselineArtifacts art = harness::run_baseline(cfg, data, gc);
    harness::write_baseline_artifacts(cfg, art);
    std::printf("gbdt: %zu trees, depth %zu, lr %.3f\n", gc.n_trees, gc.max_depth, gc.learning_rate);
    std::printf("test R^2 (fit) %.4f | R^2 (identity) %.4f | MSE %.4g eV^2\n", art.r2_fit, art.r2_identity,
                art.test_mse_ev);
    std::cout << "artifacts in " << cfg.outdir << "\n";
    return 0;
}

int cmd_importance(const std::string& model_path, const std::string& csv_path, const std::string& svg_path,
                   std::size_t top_k) {
    const baseline::GbdtModel model = baseline::load_model(model_path);
    const auto entries = baseline::feature_importances(model, featurize::flat_column_names());
    if (!csv_path.empty()) baseline::write_importance_csv(entries, csv_path);
    if (!svg_path.empty()) baseline::write_importance_svg(entries, svg_path, top_k);
    const std::size_t show = std::min<std::size_t>(top_k, entries.size());
    for (std::size_t i = 0; i < show; ++i) {
        std::printf("%2zu. %-40s %.4f\n", i + 1, entries[i].name.c_str(), entries[i].share);
    }
    return 0;
}

int cmd_evaluate(const std::string& pairs_path, const std::string& out_path) {
    const auto pairs = harness::read_parity_csv(pairs_path);
    nlohmann::json report;
    report["n"] = pairs.size();
    try {
        report["r2_fit"] = harness::evaluate_r2(pairs);
        report["r2_identity"] = harness::evaluate_r2_identity(pairs);
    } catch (const Error& e) {
        report["r2_fit"] = nullptr;
        report["r2_identity"] = nullptr;
        report["note"] = e.what();
    }
    report["mse"] = harness::mean_squared_error(pairs);
    const std::string text = report.dump(2);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << text << "\n";
    }
    std::cout << text << "\n";
    return 0;
}

int cmd_plot(const std::string& pairs_path, const std::string& svg_path) {
    const auto pairs = harness::read_parity_csv(pairs_path);
    harness::write_parity_svg(pairs, svg_path);
    std::cout << "wrote " << svg_path << " (" << pairs.size() << " points)\n";
    return 0;
}

int cmd_gen_synthetic(std::size_t n, std::uint64_t seed, const std::string& out_path) {
    const auto structures = harness::gen_synthetic(n, seed);
    core::write_structures(structures, out_path);
    std::cout << "wrote " << structures.size() << " synthetic structures -> " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid quantum-classical graph network for perovskite formation energies"};
    app.require_subcommand(1);

    // featurize ------------------------------------------------------------
    auto* feat = app.add_subcommand("featurize", "crystal structures JSON -> featurized graph dataset");
    std::string feat_in, feat_out = "dataset.json", feat_csv;
    double feat_accuracy = 1e-5, feat_alpha = 0.0;
    double feat_cutoff = std::numeric_limits<double>::infinity();
    feat->add_option("--in", feat_in, "structures JSON file")->required();
    feat->add_option("--out", feat_out, "output dataset JSON path");
    feat->add_option("--csv", feat_csv, "also write the flattened CSV here");
    feat->add_option("--accuracy", feat_accuracy, "Ewald relative accuracy");
    feat->add_option("--alpha", feat_alpha, "Ewald splitting parameter (0 = automatic)");
    feat->add_option("--cutoff", feat_cutoff, "edge distance cutoff in Angstrom (default: keep all)");

    // train ------------------------------------------------------------
    auto* tr = app.add_subcommand("train", "gradient-free training of the hybrid or classical model");
    harness::RunConfig run_cfg;
    std::string train_config_path, train_model = "hybrid", train_algorithm;
    tr->add_option("--dataset", run_cfg.dataset_path, "featurized dataset JSON");
    tr->add_option("--model", train_model, "hybrid | classical");
    tr->add_option("--budget", run_cfg.budget, "objective evaluations (default 2000)");
    tr->add_option("--seed", run_cfg.seed, "RNG seed (default 7)");
    tr->add_option("--hidden", run_cfg.hidden, "GENConv hidden width (default 8)");
    tr->add_option("--layers", run_cfg.layers, "ansatz layers (default 2)");
    tr->add_option("--train", run_cfg.split.train, "training split size (default 196)");
    tr->add_option("--val", run_cfg.split.val, "validation split size (default 25)");
    tr->add_option("--test", run_cfg.split.test, "test split size (default 25)");
    tr->add_option("--algorithm", train_algorithm, "one-plus-one-es | differential-evolution (default: wizard)");
    tr->add_option("--outdir", run_cfg.outdir, "artifacts directory (default artifacts)");
    tr->add_option("--config", train_config_path, "key=value config file (flags below it win)");

    // baseline ------------------------------------------------------------
    auto* bl = app.add_subcommand("baseline", "gradient-boosted-trees baseline with importances");
    harness::RunConfig bl_cfg;
    baseline::GbdtConfig gbdt_cfg;
    bl->add_option("--dataset", bl_cfg.dataset_path, "featurized dataset JSON")->required();
    bl->add_option("--seed", bl_cfg.seed, "split seed (default 7)");
    bl->add_option("--train", bl_cfg.split.train, "training split size (default 196)");
    bl->add_option("--val", bl_cfg.split.val, "validation split size (default 25)");
    bl->add_option("--test", bl_cfg.split.test, "test split size (default 25)");
    bl->add_option("--trees", gbdt_cfg.n_trees, "number of trees (default 200)");
    bl->add_option("--depth", gbdt_cfg.max_depth, "max tree depth (default 3)");
    bl->add_option("--lr", gbdt_cfg.learning_rate, "shrinkage (default 0.1)");
    bl->add_option("--min-leaf", gbdt_cfg.min_samples_leaf, "min samples per leaf (default 2)");
    bl->add_option("--subsample", gbdt_cfg.subsample, "row subsample fraction (default 1.0)");
    bl->add_option("--outdir", bl_cfg.outdir, "artifacts directory (default artifacts)");

    // importance ------------------------------------------------------------
    auto* imp = app.add_subcommand("importance", "feature-importance report from a saved gbdt model");
    std::string imp_model, imp_csv = "importance.csv", imp_svg = "importance.svg";
    std::size_t imp_top = 15;
    imp->add_option("--model", imp_model, "model JSON written by the baseline subcommand")->required();
    imp->add_option("--csv", imp_csv, "output CSV path");
    imp->add_option("--svg", imp_svg, "output SVG path");
    imp->add_option("--top", imp_top, "rows to print/plot (default 15)");

    // evaluate ------------------------------------------------------------
    auto* ev = app.add_subcommand("evaluate", "R^2 metrics from a parity CSV");
    std::string ev_pairs, ev_out;
    ev->add_option("--pairs", ev_pairs, "CSV with true_ev,predicted_ev rows")->required();
    ev->add_option("--out", ev_out, "also write the report JSON here");

    // plot ------------------------------------------------------------
    auto* pl = app.add_subcommand("plot", "re-render a parity SVG from a parity CSV");
    std::string pl_pairs, pl_svg = "parity.svg";
    pl->add_option("--pairs", pl_pairs, "CSV with true_ev,predicted_ev rows")->required();
    pl->add_option("--out", pl_svg, "output SVG path");

    // gen-synthetic ------------------------------------------------------------
    auto* gs = app.add_subcommand("gen-synthetic", "emit the deterministic synthetic ABO3 corpus");
    std::size_t gs_n = 246;
    std::uint64_t gs_seed = 1;
    std::string gs_out = "structures.json";
    gs->add_option("--n", gs_n, "number of structures (default 246)");
    gs->add_option("--seed", gs_seed, "RNG seed (default 1)");
    gs->add_option("--out", gs_out, "output structures JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    }

    try {
        if (feat->parsed()) return cmd_featurize(feat_in, feat_out, feat_csv, feat_accuracy, feat_alpha, feat_cutoff);
        if (tr->parsed()) {
            run_cfg.model = harness::model_kind_from_string(train_model);
            if (!train_algorithm.empty()) run_cfg.algorithm = optimize::algorithm_from_string(train_algorithm);
            return cmd_train(run_cfg, train_config_path);
        }
        if (bl->parsed()) return cmd_baseline(bl_cfg, gbdt_cfg);
        if (imp->parsed()) return cmd_importance(imp_model, imp_csv, imp_svg, imp_top);
        if (ev->parsed()) return cmd_evaluate(ev_pairs, ev_out);
        if (pl->parsed()) return cmd_plot(pl_pairs, pl_svg);
        if (gs->parsed()) return cmd_gen_synthetic(gs_n, gs_seed, gs_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
