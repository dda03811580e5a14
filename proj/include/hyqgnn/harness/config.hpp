#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "hyqgnn/gnn/genconv.hpp"
#include "hyqgnn/harness/dataset.hpp"
#include "hyqgnn/harness/models.hpp"
#include "hyqgnn/optimize/optimize.hpp"
#include "hyqgnn/quantum/circuit.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::harness {

struct RunConfig {
    ModelKind model = ModelKind::kHybrid;
    SplitSizes split;
    std::size_t budget = 2000;
    std::uint64_t seed = 7;
    std::size_t hidden = gnn::kDefaultHidden;
    std::size_t layers = quantum::kDefaultAnsatzLayers;
    std::optional<optimize::Algorithm> algorithm;  // empty = selection wizard
    std::string dataset_path;
    std::string outdir = "artifacts";

    ModelSpec model_spec() const { return {model, hidden, layers}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs a non-negative integer, got '" + value + "'");
    }
}

}  // namespace detail

/// Key=value configuration file: one pair per line, '#' comments, blank
/// lines ignored. Later duplicates win.
inline std::map<std::string, std::string> read_kv_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string text = detail::trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

/// Applies parsed key=value pairs onto a RunConfig; unknown keys are errors.
inline void apply_kv_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "model") {
            cfg.model = model_kind_from_string(value);
        } else if (key == "train") {
            cfg.split.train = detail::parse_uint(key, value);
        } else if (key == "val") {
            cfg.split.val = detail::parse_uint(key, value);
        } else if (key == "test") {
            cfg.split.test = detail::parse_uint(key, value);
        } else if (key == "budget") {
            cfg.budget = detail::parse_uint(key, value);
        } else if (key == "seed") {
            cfg.seed = detail::parse_uint(key, value);
        } else if (key == "hidden") {
            cfg.hidden = detail::parse_uint(key, value);
        } else if (key == "layers") {
            cfg.layers = detail::parse_uint(key, value);
        } else if (key == "algorithm") {
            cfg.algorithm = optimize::algorithm_from_string(value);
        } else if (key == "dataset") {
            cfg.dataset_path = value;
        } else if (key == "outdir") {
            cfg.outdir = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

/// One-line-per-key snapshot, written into the artifacts directory so a run
/// is reproducible from its outputs alone.
inline std::string render_config(const RunConfig& cfg) {
    std::string text;
    text += "model = " + to_string(cfg.model) + "\n";
    text += "train = " + std::to_string(cfg.split.train) + "\n";
    text += "val = " + std::to_string(cfg.split.val) + "\n";
    text += "test = " + std::to_string(cfg.split.test) + "\n";
    text += "budget = " + std::to_string(cfg.budget) + "\n";
    text += "seed = " + std::to_string(cfg.seed) + "\n";
    text += "hidden = " + std::to_string(cfg.hidden) + "\n";
    text += "layers = " + std::to_string(cfg.layers) + "\n";
    if (cfg.algorithm) text += "algorithm = " + optimize::to_string(*cfg.algorithm) + "\n";
    text += "dataset = " + cfg.dataset_path + "\n";
    text += "outdir = " + cfg.outdir + "\n";
    return text;
}

}  // namespace hyqgnn::harness
