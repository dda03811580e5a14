#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyqgnn/core/graph.hpp"
#include "hyqgnn/featurize/featurize.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::featurize {

/// Shortest round-trip decimal form of a double; keeps emitted files
/// byte-stable across identical runs.
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    double parsed = 0.0;
    for (int prec = 1; prec <= 16; ++prec) {
        char probe[32];
        std::snprintf(probe, sizeof probe, "%.*g", prec, x);
        std::sscanf(probe, "%lf", &parsed);
        if (parsed == x) return probe;
    }
    return buf;
}

/// Writes the featurized dataset as CSV: flat column names + "target_ev".
inline void write_dataset_csv(const std::vector<core::FeaturizedGraph>& graphs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    const auto names = flat_column_names();
    for (const auto& n : names) out << n << ",";
    out << "target_ev\n";
    for (const auto& g : graphs) {
        for (double v : flatten_graph(g)) out << format_double(v) << ",";
        out << format_double(g.target) << "\n";
    }
}

inline nlohmann::json graph_to_json(const core::FeaturizedGraph& g) {
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    for (const auto& node : g.node_features) {
        doc["nodes"].push_back(std::vector<double>(node.begin(), node.end()));
    }
    doc["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) {
        doc["edges"].push_back({{"i", e.i},
                                {"j", e.j},
                                {"f", std::vector<double>(e.features.begin(), e.features.end())}});
    }
    doc["target_ev"] = g.target;
    return doc;
}

inline core::FeaturizedGraph graph_from_json(const nlohmann::json& doc, std::size_t record_index) {
    const std::string at = " (record " + std::to_string(record_index) + ")";
    if (!doc.is_object()) throw SchemaError("graph record is not an object" + at);
    if (!doc.contains("nodes")) throw SchemaError("graph record missing 'nodes'" + at);
    if (!doc.contains("edges")) throw SchemaError("graph record missing 'edges'" + at);
    if (!doc.contains("target_ev")) throw SchemaError("graph record missing 'target_ev'" + at);

    core::FeaturizedGraph g;
    const auto& nodes = doc["nodes"];
    if (!nodes.is_array() || nodes.size() != core::kNumNodes) {
        throw SchemaError("'nodes' must hold exactly 5 rows" + at);
    }
    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        const auto& row = nodes[i];
        if (!row.is_array() || row.size() != core::kNodeFeatureCount) {
            throw SchemaError("node row must hold exactly 7 features" + at);
        }
        for (std::size_t k = 0; k < core::kNodeFeatureCount; ++k) {
            g.node_features[i][k] = row[k].get<double>();
        }
    }
    for (const auto& ej : doc["edges"]) {
        if (!ej.contains("i") || !ej.contains("j") || !ej.contains("f")) {
            throw SchemaError("edge record needs 'i', 'j' and 'f'" + at);
        }
        core::GraphEdge e;
        e.i = ej["i"].get<std::size_t>();
        e.j = ej["j"].get<std::size_t>();
        const auto& f = ej["f"];
        if (!f.is_array() || f.size() != core::kEdgeFeatureCount) {
            throw SchemaError("edge feature vector must hold exactly 4 values" + at);
        }
        for (std::size_t k = 0; k < core::kEdgeFeatureCount; ++k) e.features[k] = f[k].get<double>();
        g.edges.push_back(e);
    }
    g.target = doc["target_ev"].get<double>();
    try {
        g.validate();
    } catch (const SchemaError& e) {
        throw SchemaError(std::string(e.what()) + at);
    }
    return g;
}

/// Writes the graph-shaped JSON dataset consumed by the GNN path.
inline void write_dataset_json(const std::vector<core::FeaturizedGraph>& graphs, const std::string& path) {
    nlohmann::json root = nlohmann::json::array();
    for (const auto& g : graphs) root.push_back(graph_to_json(g));
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << root.dump(2) << "\n";
}

/// Reads a featurized JSON dataset. An empty file reads as an empty list.
inline std::vector<core::FeaturizedGraph> read_dataset_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!root.is_array()) throw SchemaError(path + ": top level must be a JSON array of graphs");
    std::vector<core::FeaturizedGraph> out;
    out.reserve(root.size());
    for (std::size_t i = 0; i < root.size(); ++i) out.push_back(graph_from_json(root[i], i));
    return out;
}

}  // namespace hyqgnn::featurize
