#pragma once

// Shared fixtures for the test suites: reference ionic crystals with known
// Madelung constants, random featurized graphs, and small file helpers.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyqgnn/core/graph.hpp"
#include "hyqgnn/core/structure.hpp"

namespace support {

/// Rock salt conventional cell (8 sites, charges +-1), lattice constant a.
inline hyqgnn::core::CrystalStructure nacl_structure(double a = 5.64) {
    using hyqgnn::core::Site;
    hyqgnn::core::CrystalStructure s;
    s.lattice = hyqgnn::core::Lattice::cubic(a);
    s.sites = {
        Site{"Na", {0.0, 0.0, 0.0}, 1},  Site{"Na", {0.5, 0.5, 0.0}, 1},
        Site{"Na", {0.5, 0.0, 0.5}, 1},  Site{"Na", {0.0, 0.5, 0.5}, 1},
        Site{"Cl", {0.5, 0.0, 0.0}, -1}, Site{"Cl", {0.0, 0.5, 0.0}, -1},
        Site{"Cl", {0.0, 0.0, 0.5}, -1}, Site{"Cl", {0.5, 0.5, 0.5}, -1},
    };
    return s;
}

/// Cesium chloride cell (2 sites, charges +-1), lattice constant a.
inline hyqgnn::core::CrystalStructure cscl_structure(double a = 4.11) {
    using hyqgnn::core::Site;
    hyqgnn::core::CrystalStructure s;
    s.lattice = hyqgnn::core::Lattice::cubic(a);
    s.sites = {Site{"Cs", {0.0, 0.0, 0.0}, 1}, Site{"Cl", {0.5, 0.5, 0.5}, -1}};
    return s;
}

/// Madelung constant referenced to the nearest-neighbor distance r0:
/// M = -E_cell * r0 / (pairs_per_cell * ke).
inline double madelung_from_total(double total_ev, double r0, std::size_t formula_units, double ke) {
    return -total_ev * r0 / (static_cast<double>(formula_units) * ke);
}

inline constexpr double kMadelungNaCl = 1.747565;
inline constexpr double kMadelungCsCl = 1.762675;

/// Ideal cubic SrTiO3 perovskite in canonical-friendly order.
inline hyqgnn::core::CrystalStructure srtio3_structure(double a = 3.905) {
    using hyqgnn::core::Site;
    hyqgnn::core::CrystalStructure s;
    s.lattice = hyqgnn::core::Lattice::cubic(a);
    s.sites = {Site{"Sr", {0.0, 0.0, 0.0}}, Site{"Ti", {0.5, 0.5, 0.5}}, Site{"O", {0.5, 0.5, 0.0}},
               Site{"O", {0.5, 0.0, 0.5}}, Site{"O", {0.0, 0.5, 0.5}}};
    return s;
}

/// Fully connected random graph with positive inverse distances, for layer
/// and harness tests that do not need physical featurization.
inline hyqgnn::core::FeaturizedGraph random_graph(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.1, 2.0);
    hyqgnn::core::FeaturizedGraph g;
    for (auto& node : g.node_features) {
        for (double& x : node) x = normal(rng);
    }
    for (std::size_t i = 0; i < hyqgnn::core::kNumNodes; ++i) {
        for (std::size_t j = i + 1; j < hyqgnn::core::kNumNodes; ++j) {
            hyqgnn::core::GraphEdge e;
            e.i = i;
            e.j = j;
            e.features = {unit(rng), normal(rng), normal(rng), normal(rng)};
            g.edges.push_back(e);
        }
    }
    g.target = normal(rng);
    return g;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double sigma = 1.0) {
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    return v;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace support
