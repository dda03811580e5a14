#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hyqgnn/core/elements.hpp"
#include "hyqgnn/core/graph.hpp"
#include "hyqgnn/core/structure.hpp"
#include "hyqgnn/featurize/ewald.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::featurize {

/// Coulomb-matrix off-diagonal entry Z_i * Z_j / d for two nuclei at distance d (Angstrom).
inline double coulomb_offdiagonal(int z_i, int z_j, double d) {
    if (!(d > 0.0)) {
        throw DegenerateGeometry("coulomb_offdiagonal requires a positive distance, got " +
                                 std::to_string(d));
    }
    return static_cast<double>(z_i) * static_cast<double>(z_j) / d;
}

/// Node labels of the canonical ABO3 site order.
inline const std::array<std::string, core::kNumNodes>& node_labels() {
    static const std::array<std::string, core::kNumNodes> labels{"A", "B", "O1", "O2", "O3"};
    return labels;
}

inline const std::array<std::string, core::kNodeFeatureCount>& node_feature_names() {
    static const std::array<std::string, core::kNodeFeatureCount> names{
        "atomic_number", "ewald_energy", "electronegativity", "electron_affinity",
        "first_ionization", "cationic_radius", "anionic_radius"};
    return names;
}

inline const std::array<std::string, core::kEdgeFeatureCount>& edge_feature_names() {
    static const std::array<std::string, core::kEdgeFeatureCount> names{
        "inv_distance", "coulomb", "electronegativity_diff", "electron_affinity_diff"};
    return names;
}

/// Builds the featurized graph of a (not necessarily canonicalized) ABO3
/// structure: 5 nodes with the documented 7 features, and one edge per
/// unordered site pair within `cutoff` (complete graph by default).
inline core::FeaturizedGraph build_graph(const core::CrystalStructure& structure,
                                         const EwaldConfig& cfg = {},
                                         double cutoff = std::numeric_limits<double>::infinity()) {
    const core::CrystalStructure s = core::canonicalize_abo3(structure);
    const std::vector<double> site_energies = ewald_site_energies(s, cfg);

    core::FeaturizedGraph g;
    g.target = s.target_energy.value_or(0.0);

    std::array<const core::ElementProperties*, core::kNumNodes> props{};
    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        const auto& p = core::lookup_element_properties(s.sites[i].element);
        props[i] = &p;
        g.node_features[i] = {static_cast<double>(p.atomic_number),
                              site_energies[i],
                              p.electronegativity,
                              p.electron_affinity,
                              p.first_ionization,
                              p.cationic_radius,
                              p.anionic_radius};
    }

    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        for (std::size_t j = i + 1; j < core::kNumNodes; ++j) {
            const double d = core::min_image_distance(s.lattice, s.sites[i].frac, s.sites[j].frac);
            if (d > cutoff) continue;
            core::GraphEdge e;
            e.i = i;
            e.j = j;
            e.features = {1.0 / d,
                          coulomb_offdiagonal(props[i]->atomic_number, props[j]->atomic_number, d),
                          std::abs(props[i]->electronegativity - props[j]->electronegativity),
                          std::abs(props[i]->electron_affinity - props[j]->electron_affinity)};
            g.edges.push_back(e);
        }
    }
    g.validate();
    return g;
}

inline constexpr std::size_t kFlatWidth =
    core::kNumNodes * core::kNodeFeatureCount +
    core::kNumNodes * (core::kNumNodes - 1) / 2 * core::kEdgeFeatureCount;  // 75

/// Column names of the flattened tabular row: node features (node-major),
/// then edge features over the 10 unordered pairs in lexicographic order.
inline std::vector<std::string> flat_column_names() {
    std::vector<std::string> names;
    names.reserve(kFlatWidth);
    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        for (const auto& f : node_feature_names()) {
            names.push_back(f + "(" + node_labels()[i] + ")");
        }
    }
    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        for (std::size_t j = i + 1; j < core::kNumNodes; ++j) {
            for (const auto& f : edge_feature_names()) {
                names.push_back(f + "(" + node_labels()[i] + "-" + node_labels()[j] + ")");
            }
        }
    }
    return names;
}

/// Flattens a graph into the 75-wide tabular row matching flat_column_names().
/// Pairs without an edge (pruned by a cutoff) contribute zeros.
inline std::vector<double> flatten_graph(const core::FeaturizedGraph& g) {
    g.validate();
    std::vector<double> row;
    row.reserve(kFlatWidth);
    for (const auto& node : g.node_features) {
        row.insert(row.end(), node.begin(), node.end());
    }
    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        for (std::size_t j = i + 1; j < core::kNumNodes; ++j) {
            const core::GraphEdge* found = nullptr;
            for (const auto& e : g.edges) {
                if (e.i == i && e.j == j) {
                    found = &e;
                    break;
                }
            }
            if (found != nullptr) {
                row.insert(row.end(), found->features.begin(), found->features.end());
            } else {
                row.insert(row.end(), core::kEdgeFeatureCount, 0.0);
            }
        }
    }
    return row;
}

}  // namespace hyqgnn::featurize
