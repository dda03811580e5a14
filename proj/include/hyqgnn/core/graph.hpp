#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hyqgnn/errors.hpp"

namespace hyqgnn::core {

inline constexpr std::size_t kNumNodes = 5;
inline constexpr std::size_t kNodeFeatureCount = 7;
inline constexpr std::size_t kEdgeFeatureCount = 4;

/// Node feature order within the 5x7 matrix.
enum NodeFeature : std::size_t {
    kAtomicNumber = 0,
    kEwaldEnergy = 1,
    kElectronegativity = 2,
    kElectronAffinity = 3,
    kFirstIonization = 4,
    kCationicRadius = 5,
    kAnionicRadius = 6,
};

/// Edge feature order within each 4-vector.
enum EdgeFeature : std::size_t {
    kInverseDistance = 0,
    kCoulomb = 1,
    kElectronegativityDiff = 2,
    kElectronAffinityDiff = 3,
};

struct GraphEdge {
    std::size_t i = 0;  // i < j
    std::size_t j = 0;
    std::array<double, kEdgeFeatureCount> features{};
};

/// The dataset unit: a fully featurized 5-node crystal graph.
/// Node rows follow the canonical [A, B, O1, O2, O3] site order.
struct FeaturizedGraph {
    std::array<std::array<double, kNodeFeatureCount>, kNumNodes> node_features{};
    std::vector<GraphEdge> edges;
    double target = 0.0;  // eV

    void validate() const {
        std::array<std::array<bool, kNumNodes>, kNumNodes> seen{};
        for (const auto& e : edges) {
            if (e.i >= e.j || e.j >= kNumNodes) {
                throw SchemaError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                  ") violates i < j < 5");
            }
            if (seen[e.i][e.j]) {
                throw SchemaError("duplicate edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
            }
            seen[e.i][e.j] = true;
            if (!(e.features[kInverseDistance] > 0.0)) {
                throw SchemaError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                  ") has non-positive inverse distance");
            }
        }
    }
};

}  // namespace hyqgnn::core
