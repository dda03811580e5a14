#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyqgnn/core/graph.hpp"
#include "hyqgnn/gnn/genconv.hpp"
#include "hyqgnn/quantum/circuit.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::harness {

enum class ModelKind {
    kHybrid,     // GENConv -> weight matrix -> quantum circuit
    kClassical,  // GENConv -> weight matrix -> affine head
    kGbdt,       // boosted trees over flattened rows (separate path)
};

inline std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::kHybrid: return "hybrid";
        case ModelKind::kClassical: return "classical";
        case ModelKind::kGbdt: return "gbdt";
    }
    return "?";
}

inline ModelKind model_kind_from_string(const std::string& name) {
    if (name == "hybrid") return ModelKind::kHybrid;
    if (name == "classical") return ModelKind::kClassical;
    if (name == "gbdt") return ModelKind::kGbdt;
    throw ConfigError("unknown model '" + name + "' (want hybrid, classical or gbdt)");
}

inline constexpr std::size_t kUnrolledWidth = core::kNumNodes * core::kNumNodes;  // 25
inline constexpr std::size_t kClassicalHeadSize = kUnrolledWidth + 1;             // weights + bias

struct ModelSpec {
    ModelKind kind = ModelKind::kHybrid;
    std::size_t hidden = gnn::kDefaultHidden;
    std::size_t layers = quantum::kDefaultAnsatzLayers;  // ansatz depth (hybrid)

    std::size_t param_dim() const {
        const std::size_t front = gnn::GenConvParams::flat_size(hidden);
        switch (kind) {
            case ModelKind::kHybrid:
                return front + quantum::QuantumParams::flat_size(layers, quantum::kDefaultQubits);
            case ModelKind::kClassical:
                return front + kClassicalHeadSize;
            case ModelKind::kGbdt:
                throw ConfigError("gbdt has no flat parameter vector");
        }
        return 0;
    }
};

/// A candidate parameter vector unpacked once, then applied to many graphs.
/// Predictions are in standardized target units (the optimizer's space).
class PreparedModel {
public:
    PreparedModel(const ModelSpec& spec, const std::vector<double>& params)
        : spec_(spec),
          gconv_(split_front(spec, params), spec.hidden) {
        const std::size_t front = gnn::GenConvParams::flat_size(spec.hidden);
        const std::vector<double> tail(params.begin() + static_cast<std::ptrdiff_t>(front), params.end());
        if (spec.kind == ModelKind::kHybrid) {
            qp_ = quantum::QuantumParams::from_flat(tail, spec.layers, quantum::kDefaultQubits);
        } else if (spec.kind == ModelKind::kClassical) {
            if (tail.size() != kClassicalHeadSize) {
                throw LayoutMismatch("classical head expects " + std::to_string(kClassicalHeadSize) +
                                     " parameters, got " + std::to_string(tail.size()));
            }
            head_ = tail;
        } else {
            throw ConfigError("gbdt is not an optimizer-trained model");
        }
    }

    double predict(const core::FeaturizedGraph& g) const {
        const gnn::WeightMatrix w = gnn::assemble_weight_matrix(gnn::genconv_forward(g, gconv_));
        if (spec_.kind == ModelKind::kHybrid) return quantum::circuit_predict(w, qp_);
        const auto flat = gnn::unroll_weight_matrix(w);
        double acc = head_[kUnrolledWidth];
        for (std::size_t k = 0; k < kUnrolledWidth; ++k) acc += head_[k] * flat[k];
        return acc;
    }

private:
    static std::vector<double> split_front(const ModelSpec& spec, const std::vector<double>& params) {
        if (params.size() != spec.param_dim()) {
            throw LayoutMismatch("model expects " + std::to_string(spec.param_dim()) + " parameters, got " +
                                 std::to_string(params.size()));
        }
        const std::size_t front = gnn::GenConvParams::flat_size(spec.hidden);
        return std::vector<double>(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(front));
    }

    ModelSpec spec_;
    gnn::GenConvParams gconv_;
    quantum::QuantumParams qp_;
    std::vector<double> head_;
};

/// Concatenated layout manifest for checkpoint portability.
inline std::string model_layout_manifest(const ModelSpec& spec) {
    std::string text = gnn::genconv_layout_manifest(spec.hidden);
    const std::size_t front = gnn::GenConvParams::flat_size(spec.hidden);
    if (spec.kind == ModelKind::kHybrid) {
        text += "# quantum block starts at offset " + std::to_string(front) + "\n";
        text += quantum::quantum_layout_manifest(spec.layers, quantum::kDefaultQubits);
    } else if (spec.kind == ModelKind::kClassical) {
        text += "# classical head\n";
        text += "head_weights " + std::to_string(front) + " " + std::to_string(kUnrolledWidth) + "\n";
        text += "head_bias " + std::to_string(front + kUnrolledWidth) + " 1\n";
    }
    return text;
}

}  // namespace hyqgnn::harness
