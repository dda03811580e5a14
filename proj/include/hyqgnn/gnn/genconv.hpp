#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hyqgnn/core/graph.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::gnn {

/// Additive message offset; keeps aggregated messages away from exact zero.
inline constexpr double kMessageEps = 1e-7;

/// Norm threshold below which the normalized message is treated as zero,
/// avoiding the division singularity of the update equation.
inline constexpr double kZeroMessageNorm = 1e-12;

inline constexpr std::size_t kDefaultHidden = 8;

// ---------------------------------------------------------------------------
// Parameter block: one GENConv layer plus scalar heads, stored as a single
// flat vector so gradient-free optimizers can treat it as a point in R^n.
//
// Flat layout for hidden size H (row-major weight matrices, bias after
// weights in each block):
//   edge_encoder_w   4H     edge_encoder_b   H
//   node_encoder_w   7H     node_encoder_b   H
//   beta             1      s                1
//   update_dense_w   H*H    update_dense_b   H
//   node_head_w      H      node_head_b      1
//   edge_head_w      4      edge_head_b      1
// Total: H^2 + 15H + 8.
// ---------------------------------------------------------------------------

struct LayoutBlock {
    std::string name;
    std::size_t offset = 0;
    std::size_t length = 0;
};

inline std::vector<LayoutBlock> genconv_layout(std::size_t hidden) {
    const std::size_t h = hidden;
    std::vector<LayoutBlock> blocks;
    std::size_t at = 0;
    auto add = [&](const char* name, std::size_t len) {
        blocks.push_back({name, at, len});
        at += len;
    };
    add("edge_encoder_w", 4 * h);
    add("edge_encoder_b", h);
    add("node_encoder_w", 7 * h);
    add("node_encoder_b", h);
    add("beta", 1);
    add("s", 1);
    add("update_dense_w", h * h);
    add("update_dense_b", h);
    add("node_head_w", h);
    add("node_head_b", 1);
    add("edge_head_w", 4);
    add("edge_head_b", 1);
    return blocks;
}

/// Human-readable layout manifest: "name offset length" per block, so that
/// saved flat checkpoints remain portable across builds.
inline std::string genconv_layout_manifest(std::size_t hidden) {
    std::ostringstream out;
    out << "# genconv parameter layout, hidden=" << hidden << "\n";
    out << "# name offset length\n";
    for (const auto& b : genconv_layout(hidden)) {
        out << b.name << " " << b.offset << " " << b.length << "\n";
    }
    return out.str();
}

class GenConvParams {
public:
    static std::size_t flat_size(std::size_t hidden) { return hidden * hidden + 15 * hidden + 8; }

    GenConvParams() : GenConvParams(std::vector<double>(flat_size(kDefaultHidden), 0.0), kDefaultHidden) {}

    GenConvParams(std::vector<double> flat, std::size_t hidden) : hidden_(hidden), values_(std::move(flat)) {
        if (hidden_ == 0) throw LayoutMismatch("hidden size must be positive");
        if (values_.size() != flat_size(hidden_)) {
            throw LayoutMismatch("flat vector holds " + std::to_string(values_.size()) + " values, expected " +
                                 std::to_string(flat_size(hidden_)) + " for hidden=" + std::to_string(hidden_));
        }
        const auto blocks = genconv_layout(hidden_);
        auto offset_of = [&](const char* name) {
            for (const auto& b : blocks) {
                if (b.name == name) return b.offset;
            }
            throw LayoutMismatch(std::string("unknown layout block ") + name);
        };
        edge_encoder_w_ = offset_of("edge_encoder_w");
        edge_encoder_b_ = offset_of("edge_encoder_b");
        node_encoder_w_ = offset_of("node_encoder_w");
        node_encoder_b_ = offset_of("node_encoder_b");
        beta_ = offset_of("beta");
        s_ = offset_of("s");
        update_dense_w_ = offset_of("update_dense_w");
        update_dense_b_ = offset_of("update_dense_b");
        node_head_w_ = offset_of("node_head_w");
        node_head_b_ = offset_of("node_head_b");
        edge_head_w_ = offset_of("edge_head_w");
        edge_head_b_ = offset_of("edge_head_b");
    }

    std::size_t hidden() const { return hidden_; }
    const std::vector<double>& flat() const { return values_; }

    double beta() const { return values_[beta_]; }
    double s() const { return values_[s_]; }
    const double* edge_encoder_w() const { return values_.data() + edge_encoder_w_; }
    const double* edge_encoder_b() const { return values_.data() + edge_encoder_b_; }
    const double* node_encoder_w() const { return values_.data() + node_encoder_w_; }
    const double* node_encoder_b() const { return values_.data() + node_encoder_b_; }
    const double* update_dense_w() const { return values_.data() + update_dense_w_; }
    const double* update_dense_b() const { return values_.data() + update_dense_b_; }
    const double* node_head_w() const { return values_.data() + node_head_w_; }
    double node_head_b() const { return values_[node_head_b_]; }
    const double* edge_head_w() const { return values_.data() + edge_head_w_; }
    double edge_head_b() const { return values_[edge_head_b_]; }

private:
    std::size_t hidden_;
    std::vector<double> values_;
    std::size_t edge_encoder_w_ = 0, edge_encoder_b_ = 0;
    std::size_t node_encoder_w_ = 0, node_encoder_b_ = 0;
    std::size_t beta_ = 0, s_ = 0;
    std::size_t update_dense_w_ = 0, update_dense_b_ = 0;
    std::size_t node_head_w_ = 0, node_head_b_ = 0;
    std::size_t edge_head_w_ = 0, edge_head_b_ = 0;
};

// ---------------------------------------------------------------------------
// Layer primitives.
// ---------------------------------------------------------------------------

/// Affine map y = W x + b with W row-major (rows halt output dimension).
inline std::vector<double> affine(const double* w, const double* b, const double* x, std::size_t out_dim,
                                  std::size_t in_dim) {
    std::vector<double> y(out_dim);
    for (std::size_t o = 0; o < out_dim; ++o) {
        double acc = b[o];
        const double* row = w + o * in_dim;
        for (std::size_t i = 0; i < in_dim; ++i) acc += row[i] * x[i];
        y[o] = acc;
    }
    return y;
}

inline double l2_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

/// m_uv = relu(h_u + e_uv) + eps, elementwise.
inline std::vector<double> message(const std::vector<double>& h_u, const std::vector<double>& e_uv,
                                   double eps = kMessageEps) {
    if (h_u.size() != e_uv.size()) throw LayoutMismatch("message: node/edge encoding dimensions differ");
    std::vector<double> m(h_u.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::max(h_u[k] + e_uv[k], 0.0) + eps;
    return m;
}

/// Softmax-weighted aggregation, independently per coordinate:
///   agg[k] = sum_u softmax_u(beta * m_u[k]) * m_u[k].
/// beta = 0 recovers the arithmetic mean; beta -> +inf approaches the max.
inline std::vector<double> softmax_aggregate(const std::vector<std::vector<double>>& messages, double beta) {
    if (messages.empty()) throw EmptyNeighborhood("softmax_aggregate needs at least one message");
    const std::size_t dim = messages.front().size();
    for (const auto& m : messages) {
        if (m.size() != dim) throw LayoutMismatch("softmax_aggregate: inconsistent message dimensions");
    }
    std::vector<double> out(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        double peak = -std::numeric_limits<double>::infinity();
        for (const auto& m : messages) peak = std::max(peak, beta * m[k]);
        double z = 0.0, weighted = 0.0;
        for (const auto& m : messages) {
            const double w = std::exp(beta * m[k] - peak);
            z += w;
            weighted += w * m[k];
        }
        out[k] = weighted / z;
    }
    return out;
}

/// Vertex update: relu(W (h_v + s * ||h_v||_2 * m_v / ||m_v||_2) + b).
/// Messages with ||m_v||_2 < 1e-12 contribute nothing (zero-message guard).
inline std::vector<double> message_norm_update(const std::vector<double>& h_v, const std::vector<double>& m_v,
                                               double s, const double* dense_w, const double* dense_b,
                                               std::size_t hidden) {
    if (h_v.size() != hidden || m_v.size() != hidden) {
        throw LayoutMismatch("message_norm_update: vector dimensions do not match hidden size");
    }
    std::vector<double> mixed = h_v;
    const double m_norm = l2_norm(m_v);
    if (m_norm >= kZeroMessageNorm) {
        const double scale = s * l2_norm(h_v) / m_norm;
        for (std::size_t k = 0; k < hidden; ++k) mixed[k] += scale * m_v[k];
    }
    std::vector<double> out = affine(dense_w, dense_b, mixed.data(), hidden, hidden);
    for (double& x : out) x = std::max(x, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Full layer: featurized graph -> one scalar per node and per edge.
// ---------------------------------------------------------------------------

struct EdgeScalar {
    std::size_t i = 0;
    std::size_t j = 0;
    double value = 0.0;
};

struct IntermediateGraph {
    std::array<double, core::kNumNodes> node_scalars{};
    std::vector<EdgeScalar> edge_scalars;
};

inline IntermediateGraph genconv_forward(const core::FeaturizedGraph& g, const GenConvParams& p) {
    const std::size_t h = p.hidden();

    // Encoders are affine (no activation): the message relu supplies the
    // nonlinearity, and the heads must be able to emit negative scalars.
    std::array<std::vector<double>, core::kNumNodes> encoded;
    for (std::size_t v = 0; v < core::kNumNodes; ++v) {
        encoded[v] = affine(p.node_encoder_w(), p.node_encoder_b(), g.node_features[v].data(), h,
                            core::kNodeFeatureCount);
    }

    std::vector<std::vector<double>> edge_encoded(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        edge_encoded[e] =
            affine(p.edge_encoder_w(), p.edge_encoder_b(), g.edges[e].features.data(), h, core::kEdgeFeatureCount);
    }

    IntermediateGraph out;
    for (std::size_t v = 0; v < core::kNumNodes; ++v) {
        // Collect messages from every undirected neighbor, in node order so
        // the result cannot depend on how the edge list happens to be sorted.
        std::vector<std::vector<double>> messages;
        for (std::size_t u = 0; u < core::kNumNodes; ++u) {
            if (u == v) continue;
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
                const auto& edge = g.edges[e];
                const bool connects = (edge.i == v && edge.j == u) || (edge.j == v && edge.i == u);
                if (connects) messages.push_back(message(encoded[u], edge_encoded[e]));
            }
        }
        // Isolated nodes (every incident edge pruned by the cutoff) fall back
        // to the zero message; the update's guard then reduces to dense(h_v).
        std::vector<double> aggregated =
            messages.empty() ? std::vector<double>(h, 0.0) : softmax_aggregate(messages, p.beta());
        const std::vector<double> updated =
            message_norm_update(encoded[v], aggregated, p.s(), p.update_dense_w(), p.update_dense_b(), h);
        double scalar = p.node_head_b();
        for (std::size_t k = 0; k < h; ++k) scalar += p.node_head_w()[k] * updated[k];
        out.node_scalars[v] = scalar;
    }

    out.edge_scalars.reserve(g.edges.size());
    for (const auto& edge : g.edges) {
        double scalar = p.edge_head_b();
        for (std::size_t k = 0; k < core::kEdgeFeatureCount; ++k) scalar += p.edge_head_w()[k] * edge.features[k];
        out.edge_scalars.push_back({edge.i, edge.j, scalar});
    }
    return out;
}

using WeightMatrix = std::array<std::array<double, core::kNumNodes>, core::kNumNodes>;

/// W[i][i] = node scalar i; W[i][j] = W[j][i] = scalar of edge (i,j);
/// node pairs without a surviving edge stay 0.
inline WeightMatrix assemble_weight_matrix(const IntermediateGraph& ig) {
    WeightMatrix w{};
    for (std::size_t i = 0; i < core::kNumNodes; ++i) w[i][i] = ig.node_scalars[i];
    for (const auto& e : ig.edge_scalars) {
        if (e.i >= core::kNumNodes || e.j >= core::kNumNodes) {
            throw IndexOutOfRange("edge scalar references node " + std::to_string(std::max(e.i, e.j)));
        }
        w[e.i][e.j] = e.value;
        w[e.j][e.i] = e.value;
    }
    return w;
}

/// Row-major unroll of the symmetric 5x5 weight matrix (the circuit input).
inline std::array<double, core::kNumNodes * core::kNumNodes> unroll_weight_matrix(const WeightMatrix& w) {
    std::array<double, core::kNumNodes * core::kNumNodes> flat{};
    for (std::size_t i = 0; i < core::kNumNodes; ++i) {
        for (std::size_t j = 0; j < core::kNumNodes; ++j) flat[i * core::kNumNodes + j] = w[i][j];
    }
    return flat;
}

}  // namespace hyqgnn::gnn
