#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "hyqgnn/gnn/genconv.hpp"
#include "oracles/genconv_reference.hpp"
#include "support.hpp"

using namespace hyqgnn;
using gnn::GenConvParams;

namespace {

std::vector<double> random_params(std::mt19937_64& rng, std::size_t hidden, double sigma = 0.5) {
    return support::random_vector(rng, GenConvParams::flat_size(hidden), sigma);
}

}  // namespace

// ---------------------------------------------------------------------------
// Flat parameter layout.
// ---------------------------------------------------------------------------

TEST(GenConvLayout, BlockOrderAndSizes) {
    const std::size_t h = 8;
    const auto blocks = gnn::genconv_layout(h);
    ASSERT_EQ(blocks.size(), 12u);
    const char* names[] = {"edge_encoder_w", "edge_encoder_b", "node_encoder_w", "node_encoder_b",
                           "beta",           "s",              "update_dense_w", "update_dense_b",
                           "node_head_w",    "node_head_b",    "edge_head_w",    "edge_head_b"};
    const std::size_t lengths[] = {4 * h, h, 7 * h, h, 1, 1, h * h, h, h, 1, 4, 1};
    std::size_t at = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        EXPECT_EQ(blocks[b].name, names[b]);
        EXPECT_EQ(blocks[b].offset, at);
        EXPECT_EQ(blocks[b].length, lengths[b]);
        at += lengths[b];
    }
    EXPECT_EQ(at, GenConvParams::flat_size(h));
}

TEST(GenConvLayout, FlatSizeFormula) {
    EXPECT_EQ(GenConvParams::flat_size(8), 192u);
    EXPECT_EQ(GenConvParams::flat_size(4), 84u);
    EXPECT_EQ(GenConvParams::flat_size(1), 24u);
}

TEST(GenConvLayout, ManifestListsEveryBlock) {
    const std::string manifest = gnn::genconv_layout_manifest(8);
    for (const auto& b : gnn::genconv_layout(8)) {
        EXPECT_NE(manifest.find(b.name + " " + std::to_string(b.offset) + " " + std::to_string(b.length)),
                  std::string::npos)
            << b.name;
    }
}

TEST(GenConvParams, AccessorsPointIntoFlatVector) {
    const std::size_t h = 8;
    std::vector<double> flat(GenConvParams::flat_size(h));
    std::iota(flat.begin(), flat.end(), 0.0);
    const GenConvParams p(flat, h);
    EXPECT_DOUBLE_EQ(p.edge_encoder_w()[0], 0.0);
    EXPECT_DOUBLE_EQ(p.edge_encoder_b()[0], static_cast<double>(4 * h));
    EXPECT_DOUBLE_EQ(p.node_encoder_w()[0], static_cast<double>(5 * h));
    EXPECT_DOUBLE_EQ(p.node_encoder_b()[0], static_cast<double>(12 * h));
    EXPECT_DOUBLE_EQ(p.beta(), static_cast<double>(13 * h));
    EXPECT_DOUBLE_EQ(p.s(), static_cast<double>(13 * h + 1));
    EXPECT_DOUBLE_EQ(p.update_dense_w()[0], static_cast<double>(13 * h + 2));
    EXPECT_DOUBLE_EQ(p.update_dense_b()[0], static_cast<double>(13 * h + 2 + h * h));
    EXPECT_DOUBLE_EQ(p.node_head_w()[0], static_cast<double>(14 * h + 2 + h * h));
    EXPECT_DOUBLE_EQ(p.node_head_b(), static_cast<double>(15 * h + 2 + h * h));
    EXPECT_DOUBLE_EQ(p.edge_head_w()[0], static_cast<double>(15 * h + 3 + h * h));
    EXPECT_DOUBLE_EQ(p.edge_head_b(), static_cast<double>(15 * h + 7 + h * h));
    EXPECT_EQ(p.flat(), flat);
}

TEST(GenConvParams, RejectsBadShapes) {
    EXPECT_THROW(GenConvParams(std::vector<double>(191, 0.0), 8), LayoutMismatch);
    EXPECT_THROW(GenConvParams(std::vector<double>(193, 0.0), 8), LayoutMismatch);
    EXPECT_THROW(GenConvParams(std::vector<double>{}, 0), LayoutMismatch);
}

// ---------------------------------------------------------------------------
// Layer primitives.
// ---------------------------------------------------------------------------

TEST(GenConvOps, AffineMatchesManualComputation) {
    const double w[] = {1.0, 2.0, -1.0, 0.5};  // 2x2 row-major
    const double b[] = {0.25, -0.5};
    const double x[] = {3.0, -2.0};
    const auto y = gnn::affine(w, b, x, 2, 2);
    EXPECT_DOUBLE_EQ(y[0], 0.25 + 3.0 - 4.0);
    EXPECT_DOUBLE_EQ(y[1], -0.5 - 3.0 - 1.0);
}

TEST(GenConvOps, MessageIsReluPlusEpsilon) {
    const std::vector<double> h{1.0, -2.0, 0.0};
    const std::vector<double> e{-0.5, 1.0, 0.0};
    const auto m = gnn::message(h, e);
    EXPECT_DOUBLE_EQ(m[0], 0.5 + gnn::kMessageEps);
    EXPECT_DOUBLE_EQ(m[1], gnn::kMessageEps);  // relu clips the negative sum
    EXPECT_DOUBLE_EQ(m[2], gnn::kMessageEps);
    EXPECT_THROW(gnn::message({1.0}, {1.0, 2.0}), LayoutMismatch);
}

TEST(GenConvOps, SoftmaxAggregateZeroBetaIsExactMean) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::vector<double>> msgs(4, std::vector<double>(6));
        for (auto& m : msgs) {
            for (double& x : m) x = normal(rng);
        }
        const auto agg = gnn::softmax_aggregate(msgs, 0.0);
        for (std::size_t k = 0; k < 6; ++k) {
            double mean = 0.0;
            for (const auto& m : msgs) mean += m[k];
            mean /= 4.0;
            EXPECT_NEAR(agg[k], mean, 1e-12);
        }
    }
}

TEST(GenConvOps, SoftmaxAggregateKnownValue) {
    // beta = 1 over {1, 3}: (e*1 + e^3*3) / (e + e^3) = 2.76159...
    const auto agg = gnn::softmax_aggregate({{1.0}, {3.0}}, 1.0);
    const double expect = (std::exp(1.0) + 3.0 * std::exp(3.0)) / (std::exp(1.0) + std::exp(3.0));
    EXPECT_NEAR(agg[0], expect, 1e-12);
    EXPECT_NEAR(agg[0], 2.76159, 1e-5);
}

TEST(GenConvOps, SoftmaxAggregateLargeBetaApproachesMax) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::vector<double>> msgs(5, std::vector<double>(4));
        for (auto& m : msgs) {
            for (double& x : m) x = unit(rng);
        }
        // Separate the per-coordinate max from the runner-up by >= 0.1 so the
        // softmax weights collapse decisively.
        for (std::size_t k = 0; k < 4; ++k) {
            std::size_t arg = 0;
            for (std::size_t i = 1; i < msgs.size(); ++i) {
                if (msgs[i][k] > msgs[arg][k]) arg = i;
            }
            msgs[arg][k] += 0.15;
        }
        const auto agg = gnn::softmax_aggregate(msgs, 1e3);
        for (std::size_t k = 0; k < 4; ++k) {
            double peak = msgs[0][k];
            for (const auto& m : msgs) peak = std::max(peak, m[k]);
            EXPECT_NEAR(agg[k], peak, 1e-6);
        }
    }
}

TEST(GenConvOps, SoftmaxAggregateNegativeBetaApproachesMin) {
    const auto agg = gnn::softmax_aggregate({{0.2}, {0.9}, {1.4}}, -1e3);
    EXPECT_NEAR(agg[0], 0.2, 1e-6);
}

TEST(GenConvOps, SoftmaxAggregateSingleMessagePassesThrough) {
    for (double beta : {-5.0, 0.0, 3.0, 1e3}) {
        const auto agg = gnn::softmax_aggregate({{0.7, -1.2}}, beta);
        EXPECT_DOUBLE_EQ(agg[0], 0.7);
        EXPECT_DOUBLE_EQ(agg[1], -1.2);
    }
}

TEST(GenConvOps, SoftmaxAggregateErrors) {
    EXPECT_THROW(gnn::softmax_aggregate({}, 1.0), EmptyNeighborhood);
    EXPECT_THROW(gnn::softmax_aggregate({{1.0, 2.0}, {1.0}}, 1.0), LayoutMismatch);
}

TEST(GenConvOps, UpdateWithZeroScaleDropsMessages) {
    std::mt19937_64 rng(29);
    const std::size_t h = 4;
    const auto w = support::random_vector(rng, h * h);
    const auto b = support::random_vector(rng, h);
    const auto hv = support::random_vector(rng, h);
    const auto mv = support::random_vector(rng, h);

    const auto got = gnn::message_norm_update(hv, mv, 0.0, w.data(), b.data(), h);
    auto want = gnn::affine(w.data(), b.data(), hv.data(), h, h);
    for (double& x : want) x = std::max(x, 0.0);
    for (std::size_t k = 0; k < h; ++k) {
        EXPECT_DOUBLE_EQ(got[k], want[k]);
    }
}

TEST(GenConvOps, UpdateWithZeroMessageIsExactFallback) {
    std::mt19937_64 rng(31);
    const std::size_t h = 4;
    const auto w = support::random_vector(rng, h * h);
    const auto b = support::random_vector(rng, h);
    const auto hv = support::random_vector(rng, h);
    const std::vector<double> zero(h, 0.0);

    const auto got = gnn::message_norm_update(hv, zero, 2.5, w.data(), b.data(), h);
    auto want = gnn::affine(w.data(), b.data(), hv.data(), h, h);
    for (double& x : want) x = std::max(x, 0.0);
    for (std::size_t k = 0; k < h; ++k) {
        EXPECT_DOUBLE_EQ(got[k], want[k]);
    }
}

TEST(GenConvOps, UpdateMatchesFormula) {
    const std::size_t h = 2;
    const double w[] = {1.0, 0.0, 0.0, 1.0};  // identity
    const double b[] = {0.0, 0.0};
    const std::vector<double> hv{3.0, 4.0};   // norm 5
    const std::vector<double> mv{0.0, 2.0};   // norm 2
    // mixed = h + s * |h| * m/|m| = (3, 4) + 1 * 5 * (0, 1) = (3, 9)
    const auto got = gnn::message_norm_update(hv, mv, 1.0, w, b, h);
    EXPECT_NEAR(got[0], 3.0, 1e-12);
    EXPECT_NEAR(got[1], 9.0, 1e-12);
    EXPECT_THROW(gnn::message_norm_update({1.0}, mv, 1.0, w, b, h), LayoutMismatch);
}

// ---------------------------------------------------------------------------
// Full forward pass.
// ---------------------------------------------------------------------------

TEST(GenConvForward, MatchesStraightLineOracle) {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t h = (rep % 3 == 0) ? 4 : 8;
        const auto g = support::random_graph(rng);
        const auto flat = random_params(rng, h);
        const auto got = gnn::genconv_forward(g, GenConvParams(flat, h));
        const auto want = oracle::genconv_reference(g, flat, h);
        for (std::size_t v = 0; v < core::kNumNodes; ++v) {
            EXPECT_NEAR(got.node_scalars[v], want.node_scalars[v], 1e-10);
        }
        ASSERT_EQ(got.edge_scalars.size(), want.edge_scalars.size());
        for (std::size_t e = 0; e < want.edge_scalars.size(); ++e) {
            EXPECT_NEAR(got.edge_scalars[e].value, want.edge_scalars[e], 1e-10);
        }
    }
}

TEST(GenConvForward, PermutationEquivariant) {
    std::mt19937_64 rng(202);
    std::array<std::size_t, 5> perm{0, 1, 2, 3, 4};
    for (int rep = 0; rep < 100; ++rep) {
        const auto g = support::random_graph(rng);
        const auto flat = random_params(rng, 8);
        const GenConvParams params(flat, 8);
        std::shuffle(perm.begin(), perm.end(), rng);

        core::FeaturizedGraph pg;
        pg.target = g.target;
        for (std::size_t v = 0; v < 5; ++v) pg.node_features[perm[v]] = g.node_features[v];
        for (const auto& e : g.edges) {
            core::GraphEdge pe;
            pe.i = std::min(perm[e.i], perm[e.j]);
            pe.j = std::max(perm[e.i], perm[e.j]);
            pe.features = e.features;
            pg.edges.push_back(pe);
        }

        const auto out = gnn::genconv_forward(g, params);
        const auto pout = gnn::genconv_forward(pg, params);
        for (std::size_t v = 0; v < 5; ++v) {
            EXPECT_NEAR(pout.node_scalars[perm[v]], out.node_scalars[v], 1e-10);
        }
        std::map<std::pair<std::size_t, std::size_t>, double> scalars;
        for (const auto& e : pout.edge_scalars) scalars[{e.i, e.j}] = e.value;
        for (const auto& e : out.edge_scalars) {
            const auto key = std::make_pair(std::min(perm[e.i], perm[e.j]), std::max(perm[e.i], perm[e.j]));
            ASSERT_TRUE(scalars.count(key));
            EXPECT_NEAR(scalars[key], e.value, 1e-10);
        }
    }
}

TEST(GenConvForward, EdgeOrderDoesNotChangeNodeScalars) {
    std::mt19937_64 rng(303);
    const auto g = support::random_graph(rng);
    const auto flat = random_params(rng, 8);
    const GenConvParams params(flat, 8);

    core::FeaturizedGraph shuffled = g;
    std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);

    const auto a = gnn::genconv_forward(g, params);
    const auto b = gnn::genconv_forward(shuffled, params);
    for (std::size_t v = 0; v < 5; ++v) {
        // Messages are gathered in neighbor-index order, so this is bitwise.
        EXPECT_EQ(a.node_scalars[v], b.node_scalars[v]);
    }
    std::map<std::pair<std::size_t, std::size_t>, double> scalars;
    for (const auto& e : b.edge_scalars) scalars[{e.i, e.j}] = e.value;
    for (const auto& e : a.edge_scalars) {
        const double matched = scalars[{e.i, e.j}];
        EXPECT_EQ(matched, e.value);
    }
}

TEST(GenConvForward, IsolatedNodeFallsBackToZeroMessage) {
    std::mt19937_64 rng(404);
    auto g = support::random_graph(rng);
    // Strip every edge touching node 4.
    g.edges.erase(std::remove_if(g.edges.begin(), g.edges.end(),
                                 [](const core::GraphEdge& e) { return e.i == 4 || e.j == 4; }),
                  g.edges.end());
    ASSERT_EQ(g.edges.size(), 6u);
    const auto flat = random_params(rng, 8);
    gnn::IntermediateGraph out;
    ASSERT_NO_THROW(out = gnn::genconv_forward(g, GenConvParams(flat, 8)));

    const auto want = oracle::genconv_reference(g, flat, 8);
    for (std::size_t v = 0; v < 5; ++v) {
        EXPECT_NEAR(out.node_scalars[v], want.node_scalars[v], 1e-10);
    }
}

TEST(GenConvForward, EdgeHeadIsAffineInRawFeatures) {
    std::mt19937_64 rng(505);
    const auto g = support::random_graph(rng);
    const auto flat = random_params(rng, 8);
    const GenConvParams p(flat, 8);
    const auto out = gnn::genconv_forward(g, p);
    ASSERT_EQ(out.edge_scalars.size(), g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        double want = p.edge_head_b();
        for (std::size_t k = 0; k < 4; ++k) want += p.edge_head_w()[k] * g.edges[e].features[k];
        EXPECT_DOUBLE_EQ(out.edge_scalars[e].value, want);
        EXPECT_EQ(out.edge_scalars[e].i, g.edges[e].i);
        EXPECT_EQ(out.edge_scalars[e].j, g.edges[e].j);
    }
}

// ---------------------------------------------------------------------------
// Weight-matrix assembly.
// ---------------------------------------------------------------------------

TEST(WeightMatrix, AssembleAndUnroll) {
    gnn::IntermediateGraph ig;
    ig.node_scalars = {1.0, 2.0, 3.0, 4.0, 5.0};
    ig.edge_scalars = {{0, 1, -0.5}, {2, 4, 7.0}};
    const auto w = gnn::assemble_weight_matrix(ig);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_DOUBLE_EQ(w[i][i], ig.node_scalars[i]);
    }
    EXPECT_DOUBLE_EQ(w[0][1], -0.5);
    EXPECT_DOUBLE_EQ(w[1][0], -0.5);
    EXPECT_DOUBLE_EQ(w[2][4], 7.0);
    EXPECT_DOUBLE_EQ(w[4][2], 7.0);
    // Pairs without an edge stay zero.
    EXPECT_DOUBLE_EQ(w[0][2], 0.0);
    EXPECT_DOUBLE_EQ(w[3][4], 0.0);

    const auto flat = gnn::unroll_weight_matrix(w);
    ASSERT_EQ(flat.size(), 25u);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_DOUBLE_EQ(flat[i * 5 + j], w[i][j]);
        }
    }
}

TEST(WeightMatrix, RejectsOutOfRangeEdges) {
    gnn::IntermediateGraph ig;
    ig.edge_scalars = {{0, 6, 1.0}};
    EXPECT_THROW(gnn::assemble_weight_matrix(ig), IndexOutOfRange);
}
