#include "evokernel/embedding.hpp"
#include "evokernel/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace evk;
using namespace evk::testing;

namespace {

MetricConfig wide() {
    MetricConfig cfg;
    cfg.dim = std::size_t{1} << 20;
    return cfg;
}

} // namespace

TEST(Fnv, ReferenceValues) {
    EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
    const std::uint64_t a[] = {0x61};
    EXPECT_EQ(fnv1a64(a), 0x6926124a7b1433c4ULL);
}

TEST(WlEmbed, FrozenK2Buckets) {
    const auto e = wl_embed(k2(), {});
    ASSERT_EQ(e.entries.size(), 4u);
    const std::uint32_t expected[] = {129, 329, 377, 455};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(e.entries[i].first, expected[i]);
        EXPECT_EQ(e.entries[i].second, 0.5);
    }
}

TEST(WlEmbed, EmptyGraphIsZero) {
    const auto e = wl_embed(Graph{}, {});
    EXPECT_TRUE(e.entries.empty());
    EXPECT_EQ(e.norm(), 0.0);
    EXPECT_EQ(e.dense(), Eigen::VectorXd::Zero(1024));
}

TEST(WlEmbed, UnitNorm) {
    auto rng = StreamRng::derive(30, StreamPurpose::Test);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = wl_embed(random_graph(1 + rng.below(30), 0.2, rng), {});
        EXPECT_NEAR(e.norm(), 1.0, 1e-14);
    }
}

TEST(WlEmbed, ConfigValidation) {
    MetricConfig cfg;
    cfg.dim = 0;
    EXPECT_THROW(wl_embed(k2(), cfg), ConfigError);
    cfg.dim = 8;
    cfg.wl_iterations = -1;
    EXPECT_THROW(wl_embed(k2(), cfg), ConfigError);
}

TEST(WlEmbedProperty, PermutationInvariantBitExact) {
    auto rng = StreamRng::derive(31, StreamPurpose::Test);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = random_graph(1 + rng.below(25), 0.25, rng);
        if (trial % 2 == 1) g = with_random_labels(g, 3, rng);
        const Graph h = g.permuted(random_permutation(g.node_count(), rng));
        EXPECT_EQ(wl_embed(g, {}), wl_embed(h, {}));
        EXPECT_EQ(delta(g, h, {}), 0.0);
    }
}

TEST(Delta, Examples) {
    EXPECT_EQ(delta(path_graph(5), path_graph(5), {}), 0.0);
    EXPECT_NEAR(delta(star_graph(3), Graph{}, {}), 1.0, 1e-15);
    EXPECT_GT(delta(k2(), path_graph(3), {}), 0.0);
    EXPECT_NE(wl_embed(k2(), {}), wl_embed(path_graph(3), {}));
}

TEST(Delta, MatchesDictionaryOracle) {
    const auto cfg = wide();
    EXPECT_NEAR(delta(k2(), path_graph(3), cfg), wl_distance(k2(), path_graph(3), 3), 1e-12);
    auto rng = StreamRng::derive(32, StreamPurpose::Test);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(2 + rng.below(10), 0.3, rng);
        Graph h = random_graph(2 + rng.below(10), 0.3, rng);
        if (trial % 3 == 0) {
            g = with_random_labels(g, 2, rng);
            h = with_random_labels(h, 2, rng);
        }
        EXPECT_NEAR(delta(g, h, cfg), wl_distance(g, h, 3), 1e-12);
    }
}

TEST(DeltaProperty, SymmetricAndTriangle) {
    auto rng = StreamRng::derive(33, StreamPurpose::Test);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = wl_embed(random_graph(1 + rng.below(20), 0.3, rng), {});
        const auto y = wl_embed(random_graph(1 + rng.below(20), 0.3, rng), {});
        const auto z = wl_embed(random_graph(1 + rng.below(20), 0.3, rng), {});
        EXPECT_EQ(delta(x, y), delta(y, x));
        EXPECT_LE(delta(x, z), delta(x, y) + delta(y, z) + 1e-12);
        EXPECT_GE(delta(x, y), 0.0);
        EXPECT_LE(delta(x, y), 2.0 + 1e-12);
    }
}

TEST(Delta, DimensionMismatch) {
    MetricConfig small;
    small.dim = 16;
    EXPECT_THROW(delta(wl_embed(k2(), {}), wl_embed(k2(), small)), ContractError);
}
