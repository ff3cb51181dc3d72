#include "evokernel/augmentation.hpp"
#include "evokernel/errors.hpp"
#include "evokernel/tu_dataset.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace evk;
using namespace evk::testing;

namespace {

HeatState heat_of(std::initializer_list<double> values) {
    HeatState s;
    s.heat = Eigen::VectorXd(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) s.heat(i++) = v;
    return s;
}

HeatDistribution normed_only(std::initializer_list<double> normed) {
    HeatDistribution d;
    d.normed = heat_of(normed).heat;
    d.probs = d.normed / d.normed.sum();
    return d;
}

} // namespace

TEST(Boltzmann, UniformHeat) {
    const auto d = heat_distribution(heat_of({3, 3, 3, 3}), {});
    for (int i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(d.probs(i), 0.25);
        EXPECT_EQ(d.normed(i), 1.0);
    }
}

TEST(Boltzmann, TwoNodeValues) {
    const auto d = heat_distribution(heat_of({2, 1}), {-2.0, -2.0});
    const double e2 = std::exp(2.0);
    EXPECT_NEAR(d.probs(0), e2 / (e2 + 1), 1e-15);
    EXPECT_NEAR(d.probs(1), 1 / (e2 + 1), 1e-15);
    EXPECT_NEAR(d.probs(0), 0.8808, 5e-5);
    EXPECT_NEAR(d.probs(1), 0.1192, 5e-5);
    EXPECT_EQ(d.normed(0), 1.0);
    EXPECT_NEAR(d.normed(1), std::exp(-2.0), 1e-15);
}

TEST(Boltzmann, ZeroWeightIsUniform) {
    const auto d = heat_distribution(heat_of({0.1, 5, 2}), {0.0, -2.0});
    EXPECT_EQ(d.probs(0), d.probs(1));
    EXPECT_EQ(d.probs(1), d.probs(2));
    EXPECT_EQ(d.normed, Eigen::VectorXd::Ones(3));
}

TEST(Boltzmann, NonFiniteHeat) {
    EXPECT_THROW(heat_distribution(heat_of({1, NAN}), {}), DomainError);
    EXPECT_THROW(heat_distribution(heat_of({1, INFINITY}), {}), DomainError);
}

TEST(BoltzmannProperty, PositiveNormalizedBiasFreeMonotone) {
    auto rng = StreamRng::derive(20, StreamPurpose::Test);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<Eigen::Index>(1 + rng.below(40));
        HeatState s;
        s.heat = Eigen::VectorXd(n);
        for (Eigen::Index i = 0; i < n; ++i) s.heat(i) = 5.0 * rng.uniform01();
        const double a = -4.0 * rng.uniform01() - 0.01;
        const auto d = heat_distribution(s, {a, -2.0});
        EXPECT_GT(d.probs.minCoeff(), 0.0);
        EXPECT_NEAR(d.probs.sum(), 1.0, 1e-12);
        EXPECT_EQ(d.normed.maxCoeff(), 1.0);
        const auto other = heat_distribution(s, {a, 17.5 * rng.uniform01() - 9.0});
        EXPECT_EQ(d.probs, other.probs);
        EXPECT_EQ(d.normed, other.normed);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (s.heat(i) > s.heat(j)) {
                    EXPECT_GE(d.probs(i), d.probs(j));
                }
            }
        }
    }
}

TEST(DropNode, AllOnesKeepsGraph) {
    auto rng = StreamRng::derive(21, StreamPurpose::Test);
    const Graph g = cycle_graph(6);
    EXPECT_EQ(drop_node(g, normed_only({1, 1, 1, 1, 1, 1}), rng), g);
}

TEST(DropNode, AllZerosEmpties) {
    auto rng = StreamRng::derive(22, StreamPurpose::Test);
    const Graph g = drop_node(path_graph(3), normed_only({0, 0, 0}), rng);
    EXPECT_EQ(g.node_count(), 0u);
}

TEST(DropNode, SizeMismatch) {
    auto rng = StreamRng::derive(23, StreamPurpose::Test);
    EXPECT_THROW(drop_node(path_graph(3), normed_only({1, 1}), rng), ContractError);
}

TEST(DropNode, MiddleKeepRate) {
    const auto dist = normed_only({1, 0.5, 1});
    std::size_t kept = 0;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        auto rng = StreamRng::derive(42, StreamPurpose::Augmentation, {0, k});
        const auto mask = draw_keep_mask(dist, rng);
        EXPECT_TRUE(mask[0] && mask[2]);
        kept += mask[1] ? 1 : 0;
    }
    const double rate = static_cast<double>(kept) / 10000.0;
    EXPECT_GE(rate, 0.49);
    EXPECT_LE(rate, 0.51);
}

TEST(TimeGrid, Steps) {
    EXPECT_EQ(time_grid(0.0, 0.1), (std::vector<double>{0.0}));
    const auto grid = time_grid(1.0, 0.1);
    ASSERT_EQ(grid.size(), 11u);
    EXPECT_EQ(grid.front(), 0.0);
    EXPECT_DOUBLE_EQ(grid.back(), 1.0);
    EXPECT_EQ(time_grid(0.25, 0.1).size(), 3u);
    EXPECT_THROW(time_grid(1.0, 0.0), ConfigError);
}

TEST(Episode, SingleTime) {
    const Graph g = star_graph(4);
    const auto ep = generate_episode(g, {0.0}, {}, 1.0, 7);
    ASSERT_EQ(ep.length(), 1u);
    EXPECT_EQ(ep.snapshots[0], g);
}

TEST(Episode, GridErrors) {
    const Graph g = path_graph(4);
    EXPECT_THROW(generate_episode(g, {}, {}, 1.0, 1), ConfigError);
    EXPECT_THROW(generate_episode(g, {0.1, 0.2}, {}, 1.0, 1), ConfigError);
    EXPECT_THROW(generate_episode(g, {0.0, 0.2, 0.2}, {}, 1.0, 1), ConfigError);
    EXPECT_THROW(generate_episode(g, {0.0, 0.3, 0.2}, {}, 1.0, 1), ConfigError);
    EXPECT_THROW(generate_episode(g, {0.0}, {}, 0.0, 1), ConfigError);
}

TEST(Episode, EmptyGraph) {
    const auto ep = generate_episode(Graph{}, time_grid(1.0, 0.5), {}, 1.0, 1);
    ASSERT_EQ(ep.length(), 3u);
    for (const auto& s : ep.snapshots) EXPECT_EQ(s.node_count(), 0u);
}

TEST(EpisodeProperty, SubsetDeterminismAndAnchor) {
    auto rng = StreamRng::derive(24, StreamPurpose::Test);
    const auto grid = time_grid(1.0, 0.1);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = with_random_labels(random_graph(2 + rng.below(25), 0.25, rng), 3, rng);
        for (bool cumulative : {false, true}) {
            EpisodeOptions opt;
            opt.cumulative = cumulative;
            opt.graph_index = static_cast<std::uint64_t>(trial);
            const auto ep = generate_episode(g, grid, {}, 1.0, 42, opt);
            EXPECT_EQ(ep, generate_episode(g, grid, {}, 1.0, 42, opt));
            ASSERT_EQ(ep.length(), grid.size());
            EXPECT_EQ(ep.snapshots[0], g);
            for (std::size_t k = 0; k < ep.length(); ++k) {
                const auto& mask = ep.kept_masks[k];
                EXPECT_EQ(ep.snapshots[k], g.induced_subgraph(mask));
                EXPECT_LE(ep.snapshots[k].edge_count(), g.edge_count());
                if (cumulative && k > 0) {
                    for (std::size_t v = 0; v < mask.size(); ++v) {
                        if (mask[v]) {
                            EXPECT_TRUE(ep.kept_masks[k - 1][v]);
                        }
                    }
                }
            }
        }
    }
}

TEST(EpisodeProperty, StreamsKeyedByGraphIndex) {
    StreamRng rng(8);
    const Graph g = random_graph(30, 0.15, rng);
    const auto grid = time_grid(1.0, 0.1);
    EpisodeOptions a, b;
    a.graph_index = 3;
    b.graph_index = 4;
    EXPECT_NE(generate_episode(g, grid, {}, 1.0, 42, a).kept_masks,
              generate_episode(g, grid, {}, 1.0, 42, b).kept_masks);
    EXPECT_NE(generate_episode(g, grid, {}, 1.0, 42, a).kept_masks,
              generate_episode(g, grid, {}, 1.0, 43, a).kept_masks);
}

TEST(Episode, MutagNodeCountTrend) {
    const auto ds = load_tu_dataset(mutag_dir(), "MUTAG");
    const Graph& g = ds.graphs[0];
    const auto grid = time_grid(1.0, 0.1);
    std::vector<double> mean(grid.size(), 0.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto ep = generate_episode(g, grid, {}, 1.0, seed);
        ASSERT_EQ(ep.length(), 11u);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            mean[k] += static_cast<double>(ep.snapshots[k].node_count()) / 100.0;
        }
    }
    EXPECT_NEAR(mean[0], static_cast<double>(g.node_count()), 1e-9);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        EXPECT_LE(mean[k], mean[k - 1] + 0.5) << "k = " << k;
    }
    EXPECT_LT(mean.back(), mean.front());
}

TEST(Episode, StarCenterSurvivesMost) {
    const Graph g = star_graph(10);
    std::vector<int> kept(g.node_count(), 0);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto ep = generate_episode(g, {0.0, 5.0}, {}, 1.0, seed);
        for (std::size_t v = 0; v < g.node_count(); ++v) kept[v] += ep.kept_masks[1][v] ? 1 : 0;
    }
    EXPECT_EQ(kept[0], 1000);
    for (std::size_t v = 1; v < kept.size(); ++v) EXPECT_LT(kept[v], kept[0]);
}

TEST(EpisodeJsonl, RoundTrip) {
    StreamRng rng(5);
    const Graph g = with_random_labels(star_graph(8), 2, rng);
    EpisodeOptions opt;
    opt.graph_index = 11;
    const auto ep = generate_episode(g, time_grid(1.0, 0.25), {}, 1.0, 99, opt);
    std::stringstream ss;
    write_episode_jsonl(ss, ep);
    std::string line;
    std::size_t lines = 0;
    for (std::stringstream copy(ss.str()); std::getline(copy, line);) ++lines;
    EXPECT_EQ(lines, ep.length());
    EXPECT_EQ(read_episode_jsonl(ss, g), ep);
}

TEST(EpisodeJsonl, RejectsForeignEdges) {
    const Graph g = path_graph(3);
    std::stringstream ss(
        R"({"index":0,"time":0.0,"seed":1,"graph":0,"kept":[0,1,2],"edges":[[0,2]]})"
        "\n");
    EXPECT_THROW(read_episode_jsonl(ss, g), FormatError);
}
