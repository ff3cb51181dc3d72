#pragma once

#include "evokernel/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace evk {

enum class MetricKind { WlEuclidean };

struct MetricConfig {
    MetricKind kind = MetricKind::WlEuclidean;
    int wl_iterations = 3;
    std::size_t dim = 1024;
};

/// Throws ConfigError for dim < 1 or negative iteration counts.
void validate(const MetricConfig& cfg);

/// 64-bit FNV-1a over the little-endian bytes of `words`.
std::uint64_t fnv1a64(std::span<const std::uint64_t> words) noexcept;

/// L2-normalized Weisfeiler-Lehman subtree histogram, hashed into `dim`
/// buckets and stored sparsely (ascending bucket, non-zero values only).
struct WlEmbedding {
    std::vector<std::pair<std::uint32_t, double>> entries;
    std::size_t dim = 0;
    int iterations = 0;

    Eigen::VectorXd dense() const;
    double norm() const;

    friend bool operator==(const WlEmbedding&, const WlEmbedding&) = default;
};

/// Initial label is the node label, or the degree for unlabeled graphs.
/// Every (round, refined label) pair for rounds 0..h contributes one count.
/// The empty graph maps to the zero vector.
WlEmbedding wl_embed(const Graph& g, const MetricConfig& cfg);

/// Euclidean distance between embeddings of equal dimension.
double delta(const WlEmbedding& x, const WlEmbedding& y);
double delta(const Graph& g1, const Graph& g2, const MetricConfig& cfg);

std::string_view to_string(MetricKind kind);

} // namespace evk
