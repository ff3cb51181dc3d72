#include "evokernel/embedding.hpp"
#include "evokernel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace evk {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// Domain tags keep initial, refined and bucket hashes apart.
constexpr std::uint64_t kInitTag = 0x57'4c'30;
constexpr std::uint64_t kRefineTag = 0x57'4c'52;
constexpr std::uint64_t kBucketTag = 0x57'4c'42;

} // namespace

std::uint64_t fnv1a64(std::span<const std::uint64_t> words) noexcept {
    std::uint64_t h = kFnvOffset;
    for (std::uint64_t w : words) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (w >> (8 * byte)) & 0xffU;
            h *= kFnvPrime;
        }
    }
    return h;
}

void validate(const MetricConfig& cfg) {
    if (cfg.dim < 1) {
        throw ConfigError("embedding dimension must be >= 1");
    }
    if (cfg.dim > (std::size_t{1} << 32)) {
        throw ConfigError("embedding dimension must fit in 32 bits");
    }
    if (cfg.wl_iterations < 0) {
        throw ConfigError("WL iterations must be >= 0");
    }
}

std::string_view to_string(MetricKind kind) {
    switch (kind) {
    case MetricKind::WlEuclidean: return "wl-euclidean";
    }
    return "?";
}

Eigen::VectorXd WlEmbedding::dense() const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (const auto& [i, x] : entries) {
        v(i) = x;
    }
    return v;
}

double WlEmbedding::norm() const {
    double s = 0.0;
    for (const auto& e : entries) {
        s += e.second * e.second;
    }
    return std::sqrt(s);
}

WlEmbedding wl_embed(const Graph& g, const MetricConfig& cfg) {
    validate(cfg);
    WlEmbedding emb;
    emb.dim = cfg.dim;
    emb.iterations = cfg.wl_iterations;
    const std::size_t n = g.node_count();
    if (n == 0) {
        return emb;
    }

    std::vector<std::uint64_t> labels(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t raw = g.has_labels()
                                      ? static_cast<std::uint64_t>(g.labels()[v])
                                      : static_cast<std::uint64_t>(g.degree(static_cast<NodeId>(v)));
        const std::uint64_t words[] = {kInitTag, raw};
        labels[v] = fnv1a64(words);
    }

    std::map<std::uint32_t, double> counts;
    const auto accumulate = [&](std::uint64_t round) {
        for (std::uint64_t label : labels) {
            const std::uint64_t words[] = {kBucketTag, round, label};
            counts[static_cast<std::uint32_t>(fnv1a64(words) % cfg.dim)] += 1.0;
        }
    };
    accumulate(0);

    std::vector<std::uint64_t> next(n);
    std::vector<std::uint64_t> words;
    for (int round = 1; round <= cfg.wl_iterations; ++round) {
        for (std::size_t v = 0; v < n; ++v) {
            words.assign({kRefineTag, labels[v]});
            const auto first_nbr = words.size();
            for (NodeId w : g.neighbors(static_cast<NodeId>(v))) {
                words.push_back(labels[w]);
            }
            std::sort(words.begin() + static_cast<std::ptrdiff_t>(first_nbr), words.end());
            next[v] = fnv1a64(words);
        }
        labels.swap(next);
        accumulate(static_cast<std::uint64_t>(round));
    }

    double sq = 0.0;
    for (const auto& [i, c] : counts) {
        sq += c * c;
    }
    const double scale = 1.0 / std::sqrt(sq);
    emb.entries.reserve(counts.size());
    for (const auto& [i, c] : counts) {
        emb.entries.emplace_back(i, c * scale);
    }
    return emb;
}

double delta(const WlEmbedding& x, const WlEmbedding& y) {
    if (x.dim != y.dim) {
        throw ContractError("embedding dimensions differ (" + std::to_string(x.dim) + " vs " +
                            std::to_string(y.dim) + ")");
    }
    double s = 0.0;
    auto a = x.entries.begin();
    auto b = y.entries.begin();
    while (a != x.entries.end() || b != y.entries.end()) {
        double d;
        if (b == y.entries.end() || (a != x.entries.end() && a->first < b->first)) {
            d = a->second;
            ++a;
        } else if (a == x.entries.end() || b->first < a->first) {
            d = b->second;
            ++b;
        } else {
            d = a->second - b->second;
            ++a;
            ++b;
        }
        s += d * d;
    }
    return std::sqrt(s);
}

double delta(const Graph& g1, const Graph& g2, const MetricConfig& cfg) {
    return delta(wl_embed(g1, cfg), wl_embed(g2, cfg));
}

} // namespace evk
