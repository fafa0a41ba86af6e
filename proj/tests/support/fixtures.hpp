#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "immunet/community.hpp"
#include "immunet/graph.hpp"
#include "immunet/rng.hpp"

namespace immunet::testing {

inline Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

/// Graph on nodes labelled "0".."n-1" (in index order) with the given edges.
inline Graph indexed_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return Graph(std::move(labels), edges);
}

inline Graph star_graph(std::size_t leaves) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId leaf = 1; leaf <= leaves; ++leaf) edges.emplace_back(0, leaf);
    return indexed_graph(leaves + 1, edges);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    return indexed_graph(n, edges);
}

/// Two 5-cliques on labels 1..5 and 5..9 sharing node "5"; each clique is a
/// community. Indices follow label order 1..9 -> 0..8.
struct TwoCliques {
    Graph graph;
    CommunityCover cover;
    NodeId shared;
};

inline const char* two_cliques_edges() {
    return "# two 5-cliques sharing node 5\n"
           "1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n"
           "5 6\n5 7\n5 8\n5 9\n6 7\n6 8\n6 9\n7 8\n7 9\n8 9\n";
}

inline TwoCliques two_cliques() {
    TwoCliques f{graph_from_text(two_cliques_edges()), {}, 0};
    std::istringstream communities("1 2 3 4 5\n5 6 7 8 9\n");
    f.cover = parse_community_file(communities, f.graph);
    f.shared = 4;
    return f;
}

/// Erdos-Renyi style graph with edge probability p.
inline Graph random_graph(StrategyRng& rng, std::size_t n, double p) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            if (rng.bernoulli(p)) edges.emplace_back(a, b);
    return indexed_graph(n, edges);
}

inline NodeMask random_mask(StrategyRng& rng, std::size_t n, double p) {
    NodeMask mask(n);
    for (NodeId v = 0; v < n; ++v)
        if (rng.bernoulli(p)) mask.remove(v);
    return mask;
}

/// Random cover: `z` communities of 1..max_size members drawn from [0, n).
inline CommunityCover random_cover(StrategyRng& rng, std::size_t n, std::size_t z,
                                   std::size_t max_size) {
    std::vector<std::vector<NodeId>> communities(z);
    for (auto& c : communities) {
        const auto size = 1 + rng.uniform_index(max_size);
        for (std::size_t k = 0; k < size; ++k) c.push_back(static_cast<NodeId>(rng.uniform_index(n)));
    }
    return CommunityCover(n, std::move(communities));
}

/// Synthetic network with planted overlapping communities: a chain of
/// dense groups (each threaded by a path, so every member has an edge) whose
/// neighbors share a few nodes, plus sparse background edges and some nodes
/// outside every community.
struct PlantedNetwork {
    std::string edges;
    std::string communities;
};

inline PlantedNetwork planted_network(std::uint64_t seed, std::size_t groups, std::size_t group_size,
                                      std::size_t shared, std::size_t loners) {
    StrategyRng rng(seed);
    std::vector<std::vector<std::size_t>> members(groups);
    std::size_t next = 0;
    for (std::size_t k = 0; k < groups; ++k) {
        if (k > 0) {
            const auto& prev = members[k - 1];
            members[k].assign(prev.end() - static_cast<std::ptrdiff_t>(shared), prev.end());
        }
        while (members[k].size() < group_size) members[k].push_back(next++);
    }
    const std::size_t community_nodes = next;
    const std::size_t n = community_nodes + loners;

    std::ostringstream edges;
    for (const auto& m : members)
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = a + 1; b < m.size(); ++b)
                if (b == a + 1 || rng.bernoulli(0.4)) edges << 'v' << m[a] << " v" << m[b] << '\n';
    for (std::size_t v = community_nodes; v < n; ++v) {
        edges << 'v' << v << " v" << rng.uniform_index(community_nodes) << '\n';
    }
    for (std::size_t k = 0; k < n / 4; ++k) {
        edges << 'v' << rng.uniform_index(n) << " v" << rng.uniform_index(n) << '\n';
    }
    std::ostringstream comms;
    for (const auto& m : members) {
        for (std::size_t k = 0; k < m.size(); ++k) comms << (k ? " v" : "v") << m[k];
        comms << '\n';
    }
    return {edges.str(), comms.str()};
}

}  // namespace immunet::testing
