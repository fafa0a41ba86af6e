#include "immunet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace immunet {

Graph::Graph(std::vector<std::string> labels, std::span<const std::pair<NodeId, NodeId>> edges)
    : adjacency_(labels.size()), labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    std::vector<std::pair<NodeId, NodeId>> canonical;
    canonical.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) {
            throw std::out_of_range("edge endpoint outside node range");
        }
        if (a == b) {
            ++report_.self_loops;
            continue;
        }
        canonical.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(canonical.begin(), canonical.end());
    const auto last = std::unique(canonical.begin(), canonical.end());
    report_.duplicate_edges = static_cast<std::size_t>(canonical.end() - last);
    canonical.erase(last, canonical.end());

    std::vector<std::size_t> deg(n, 0);
    for (auto [a, b] : canonical) {
        ++deg[a];
        ++deg[b];
    }
    for (std::size_t i = 0; i < n; ++i) {
        adjacency_[i].reserve(deg[i]);
    }
    for (auto [a, b] : canonical) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
    edge_count_ = canonical.size();
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    const auto& list = adjacency_.at(a);
    return std::binary_search(list.begin(), list.end(), b);
}

bool NodeMask::remove(NodeId i) {
    char& flag = removed_.at(i);
    if (flag) {
        return false;
    }
    flag = 1;
    ++removed_count_;
    return true;
}

bool NodeMask::restore(NodeId i) {
    char& flag = removed_.at(i);
    if (!flag) {
        return false;
    }
    flag = 0;
    --removed_count_;
    return true;
}

Graph parse_edge_list(std::istream& in) {
    std::unordered_map<std::string, NodeId> index;
    std::vector<std::string> labels;
    std::vector<std::pair<NodeId, NodeId>> edges;

    auto intern = [&](std::string&& token) {
        auto [it, inserted] = index.try_emplace(token, static_cast<NodeId>(labels.size()));
        if (inserted) {
            labels.push_back(std::move(token));
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) {
            throw ParseError(line_no, "expected two node labels, got '" + line + "'");
        }
        const NodeId ia = intern(std::move(a));
        const NodeId ib = intern(std::move(b));
        edges.emplace_back(ia, ib);
    }
    return Graph(std::move(labels), edges);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open edge list '" + path + "'");
    }
    try {
        return parse_edge_list(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (NodeId i = 0; i < g.node_count(); ++i) {
        for (NodeId j : g.neighbors(i)) {
            if (i < j) {
                out << g.label(i) << ' ' << g.label(j) << '\n';
            }
        }
    }
}

std::size_t degree(const Graph& g, NodeId i) {
    if (i >= g.node_count()) {
        throw std::out_of_range("node index " + std::to_string(i) + " out of range");
    }
    return g.neighbors(i).size();
}

namespace {

void check_mask(const Graph& g, const NodeMask& mask) {
    if (mask.size() != g.node_count()) {
        throw std::invalid_argument("mask size does not match graph node count");
    }
}

// Iterative DFS from `seed`; marks reached nodes in `seen`.
std::size_t flood(const Graph& g, const NodeMask& mask, NodeId seed, std::vector<char>& seen,
                  std::vector<NodeId>& stack) {
    std::size_t size = 0;
    stack.clear();
    stack.push_back(seed);
    seen[seed] = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        ++size;
        for (NodeId w : g.neighbors(v)) {
            if (!seen[w] && !mask.removed(w)) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return size;
}

}  // namespace

std::vector<std::size_t> connected_components(const Graph& g, const NodeMask& mask) {
    check_mask(g, mask);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack;
    std::vector<std::size_t> sizes;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!seen[v] && !mask.removed(v)) {
            sizes.push_back(flood(g, mask, v, seen, stack));
        }
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

std::size_t lcc_size(const Graph& g, const NodeMask& mask) {
    const auto sizes = connected_components(g, mask);
    return sizes.empty() ? 0 : sizes.front();
}

std::size_t component_size_of(const Graph& g, const NodeMask& mask, NodeId seed) {
    check_mask(g, mask);
    if (seed >= g.node_count()) {
        throw std::out_of_range("seed node out of range");
    }
    if (mask.removed(seed)) {
        return 0;
    }
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack;
    return flood(g, mask, seed, seen, stack);
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) {
        parent_[i] = static_cast<NodeId>(i);
    }
}

NodeId DisjointSets::find(NodeId x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

std::size_t DisjointSets::unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return size_[a];
    }
    if (size_[a] < size_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    return size_[a];
}

std::vector<std::size_t> lcc_profile(const Graph& g, std::span<const NodeId> sequence,
                                     std::span<const std::size_t> cut_counts) {
    if (!std::is_sorted(cut_counts.begin(), cut_counts.end())) {
        throw std::invalid_argument("cut counts must be ascending");
    }
    if (cut_counts.empty()) {
        return {};
    }
    const std::size_t max_cut = cut_counts.back();
    if (max_cut > sequence.size()) {
        throw std::invalid_argument("cut count exceeds sequence length");
    }

    const std::size_t n = g.node_count();
    std::vector<char> active(n, 1);
    for (std::size_t k = 0; k < max_cut; ++k) {
        if (!active.at(sequence[k])) {
            throw std::invalid_argument("sequence contains a duplicate node");
        }
        active[sequence[k]] = 0;
    }

    DisjointSets sets(n);
    std::size_t largest = 0;
    auto activate = [&](NodeId v) {
        active[v] = 1;
        largest = std::max<std::size_t>(largest, 1);
        for (NodeId w : g.neighbors(v)) {
            if (active[w]) {
                largest = std::max(largest, sets.unite(v, w));
            }
        }
    };
    // Build the most-removed state first, then walk back towards k = 0.
    for (NodeId v = 0; v < n; ++v) {
        if (active[v]) {
            active[v] = 0;
            activate(v);
        }
    }

    std::vector<std::size_t> result(cut_counts.size());
    std::size_t removed = max_cut;
    for (std::size_t idx = cut_counts.size(); idx-- > 0;) {
        while (removed > cut_counts[idx]) {
            --removed;
            activate(sequence[removed]);
        }
        result[idx] = largest;
    }
    return result;
}

}  // namespace immunet
