#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace immunet {

using NodeId = std::uint32_t;

/// Raised for malformed input files. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Counters for input rows that were dropped while building a graph.
struct IngestReport {
    std::size_t self_loops = 0;
    std::size_t duplicate_edges = 0;
};

/// Undirected simple graph over dense node indices [0, N).
///
/// Immutable once built. Neighbor lists are sorted ascending, which makes
/// serialization and every traversal order deterministic.
class Graph {
public:
    Graph() = default;

    /// One node per label. Self-loops and repeated edges are dropped and
    /// counted in `report()`.
    Graph(std::vector<std::string> labels,
          std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId i) const { return adjacency_.at(i); }
    const std::string& label(NodeId i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool has_edge(NodeId a, NodeId b) const;

    const IngestReport& report() const noexcept { return report_; }

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
    IngestReport report_;
};

/// Set of removed (immunized) nodes over a fixed graph.
class NodeMask {
public:
    NodeMask() = default;
    explicit NodeMask(std::size_t node_count) : removed_(node_count, 0) {}

    std::size_t size() const noexcept { return removed_.size(); }
    std::size_t removed_count() const noexcept { return removed_count_; }
    bool removed(NodeId i) const { return removed_.at(i) != 0; }

    /// Returns false when `i` was already removed.
    bool remove(NodeId i);
    bool restore(NodeId i);

private:
    std::vector<char> removed_;
    std::size_t removed_count_ = 0;
};

/// Reads a whitespace-separated edge list. '#' lines and blank lines are
/// skipped; labels are assigned indices in order of first appearance.
Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

/// Writes each edge once as "label_a label_b", smaller index first.
void write_edge_list(const Graph& g, std::ostream& out);

std::size_t degree(const Graph& g, NodeId i);

/// Component sizes of the subgraph induced on non-removed nodes, descending.
std::vector<std::size_t> connected_components(const Graph& g, const NodeMask& mask);

/// Size of the largest connected component among non-removed nodes.
std::size_t lcc_size(const Graph& g, const NodeMask& mask);

/// Size of the component containing `seed` (0 when `seed` is removed).
std::size_t component_size_of(const Graph& g, const NodeMask& mask, NodeId seed);

/// Union-find with union by size and path halving.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);

    NodeId find(NodeId x);
    /// Returns the size of the merged set.
    std::size_t unite(NodeId a, NodeId b);
    std::size_t set_size(NodeId x) { return size_[find(x)]; }

private:
    std::vector<NodeId> parent_;
    std::vector<std::size_t> size_;
};

/// lcc after removing the first k nodes of `sequence`, for each k in
/// `cut_counts` (ascending, each <= sequence.size()). Nodes are added back in
/// reverse removal order, so the whole profile costs one union-find pass.
std::vector<std::size_t> lcc_profile(const Graph& g, std::span<const NodeId> sequence,
                                     std::span<const std::size_t> cut_counts);

}  // namespace immunet
