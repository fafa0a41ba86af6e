#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "immunet/graph.hpp"

namespace immunet {

/// How to treat community labels that do not name a graph node.
enum class LabelPolicy { Strict, Drop };

LabelPolicy parse_label_policy(const std::string& name);
const char* to_string(LabelPolicy policy);

struct CoverReport {
    std::size_t dropped_labels = 0;        // unknown labels skipped under Drop
    std::size_t discarded_communities = 0; // became empty after drops
    std::size_t repeated_members = 0;      // label listed twice on one line
};

/// Ground-truth overlapping community cover over a graph's node indices.
class CommunityCover {
public:
    CommunityCover() = default;

    /// `communities` are member index lists; each is sorted and deduplicated.
    /// Throws on an empty community or an index >= node_count.
    CommunityCover(std::size_t node_count, std::vector<std::vector<NodeId>> communities);

    std::size_t node_count() const noexcept { return membership_.size(); }
    std::size_t community_count() const noexcept { return communities_.size(); }

    const std::vector<std::vector<NodeId>>& communities() const noexcept { return communities_; }
    std::span<const NodeId> community(std::size_t k) const { return communities_.at(k); }

    /// m(i) for every node; 0 for nodes outside every community.
    const std::vector<std::uint32_t>& membership() const noexcept { return membership_; }

    /// Nodes with m >= 2, ascending.
    const std::vector<NodeId>& overlap_nodes() const noexcept { return overlap_nodes_; }

    /// Largest membership number x (0 for an empty cover).
    std::uint32_t max_membership() const noexcept { return max_membership_; }

    /// Number of distinct nodes with m >= 1.
    std::size_t community_node_count() const noexcept { return community_nodes_; }

    /// M_m for m = 0..x; entry 0 is always empty (m = 0 nodes are not a class).
    std::vector<std::vector<NodeId>> membership_classes() const;

    CoverReport report;

private:
    std::vector<std::vector<NodeId>> communities_;
    std::vector<std::uint32_t> membership_;
    std::vector<NodeId> overlap_nodes_;
    std::uint32_t max_membership_ = 0;
    std::size_t community_nodes_ = 0;
};

/// One community per line, whitespace-separated node labels.
CommunityCover parse_community_file(std::istream& in, const Graph& g,
                                    LabelPolicy policy = LabelPolicy::Strict);
CommunityCover load_community_file(const std::string& path, const Graph& g,
                                   LabelPolicy policy = LabelPolicy::Strict);

std::uint32_t membership_number(const CommunityCover& cover, NodeId i);
std::size_t community_size(const CommunityCover& cover, std::size_t k);

/// |C_i ∩ C_j| for i != j.
std::size_t overlap_size(const CommunityCover& cover, std::size_t i, std::size_t j);

struct CommunityOverlap {
    std::size_t first;   // community index, first < second
    std::size_t second;
    std::size_t shared;  // >= 1

    bool operator==(const CommunityOverlap&) const = default;
};

/// Every community pair sharing at least one node, sorted by (first, second).
/// Built from node->community incidence, so zero-overlap pairs are never
/// visited.
std::vector<CommunityOverlap> pairwise_overlaps(const CommunityCover& cover);

/// Complementary cumulative distribution: p[k] is the fraction of
/// observations >= support[k].
struct CumulativeDistribution {
    std::vector<std::uint64_t> support;
    std::vector<double> p;

    bool empty() const noexcept { return support.empty(); }
};

/// Throws std::invalid_argument on empty input.
CumulativeDistribution cumulative_distribution(std::span<const std::uint64_t> values);

struct OverlapStatistics {
    CumulativeDistribution overlap_degree;  // degree of nodes with m >= 2
    CumulativeDistribution community_size;  // s over all communities
    CumulativeDistribution membership;      // m over nodes with m >= 1
    CumulativeDistribution overlap_size;    // s_ov over pairs with overlap >= 1
    bool has_overlap = false;               // false: overlap_degree/overlap_size empty

    std::size_t communities = 0;      // z
    std::size_t overlap_nodes = 0;    // n_ov
    std::uint32_t max_membership = 0; // x
    std::size_t community_nodes = 0;
    std::vector<std::size_t> class_sizes;  // |M_m| for m = 0..x
};

OverlapStatistics overlap_statistics(const Graph& g, const CommunityCover& cover);

/// Rows "metric,value,p" for one distribution.
void write_distribution_csv(std::ostream& out, const std::string& metric,
                            const CumulativeDistribution& dist);

}  // namespace immunet
