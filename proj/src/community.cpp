#include "immunet/community.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "immunet/csv.hpp"

namespace immunet {

LabelPolicy parse_label_policy(const std::string& name) {
    if (name == "strict") return LabelPolicy::Strict;
    if (name == "drop") return LabelPolicy::Drop;
    throw std::invalid_argument("unknown label policy '" + name + "' (expected strict or drop)");
}

const char* to_string(LabelPolicy policy) {
    return policy == LabelPolicy::Strict ? "strict" : "drop";
}

CommunityCover::CommunityCover(std::size_t node_count, std::vector<std::vector<NodeId>> communities)
    : communities_(std::move(communities)), membership_(node_count, 0) {
    for (auto& members : communities_) {
        if (members.empty()) {
            throw std::invalid_argument("community cover contains an empty community");
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (NodeId v : members) {
            if (v >= node_count) {
                throw std::out_of_range("community member " + std::to_string(v) +
                                        " outside graph of " + std::to_string(node_count) + " nodes");
            }
            ++membership_[v];
        }
    }
    for (NodeId v = 0; v < node_count; ++v) {
        const auto m = membership_[v];
        max_membership_ = std::max(max_membership_, m);
        if (m >= 1) ++community_nodes_;
        if (m >= 2) overlap_nodes_.push_back(v);
    }
}

std::vector<std::vector<NodeId>> CommunityCover::membership_classes() const {
    std::vector<std::vector<NodeId>> classes(static_cast<std::size_t>(max_membership_) + 1);
    for (NodeId v = 0; v < membership_.size(); ++v) {
        if (membership_[v] >= 1) {
            classes[membership_[v]].push_back(v);
        }
    }
    return classes;
}

CommunityCover parse_community_file(std::istream& in, const Graph& g, LabelPolicy policy) {
    std::unordered_map<std::string, NodeId> index;
    index.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        index.emplace(g.label(v), v);
    }

    CoverReport report;
    std::vector<std::vector<NodeId>> communities;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::vector<NodeId> members;
        std::string token;
        while (fields >> token) {
            const auto it = index.find(token);
            if (it == index.end()) {
                if (policy == LabelPolicy::Strict) {
                    throw ParseError(line_no, "unknown node label '" + token + "'");
                }
                ++report.dropped_labels;
                continue;
            }
            members.push_back(it->second);
        }
        if (members.empty()) {
            ++report.discarded_communities;
            continue;
        }
        const std::size_t listed = members.size();
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        report.repeated_members += listed - members.size();
        communities.push_back(std::move(members));
    }
    CommunityCover cover(g.node_count(), std::move(communities));
    cover.report = report;
    return cover;
}

CommunityCover load_community_file(const std::string& path, const Graph& g, LabelPolicy policy) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open community file '" + path + "'");
    }
    try {
        return parse_community_file(in, g, policy);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

std::uint32_t membership_number(const CommunityCover& cover, NodeId i) {
    return cover.membership().at(i);
}

std::size_t community_size(const CommunityCover& cover, std::size_t k) {
    if (k >= cover.community_count()) {
        throw std::out_of_range("community index " + std::to_string(k) + " out of range");
    }
    return cover.community(k).size();
}

std::size_t overlap_size(const CommunityCover& cover, std::size_t i, std::size_t j) {
    if (i == j) {
        throw std::invalid_argument("overlap_size needs two distinct communities");
    }
    const auto a = cover.community(i);
    const auto b = cover.community(j);
    std::size_t shared = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++shared;
            ++ia;
            ++ib;
        }
    }
    return shared;
}

std::vector<CommunityOverlap> pairwise_overlaps(const CommunityCover& cover) {
    std::vector<std::vector<std::uint32_t>> incidence(cover.node_count());
    for (std::size_t k = 0; k < cover.community_count(); ++k) {
        for (NodeId v : cover.community(k)) {
            if (cover.membership()[v] >= 2) {
                incidence[v].push_back(static_cast<std::uint32_t>(k));
            }
        }
    }
    std::unordered_map<std::uint64_t, std::size_t> shared;
    for (const auto& ks : incidence) {
        for (std::size_t a = 0; a < ks.size(); ++a) {
            for (std::size_t b = a + 1; b < ks.size(); ++b) {
                ++shared[(static_cast<std::uint64_t>(ks[a]) << 32) | ks[b]];
            }
        }
    }
    std::vector<CommunityOverlap> result;
    result.reserve(shared.size());
    for (const auto& [key, count] : shared) {
        result.push_back({static_cast<std::size_t>(key >> 32),
                          static_cast<std::size_t>(key & 0xFFFFFFFFULL), count});
    }
    std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first, x.second) < std::tie(y.first, y.second);
    });
    return result;
}

CumulativeDistribution cumulative_distribution(std::span<const std::uint64_t> values) {
    if (values.empty()) {
        throw std::invalid_argument("cumulative distribution of an empty sample");
    }
    std::vector<std::uint64_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto total = static_cast<double>(sorted.size());

    CumulativeDistribution dist;
    for (std::size_t k = 0; k < sorted.size();) {
        std::size_t end = k;
        while (end < sorted.size() && sorted[end] == sorted[k]) ++end;
        dist.support.push_back(sorted[k]);
        dist.p.push_back(static_cast<double>(sorted.size() - k) / total);
        k = end;
    }
    return dist;
}

OverlapStatistics overlap_statistics(const Graph& g, const CommunityCover& cover) {
    if (cover.node_count() != g.node_count()) {
        throw std::invalid_argument("cover and graph disagree on node count");
    }
    OverlapStatistics stats;
    stats.communities = cover.community_count();
    stats.overlap_nodes = cover.overlap_nodes().size();
    stats.max_membership = cover.max_membership();
    stats.community_nodes = cover.community_node_count();
    for (const auto& cls : cover.membership_classes()) {
        stats.class_sizes.push_back(cls.size());
    }

    std::vector<std::uint64_t> sizes;
    sizes.reserve(cover.community_count());
    for (const auto& c : cover.communities()) sizes.push_back(c.size());
    if (!sizes.empty()) stats.community_size = cumulative_distribution(sizes);

    std::vector<std::uint64_t> memberships;
    memberships.reserve(cover.community_node_count());
    for (auto m : cover.membership()) {
        if (m >= 1) memberships.push_back(m);
    }
    if (!memberships.empty()) stats.membership = cumulative_distribution(memberships);

    stats.has_overlap = !cover.overlap_nodes().empty();
    if (stats.has_overlap) {
        std::vector<std::uint64_t> degrees;
        degrees.reserve(cover.overlap_nodes().size());
        for (NodeId v : cover.overlap_nodes()) degrees.push_back(degree(g, v));
        stats.overlap_degree = cumulative_distribution(degrees);

        std::vector<std::uint64_t> shared;
        for (const auto& o : pairwise_overlaps(cover)) shared.push_back(o.shared);
        stats.overlap_size = cumulative_distribution(shared);
    }
    return stats;
}

void write_distribution_csv(std::ostream& out, const std::string& metric,
                            const CumulativeDistribution& dist) {
    for (std::size_t k = 0; k < dist.support.size(); ++k) {
        out << metric << ',' << dist.support[k] << ',' << format_real(dist.p[k]) << '\n';
    }
}

}  // namespace immunet
