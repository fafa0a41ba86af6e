#include "immunet/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "immunet/csv.hpp"

namespace immunet {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::HLMI: return "hlmi";
        case Strategy::LHMI: return "lhmi";
        case Strategy::RandomAcquaintance: return "random_acquaintance";
        case Strategy::CBF: return "cbf";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "hlmi") return Strategy::HLMI;
    if (name == "lhmi") return Strategy::LHMI;
    if (name == "random_acquaintance" || name == "ra") return Strategy::RandomAcquaintance;
    if (name == "cbf") return Strategy::CBF;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

bool is_membership_strategy(Strategy s) noexcept {
    return s == Strategy::HLMI || s == Strategy::LHMI;
}

TieBreak parse_tie_break(const std::string& name) {
    if (name == "shuffle") return TieBreak::Shuffle;
    if (name == "stable") return TieBreak::Stable;
    throw std::invalid_argument("unknown tie break '" + name + "' (expected shuffle or stable)");
}

const char* to_string(TieBreak t) { return t == TieBreak::Shuffle ? "shuffle" : "stable"; }

const char* to_string(OrderStatus s) {
    switch (s) {
        case OrderStatus::Complete: return "complete";
        case OrderStatus::NoCandidates: return "no_candidates";
        case OrderStatus::CapReached: return "cap_reached";
    }
    return "?";
}

namespace {

ImmunizationOrder membership_order(Strategy strategy, const CommunityCover& cover,
                                   StrategyRng& rng, const StrategyParams& params) {
    ImmunizationOrder order{strategy, {}, rng.seed(), params, OrderStatus::Complete};
    auto classes = cover.membership_classes();
    if (cover.community_node_count() == 0) {
        order.status = OrderStatus::NoCandidates;
        return order;
    }
    order.sequence.reserve(cover.community_node_count());
    auto emit = [&](std::vector<NodeId>& block) {
        if (params.tie_break == TieBreak::Shuffle) {
            rng.shuffle(std::span<NodeId>(block));
        }
        order.sequence.insert(order.sequence.end(), block.begin(), block.end());
    };
    const std::size_t x = cover.max_membership();
    if (strategy == Strategy::HLMI) {
        for (std::size_t m = x; m >= 1; --m) emit(classes[m]);
    } else {
        for (std::size_t m = 1; m <= x; ++m) emit(classes[m]);
    }
    return order;
}

std::size_t draw_cap(const StrategyParams& params, std::size_t n) {
    if (n != 0 && params.cap_factor > std::numeric_limits<std::size_t>::max() / n) {
        return std::numeric_limits<std::size_t>::max();
    }
    return params.cap_factor * n;
}

}  // namespace

ImmunizationOrder hlmi_order(const CommunityCover& cover, StrategyRng& rng,
                             const StrategyParams& params) {
    return membership_order(Strategy::HLMI, cover, rng, params);
}

ImmunizationOrder lhmi_order(const CommunityCover& cover, StrategyRng& rng,
                             const StrategyParams& params) {
    return membership_order(Strategy::LHMI, cover, rng, params);
}

ImmunizationOrder random_acquaintance_order(const Graph& g, StrategyRng& rng, std::size_t budget,
                                            const StrategyParams& params) {
    if (params.acquaintance_threshold < 1) {
        throw std::invalid_argument("acquaintance threshold must be >= 1");
    }
    const std::size_t n = g.node_count();
    if (budget > n) {
        throw std::invalid_argument("budget exceeds node count");
    }
    ImmunizationOrder order{Strategy::RandomAcquaintance, {}, rng.seed(), params,
                            OrderStatus::Complete};
    std::vector<NodeId> connected;
    for (NodeId v = 0; v < n; ++v) {
        if (!g.neighbors(v).empty()) connected.push_back(v);
    }
    if (connected.empty()) {
        order.status = OrderStatus::NoCandidates;
        return order;
    }

    std::vector<std::uint32_t> picks(n, 0);
    std::vector<char> immunized(n, 0);
    order.sequence.reserve(budget);
    const std::size_t cap = draw_cap(params, n);
    for (std::size_t draw = 0; order.sequence.size() < budget; ++draw) {
        if (draw >= cap) {
            order.status = OrderStatus::CapReached;
            break;
        }
        const NodeId start = connected[rng.uniform_index(connected.size())];
        const auto nbrs = g.neighbors(start);
        const NodeId friend_node = nbrs[rng.uniform_index(nbrs.size())];
        if (++picks[friend_node] >= params.acquaintance_threshold && !immunized[friend_node]) {
            immunized[friend_node] = 1;
            order.sequence.push_back(friend_node);
        }
    }
    return order;
}

ImmunizationOrder cbf_order(const Graph& g, StrategyRng& rng, std::size_t budget,
                            const StrategyParams& params) {
    const std::size_t n = g.node_count();
    if (budget > n) {
        throw std::invalid_argument("budget exceeds node count");
    }
    if (params.cbf_max_walk < 2) {
        throw std::invalid_argument("CBF walk length cap must be >= 2");
    }
    ImmunizationOrder order{Strategy::CBF, {}, rng.seed(), params, OrderStatus::Complete};
    if (g.edge_count() == 0) {
        order.status = OrderStatus::NoCandidates;
        return order;
    }

    constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
    std::vector<std::uint64_t> visited_in(n, 0);  // walk id that last visited the node
    std::vector<char> immunized(n, 0);
    order.sequence.reserve(budget);
    const std::size_t cap = draw_cap(params, n);

    for (std::uint64_t walk = 1; order.sequence.size() < budget; ++walk) {
        if (walk > cap) {
            order.status = OrderStatus::CapReached;
            break;
        }
        NodeId prev = kNone;
        NodeId cur = static_cast<NodeId>(rng.uniform_index(n));
        visited_in[cur] = walk;
        for (std::size_t steps = 1; steps <= params.cbf_max_walk; ++steps) {
            const auto nbrs = g.neighbors(cur);
            if (nbrs.empty()) break;

            NodeId next;
            if (prev != kNone && nbrs.size() > 1) {
                const auto back = static_cast<std::size_t>(
                    std::lower_bound(nbrs.begin(), nbrs.end(), prev) - nbrs.begin());
                auto pick = static_cast<std::size_t>(rng.uniform_index(nbrs.size() - 1));
                if (pick >= back) ++pick;
                next = nbrs[pick];
            } else {
                next = nbrs[rng.uniform_index(nbrs.size())];
            }

            if (steps >= 2 && visited_in[next] != walk) {
                std::size_t links = 0;
                for (NodeId w : g.neighbors(next)) {
                    if (visited_in[w] == walk && ++links > 1) break;
                }
                if (links == 1) {
                    if (!immunized[next]) {
                        immunized[next] = 1;
                        order.sequence.push_back(next);
                    }
                    break;
                }
            }
            visited_in[next] = walk;
            prev = cur;
            cur = next;
        }
    }
    return order;
}

ImmunizationOrder make_order(Strategy strategy, const Graph& g, const CommunityCover& cover,
                             std::uint64_t seed, std::size_t budget,
                             const StrategyParams& params) {
    StrategyRng rng(seed);
    switch (strategy) {
        case Strategy::HLMI: return hlmi_order(cover, rng, params);
        case Strategy::LHMI: return lhmi_order(cover, rng, params);
        case Strategy::RandomAcquaintance: return random_acquaintance_order(g, rng, budget, params);
        case Strategy::CBF: return cbf_order(g, rng, budget, params);
    }
    throw std::logic_error("unhandled strategy");
}

std::size_t removal_count(double g_fraction, std::size_t node_count) {
    if (!(g_fraction >= 0.0 && g_fraction <= 1.0)) {
        throw std::invalid_argument("immunized fraction must lie in [0, 1]");
    }
    const double k = std::floor(g_fraction * static_cast<double>(node_count) + 1e-7);
    return std::min(node_count, static_cast<std::size_t>(k));
}

NodeMask apply_order(const Graph& g, const ImmunizationOrder& order, double g_fraction) {
    const std::size_t k = std::min(removal_count(g_fraction, g.node_count()), order.sequence.size());
    NodeMask mask(g.node_count());
    for (std::size_t r = 0; r < k; ++r) {
        if (!mask.remove(order.sequence[r])) {
            throw std::invalid_argument("order contains a duplicate node");
        }
    }
    return mask;
}

void write_order_csv(std::ostream& out, const Graph& g, const CommunityCover& cover,
                     const ImmunizationOrder& order) {
    out << "rank,node_label,membership\n";
    for (std::size_t r = 0; r < order.sequence.size(); ++r) {
        const NodeId v = order.sequence[r];
        out << r + 1 << ',' << csv_field(g.label(v)) << ',' << membership_number(cover, v) << '\n';
    }
}

}  // namespace immunet
