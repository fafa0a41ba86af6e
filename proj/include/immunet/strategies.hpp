#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "immunet/community.hpp"
#include "immunet/graph.hpp"
#include "immunet/rng.hpp"

namespace immunet {

enum class Strategy { HLMI, LHMI, RandomAcquaintance, CBF };

/// Config/CSV name: "hlmi", "lhmi", "random_acquaintance", "cbf".
const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

bool is_membership_strategy(Strategy s) noexcept;

/// Order inside a block of equal membership number.
enum class TieBreak {
    Shuffle,  // seeded uniform permutation
    Stable,   // ascending node index
};

TieBreak parse_tie_break(const std::string& name);
const char* to_string(TieBreak t);

struct StrategyParams {
    TieBreak tie_break = TieBreak::Shuffle;
    /// Random Acquaintance: selections needed before a node is immunized.
    std::uint32_t acquaintance_threshold = 1;
    /// CBF: steps after which a walk is abandoned.
    std::size_t cbf_max_walk = 100;
    /// Draw cap as a multiple of N (RA: neighbor draws, CBF: walks started).
    std::size_t cap_factor = 1000;
};

enum class OrderStatus {
    Complete,     // budget filled, or every community node ordered
    NoCandidates, // no communities / no edges; sequence empty
    CapReached,   // stochastic search gave up early; partial sequence
};

const char* to_string(OrderStatus s);

struct ImmunizationOrder {
    Strategy strategy = Strategy::HLMI;
    std::vector<NodeId> sequence;
    std::uint64_t seed = 0;
    StrategyParams params;
    OrderStatus status = OrderStatus::Complete;
};

/// Community nodes by descending membership number.
ImmunizationOrder hlmi_order(const CommunityCover& cover, StrategyRng& rng,
                             const StrategyParams& params = {});

/// Community nodes by ascending membership number.
ImmunizationOrder lhmi_order(const CommunityCover& cover, StrategyRng& rng,
                             const StrategyParams& params = {});

/// Pick a random non-isolated node, then one of its neighbors at random; a
/// neighbor picked `acquaintance_threshold` times is immunized. Counters
/// persist for the whole run.
ImmunizationOrder random_acquaintance_order(const Graph& g, StrategyRng& rng, std::size_t budget,
                                            const StrategyParams& params = {});

/// Community Bridge Finder random walk.
///
/// A walk starts at a uniform random node and steps to a uniform random
/// neighbor, never straight back to its predecessor unless that is the only
/// neighbor. From the second step on, a node not yet on the walk whose only
/// link into the walk's visited set is its predecessor is immunized (if new)
/// and a fresh walk starts. Walks that dead-end or exceed `cbf_max_walk`
/// steps restart without immunizing.
ImmunizationOrder cbf_order(const Graph& g, StrategyRng& rng, std::size_t budget,
                            const StrategyParams& params = {});

/// Dispatches on `strategy`; `budget` only applies to the stochastic ones.
ImmunizationOrder make_order(Strategy strategy, const Graph& g, const CommunityCover& cover,
                             std::uint64_t seed, std::size_t budget,
                             const StrategyParams& params = {});

/// floor(g_fraction * N), guarding against the product landing a hair
/// below an integer.
std::size_t removal_count(double g_fraction, std::size_t node_count);

/// Mask removing the first min(floor(g_fraction * N), |sequence|) nodes.
NodeMask apply_order(const Graph& g, const ImmunizationOrder& order, double g_fraction);

/// "rank,node_label,membership" rows with a header; rank starts at 1.
void write_order_csv(std::ostream& out, const Graph& g, const CommunityCover& cover,
                     const ImmunizationOrder& order);

}  // namespace immunet
