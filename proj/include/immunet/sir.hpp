#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "immunet/graph.hpp"

namespace immunet {

/// Denominator for reported S/I/R fractions.
enum class Normalization {
    Active,  // non-immunized nodes; S + I + R = 1
    Total,   // all N nodes
};

Normalization parse_normalization(const std::string& name);
const char* to_string(Normalization n);

struct SirParams {
    double alpha = 0.5;  // per-contact, per-step infection probability
    double beta = 0.5;   // per-step recovery probability
    std::size_t max_steps = 1000;
    /// Pinned first infected node; otherwise uniform over active nodes.
    std::optional<NodeId> initial_infected;
    Normalization normalization = Normalization::Active;

    double lambda() const { return alpha / beta; }

    /// Throws std::invalid_argument unless 0 <= alpha <= 1 and 0 < beta <= 1.
    void validate() const;
};

enum class NodeState : std::uint8_t { Susceptible, Infected, Recovered, Immunized };

struct SirTrace {
    std::vector<double> s, i, r;  // index t = 0..steps
    std::size_t steps = 0;
    std::optional<std::size_t> extinction_step;  // first t with I(t) = 0
    NodeId initial_infected = 0;
    std::size_t ever_infected = 0;
    std::size_t active_nodes = 0;
    std::vector<NodeState> final_state;

    double peak_infected() const;
};

/// Synchronous discrete-time SIR. Each step, every infected node infects each
/// susceptible neighbor independently with probability alpha, then every
/// node that was infected at the start of the step recovers with probability
/// beta. Both updates read the start-of-step state. Immunized nodes never
/// change state and never transmit. Stops at I = 0 or max_steps.
SirTrace sir_run(const Graph& g, const NodeMask& immunized, const SirParams& params,
                 std::uint64_t seed);

struct SirEnsemble {
    SirTrace mean;  // only s/i/r/steps/extinction_step are meaningful
    std::vector<std::uint64_t> seeds;
    std::vector<SirTrace> runs;
};

/// One run per seed, run concurrently on up to `threads` workers (0 means
/// hardware concurrency). The mean is aligned to the longest run; shorter
/// runs are padded with their terminal state.
SirEnsemble sir_ensemble(const Graph& g, const NodeMask& immunized, const SirParams& params,
                         std::span<const std::uint64_t> seeds, unsigned threads = 1);

}  // namespace immunet
