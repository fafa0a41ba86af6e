#include "immunet/sir.hpp"

#include <algorithm>
#include <stdexcept>

#include "immunet/parallel.hpp"
#include "immunet/rng.hpp"

namespace immunet {

Normalization parse_normalization(const std::string& name) {
    if (name == "active") return Normalization::Active;
    if (name == "total") return Normalization::Total;
    throw std::invalid_argument("unknown normalization '" + name + "' (expected active or total)");
}

const char* to_string(Normalization n) { return n == Normalization::Active ? "active" : "total"; }

void SirParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in (0, 1]");
    }
}

double SirTrace::peak_infected() const {
    return i.empty() ? 0.0 : *std::max_element(i.begin(), i.end());
}

SirTrace sir_run(const Graph& g, const NodeMask& immunized, const SirParams& params,
                 std::uint64_t seed) {
    params.validate();
    const std::size_t n = g.node_count();
    if (immunized.size() != n) {
        throw std::invalid_argument("mask size does not match graph node count");
    }
    const std::size_t active = n - immunized.removed_count();
    if (active == 0) {
        throw std::invalid_argument("SIR needs at least one non-immunized node");
    }

    StrategyRng rng(seed);
    SirTrace trace;
    trace.active_nodes = active;
    trace.final_state.assign(n, NodeState::Susceptible);
    for (NodeId v = 0; v < n; ++v) {
        if (immunized.removed(v)) trace.final_state[v] = NodeState::Immunized;
    }
    auto& state = trace.final_state;

    NodeId first;
    if (params.initial_infected) {
        first = *params.initial_infected;
        if (first >= n) {
            throw std::invalid_argument("initial infected node is not in the graph");
        }
        if (immunized.removed(first)) {
            throw std::invalid_argument("initial infected node is immunized");
        }
    } else {
        // k-th active node, k uniform.
        auto k = rng.uniform_index(active);
        first = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (state[v] != NodeState::Immunized && k-- == 0) {
                first = v;
                break;
            }
        }
    }
    trace.initial_infected = first;
    state[first] = NodeState::Infected;
    trace.ever_infected = 1;

    const double denom =
        static_cast<double>(params.normalization == Normalization::Active ? active : n);
    std::size_t susceptible = active - 1;
    std::size_t recovered = 0;
    std::vector<NodeId> infected{first};
    std::vector<NodeId> newly;
    std::vector<NodeId> still;

    auto record = [&] {
        trace.s.push_back(static_cast<double>(susceptible) / denom);
        trace.i.push_back(static_cast<double>(infected.size()) / denom);
        trace.r.push_back(static_cast<double>(recovered) / denom);
    };
    record();

    std::size_t t = 0;
    while (!infected.empty() && t < params.max_steps) {
        ++t;
        newly.clear();
        // Newly infected nodes are flagged immediately but only join
        // `infected` after this step, so they neither transmit nor recover
        // until t + 1.
        for (NodeId v : infected) {
            for (NodeId w : g.neighbors(v)) {
                if (state[w] == NodeState::Susceptible && rng.bernoulli(params.alpha)) {
                    state[w] = NodeState::Infected;
                    newly.push_back(w);
                }
            }
        }
        still.clear();
        for (NodeId v : infected) {
            if (rng.bernoulli(params.beta)) {
                state[v] = NodeState::Recovered;
                ++recovered;
            } else {
                still.push_back(v);
            }
        }
        susceptible -= newly.size();
        trace.ever_infected += newly.size();
        still.insert(still.end(), newly.begin(), newly.end());
        std::sort(still.begin(), still.end());
        infected.swap(still);
        record();
    }
    trace.steps = t;
    for (std::size_t k = 0; k < trace.i.size(); ++k) {
        if (trace.i[k] == 0.0) {
            trace.extinction_step = k;
            break;
        }
    }
    return trace;
}

SirEnsemble sir_ensemble(const Graph& g, const NodeMask& immunized, const SirParams& params,
                         std::span<const std::uint64_t> seeds, unsigned threads) {
    if (seeds.empty()) {
        throw std::invalid_argument("SIR ensemble needs at least one seed");
    }
    SirEnsemble ens;
    ens.seeds.assign(seeds.begin(), seeds.end());
    ens.runs.resize(seeds.size());
    parallel_for(seeds.size(), threads,
                 [&](std::size_t k) { ens.runs[k] = sir_run(g, immunized, params, seeds[k]); });

    std::size_t horizon = 0;
    for (const auto& run : ens.runs) horizon = std::max(horizon, run.s.size());
    auto& mean = ens.mean;
    mean.s.assign(horizon, 0.0);
    mean.i.assign(horizon, 0.0);
    mean.r.assign(horizon, 0.0);
    for (const auto& run : ens.runs) {
        for (std::size_t t = 0; t < horizon; ++t) {
            const std::size_t src = std::min(t, run.s.size() - 1);
            mean.s[t] += run.s[src];
            mean.i[t] += run.i[src];
            mean.r[t] += run.r[src];
        }
    }
    const auto count = static_cast<double>(ens.runs.size());
    for (std::size_t t = 0; t < horizon; ++t) {
        mean.s[t] /= count;
        mean.i[t] /= count;
        mean.r[t] /= count;
    }
    mean.steps = horizon - 1;
    for (std::size_t t = 0; t < horizon; ++t) {
        if (mean.i[t] == 0.0) {
            mean.extinction_step = t;
            break;
        }
    }
    mean.active_nodes = ens.runs.front().active_nodes;
    return ens;
}

}  // namespace immunet
