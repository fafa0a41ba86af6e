#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "immunet/community.hpp"
#include "immunet/graph.hpp"
#include "immunet/sir.hpp"
#include "immunet/strategies.hpp"

namespace immunet {

/// Everything an experiment run needs, loaded from an INI-style file:
///
///     [data]      graph, communities, label_policy
///     [output]    dir, threads, export_orders
///     [attack]    strategies, g_grid, seed | seeds, replicates, tie_break,
///                 ra_threshold, cbf_max_walk, cap_factor
///     [sir]       alpha, beta | lambda, max_steps, normalization, runs,
///                 seed | seeds, strategies, g, order_seed, initial
///
/// Lists are comma separated and may be wrapped in [ ]. Relative paths are
/// resolved against the config file's directory.
struct ExperimentConfig {
    std::filesystem::path graph_path;
    std::filesystem::path community_path;
    LabelPolicy label_policy = LabelPolicy::Strict;

    std::vector<Strategy> strategies{Strategy::HLMI, Strategy::LHMI,
                                     Strategy::RandomAcquaintance, Strategy::CBF};
    StrategyParams params;
    std::vector<double> g_grid{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
    std::vector<std::uint64_t> replicate_seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    SirParams sir;
    std::vector<std::uint64_t> sir_seeds = default_seeds(1, 20);
    std::vector<Strategy> sir_strategies{Strategy::LHMI};
    double sir_g = 0.40;
    /// Seed of the immunization order used for SIR comparisons; defaults to
    /// the first replicate seed.
    std::optional<std::uint64_t> order_seed;
    /// Label of a pinned first infected node.
    std::optional<std::string> sir_initial;

    std::filesystem::path output_dir = "out";
    unsigned threads = 1;
    bool export_orders = false;

    static std::vector<std::uint64_t> default_seeds(std::uint64_t first, std::size_t count);

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;

    /// Canonical "key = value" listing of every result-affecting field.
    /// Thread count and output directory are excluded, so the hash below is
    /// stable across hosts.
    std::string echo() const;
    std::uint64_t hash() const;
};

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Comma list of reals, optionally bracketed: "0.1, 0.2" or "[0.1,0.2]".
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

struct Dataset {
    Graph graph;
    CommunityCover cover;
    double load_seconds = 0.0;
};

Dataset load_dataset(const ExperimentConfig& config);

struct StatsReport {
    OverlapStatistics stats;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::vector<std::filesystem::path> files;
};

/// Writes stats_{overlap_degree,community_size,membership,overlap_size}.csv
/// and summary.txt.
StatsReport run_stats(const ExperimentConfig& config, const Dataset& data);

struct AttackReplicate {
    std::uint64_t seed = 0;
    /// lcc'/N per g_grid entry; shorter than g_grid when the order ran out.
    std::vector<double> lcc_fraction;
    /// Fraction at which the order was exhausted, if it ran out before
    /// max(g_grid).
    std::optional<double> halt_g;
    OrderStatus status = OrderStatus::Complete;
    std::size_t order_length = 0;
};

struct AttackCurve {
    Strategy strategy = Strategy::HLMI;
    std::vector<double> g;
    std::vector<AttackReplicate> replicates;
    /// Aggregates per g index over the replicates that reached it.
    std::vector<double> mean, min, max;
    std::vector<std::size_t> count;

    /// Index of `g_value` in `g`, if sampled.
    std::optional<std::size_t> index_of(double g_value) const;
};

struct AttackReport {
    std::vector<AttackCurve> curves;
    std::vector<std::filesystem::path> files;

    const AttackCurve& curve(Strategy s) const;
};

/// One order per (strategy, seed), evaluated at every g via lcc_profile.
/// Writes attack.csv, attack_mean.csv and attack_halt.csv.
AttackReport run_attack(const ExperimentConfig& config, const Dataset& data);

struct SirComparison {
    std::string label;  // "none" or a strategy name
    double g = 0.0;
    std::size_t immunized = 0;
    SirEnsemble ensemble;
};

struct SirReport {
    std::vector<SirComparison> runs;
    std::vector<std::filesystem::path> files;

    const SirComparison& run(const std::string& label) const;
};

/// Ensembles for no immunization and for each configured strategy at
/// config.sir_g. Writes sir_<label>.csv and sir_<label>_mean.csv.
SirReport run_sir_compare(const ExperimentConfig& config, const Dataset& data);

}  // namespace immunet
