// Command-line front end: immunet <stats|attack|sir|all> --config FILE

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "immunet/csv.hpp"
#include "immunet/experiment.hpp"

namespace {

constexpr int kUsageError = 2;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> g_grid;
    std::optional<unsigned> threads;
};

void apply(const Overrides& o, immunet::ExperimentConfig& c) {
    if (o.seed) {
        c.replicate_seeds = immunet::ExperimentConfig::default_seeds(*o.seed, c.replicate_seeds.size());
        c.sir_seeds = immunet::ExperimentConfig::default_seeds(*o.seed, c.sir_seeds.size());
    }
    if (o.out) c.output_dir = *o.out;
    if (o.g_grid) c.g_grid = immunet::parse_real_list(*o.g_grid);
    if (o.threads) c.threads = *o.threads;
    c.validate();
}

void print_stats(const immunet::StatsReport& r) {
    std::cout << "nodes " << r.nodes << ", edges " << r.edges << ", communities "
              << r.stats.communities << ", overlap nodes " << r.stats.overlap_nodes
              << ", max membership " << r.stats.max_membership << '\n';
}

void print_attack(const immunet::AttackReport& r) {
    for (const auto& curve : r.curves) {
        std::cout << immunet::to_string(curve.strategy) << ':';
        for (std::size_t k = 0; k < curve.g.size(); ++k) {
            if (curve.count[k]) {
                std::cout << ' ' << immunet::format_real(curve.g[k]) << '='
                          << immunet::format_real(curve.mean[k]);
            }
        }
        std::cout << '\n';
    }
}

void print_sir(const immunet::SirReport& r) {
    for (const auto& run : r.runs) {
        const auto& mean = run.ensemble.mean;
        std::cout << "sir " << run.label << ": peak I " << immunet::format_real(mean.peak_infected())
                  << ", final R " << immunet::format_real(mean.r.back()) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overlap-membership immunization experiments"};
    app.require_subcommand(1, 1);

    std::string config_path;
    Overrides overrides;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "Experiment config file")->required();
        sub->add_option("--seed", overrides.seed, "First replicate seed");
        sub->add_option("--out", overrides.out, "Output directory");
        sub->add_option("--g-grid", overrides.g_grid, "Immunized fractions, e.g. 0.1,0.2");
        sub->add_option("--threads", overrides.threads, "Worker threads (0: all cores)");
    };
    auto* stats = app.add_subcommand("stats", "Community cover statistics");
    auto* attack = app.add_subcommand("attack", "lcc attack curves per strategy");
    auto* sir = app.add_subcommand("sir", "SIR ensembles with and without immunization");
    auto* all = app.add_subcommand("all", "stats, attack and sir in one pass");
    for (auto* sub : {stats, attack, sir, all}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        auto config = immunet::load_config(config_path);
        apply(overrides, config);
        const auto data = immunet::load_dataset(config);
        const auto& ingest = data.graph.report();
        if (ingest.self_loops || ingest.duplicate_edges) {
            std::cerr << "warning: dropped " << ingest.self_loops << " self-loops and "
                      << ingest.duplicate_edges << " duplicate edges\n";
        }
        if (data.cover.report.dropped_labels || data.cover.report.discarded_communities) {
            std::cerr << "warning: dropped " << data.cover.report.dropped_labels
                      << " unknown labels, discarded " << data.cover.report.discarded_communities
                      << " empty communities\n";
        }
        if (stats->parsed() || all->parsed()) print_stats(immunet::run_stats(config, data));
        if (attack->parsed() || all->parsed()) print_attack(immunet::run_attack(config, data));
        if (sir->parsed() || all->parsed()) print_sir(immunet::run_sir_compare(config, data));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
