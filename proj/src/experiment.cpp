#include "immunet/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <cmath>

#include "immunet/csv.hpp"
#include "immunet/parallel.hpp"

namespace immunet {

namespace fs = std::filesystem;

namespace {

std::string seed_list(const std::vector<std::uint64_t>& seeds) {
    std::string out;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (k) out += ';';
        out += std::to_string(seeds[k]);
    }
    return out;
}

/// Comment block heading every output file.
void write_header(std::ostream& out, const ExperimentConfig& c, const std::string& kind,
                  const std::vector<std::uint64_t>& seeds) {
    out << "# immunet " << kind << '\n'
        << "# config_hash=" << hex64(c.hash()) << '\n'
        << "# seeds=" << seed_list(seeds) << '\n'
        << "# alpha=" << format_real(c.sir.alpha) << " beta=" << format_real(c.sir.beta)
        << " lambda=" << format_real(c.sir.lambda())
        << " n=" << c.params.acquaintance_threshold
        << " tie_break=" << to_string(c.params.tie_break)
        << " cbf_max_walk=" << c.params.cbf_max_walk
        << " cap_factor=" << c.params.cap_factor
        << " normalization=" << to_string(c.sir.normalization) << '\n';
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " +
                                 ec.message());
    }
}

std::size_t max_budget(const ExperimentConfig& c, std::size_t n) {
    return removal_count(c.g_grid.back(), n);
}

}  // namespace

Dataset load_dataset(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (config.graph_path.empty()) throw std::invalid_argument("config has no data.graph path");
    if (config.community_path.empty()) {
        throw std::invalid_argument("config has no data.communities path");
    }
    Dataset data;
    data.graph = load_edge_list(config.graph_path.string());
    data.cover = load_community_file(config.community_path.string(), data.graph, config.label_policy);
    data.load_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return data;
}

StatsReport run_stats(const ExperimentConfig& config, const Dataset& data) {
    ensure_dir(config.output_dir);
    StatsReport report;
    report.nodes = data.graph.node_count();
    report.edges = data.graph.edge_count();
    report.stats = overlap_statistics(data.graph, data.cover);
    const auto& st = report.stats;

    const std::pair<const char*, const CumulativeDistribution*> dists[] = {
        {"overlap_degree", &st.overlap_degree},
        {"community_size", &st.community_size},
        {"membership", &st.membership},
        {"overlap_size", &st.overlap_size},
    };
    for (const auto& [metric, dist] : dists) {
        const fs::path path = config.output_dir / (std::string("stats_") + metric + ".csv");
        auto out = open_output(path);
        write_header(out, config, std::string("stats ") + metric, {});
        if (dist->empty()) out << "# empty distribution\n";
        out << "metric,value,p\n";
        write_distribution_csv(out, metric, *dist);
        report.files.push_back(path);
    }

    const fs::path summary = config.output_dir / "summary.txt";
    auto out = open_output(summary);
    write_header(out, config, "summary", {});
    const auto& ingest = data.graph.report();
    out << "nodes = " << report.nodes << '\n'
        << "edges = " << report.edges << '\n'
        << "self_loops_dropped = " << ingest.self_loops << '\n'
        << "duplicate_edges_dropped = " << ingest.duplicate_edges << '\n'
        << "communities = " << st.communities << '\n'
        << "community_nodes = " << st.community_nodes << '\n'
        << "overlap_nodes = " << st.overlap_nodes << '\n'
        << "max_membership = " << st.max_membership << '\n'
        << "dropped_labels = " << data.cover.report.dropped_labels << '\n'
        << "discarded_communities = " << data.cover.report.discarded_communities << '\n'
        << "repeated_members = " << data.cover.report.repeated_members << '\n';
    for (std::size_t m = 1; m < st.class_sizes.size(); ++m) {
        out << "class_size_m" << m << " = " << st.class_sizes[m] << '\n';
    }
    report.files.push_back(summary);
    return report;
}

std::optional<std::size_t> AttackCurve::index_of(double g_value) const {
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (std::abs(g[k] - g_value) < 1e-9) return k;
    }
    return std::nullopt;
}

const AttackCurve& AttackReport::curve(Strategy s) const {
    for (const auto& c : curves) {
        if (c.strategy == s) return c;
    }
    throw std::out_of_range(std::string("no attack curve for ") + to_string(s));
}

AttackReport run_attack(const ExperimentConfig& config, const Dataset& data) {
    config.validate();
    ensure_dir(config.output_dir);
    const Graph& g = data.graph;
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("attack on an empty graph");
    const std::size_t budget = max_budget(config, n);

    std::vector<std::size_t> cuts;
    for (double gv : config.g_grid) cuts.push_back(removal_count(gv, n));

    const std::size_t seeds = config.replicate_seeds.size();
    const std::size_t cells = config.strategies.size() * seeds;
    std::vector<AttackReplicate> results(cells);
    std::vector<ImmunizationOrder> orders(config.export_orders ? cells : 0);

    parallel_for(cells, config.threads, [&](std::size_t cell) {
        const Strategy strategy = config.strategies[cell / seeds];
        const std::uint64_t seed = config.replicate_seeds[cell % seeds];
        auto order = make_order(strategy, g, data.cover, seed, budget, config.params);

        AttackReplicate rep;
        rep.seed = seed;
        rep.status = order.status;
        rep.order_length = order.sequence.size();
        std::vector<std::size_t> reachable;
        for (std::size_t cut : cuts) {
            if (cut > order.sequence.size()) break;
            reachable.push_back(cut);
        }
        if (reachable.size() < cuts.size()) {
            rep.halt_g = static_cast<double>(order.sequence.size()) / static_cast<double>(n);
        }
        for (std::size_t lcc : lcc_profile(g, order.sequence, reachable)) {
            rep.lcc_fraction.push_back(static_cast<double>(lcc) / static_cast<double>(n));
        }
        results[cell] = std::move(rep);
        if (config.export_orders) orders[cell] = std::move(order);
    });

    AttackReport report;
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
        AttackCurve curve;
        curve.strategy = config.strategies[s];
        curve.g = config.g_grid;
        const std::size_t points = config.g_grid.size();
        curve.mean.assign(points, 0.0);
        curve.min.assign(points, std::numeric_limits<double>::infinity());
        curve.max.assign(points, -std::numeric_limits<double>::infinity());
        curve.count.assign(points, 0);
        for (std::size_t r = 0; r < seeds; ++r) {
            auto& rep = results[s * seeds + r];
            for (std::size_t k = 0; k < rep.lcc_fraction.size(); ++k) {
                const double v = rep.lcc_fraction[k];
                curve.mean[k] += v;
                curve.min[k] = std::min(curve.min[k], v);
                curve.max[k] = std::max(curve.max[k], v);
                ++curve.count[k];
            }
            curve.replicates.push_back(std::move(rep));
        }
        for (std::size_t k = 0; k < points; ++k) {
            if (curve.count[k]) curve.mean[k] /= static_cast<double>(curve.count[k]);
        }
        report.curves.push_back(std::move(curve));
    }

    const auto& seeds_list = config.replicate_seeds;
    {
        const fs::path path = config.output_dir / "attack.csv";
        auto out = open_output(path);
        write_header(out, config, "attack", seeds_list);
        out << "strategy,seed,g,lcc_fraction\n";
        for (const auto& curve : report.curves) {
            for (const auto& rep : curve.replicates) {
                for (std::size_t k = 0; k < rep.lcc_fraction.size(); ++k) {
                    out << to_string(curve.strategy) << ',' << rep.seed << ','
                        << format_real(curve.g[k]) << ',' << format_real(rep.lcc_fraction[k]) << '\n';
                }
            }
        }
        report.files.push_back(path);
    }
    {
        const fs::path path = config.output_dir / "attack_mean.csv";
        auto out = open_output(path);
        write_header(out, config, "attack mean", seeds_list);
        out << "strategy,g,mean,min,max,replicates\n";
        for (const auto& curve : report.curves) {
            for (std::size_t k = 0; k < curve.g.size(); ++k) {
                if (!curve.count[k]) continue;
                out << to_string(curve.strategy) << ',' << format_real(curve.g[k]) << ','
                    << format_real(curve.mean[k]) << ',' << format_real(curve.min[k]) << ','
                    << format_real(curve.max[k]) << ',' << curve.count[k] << '\n';
            }
        }
        report.files.push_back(path);
    }
    {
        const fs::path path = config.output_dir / "attack_halt.csv";
        auto out = open_output(path);
        write_header(out, config, "attack halt", seeds_list);
        out << "strategy,seed,order_length,halt_g,status\n";
        for (const auto& curve : report.curves) {
            for (const auto& rep : curve.replicates) {
                out << to_string(curve.strategy) << ',' << rep.seed << ',' << rep.order_length << ','
                    << (rep.halt_g ? format_real(*rep.halt_g) : std::string()) << ','
                    << to_string(rep.status) << '\n';
            }
        }
        report.files.push_back(path);
    }
    if (config.export_orders) {
        for (std::size_t cell = 0; cell < cells; ++cell) {
            const auto& order = orders[cell];
            const fs::path path = config.output_dir / ("order_" + std::string(to_string(order.strategy)) +
                                                       "_" + std::to_string(order.seed) + ".csv");
            auto out = open_output(path);
            write_header(out, config, "order", {order.seed});
            write_order_csv(out, g, data.cover, order);
            report.files.push_back(path);
        }
    }
    return report;
}

const SirComparison& SirReport::run(const std::string& label) const {
    for (const auto& r : runs) {
        if (r.label == label) return r;
    }
    throw std::out_of_range("no SIR run labelled '" + label + "'");
}

SirReport run_sir_compare(const ExperimentConfig& config, const Dataset& data) {
    config.validate();
    ensure_dir(config.output_dir);
    const Graph& g = data.graph;

    SirParams params = config.sir;
    if (config.sir_initial) {
        const auto& labels = g.labels();
        const auto it = std::find(labels.begin(), labels.end(), *config.sir_initial);
        if (it == labels.end()) {
            throw std::invalid_argument("sir.initial names unknown node '" + *config.sir_initial + "'");
        }
        params.initial_infected = static_cast<NodeId>(it - labels.begin());
    }

    struct Arm {
        std::string label;
        double g;
        NodeMask mask;
    };
    std::vector<Arm> arms;
    arms.push_back({"none", 0.0, NodeMask(g.node_count())});
    const std::uint64_t order_seed = config.order_seed.value_or(config.replicate_seeds.front());
    for (Strategy s : config.sir_strategies) {
        const auto order = make_order(s, g, data.cover, order_seed,
                                      removal_count(config.sir_g, g.node_count()), config.params);
        arms.push_back({to_string(s), config.sir_g, apply_order(g, order, config.sir_g)});
    }

    SirReport report;
    for (auto& arm : arms) {
        SirComparison cmp;
        cmp.label = arm.label;
        cmp.g = arm.g;
        cmp.immunized = arm.mask.removed_count();
        cmp.ensemble = sir_ensemble(g, arm.mask, params, config.sir_seeds, config.threads);

        const std::string kind = "sir " + arm.label + " g=" + format_real(arm.g) +
                                 " immunized=" + std::to_string(cmp.immunized) +
                                 " order_seed=" + std::to_string(order_seed);
        {
            const fs::path path = config.output_dir / ("sir_" + arm.label + ".csv");
            auto out = open_output(path);
            write_header(out, config, kind, config.sir_seeds);
            out << "seed,t,S,I,R\n";
            const auto& ens = cmp.ensemble;
            for (std::size_t k = 0; k < ens.runs.size(); ++k) {
                const auto& run = ens.runs[k];
                for (std::size_t t = 0; t < run.s.size(); ++t) {
                    out << ens.seeds[k] << ',' << t << ',' << format_real(run.s[t]) << ','
                        << format_real(run.i[t]) << ',' << format_real(run.r[t]) << '\n';
                }
            }
            report.files.push_back(path);
        }
        {
            const fs::path path = config.output_dir / ("sir_" + arm.label + "_mean.csv");
            auto out = open_output(path);
            write_header(out, config, kind + " mean", config.sir_seeds);
            out << "t,S,I,R\n";
            const auto& mean = cmp.ensemble.mean;
            for (std::size_t t = 0; t < mean.s.size(); ++t) {
                out << t << ',' << format_real(mean.s[t]) << ',' << format_real(mean.i[t]) << ','
                    << format_real(mean.r[t]) << '\n';
            }
            report.files.push_back(path);
        }
        report.runs.push_back(std::move(cmp));
    }
    return report;
}

}  // namespace immunet
