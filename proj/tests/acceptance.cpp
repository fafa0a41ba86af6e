// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion.
//
//   immunet_acceptance --group fixtures   criteria that run on built-in fixtures
//   immunet_acceptance --group pgp        criteria that need the PGP dataset
//
// The PGP group reads $IMMUNET_PGP_DIR/pgp.edges and
// $IMMUNET_PGP_DIR/pgp.communities; without them every PGP criterion is
// reported as SKIP and the process exits with 77.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "immunet/csv.hpp"
#include "immunet/experiment.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace immunet;
using namespace immunet::testing;
namespace fs = std::filesystem;

namespace {

constexpr int kSkipped = 77;

// Criterion thresholds.
constexpr std::size_t kPgpNodes = 81036;
constexpr std::size_t kPgpEdges = 190143;
constexpr std::size_t kPgpGroups = 17824;
constexpr double kLoadBudgetSeconds = 10.0;
constexpr double kAttackBudgetSeconds = 15 * 60.0;
constexpr double kSirBudgetSeconds = 10 * 60.0;
constexpr std::size_t kAttackReplicates = 10;
constexpr std::size_t kSirSeeds = 20;
constexpr double kSirImmunized = 0.40;
constexpr std::size_t kAllowedViolations = 2;
constexpr int kOracleTrials = 1000;
constexpr std::size_t kOracleMaxNodes = 50;
constexpr double kConservationTolerance = 1e-9;

const std::vector<double> kDominanceGrid{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Checklist {
public:
    void record(const std::string& name, const Outcome& o) {
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name;
        if (!o.detail.empty()) std::cout << ": " << o.detail;
        std::cout << std::endl;
        failed_ += !o.pass;
    }

    void run(const std::string& name, const std::function<Outcome()>& body) {
        try {
            record(name, body());
        } catch (const std::exception& e) {
            record(name, {false, std::string("exception: ") + e.what()});
        }
    }

    void skip(const std::string& name, const std::string& why) {
        std::cout << "[SKIP] " << name << ": " << why << std::endl;
        ++skipped_;
    }

    int exit_code() const { return failed_ ? 1 : (skipped_ ? kSkipped : 0); }

private:
    int failed_ = 0;
    int skipped_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Failures collected by the invariant checks; empty means pass.
using Failures = std::vector<std::string>;

Outcome from_failures(const Failures& f, const std::string& ok_detail) {
    if (f.empty()) return {true, ok_detail};
    std::string detail = std::to_string(f.size()) + " failure(s); first: " + f.front();
    return {false, detail};
}

void check_membership_orders(const Graph& g, const CommunityCover& cover,
                             const std::vector<std::uint64_t>& seeds, Failures& out) {
    const auto& m = cover.membership();
    for (std::uint64_t seed : seeds) {
        const auto h = make_order(Strategy::HLMI, g, cover, seed, 0);
        const auto l = make_order(Strategy::LHMI, g, cover, seed, 0);
        for (std::size_t k = 1; k < h.sequence.size(); ++k) {
            if (m[h.sequence[k - 1]] < m[h.sequence[k]]) {
                out.push_back("HLMI membership increases at rank " + std::to_string(k));
                break;
            }
        }
        for (std::size_t k = 1; k < l.sequence.size(); ++k) {
            if (m[l.sequence[k - 1]] > m[l.sequence[k]]) {
                out.push_back("LHMI membership decreases at rank " + std::to_string(k));
                break;
            }
        }
        if (h.sequence.size() != cover.community_node_count() ||
            l.sequence.size() != cover.community_node_count()) {
            out.push_back("membership order does not cover exactly the community nodes");
        }
    }
}

void check_cover_identities(const CommunityCover& cover, Failures& out) {
    std::size_t size_sum = 0;
    for (const auto& c : cover.communities()) size_sum += c.size();
    std::size_t membership_sum = 0;
    for (auto m : cover.membership()) membership_sum += m;
    if (size_sum != membership_sum) {
        out.push_back("sum |C_k| = " + std::to_string(size_sum) + " but sum m(i) = " +
                      std::to_string(membership_sum));
    }
    std::vector<char> seen(cover.node_count(), 0);
    std::size_t class_total = 0;
    const auto classes = cover.membership_classes();
    for (std::size_t mm = 1; mm < classes.size(); ++mm) {
        for (NodeId v : classes[mm]) {
            if (seen[v]++) out.push_back("node " + std::to_string(v) + " in two membership classes");
        }
        class_total += classes[mm].size();
    }
    if (class_total != cover.community_node_count()) {
        out.push_back("membership classes do not cover the community nodes");
    }
}

void check_sir(const Graph& g, const NodeMask& mask, const SirParams& params,
               const std::vector<std::uint64_t>& seeds, Failures& out) {
    for (std::uint64_t seed : seeds) {
        const auto t = sir_run(g, mask, params, seed);
        for (std::size_t k = 0; k < t.s.size(); ++k) {
            if (std::abs(t.s[k] + t.i[k] + t.r[k] - 1.0) > kConservationTolerance) {
                out.push_back("S+I+R != 1 at t=" + std::to_string(k) + " seed " + std::to_string(seed));
                break;
            }
        }
        const auto bound = component_size_of(g, mask, t.initial_infected);
        if (t.ever_infected > bound) {
            out.push_back("ever infected " + std::to_string(t.ever_infected) +
                          " exceeds seed component " + std::to_string(bound));
        }
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (mask.removed(v) != (t.final_state[v] == NodeState::Immunized)) {
                out.push_back("immunized node changed state");
                break;
            }
        }
    }
}

/// Runs stats + attack + sir twice into sibling directories and compares
/// every output file byte for byte.
void check_determinism(ExperimentConfig config, const Dataset& data, const fs::path& root,
                       Failures& out) {
    std::vector<fs::path> dirs{root / "run_a", root / "run_b"};
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        fs::remove_all(dirs[k]);
        config.output_dir = dirs[k];
        config.threads = k == 0 ? 1 : 4;
        run_stats(config, data);
        run_attack(config, data);
        run_sir_compare(config, data);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
        const auto twin = dirs[1] / entry.path().filename();
        if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) {
            out.push_back(entry.path().filename().string() + " differs between invocations");
        }
        ++compared;
    }
    if (compared == 0) out.push_back("no output files produced");
}

// ---------------------------------------------------------------------------
// Fixture criteria

Outcome oracle_equivalence() {
    StrategyRng rng(0xACCE);
    int mismatches = 0;
    for (int trial = 0; trial < kOracleTrials; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(kOracleMaxNodes);
        const auto g = random_graph(rng, n, rng.uniform_real() * 0.15);
        const auto mask = random_mask(rng, n, rng.uniform_real() * 0.6);
        if (lcc_size(g, mask) != lcc_by_label_propagation(g, mask)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(kOracleTrials) + " instances, " +
                                 std::to_string(mismatches) + " mismatches"};
}

Outcome worked_example_fixtures() {
    Failures f;
    const auto cliques = two_cliques();
    StrategyRng rng(1);
    const auto h = hlmi_order(cliques.cover, rng);
    const auto l = lhmi_order(cliques.cover, rng);
    const double one = 1.0 / 9.0;
    const auto full = lcc_size(cliques.graph, NodeMask(9));
    const auto after_h = lcc_size(cliques.graph, apply_order(cliques.graph, h, one));
    const auto after_l = lcc_size(cliques.graph, apply_order(cliques.graph, l, one));
    if (full != 9 || after_h != 4) f.push_back("HLMI: lcc " + std::to_string(full) + " -> " + std::to_string(after_h));
    if (after_l != 8) f.push_back("LHMI: lcc -> " + std::to_string(after_l));

    const auto k5 = complete_graph(5);
    SirParams p;
    p.alpha = 1.0;
    p.beta = 1.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto t = sir_run(k5, NodeMask(5), p, seed);
        if (t.s.size() != 3 || t.s[1] != 0.0 || t.r[2] != 1.0) f.push_back("K5 trace not recovered by step 2");
    }

    // Exhaustive 2-step walks on a 5-leaf star: w0 -> w1 -> w2, no immediate
    // backtrack unless forced, candidate = new node with one link into the walk.
    const auto star = star_graph(5);
    std::size_t completed = 0, hub = 0;
    for (NodeId w0 = 0; w0 < 6; ++w0) {
        for (NodeId w1 : star.neighbors(w0)) {
            const auto n1 = star.neighbors(w1);
            for (NodeId w2 : n1) {
                if (w2 == w0 && n1.size() > 1) continue;
                if (w2 == w0 || w2 == w1) continue;
                if (int(star.has_edge(w2, w0)) + int(star.has_edge(w2, w1)) != 1) continue;
                ++completed;
                hub += (w2 == 0);
            }
        }
    }
    if (completed == 0 || hub != 0) f.push_back("star enumeration immunized the hub");
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        StrategyRng r(seed);
        const auto order = cbf_order(star, r, 5);
        for (NodeId v : order.sequence) {
            if (v == 0) f.push_back("cbf_order immunized the hub (seed " + std::to_string(seed) + ")");
        }
    }
    return from_failures(f, "two-clique lcc 9->4 (HLMI) and 9->8 (LHMI); K5 recovered at t=2; " +
                                std::to_string(completed) + " star walks, hub never immunized");
}

Outcome fixture_invariants(const fs::path& fixture_dir, const fs::path& scratch) {
    Failures f;
    auto config = load_config(fixture_dir / "toy.ini");
    const auto data = load_dataset(config);
    check_membership_orders(data.graph, data.cover, config.replicate_seeds, f);
    check_cover_identities(data.cover, f);

    SirParams p = config.sir;
    check_sir(data.graph, NodeMask(data.graph.node_count()), p, config.sir_seeds, f);
    const auto lhmi = make_order(Strategy::LHMI, data.graph, data.cover, 1, 0);
    check_sir(data.graph, apply_order(data.graph, lhmi, 0.3), p, config.sir_seeds, f);

    // Larger planted network, so the SIR checks see real outbreaks.
    const auto planted = planted_network(5, 12, 20, 4, 30);
    const auto g = graph_from_text(planted.edges);
    std::istringstream in(planted.communities);
    const auto cover = parse_community_file(in, g);
    check_membership_orders(g, cover, {1, 2, 3}, f);
    check_cover_identities(cover, f);
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 50; ++s) seeds.push_back(s);
    check_sir(g, NodeMask(g.node_count()), p, seeds, f);
    const auto order = make_order(Strategy::CBF, g, cover, 4, g.node_count() / 4);
    check_sir(g, apply_order(g, order, 0.25), p, seeds, f);

    check_determinism(config, data, scratch / "determinism_toy", f);
    return from_failures(f, "orders, cover identities, SIR conservation/confinement, byte determinism");
}

// ---------------------------------------------------------------------------
// PGP criteria

struct PgpInputs {
    fs::path edges;
    fs::path communities;
};

std::optional<PgpInputs> find_pgp() {
    const char* dir = std::getenv("IMMUNET_PGP_DIR");
    if (!dir) return std::nullopt;
    PgpInputs in{fs::path(dir) / "pgp.edges", fs::path(dir) / "pgp.communities"};
    if (!fs::exists(in.edges) || !fs::exists(in.communities)) return std::nullopt;
    return in;
}

ExperimentConfig pgp_config(const PgpInputs& in, const fs::path& out, unsigned threads) {
    ExperimentConfig c;
    c.graph_path = in.edges;
    c.community_path = in.communities;
    c.g_grid = kDominanceGrid;
    c.replicate_seeds = ExperimentConfig::default_seeds(1, kAttackReplicates);
    c.sir_seeds = ExperimentConfig::default_seeds(1, kSirSeeds);
    c.sir.alpha = 0.5;
    c.sir.beta = 0.5;
    c.sir_strategies = {Strategy::LHMI};
    c.sir_g = kSirImmunized;
    c.output_dir = out;
    c.threads = threads;
    c.validate();
    return c;
}

void run_pgp(Checklist& list, const fs::path& scratch, unsigned threads) {
    const std::vector<std::string> names{
        "dataset fidelity (PGP counts, load < 10 s)",
        "cumulative distribution shape (PGP)",
        "attack-curve dominance of LHMI (PGP, 10 seeds, g 0.05..0.40)",
        "SIR arrest under LHMI at g = 0.40 (PGP, 20 seeds, lambda = 1)",
        "invariant suite (PGP)",
    };
    const auto inputs = find_pgp();
    if (!inputs) {
        for (const auto& n : names) {
            list.skip(n, "dataset not found; set IMMUNET_PGP_DIR to a directory holding "
                         "pgp.edges and pgp.communities");
        }
        return;
    }
    auto config = pgp_config(*inputs, scratch / "pgp", threads);
    Dataset data;
    list.run(names[0], [&] {
        data = load_dataset(config);
        const auto& g = data.graph;
        const bool counts = g.node_count() == kPgpNodes && g.edge_count() == kPgpEdges &&
                            data.cover.community_count() == kPgpGroups;
        std::ostringstream d;
        d << g.node_count() << " nodes, " << g.edge_count() << " edges, "
          << data.cover.community_count() << " groups, loaded in " << format_real(data.load_seconds)
          << " s (self-loops dropped " << g.report().self_loops << ", duplicates "
          << g.report().duplicate_edges << ")";
        return Outcome{counts && data.load_seconds < kLoadBudgetSeconds, d.str()};
    });
    if (data.graph.node_count() == 0) {
        for (std::size_t k = 1; k < names.size(); ++k) list.record(names[k], {false, "dataset did not load"});
        return;
    }

    list.run(names[1], [&] {
        const auto report = run_stats(config, data);
        const auto& st = report.stats;
        Failures f;
        const std::pair<const char*, const CumulativeDistribution*> dists[] = {
            {"d(n_ov)", &st.overlap_degree},
            {"s", &st.community_size},
            {"m", &st.membership},
            {"s_ov", &st.overlap_size},
        };
        for (const auto& [name, dist] : dists) {
            if (dist->empty()) f.push_back(std::string(name) + " is empty");
            for (std::size_t k = 1; k < dist->p.size(); ++k) {
                if (dist->p[k] > dist->p[k - 1]) f.push_back(std::string(name) + " increases");
            }
        }
        const auto& cls = st.class_sizes;
        for (std::size_t m = 2; m < cls.size(); ++m) {
            if (cls.size() < 2 || cls[m] >= cls[1]) f.push_back("|M_1| is not the largest class");
        }
        if (st.max_membership < 2) f.push_back("max membership < 2");
        if (st.overlap_nodes < 1) f.push_back("no overlap nodes");
        std::ostringstream d;
        d << "x = " << st.max_membership << ", n_ov = " << st.overlap_nodes
          << ", |M_1| = " << (cls.size() > 1 ? cls[1] : 0) << " of " << st.community_nodes;
        return from_failures(f, d.str());
    });

    list.run(names[2], [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto report = run_attack(config, data);
        const double elapsed = seconds_since(t0);
        const auto& lhmi = report.curve(Strategy::LHMI);
        std::size_t violations = 0;
        std::size_t listed = 0;
        bool beyond_envelope = false;
        std::ostringstream d;
        for (double gv : kDominanceGrid) {
            const auto k = lhmi.index_of(gv);
            if (!k || !lhmi.count[*k]) {
                beyond_envelope = true;
                d << "LHMI has no sample at g=" << format_real(gv) << "; ";
                continue;
            }
            bool violated = false;
            for (Strategy other : {Strategy::HLMI, Strategy::CBF, Strategy::RandomAcquaintance}) {
                const auto& c = report.curve(other);
                if (!c.count[*k]) continue;  // other curve halted; nothing to beat
                const double gap = lhmi.mean[*k] - c.mean[*k];
                if (gap <= 0.0) continue;
                violated = true;
                const double width = std::max(lhmi.max[*k] - lhmi.min[*k], c.max[*k] - c.min[*k]);
                if (gap > width) beyond_envelope = true;
                if (listed++ < 3) d << "g=" << format_real(gv) << " LHMI " << format_real(lhmi.mean[*k]) << " > "
                    << to_string(other) << ' ' << format_real(c.mean[*k]) << "; ";
            }
            violations += violated;
        }
        d << "LHMI at g=0.40: "
          << (lhmi.index_of(0.40) && lhmi.count[*lhmi.index_of(0.40)]
                  ? format_real(lhmi.mean[*lhmi.index_of(0.40)])
                  : std::string("n/a"))
          << ", " << violations << " violating grid point(s), " << format_real(elapsed) << " s";
        const bool pass = violations <= kAllowedViolations && !beyond_envelope &&
                          elapsed < kAttackBudgetSeconds;
        return Outcome{pass, d.str()};
    });

    list.run(names[3], [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto report = run_sir_compare(config, data);
        const double elapsed = seconds_since(t0);
        const auto& none = report.run("none").ensemble.mean;
        const auto& lhmi = report.run("lhmi").ensemble.mean;
        const bool peak = lhmi.peak_infected() < none.peak_infected();
        const bool final_r = lhmi.r.back() < none.r.back();
        std::ostringstream d;
        d << "peak I " << format_real(lhmi.peak_infected()) << " vs " << format_real(none.peak_infected())
          << ", final R " << format_real(lhmi.r.back()) << " vs " << format_real(none.r.back()) << ", "
          << format_real(elapsed) << " s";
        return Outcome{peak && final_r && elapsed < kSirBudgetSeconds, d.str()};
    });

    list.run(names[4], [&] {
        Failures f;
        check_membership_orders(data.graph, data.cover, {1, 2}, f);
        check_cover_identities(data.cover, f);
        const auto order = make_order(Strategy::LHMI, data.graph, data.cover, 1, 0);
        const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
        check_sir(data.graph, NodeMask(data.graph.node_count()), config.sir, seeds, f);
        check_sir(data.graph, apply_order(data.graph, order, kSirImmunized), config.sir, seeds, f);
        // Reduced replicate counts keep two full pipeline passes affordable.
        auto small = config;
        small.replicate_seeds = {1, 2};
        small.sir_seeds = {1, 2};
        check_determinism(small, data, scratch / "determinism_pgp", f);
        return from_failures(f, "orders, cover identities, SIR conservation/confinement, byte determinism");
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"immunet acceptance suite"};
    std::string group = "all";
    std::string scratch_dir = (fs::temp_directory_path() / "immunet_acceptance").string();
    unsigned threads = 0;
    app.add_option("--group", group, "fixtures, pgp or all")
        ->check(CLI::IsMember({"fixtures", "pgp", "all"}));
    app.add_option("--scratch", scratch_dir, "Directory for output files");
    app.add_option("--threads", threads, "Worker threads for PGP runs (0: all cores)");
    CLI11_PARSE(app, argc, argv);

    const fs::path scratch(scratch_dir);
    fs::create_directories(scratch);
    Checklist list;
    if (group == "fixtures" || group == "all") {
        list.run("lcc oracle equivalence (1000 random graphs <= 50 nodes)", oracle_equivalence);
        list.run("invariant suite (fixtures)", [&] { return fixture_invariants(IMMUNET_FIXTURE_DIR, scratch); });
        list.run("worked-example fixtures", worked_example_fixtures);
    }
    if (group == "pgp" || group == "all") {
        run_pgp(list, scratch, threads);
    }
    return list.exit_code();
}
