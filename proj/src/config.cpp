#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "immunet/csv.hpp"
#include "immunet/experiment.hpp"

namespace immunet {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::string body = trim(text);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw std::invalid_argument("unterminated list '" + text + "'");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<std::string> items;
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = unquote(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw std::invalid_argument(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument(key + ": expected a non-negative integer, got '" + text + "'");
    }
    return std::stoull(text);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw std::invalid_argument(key + ": expected true or false, got '" + text + "'");
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
    std::string out;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(seeds[k]);
    }
    return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"data", {"graph", "communities", "label_policy"}},
        {"output", {"dir", "threads", "export_orders"}},
        {"attack",
         {"strategies", "g_grid", "seed", "seeds", "replicates", "tie_break", "ra_threshold",
          "cbf_max_walk", "cap_factor"}},
        {"sir",
         {"alpha", "beta", "lambda", "max_steps", "normalization", "runs", "seed", "seeds",
          "strategies", "g", "order_seed", "initial"}},
    };
    return keys;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_real("list", item));
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const auto& item : split_list(text)) out.push_back(parse_count("seeds", item));
    return out;
}

std::vector<std::uint64_t> ExperimentConfig::default_seeds(std::uint64_t first, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t k = 0; k < count; ++k) seeds[k] = first + k;
    return seeds;
}

void ExperimentConfig::validate() const {
    if (strategies.empty()) throw std::invalid_argument("attack.strategies is empty");
    if (g_grid.empty()) throw std::invalid_argument("attack.g_grid is empty");
    for (std::size_t k = 0; k < g_grid.size(); ++k) {
        if (!(g_grid[k] >= 0.0 && g_grid[k] <= 1.0)) {
            throw std::invalid_argument("attack.g_grid values must lie in [0, 1]");
        }
        if (k > 0 && !(g_grid[k] > g_grid[k - 1])) {
            throw std::invalid_argument("attack.g_grid must be strictly increasing");
        }
    }
    if (replicate_seeds.empty()) throw std::invalid_argument("attack needs at least one seed");
    if (sir_seeds.empty()) throw std::invalid_argument("sir needs at least one seed");
    if (params.acquaintance_threshold < 1) {
        throw std::invalid_argument("attack.ra_threshold must be >= 1");
    }
    if (params.cbf_max_walk < 2) throw std::invalid_argument("attack.cbf_max_walk must be >= 2");
    if (!(sir_g >= 0.0 && sir_g <= 1.0)) throw std::invalid_argument("sir.g must lie in [0, 1]");
    sir.validate();
}

std::string ExperimentConfig::echo() const {
    std::ostringstream out;
    auto names = [](const std::vector<Strategy>& list) {
        std::string s;
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (k) s += ',';
            s += to_string(list[k]);
        }
        return s;
    };
    std::string grid;
    for (std::size_t k = 0; k < g_grid.size(); ++k) {
        if (k) grid += ',';
        grid += format_real(g_grid[k]);
    }
    out << "graph = " << graph_path.filename().string() << '\n'
        << "communities = " << community_path.filename().string() << '\n'
        << "label_policy = " << to_string(label_policy) << '\n'
        << "strategies = " << names(strategies) << '\n'
        << "g_grid = " << grid << '\n'
        << "replicate_seeds = " << join_seeds(replicate_seeds) << '\n'
        << "tie_break = " << to_string(params.tie_break) << '\n'
        << "ra_threshold = " << params.acquaintance_threshold << '\n'
        << "cbf_max_walk = " << params.cbf_max_walk << '\n'
        << "cap_factor = " << params.cap_factor << '\n'
        << "alpha = " << format_real(sir.alpha) << '\n'
        << "beta = " << format_real(sir.beta) << '\n'
        << "lambda = " << format_real(sir.lambda()) << '\n'
        << "max_steps = " << sir.max_steps << '\n'
        << "normalization = " << to_string(sir.normalization) << '\n'
        << "sir_seeds = " << join_seeds(sir_seeds) << '\n'
        << "sir_strategies = " << names(sir_strategies) << '\n'
        << "sir_g = " << format_real(sir_g) << '\n'
        << "order_seed = " << order_seed.value_or(replicate_seeds.front()) << '\n'
        << "initial = " << sir_initial.value_or("uniform") << '\n';
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(echo()); }

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(e.line(), "config: " + e.message());
    }
    for (const auto& [section, body] : tree) {
        const auto known = known_keys().find(section);
        if (known == known_keys().end() || body.empty()) {
            throw std::invalid_argument("config: unknown section or top-level key '" + section + "'");
        }
        for (const auto& [key, value] : body) {
            if (!known->second.count(key)) {
                throw std::invalid_argument("config: unknown key '" + section + "." + key + "'");
            }
        }
    }
    auto get = [&](const std::string& path) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
            return unquote(*v);
        }
        return std::nullopt;
    };
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };

    ExperimentConfig c;
    if (auto v = get("data.graph")) c.graph_path = resolve(*v);
    if (auto v = get("data.communities")) c.community_path = resolve(*v);
    if (auto v = get("data.label_policy")) c.label_policy = parse_label_policy(*v);

    if (auto v = get("output.dir")) c.output_dir = resolve(*v);
    if (auto v = get("output.threads")) c.threads = static_cast<unsigned>(parse_count("output.threads", *v));
    if (auto v = get("output.export_orders")) c.export_orders = parse_bool("output.export_orders", *v);

    if (auto v = get("attack.strategies")) {
        c.strategies.clear();
        for (const auto& name : split_list(*v)) c.strategies.push_back(parse_strategy(name));
    }
    if (auto v = get("attack.g_grid")) c.g_grid = parse_real_list(*v);
    if (auto v = get("attack.seeds")) {
        c.replicate_seeds = parse_seed_list(*v);
    } else {
        const auto first = parse_count("attack.seed", get("attack.seed").value_or("1"));
        const auto count = parse_count("attack.replicates", get("attack.replicates").value_or("10"));
        c.replicate_seeds = ExperimentConfig::default_seeds(first, count);
    }
    if (auto v = get("attack.tie_break")) c.params.tie_break = parse_tie_break(*v);
    if (auto v = get("attack.ra_threshold")) {
        c.params.acquaintance_threshold = static_cast<std::uint32_t>(parse_count("attack.ra_threshold", *v));
    }
    if (auto v = get("attack.cbf_max_walk")) c.params.cbf_max_walk = parse_count("attack.cbf_max_walk", *v);
    if (auto v = get("attack.cap_factor")) c.params.cap_factor = parse_count("attack.cap_factor", *v);

    if (auto v = get("sir.beta")) c.sir.beta = parse_real("sir.beta", *v);
    if (auto v = get("sir.alpha")) {
        c.sir.alpha = parse_real("sir.alpha", *v);
        if (auto l = get("sir.lambda")) {
            const double lambda = parse_real("sir.lambda", *l);
            if (std::abs(lambda - c.sir.lambda()) > 1e-12) {
                throw std::invalid_argument("sir.lambda disagrees with sir.alpha / sir.beta");
            }
        }
    } else if (auto l = get("sir.lambda")) {
        c.sir.alpha = parse_real("sir.lambda", *l) * c.sir.beta;
    }
    if (auto v = get("sir.max_steps")) c.sir.max_steps = parse_count("sir.max_steps", *v);
    if (auto v = get("sir.normalization")) c.sir.normalization = parse_normalization(*v);
    if (auto v = get("sir.seeds")) {
        c.sir_seeds = parse_seed_list(*v);
    } else {
        const auto first = parse_count("sir.seed", get("sir.seed").value_or("1"));
        const auto count = parse_count("sir.runs", get("sir.runs").value_or("20"));
        c.sir_seeds = ExperimentConfig::default_seeds(first, count);
    }
    if (auto v = get("sir.strategies")) {
        c.sir_strategies.clear();
        for (const auto& name : split_list(*v)) c.sir_strategies.push_back(parse_strategy(name));
    }
    if (auto v = get("sir.g")) c.sir_g = parse_real("sir.g", *v);
    if (auto v = get("sir.order_seed")) c.order_seed = parse_count("sir.order_seed", *v);
    if (auto v = get("sir.initial")) c.sir_initial = *v;

    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config '" + path.string() + "'");
    }
    try {
        return parse_config(in, path.parent_path());
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

}  // namespace immunet
