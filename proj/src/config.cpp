#include "qwnet/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qwnet {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    return get_or<T>(obj, key, T{}, where);
}

std::size_t require_count(const json& obj, const char* key, const std::string& where) {
    const auto v = require<double>(obj, key, where);
    if (v < 0 || v != std::floor(v)) throw ConfigError(where + "." + key + ": expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::size_t count_or(const json& obj, const char* key, std::size_t fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return require_count(obj, key, where);
}

GraphSection parse_graph(const json& j) {
    const std::string where = "graph";
    const auto model = require<std::string>(j, "model", where);
    GraphSection g;
    std::set<std::string> allowed = {"model", "n", "require_connected", "max_attempts"};
    if (model == "erdos_renyi") {
        allowed.insert({"p", "p_uniform"});
        reject_unknown_keys(j, allowed, where);
        g.p_uniform = get_or<bool>(j, "p_uniform", false, where);
        const double p = g.p_uniform ? get_or<double>(j, "p", 0.0, where) : require<double>(j, "p", where);
        g.model = ErdosRenyi{require_count(j, "n", where), p};
    } else if (model == "newman_watts_strogatz") {
        allowed.insert({"p", "ring_k"});
        reject_unknown_keys(j, allowed, where);
        g.model = NewmanWattsStrogatz{require_count(j, "n", where), require_count(j, "ring_k", where),
                                      require<double>(j, "p", where)};
    } else if (model == "barabasi_albert") {
        allowed.insert({"m", "init"});
        reject_unknown_keys(j, allowed, where);
        g.model = BarabasiAlbert{require_count(j, "n", where), require_count(j, "m", where),
                                 count_or(j, "init", 4, where)};
    } else {
        throw ConfigError("graph.model: unknown model \"" + model + "\"");
    }
    g.require_connected = get_or<bool>(j, "require_connected", false, where);
    g.max_attempts = count_or(j, "max_attempts", g.max_attempts, where);
    return g;
}

ProtocolSection parse_protocol(const json& j) {
    const std::string where = "protocol";
    reject_unknown_keys(j, {"source", "target", "kappa", "gamma", "tau", "entropy_base", "coin_theta"}, where);
    ProtocolSection p;
    if (j.contains("source")) p.source = require_count(j, "source", where);
    if (j.contains("target")) p.target = require_count(j, "target", where);
    p.kappa = get_or<double>(j, "kappa", p.kappa, where);
    p.gamma = get_or<double>(j, "gamma", p.gamma, where);
    p.tau = count_or(j, "tau", p.tau, where);
    p.entropy_base = get_or<double>(j, "entropy_base", p.entropy_base, where);
    p.coin_theta = get_or<double>(j, "coin_theta", p.coin_theta, where);
    return p;
}

SweepAxis parse_sweep(const json& j) {
    const std::string where = "sweep";
    reject_unknown_keys(j, {"axis", "values", "range"}, where);
    SweepAxis axis;
    const auto name = require<std::string>(j, "axis", where);
    if (name == "n") {
        axis.kind = SweepAxisKind::NodeCount;
    } else if (name == "p") {
        axis.kind = SweepAxisKind::EdgeProbability;
    } else {
        throw ConfigError("sweep.axis: expected \"n\" or \"p\", got \"" + name + "\"");
    }
    if (j.contains("values") == j.contains("range")) {
        throw ConfigError("sweep: give exactly one of \"values\" or \"range\"");
    }
    if (j.contains("values")) {
        axis.values = get_or<std::vector<double>>(j, "values", {}, where);
    } else {
        const auto& r = j.at("range");
        reject_unknown_keys(r, {"from", "to", "step"}, "sweep.range");
        const double from = require<double>(r, "from", "sweep.range");
        const double to = require<double>(r, "to", "sweep.range");
        const double step = require<double>(r, "step", "sweep.range");
        if (!(step > 0.0)) throw ConfigError("sweep.range.step must be positive");
        for (std::size_t i = 0;; ++i) {
            // Rounded so that e.g. 3 * 0.05 lands on the double nearest 0.15.
            const double v = std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12;
            if (v > to + 1e-9 * step) break;
            axis.values.push_back(v);
        }
    }
    return axis;
}

json model_to_json(const GraphSection& g) {
    json j;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            j["n"] = m.n;
            if constexpr (std::is_same_v<T, ErdosRenyi>) {
                j["model"] = "erdos_renyi";
                j["p"] = m.p;
                j["p_uniform"] = g.p_uniform;
            } else if constexpr (std::is_same_v<T, NewmanWattsStrogatz>) {
                j["model"] = "newman_watts_strogatz";
                j["ring_k"] = m.ring_k;
                j["p"] = m.p;
            } else {
                j["model"] = "barabasi_albert";
                j["m"] = m.m;
                j["init"] = m.init;
            }
        },
        g.model);
    j["require_connected"] = g.require_connected;
    j["max_attempts"] = g.max_attempts;
    return j;
}

// Built-in experiment presets, one per figure class.
const std::map<std::string, std::string, std::less<>>& preset_table() {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"fig1", R"({
            "name": "fig1",
            "graph": {"model": "erdos_renyi", "n": 12, "p": 0.1, "require_connected": true, "max_attempts": 100000},
            "protocol": {"source": 3, "target": 8, "tau": 100},
            "repeats": 1, "master_seed": 1, "output_dir": "out/fig1"
        })"},
        {"fig3a", R"({
            "name": "fig3a",
            "graph": {"model": "erdos_renyi", "n": 25, "p": 0.3},
            "protocol": {"tau": 100},
            "sweep": {"axis": "n", "range": {"from": 5, "to": 100, "step": 1}},
            "repeats": 20, "master_seed": 1, "output_dir": "out/fig3a"
        })"},
        {"fig3b", R"({
            "name": "fig3b",
            "graph": {"model": "erdos_renyi", "n": 25, "p": 0.3},
            "protocol": {"tau": 100},
            "sweep": {"axis": "p", "range": {"from": 0.0, "to": 0.95, "step": 0.05}},
            "repeats": 20, "master_seed": 1, "output_dir": "out/fig3b"
        })"},
        {"fig5", R"({
            "name": "fig5",
            "graph": {"model": "erdos_renyi", "n": 10, "p_uniform": true},
            "protocol": {"tau": 100},
            "sweep": {"axis": "n", "values": [6, 10, 15, 20]},
            "repeats": 50, "master_seed": 1, "output_dir": "out/fig5"
        })"},
        {"nws", R"({
            "name": "nws",
            "graph": {"model": "newman_watts_strogatz", "n": 34, "ring_k": 3, "p": 0.3},
            "protocol": {"tau": 100},
            "repeats": 1, "master_seed": 1, "output_dir": "out/nws"
        })"},
        {"ba", R"({
            "name": "ba",
            "graph": {"model": "barabasi_albert", "n": 25, "m": 2, "init": 4, "max_attempts": 100000},
            "protocol": {"source": 22, "target": 10, "tau": 100},
            "repeats": 1, "master_seed": 1, "output_dir": "out/ba"
        })"},
    };
    return table;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (graph.max_attempts < 1) throw ConfigError("graph.max_attempts must be >= 1");
    if (graph.p_uniform && !std::holds_alternative<ErdosRenyi>(graph.model)) {
        throw ConfigError("graph.p_uniform applies to erdos_renyi only");
    }
    if (protocol.source.has_value() != protocol.target.has_value()) {
        throw ConfigError("protocol: give both source and target, or neither");
    }
    if (protocol.source && *protocol.source == *protocol.target) {
        throw ConfigError("protocol: source and target must differ");
    }
    if (!(protocol.kappa >= 1.0)) throw ConfigError("protocol.kappa must be >= 1");
    if (!std::isfinite(protocol.gamma)) throw ConfigError("protocol.gamma must be finite");
    if (!(protocol.entropy_base > 0.0) || protocol.entropy_base == 1.0) {
        throw ConfigError("protocol.entropy_base must be positive and not 1");
    }
    if (sweep) {
        if (sweep->values.empty()) throw ConfigError("sweep grid is empty");
        for (double v : sweep->values) {
            if (sweep->kind == SweepAxisKind::NodeCount && (v < 2 || v != std::floor(v))) {
                throw ConfigError("sweep: node counts must be integers >= 2");
            }
            if (sweep->kind == SweepAxisKind::EdgeProbability) {
                if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("sweep: probabilities must lie in [0, 1]");
                if (std::holds_alternative<BarabasiAlbert>(graph.model)) {
                    throw ConfigError("sweep: barabasi_albert has no edge probability");
                }
                if (graph.p_uniform) throw ConfigError("sweep: p axis conflicts with graph.p_uniform");
            }
        }
    }
}

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(j, {"name", "graph", "protocol", "repeats", "sweep", "output_dir", "master_seed", "threads"},
                        "config");
    ExperimentConfig cfg;
    cfg.name = get_or<std::string>(j, "name", cfg.name, "config");
    if (!j.contains("graph")) throw ConfigError("config: missing \"graph\" section");
    cfg.graph = parse_graph(j.at("graph"));
    if (j.contains("protocol")) cfg.protocol = parse_protocol(j.at("protocol"));
    cfg.repeats = count_or(j, "repeats", cfg.repeats, "config");
    if (j.contains("sweep")) cfg.sweep = parse_sweep(j.at("sweep"));
    cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir, "config");
    cfg.master_seed = get_or<std::uint64_t>(j, "master_seed", cfg.master_seed, "config");
    cfg.threads = count_or(j, "threads", cfg.threads, "config");
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_json(const ExperimentConfig& cfg, int indent) {
    json j;
    j["name"] = cfg.name;
    j["graph"] = model_to_json(cfg.graph);
    json p;
    if (cfg.protocol.source) p["source"] = *cfg.protocol.source;
    if (cfg.protocol.target) p["target"] = *cfg.protocol.target;
    p["kappa"] = cfg.protocol.kappa;
    p["gamma"] = cfg.protocol.gamma;
    p["tau"] = cfg.protocol.tau;
    p["entropy_base"] = cfg.protocol.entropy_base;
    p["coin_theta"] = cfg.protocol.coin_theta;
    j["protocol"] = p;
    j["repeats"] = cfg.repeats;
    if (cfg.sweep) {
        j["sweep"] = {{"axis", cfg.sweep->kind == SweepAxisKind::NodeCount ? "n" : "p"},
                      {"values", cfg.sweep->values}};
    }
    j["output_dir"] = cfg.output_dir;
    j["master_seed"] = cfg.master_seed;
    j["threads"] = cfg.threads;
    return j.dump(indent);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : preset_table()) names.push_back(name);
    return names;
}

ExperimentConfig preset(std::string_view name) {
    const auto& table = preset_table();
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown preset \"" + std::string(name) + "\"");
    return parse_config(it->second);
}

GraphModel model_at(const GraphModel& base, const std::optional<SweepAxis>& axis, double grid_value) {
    if (!axis) return base;
    return std::visit(
        [&](auto m) -> GraphModel {
            using T = std::decay_t<decltype(m)>;
            if (axis->kind == SweepAxisKind::NodeCount) {
                m.n = static_cast<std::size_t>(grid_value);
            } else if constexpr (!std::is_same_v<T, BarabasiAlbert>) {
                m.p = grid_value;
            }
            return m;
        },
        base);
}

}  // namespace qwnet
