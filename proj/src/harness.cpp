#include "qwnet/harness.hpp"

#include "qwnet/analysis.hpp"
#include "qwnet/rng.hpp"
#include "qwnet/walk.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <span>
#include <thread>

namespace qwnet {

// ---------------------------------------------------------------------------
// tables

std::size_t Table::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("table has no column \"" + std::string(name) + "\"");
    return static_cast<std::size_t>(it - columns.begin());
}

std::optional<std::string> Table::meta_value(std::string_view key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

Cell Table::number(std::size_t row, std::size_t col) const {
    const auto& text = rows.at(row).at(col);
    if (text == "NA") return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::runtime_error("table cell \"" + text + "\" is not a number");
    }
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const Cell& v) { return v ? format_double(*v) : "NA"; }

std::string write_csv(const Table& t) {
    std::string out = "# " + std::string(kCsvVersion) + " kind=" + t.kind + "\n";
    for (const auto& [k, v] : t.meta) out += "# " + k + "=" + v + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
        out += "\n";
    }
    return out;
}

Table read_csv(std::string_view text) {
    Table t;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool have_version = false;
    bool have_header = false;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": " + msg);
    };
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;

        if (!have_version) {
            const std::string prefix = "# " + std::string(kCsvVersion) + " kind=";
            if (!line.starts_with(prefix)) fail("expected \"" + prefix + "<kind>\"");
            t.kind = std::string(line.substr(prefix.size()));
            have_version = true;
            continue;
        }

        auto split = [](std::string_view s) {
            std::vector<std::string> cells;
            std::size_t start = 0;
            while (true) {
                const auto comma = s.find(',', start);
                cells.emplace_back(s.substr(start, comma - start));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            return cells;
        };

        if (!have_header) {
            if (line.starts_with("# ")) {
                const auto body = line.substr(2);
                const auto eq = body.find('=');
                if (eq == std::string_view::npos) fail("metadata line without '='");
                t.meta.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
                continue;
            }
            t.columns = split(line);
            have_header = true;
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.columns.size()) {
            fail("expected " + std::to_string(t.columns.size()) + " cells, got " + std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    if (!have_version) throw std::runtime_error("csv: empty input");
    if (!have_header) throw std::runtime_error("csv: missing column header");
    return t;
}

// ---------------------------------------------------------------------------
// instances

Instance realize_instance(const ExperimentConfig& cfg, const GraphModel& model, std::uint64_t instance_seed) {
    const auto& fixed_s = cfg.protocol.source;
    const auto& fixed_t = cfg.protocol.target;

    for (std::size_t attempt = 0; attempt < cfg.graph.max_attempts; ++attempt) {
        Rng rng(combine_seed(instance_seed, attempt));

        GraphModel drawn = model;
        if (cfg.graph.p_uniform) std::get<ErdosRenyi>(drawn).p = rng.uniform();
        const std::uint64_t graph_seed = rng.next();

        Graph g;
        try {
            g = generate(GenSpec{drawn, graph_seed});
        } catch (const GraphError& e) {
            throw InstanceError(e.what());
        }
        const bool connected = g.is_connected();
        if (cfg.graph.require_connected && !connected) continue;

        Instance inst;
        inst.meta.seed = instance_seed;
        inst.meta.graph_seed = graph_seed;
        inst.meta.attempts = attempt + 1;
        inst.meta.connected = connected;
        inst.meta.p = std::visit(
            [](const auto& m) -> double {
                if constexpr (std::is_same_v<std::decay_t<decltype(m)>, BarabasiAlbert>) {
                    return 0.0;
                } else {
                    return m.p;
                }
            },
            drawn);

        const std::size_t n = g.node_count();
        if (fixed_s) {
            if (*fixed_s >= n || *fixed_t >= n) {
                throw InstanceError("fixed source/target out of range for " + std::to_string(n) + " nodes");
            }
            if (!g.has_edge(*fixed_s, *fixed_t)) continue;
            inst.meta.source = *fixed_s;
            inst.meta.target = *fixed_t;
        } else {
            const auto edges = g.edges();
            if (edges.empty()) continue;
            const auto& e = edges[rng.below(edges.size())];
            const bool flip = rng.below(2) == 1;
            inst.meta.source = flip ? e.v : e.u;
            inst.meta.target = flip ? e.u : e.v;
        }

        if (n > 2) {
            std::vector<Node> others;
            for (Node v = 0; v < n; ++v)
                if (v != inst.meta.source && v != inst.meta.target) others.push_back(v);
            inst.meta.reference = others[rng.below(others.size())];
        }
        inst.graph = std::move(g);
        return inst;
    }
    throw InstanceError("no graph met the instance constraints after " + std::to_string(cfg.graph.max_attempts) +
                        " attempts");
}

RunRecord run_instance(const ExperimentConfig& cfg, Instance instance) {
    ProtocolConfig pc;
    pc.source = instance.meta.source;
    pc.target = instance.meta.target;
    pc.kappa = cfg.protocol.kappa;
    pc.gamma = cfg.protocol.gamma;
    pc.tau = cfg.protocol.tau;
    pc.entropy_base = cfg.protocol.entropy_base;
    pc.coin_theta = cfg.protocol.coin_theta;

    const auto ops = build_operators(instance.graph, pc);
    const Node pair[] = {pc.source, pc.target};
    const auto reference = instance.meta.reference;

    RunRecord record;
    record.config = cfg;
    record.rows.reserve(pc.tau + 1);
    evolve_visit(initial_state(instance.graph.node_count(), pc.source), ops, pc.tau,
                 [&](std::size_t step, const WalkState& state) {
                     const auto dist = position_distribution(state, step);
                     StepRow row;
                     row.step = step;
                     row.p_source = dist.probs[pc.source];
                     row.p_target = dist.probs[pc.target];
                     row.loss = loss_probability(dist, pair);
                     row.e_st = pair_entropy(state, pc.source, pc.target, pc.entropy_base);
                     if (reference) row.e_t_rand = pair_entropy(state, pc.target, *reference, pc.entropy_base);
                     if (row.e_st) row.negativity_st = log_negativity(two_qubit_rdm(state, pc.source, pc.target, true));
                     record.rows.push_back(row);
                 });
    record.instance = std::move(instance);
    return record;
}

RunRecord run_single(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto model = cfg.sweep ? model_at(cfg.graph.model, cfg.sweep, cfg.sweep->values.front()) : cfg.graph.model;
    auto inst = realize_instance(cfg, model, derive_seed(cfg.master_seed, 0.0, 0));
    return run_instance(cfg, std::move(inst));
}

namespace {

std::string count_cell(std::size_t v) { return std::to_string(v); }

void add_instance_meta(Table& t, const InstanceMeta& m) {
    t.meta.emplace_back("seed", std::to_string(m.seed));
    t.meta.emplace_back("graph_seed", std::to_string(m.graph_seed));
    t.meta.emplace_back("p", format_double(m.p));
    t.meta.emplace_back("source", std::to_string(m.source));
    t.meta.emplace_back("target", std::to_string(m.target));
    t.meta.emplace_back("reference", m.reference ? std::to_string(*m.reference) : "NA");
    t.meta.emplace_back("connected", m.connected ? "1" : "0");
    t.meta.emplace_back("attempts", std::to_string(m.attempts));
}

}  // namespace

Table run_table(const RunRecord& record) {
    Table t;
    t.kind = "run";
    t.meta.emplace_back("config", to_json(record.config));
    add_instance_meta(t, record.instance.meta);
    t.meta.emplace_back("nodes", std::to_string(record.instance.graph.node_count()));
    t.meta.emplace_back("edges", std::to_string(record.instance.graph.edge_count()));
    t.columns = {"step", "P_source", "P_target", "loss", "E_st", "E_t_rand", "negativity_st"};
    for (const auto& r : record.rows) {
        t.rows.push_back({count_cell(r.step), format_double(r.p_source), format_double(r.p_target),
                          format_double(r.loss), format_cell(r.e_st), format_cell(r.e_t_rand),
                          format_cell(r.negativity_st)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// sweeps

Moments moments(const std::vector<Cell>& values) {
    Moments m;
    double sum = 0.0;
    for (const auto& v : values) {
        if (!v) continue;
        sum += *v;
        ++m.count;
    }
    if (m.count == 0) return m;
    m.mean = sum / static_cast<double>(m.count);
    if (m.count < 2) return m;
    double sq = 0.0;
    for (const auto& v : values)
        if (v) sq += (*v - m.mean) * (*v - m.mean);
    m.sd = std::sqrt(sq / static_cast<double>(m.count - 1));
    return m;
}

namespace {

Cell mean_present(const std::vector<StepRow>& rows, Cell StepRow::*field) {
    std::vector<Cell> values;
    values.reserve(rows.size());
    for (const auto& r : rows) values.push_back(r.*field);
    const auto m = moments(values);
    return m.count ? Cell(m.mean) : std::nullopt;
}

void fill_scalars(InstanceSummary& s) {
    double sum_pair = 0.0;
    double sum_loss = 0.0;
    s.max_loss = 0.0;
    for (const auto& r : s.rows) {
        sum_pair += r.p_source + r.p_target;
        sum_loss += r.loss;
        s.max_loss = std::max(s.max_loss, r.loss);
    }
    const auto count = static_cast<double>(s.rows.size());
    s.mean_p_pair = sum_pair / count;
    s.mean_loss = sum_loss / count;
    s.final_p_pair = s.rows.back().p_source + s.rows.back().p_target;
    s.mean_e_st = mean_present(s.rows, &StepRow::e_st);
    s.mean_e_t_rand = mean_present(s.rows, &StepRow::e_t_rand);
}

std::string axis_name(const ExperimentConfig& cfg) {
    if (!cfg.sweep) return "grid";
    return cfg.sweep->kind == SweepAxisKind::NodeCount ? "n" : "p";
}

void append_moments(std::vector<std::string>& row, const Moments& m) {
    row.push_back(m.count ? format_double(m.mean) : "NA");
    row.push_back(m.count ? format_double(m.sd) : "NA");
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;
    result.grid = cfg.sweep ? cfg.sweep->values : std::vector<double>{0.0};

    const std::size_t total = result.grid.size() * cfg.repeats;
    result.instances.resize(total);

    auto run_task = [&](std::size_t task) {
        auto& s = result.instances[task];
        s.grid = result.grid[task / cfg.repeats];
        s.index = task % cfg.repeats;
        s.seed = derive_seed(cfg.master_seed, s.grid, s.index);
        try {
            auto inst = realize_instance(cfg, model_at(cfg.graph.model, cfg.sweep, s.grid), s.seed);
            auto record = run_instance(cfg, std::move(inst));
            s.meta = record.instance.meta;
            s.rows = std::move(record.rows);
            s.ok = true;
            fill_scalars(s);
        } catch (const std::exception& e) {
            s.ok = false;
            s.error = e.what();
        }
    };

    std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);
    if (workers <= 1) {
        for (std::size_t task = 0; task < total; ++task) run_task(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t task = next++; task < total; task = next++) run_task(task);
            });
        }
    }

    const std::string axis = axis_name(cfg);
    const std::string config_json = to_json(cfg);

    auto& summary = result.summary;
    summary.kind = "sweep-summary";
    summary.meta.emplace_back("config", config_json);
    summary.meta.emplace_back("sd", "sample standard deviation over instances");
    summary.columns = {axis,          "instances",     "failures",       "mean_P_pair",   "sd_P_pair",
                       "mean_loss",     "sd_loss",       "mean_max_loss",  "sd_max_loss",   "mean_final_P_pair",
                       "sd_final_P_pair", "mean_E_st",   "sd_E_st",        "mean_E_t_rand", "sd_E_t_rand"};

    auto& series = result.series;
    series.kind = "sweep-series";
    series.meta.emplace_back("config", config_json);
    series.meta.emplace_back("sd", "sample standard deviation over instances");
    series.columns = {axis,        "step",         "instances",     "mean_P_pair", "sd_P_pair",
                      "mean_loss", "sd_loss",      "skip_E_st",     "mean_E_st",   "sd_E_st",
                      "skip_E_t_rand", "mean_E_t_rand", "sd_E_t_rand", "mean_negativity_st", "sd_negativity_st"};

    auto& inst_table = result.instances_table;
    inst_table.kind = "sweep-instances";
    inst_table.meta.emplace_back("config", config_json);
    inst_table.columns = {axis,        "instance",  "seed",        "graph_seed",   "p",
                          "source",    "target",    "reference",   "connected",    "attempts",
                          "ok",        "mean_P_pair", "mean_loss", "max_loss",     "final_P_pair",
                          "mean_E_st", "mean_E_t_rand"};

    for (std::size_t g = 0; g < result.grid.size(); ++g) {
        const double grid = result.grid[g];
        const std::span<const InstanceSummary> group(result.instances.data() + g * cfg.repeats, cfg.repeats);

        std::vector<Cell> pair, loss, max_loss, final_pair, e_st, e_tr;
        std::size_t failures = 0;
        for (const auto& s : group) {
            if (!s.ok) {
                ++failures;
                inst_table.meta.emplace_back("failure." + format_double(grid) + "." + std::to_string(s.index),
                                             s.error);
                inst_table.rows.push_back({format_double(grid), count_cell(s.index), std::to_string(s.seed), "NA",
                                           "NA", "NA", "NA", "NA", "NA", "NA", "0", "NA", "NA", "NA", "NA", "NA",
                                           "NA"});
                continue;
            }
            pair.push_back(s.mean_p_pair);
            loss.push_back(s.mean_loss);
            max_loss.push_back(s.max_loss);
            final_pair.push_back(s.final_p_pair);
            e_st.push_back(s.mean_e_st);
            e_tr.push_back(s.mean_e_t_rand);
            const auto& m = s.meta;
            inst_table.rows.push_back(
                {format_double(grid), count_cell(s.index), std::to_string(s.seed), std::to_string(m.graph_seed),
                 format_double(m.p), count_cell(m.source), count_cell(m.target),
                 m.reference ? count_cell(*m.reference) : "NA", m.connected ? "1" : "0", count_cell(m.attempts), "1",
                 format_double(s.mean_p_pair), format_double(s.mean_loss), format_double(s.max_loss),
                 format_double(s.final_p_pair), format_cell(s.mean_e_st), format_cell(s.mean_e_t_rand)});
        }

        std::vector<std::string> row = {format_double(grid), count_cell(pair.size()), count_cell(failures)};
        for (const auto* col : {&pair, &loss, &max_loss, &final_pair, &e_st, &e_tr}) append_moments(row, moments(*col));
        summary.rows.push_back(std::move(row));

        std::size_t steps = 0;
        for (const auto& s : group)
            if (s.ok) steps = std::max(steps, s.rows.size());
        for (std::size_t step = 0; step < steps; ++step) {
            std::vector<Cell> sp, sl, se, st, sn;
            for (const auto& s : group) {
                if (!s.ok) continue;
                const auto& r = s.rows[step];
                sp.push_back(r.p_source + r.p_target);
                sl.push_back(r.loss);
                se.push_back(r.e_st);
                st.push_back(r.e_t_rand);
                sn.push_back(r.negativity_st);
            }
            const auto me = moments(se);
            const auto mt = moments(st);
            std::vector<std::string> srow = {format_double(grid), count_cell(step), count_cell(sp.size())};
            append_moments(srow, moments(sp));
            append_moments(srow, moments(sl));
            srow.push_back(count_cell(se.size() - me.count));
            append_moments(srow, me);
            srow.push_back(count_cell(st.size() - mt.count));
            append_moments(srow, mt);
            append_moments(srow, moments(sn));
            series.rows.push_back(std::move(srow));
        }
    }
    return result;
}

}  // namespace qwnet
