// qwnet: command-line driver for the directed quantum-walk protocol.
//
//   qwnet generate --preset fig1 --out out/fig1      graph.edges for instance 0
//   qwnet run      --preset fig1                     run.csv (one protocol run)
//   qwnet sweep    --config my.json --seed 7         sweep_{summary,series,instances}.csv
//   qwnet plot     --in out/fig1/run.csv --svg       plot-data files + manifest
//   qwnet presets  [--dump <name>]                   list or print built-in presets
//
// Exit status is 0 on success and 1 with a one-line diagnostic otherwise.

#include "qwnet/config.hpp"
#include "qwnet/harness.hpp"
#include "qwnet/plotdata.hpp"
#include "qwnet/rng.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    auto* cfg = cmd->add_option("--config", opts.config_path, "Experiment config file (JSON)");
    auto* pre = cmd->add_option("--preset", opts.preset, "Built-in preset: fig1, fig3a, fig3b, fig5, nws, ba");
    cfg->excludes(pre);
    cmd->add_option("--seed", opts.seed, "Override the master seed");
    cmd->add_option("--out", opts.out, "Override the output directory");
}

qwnet::ExperimentConfig resolve(const CommonOptions& opts) {
    if (opts.config_path.empty() && opts.preset.empty()) {
        throw qwnet::ConfigError("one of --config or --preset is required");
    }
    auto cfg = opts.config_path.empty() ? qwnet::preset(opts.preset) : qwnet::load_config(opts.config_path);
    if (opts.seed) cfg.master_seed = *opts.seed;
    if (!opts.out.empty()) cfg.output_dir = opts.out;
    return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directed discrete-time quantum walk protocol on random networks"};
    app.require_subcommand(1);

    CommonOptions gen_opts, run_opts, sweep_opts;
    auto* gen = app.add_subcommand("generate", "Generate the instance graph and write it as an edge list");
    add_common(gen, gen_opts);
    auto* run = app.add_subcommand("run", "Single protocol run; writes run.csv");
    add_common(run, run_opts);
    auto* sweep = app.add_subcommand("sweep", "Instance-averaged sweep; writes sweep_*.csv");
    add_common(sweep, sweep_opts);

    std::string plot_in, plot_out;
    bool plot_svg = false;
    auto* plot = app.add_subcommand("plot", "Turn a run or sweep CSV into plot-data files");
    plot->add_option("--in", plot_in, "CSV written by run or sweep")->required();
    plot->add_option("--out", plot_out, "Output directory (default: <input dir>/plot)");
    plot->add_flag("--svg", plot_svg, "Also render a line chart per data file");

    std::string dump;
    auto* presets = app.add_subcommand("presets", "List built-in presets");
    presets->add_option("--dump", dump, "Print the named preset as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto cfg = resolve(gen_opts);
            cfg.validate();
            const auto model = cfg.sweep ? qwnet::model_at(cfg.graph.model, cfg.sweep, cfg.sweep->values.front())
                                         : cfg.graph.model;
            const auto inst = qwnet::realize_instance(cfg, model, qwnet::derive_seed(cfg.master_seed, 0.0, 0));
            const fs::path path = fs::path(cfg.output_dir) / "graph.edges";
            write_file(path, qwnet::save_edges(inst.graph));
            std::cout << path.string() << " (n=" << inst.graph.node_count() << ", edges=" << inst.graph.edge_count()
                      << ", source=" << inst.meta.source << ", target=" << inst.meta.target << ")\n";
        } else if (run->parsed()) {
            const auto cfg = resolve(run_opts);
            const auto record = qwnet::run_single(cfg);
            const fs::path path = fs::path(cfg.output_dir) / "run.csv";
            write_file(path, qwnet::write_csv(qwnet::run_table(record)));
            std::cout << path.string() << '\n';
        } else if (sweep->parsed()) {
            const auto cfg = resolve(sweep_opts);
            const auto result = qwnet::run_sweep(cfg);
            const fs::path dir(cfg.output_dir);
            write_file(dir / "sweep_summary.csv", qwnet::write_csv(result.summary));
            write_file(dir / "sweep_series.csv", qwnet::write_csv(result.series));
            write_file(dir / "sweep_instances.csv", qwnet::write_csv(result.instances_table));
            std::size_t failures = 0;
            for (const auto& s : result.instances) failures += s.ok ? 0 : 1;
            std::cout << (dir / "sweep_summary.csv").string() << " (" << result.instances.size() << " instances, "
                      << failures << " failed)\n";
        } else if (plot->parsed()) {
            const fs::path in(plot_in);
            const fs::path out = plot_out.empty() ? in.parent_path() / "plot" : fs::path(plot_out);
            const auto table = qwnet::read_csv(read_file(in));
            for (const auto& p : qwnet::emit_plotdata(table, out, plot_svg)) std::cout << p.string() << '\n';
        } else if (presets->parsed()) {
            if (dump.empty()) {
                for (const auto& name : qwnet::preset_names()) std::cout << name << '\n';
            } else {
                std::cout << qwnet::to_json(qwnet::preset(dump), 2) << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "qwnet: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
