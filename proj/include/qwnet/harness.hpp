#pragma once

#include "qwnet/config.hpp"
#include "qwnet/netgraph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwnet {

using Cell = std::optional<double>;

/// Text table with `# key=value` metadata; the unit every CSV file and
/// plot-data file is made of. Numeric cells are printed with 17 significant
/// digits; missing values print as NA.
struct Table {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Throws std::out_of_range for an unknown column.
    std::size_t column(std::string_view name) const;
    std::optional<std::string> meta_value(std::string_view key) const;
    /// Parsed numeric cell; NA reads as nullopt.
    Cell number(std::size_t row, std::size_t col) const;
    Cell number(std::size_t row, std::string_view col) const { return number(row, column(col)); }
};

inline constexpr std::string_view kCsvVersion = "qwnet-csv v1";

std::string format_double(double v);
std::string format_cell(const Cell& v);
std::string write_csv(const Table& t);
/// Throws std::runtime_error on malformed input.
Table read_csv(std::string_view text);

/// Where the protocol runs on a generated graph.
struct InstanceMeta {
    Node source = 0;
    Node target = 1;
    /// Non-target comparison node drawn from V minus {source, target}.
    std::optional<Node> reference;
    double p = 0.0;                // edge probability actually used (0 for BA)
    std::uint64_t seed = 0;        // instance seed
    std::uint64_t graph_seed = 0;  // seed of the accepted attempt
    std::size_t attempts = 0;
    bool connected = false;
};

struct Instance {
    Graph graph;
    InstanceMeta meta;
};

class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Draws graphs from the configured model until one satisfies the instance
/// constraints (connectivity if requested; the fixed source-target edge, or
/// any edge at all), then picks the endpoints and the reference node.
Instance realize_instance(const ExperimentConfig& cfg, const GraphModel& model, std::uint64_t instance_seed);

struct StepRow {
    std::size_t step = 0;
    double p_source = 0.0;
    double p_target = 0.0;
    double loss = 0.0;
    Cell e_st;
    Cell e_t_rand;
    Cell negativity_st;
};

struct RunRecord {
    ExperimentConfig config;
    Instance instance;
    std::vector<StepRow> rows;
};

/// Protocol run on an already-realized instance.
RunRecord run_instance(const ExperimentConfig& cfg, Instance instance);

/// One instance with seed derive_seed(master_seed, 0, 0).
RunRecord run_single(const ExperimentConfig& cfg);

Table run_table(const RunRecord& record);

struct InstanceSummary {
    double grid = 0.0;
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    InstanceMeta meta;
    std::vector<StepRow> rows;

    // Scalar metrics over the whole run (valid when ok).
    double mean_p_pair = 0.0;
    double mean_loss = 0.0;
    double max_loss = 0.0;
    double final_p_pair = 0.0;
    Cell mean_e_st;
    Cell mean_e_t_rand;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<double> grid;
    /// Sorted by (grid position, instance index).
    std::vector<InstanceSummary> instances;
    Table summary;    // one row per grid value
    Table series;     // one row per (grid value, step)
    Table instances_table;
};

/// Runs `repeats` instances per grid value (a single grid value when the
/// config has no sweep) and aggregates mean and sample standard deviation.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// Mean and sample standard deviation of the present cells; count is the
/// number of present cells. sd is 0 for fewer than two values.
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
};
Moments moments(const std::vector<Cell>& values);

}  // namespace qwnet
