#pragma once

#include "qwnet/netgraph.hpp"
#include "qwnet/walk.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qwnet {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GraphSection {
    GraphModel model = ErdosRenyi{12, 0.1};
    /// Draw p uniformly from [0, 1) for every instance (ER only).
    bool p_uniform = false;
    /// Redraw until the graph is connected.
    bool require_connected = false;
    /// Generation attempts per instance before it is recorded as failed.
    std::size_t max_attempts = 1000;
    friend bool operator==(const GraphSection&, const GraphSection&) = default;
};

struct ProtocolSection {
    /// Fixed endpoints; when absent a uniformly random edge is used.
    std::optional<Node> source;
    std::optional<Node> target;
    double kappa = 100.0;
    double gamma = 0.01;
    std::size_t tau = 100;
    double entropy_base = 2.0;
    double coin_theta = std::numbers::pi / 2;
    friend bool operator==(const ProtocolSection&, const ProtocolSection&) = default;
};

enum class SweepAxisKind { NodeCount, EdgeProbability };

struct SweepAxis {
    SweepAxisKind kind = SweepAxisKind::NodeCount;
    std::vector<double> values;
    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct ExperimentConfig {
    std::string name = "custom";
    GraphSection graph;
    ProtocolSection protocol;
    std::size_t repeats = 1;
    std::optional<SweepAxis> sweep;
    std::string output_dir = "out";
    std::uint64_t master_seed = 1;
    /// Worker threads for sweeps; 0 means one per hardware thread.
    std::size_t threads = 0;

    void validate() const;
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON (sorted keys); parse_config(to_json(c)) reproduces c.
std::string to_json(const ExperimentConfig& cfg, int indent = -1);

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
ExperimentConfig preset(std::string_view name);

/// The graph model with the sweep coordinate substituted in.
GraphModel model_at(const GraphModel& base, const std::optional<SweepAxis>& axis, double grid_value);

}  // namespace qwnet
