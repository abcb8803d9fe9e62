#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "offload/netsim.hpp"
#include "offload/profiling.hpp"
#include "offload/utility.hpp"

namespace offload {

/// fixed:<edge> pins the task; dynamic:<cpu|mem|both|net> schedules it
/// with the matching weight preset. fixed_<edge> and dyna_<variant> are
/// accepted as aliases.
struct Scheme {
  enum class Kind { kFixed, kDynamic };

  Kind kind = Kind::kDynamic;
  std::string target;  // edge id or dynamic variant

  static Scheme parse(std::string_view text);
  std::string name() const;
  bool is_dynamic() const { return kind == Kind::kDynamic; }

  bool operator==(const Scheme&) const = default;
};

inline const std::vector<std::string>& dynamic_variants() {
  static const std::vector<std::string> v{"cpu", "mem", "both", "net"};
  return v;
}

std::map<std::string, Weights> default_weight_presets();

struct EdgeConfig {
  EdgeId id;
  double cpu_max = 100.0;
  double mem_max = 4096.0;
  double capacity_factor = 1.0;
  double base_cpu = 20.0;
  double base_mem = 1024.0;
  double noise = 2.0;
  double x = 0.0;
  double y = 0.0;
  std::optional<std::filesystem::path> trace;  // per-edge device replay
};

struct RobotConfig {
  RobotId id;
  double input_rate = 1.0;  // task messages per second
  Trajectory trajectory = Trajectory::stationary(0.0, 0.0);
};

/// Random background-load bursts: Poisson arrivals at `rate` per second
/// across all edges, uniform ranges for the rest.
struct SpikeModel {
  double rate = 0.0;
  double duration_min = 30.0;
  double duration_max = 90.0;
  double cpu_min = 40.0;
  double cpu_max = 70.0;
  double mem_min = 500.0;
  double mem_max = 1500.0;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  Scheme scheme;
  double duration = 1200.0;         // hard stop, seconds
  double nominal_duration = 300.0;  // message budget horizon, seconds
  double sample_period = 1.0;
  double decision_period = 1.0;
  double exchange_window = 0.1;
  double exec_step = 0.1;
  double sticky_bonus = 0.05;
  std::map<std::string, Weights> weight_presets = default_weight_presets();
  NetworkBounds bounds;
  LinkModel link;
  std::vector<ThroughputTable::Step> throughput_steps =
      ThroughputTable::defaults().steps();
  double throughput_floor_mbps = 1.0;
  double control_message_size = 512.0;  // bytes, utility tables and proposals
  TaskSpec task;
  std::vector<EdgeConfig> edges;
  std::vector<RobotConfig> robots;
  SpikeModel spikes;
  std::optional<std::filesystem::path> device_trace;
  std::optional<std::filesystem::path> network_trace;

  // Where each key was read from, for line-anchored diagnostics.
  std::string origin;
  std::map<std::string, int> source_lines;

  Weights weights() const;
  double reference_rate() const { return 1000.0 / task.work_per_message; }
  ThroughputTable throughput_table() const;
  std::vector<EdgeId> edge_ids() const;
  std::uint64_t message_budget() const;
  double stale_after() const { return 3.0 * sample_period; }
  double table_stale_after() const { return 3.0 * decision_period; }
  const EdgeConfig* find_edge(const EdgeId& id) const;
};

/// Throws Error(kConfig) with "<origin>:<line>: <field>: <reason>".
void validate(const ScenarioConfig& config);

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin,
                              const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Resolved configuration as YAML; parse_scenario() of the output yields
/// an equivalent config.
std::string emit_scenario(const ScenarioConfig& config);

}  // namespace offload
