#pragma once

#include <map>
#include <string>

#include "offload/error.hpp"

namespace offload {

using EdgeId = std::string;
using RobotId = std::string;
using ScoreTable = std::map<EdgeId, double>;

/// One device-profiler reading of an edge. cpu values are percentages,
/// memory values megabytes. The *_used fields are what the profiler
/// reports as in use, not what is free.
struct DeviceSnapshot {
  EdgeId edge_id;
  double t = 0.0;
  double cpu_max = 100.0;
  double cpu_used = 0.0;
  double mem_max = 0.0;
  double mem_used = 0.0;

  bool operator==(const DeviceSnapshot&) const = default;
};

/// RSSI of the (robot, edge) link in dBm.
struct NetworkSnapshot {
  RobotId robot_id;
  EdgeId edge_id;
  double t = 0.0;
  double rssi = -120.0;

  bool operator==(const NetworkSnapshot&) const = default;
};

/// nu: minimum RSSI for offloading; rho: best achievable RSSI.
struct NetworkBounds {
  double nu = -85.0;
  double rho = -30.0;
};

struct Weights {
  double cpu = 0.0;
  double mem = 0.0;
  double net = 0.0;

  bool operator==(const Weights&) const = default;
};

inline constexpr double kWeightSumTolerance = 1e-9;

struct TaskSpec {
  std::string task_id = "map_merge";
  double mem_footprint = 0.0;     // MB the collaborative task occupies
  double work_per_message = 0.0;  // CPU-ms at reference speed
  double message_size = 0.0;      // bytes
  double message_mem = 0.0;       // MB buffered per queued message
};

struct UtilityBreakdown {
  EdgeId edge_id;
  double eta = 0.0;
  double sigma = 0.0;
  double kappa = 0.0;
  double total = 0.0;
};

// Component utilities, each clamped to [0, 1].
double cpu_utility(const DeviceSnapshot& snapshot);
double memory_utility(const DeviceSnapshot& snapshot, const TaskSpec& task);
double rssi_utility(const NetworkSnapshot& reading, const NetworkBounds& bounds);

void validate_weights(const Weights& w);
void validate_bounds(const NetworkBounds& bounds);

double total_utility(double eta, double sigma, double kappa, const Weights& w);

UtilityBreakdown evaluate_edge(const DeviceSnapshot& device,
                               const NetworkSnapshot& network,
                               const TaskSpec& task,
                               const NetworkBounds& bounds, const Weights& w);

/// Per-edge sum across every robot's table. An edge missing from one
/// robot's table contributes 0 for that robot.
ScoreTable sum_over_edges(const std::map<RobotId, ScoreTable>& tables);

}  // namespace offload
