#include "offload/utility.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace offload {

namespace {

double unit_clamp(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double cpu_utility(const DeviceSnapshot& snapshot) {
  if (!(snapshot.cpu_max > 0.0) || !std::isfinite(snapshot.cpu_used)) {
    throw Error(ErrorCode::kInvalidSnapshot,
                fmt::format("edge {}: cpu_max must be > 0 (got {})",
                            snapshot.edge_id, snapshot.cpu_max));
  }
  return unit_clamp((snapshot.cpu_max - snapshot.cpu_used) / snapshot.cpu_max);
}

double memory_utility(const DeviceSnapshot& snapshot, const TaskSpec& task) {
  if (!(snapshot.mem_max > 0.0) || !std::isfinite(snapshot.mem_used)) {
    throw Error(ErrorCode::kInvalidSnapshot,
                fmt::format("edge {}: mem_max must be > 0 (got {})",
                            snapshot.edge_id, snapshot.mem_max));
  }
  return unit_clamp((snapshot.mem_max - task.mem_footprint - snapshot.mem_used) /
                    snapshot.mem_max);
}

void validate_bounds(const NetworkBounds& bounds) {
  if (!(bounds.nu < bounds.rho)) {
    throw Error(ErrorCode::kInvalidBounds,
                fmt::format("nu ({}) must be below rho ({})", bounds.nu,
                            bounds.rho));
  }
}

double rssi_utility(const NetworkSnapshot& reading, const NetworkBounds& bounds) {
  validate_bounds(bounds);
  return unit_clamp((reading.rssi - bounds.nu) / (bounds.rho - bounds.nu));
}

void validate_weights(const Weights& w) {
  for (double v : {w.cpu, w.mem, w.net}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidWeights,
                  fmt::format("weight {} outside [0, 1]", v));
    }
  }
  const double sum = w.cpu + w.mem + w.net;
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::kInvalidWeights,
                fmt::format("weights sum to {}, expected 1", sum));
  }
}

double total_utility(double eta, double sigma, double kappa, const Weights& w) {
  validate_weights(w);
  return w.cpu * eta + w.mem * sigma + w.net * kappa;
}

UtilityBreakdown evaluate_edge(const DeviceSnapshot& device,
                               const NetworkSnapshot& network,
                               const TaskSpec& task,
                               const NetworkBounds& bounds, const Weights& w) {
  UtilityBreakdown out;
  out.edge_id = device.edge_id;
  out.eta = cpu_utility(device);
  out.sigma = memory_utility(device, task);
  out.kappa = rssi_utility(network, bounds);
  out.total = total_utility(out.eta, out.sigma, out.kappa, w);
  return out;
}

ScoreTable sum_over_edges(const std::map<RobotId, ScoreTable>& tables) {
  ScoreTable sums;
  for (const auto& [robot, table] : tables) {
    for (const auto& [edge, score] : table) sums[edge] += score;
  }
  if (sums.empty()) {
    throw Error(ErrorCode::kNoCandidates, "no edges in any utility table");
  }
  return sums;
}

}  // namespace offload
