#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace offload {

inline constexpr double kRssiFloorDbm = -120.0;
inline constexpr double kRssiCeilingDbm = -20.0;

/// Log-distance path loss with optional seeded log-normal shadowing.
struct LinkModel {
  double p0 = -40.0;  // dBm at d0
  double path_loss_exponent = 2.2;
  double d0 = 1.0;  // meters
  double shadowing_sigma = 2.0;  // dB
  std::uint64_t seed = 0;
  double base_latency = 0.005;  // seconds added to every delivery
};

void validate_link(const LinkModel& link);

struct NodePose {
  std::string node_id;
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Piecewise-linear path through timed waypoints; holds the end points
/// outside the covered interval.
class Trajectory {
 public:
  struct Waypoint {
    double t;
    double x;
    double y;
  };

  Trajectory() = default;
  explicit Trajectory(std::vector<Waypoint> waypoints);

  static Trajectory stationary(double x, double y) {
    return Trajectory({{0.0, x, y}});
  }

  NodePose pose_at(const std::string& node_id, double t) const;
  const std::vector<Waypoint>& waypoints() const { return waypoints_; }

 private:
  std::vector<Waypoint> waypoints_;
};

double distance(const NodePose& a, const NodePose& b);

/// p0 - 10 n log10(d/d0) + shadowing, clamped to [-120, -20] dBm. Distances
/// below d0 are treated as d0. Shadowing is a pure function of
/// (seed, src, dst, src_pose.t).
double rssi_at(const LinkModel& link, const NodePose& src, const NodePose& dst);

/// Monotone step map from RSSI to link throughput.
class ThroughputTable {
 public:
  struct Step {
    double min_rssi;
    double mbps;
  };

  /// Steps must have strictly decreasing thresholds and non-increasing
  /// rates. Anything at or above `floor_rssi` that misses every step gets
  /// `floor_mbps`; anything below gets 0.
  ThroughputTable(std::vector<Step> steps, double floor_rssi,
                  double floor_mbps = 1.0);

  static ThroughputTable defaults(double nu = -85.0);

  double mbps(double rssi) const;
  const std::vector<Step>& steps() const { return steps_; }
  double floor_rssi() const { return floor_rssi_; }
  double floor_mbps() const { return floor_mbps_; }

 private:
  std::vector<Step> steps_;
  double floor_rssi_;
  double floor_mbps_;
};

struct Message {
  std::string src;
  std::string dst;
  double size = 0.0;  // bytes
  double created_at = 0.0;
  std::string tag;
  std::uint64_t id = 0;
};

struct Delivery {
  bool dropped = false;
  double arrival = 0.0;
};

/// now + base_latency + size / throughput; drop when throughput is 0.
Delivery deliver(const Message& msg, double rssi, double now,
                 const ThroughputTable& table, double base_latency);

/// Applies deliver() and keeps per-(src, dst) FIFO order.
class Transport {
 public:
  Transport(ThroughputTable table, double base_latency)
      : table_(std::move(table)), base_latency_(base_latency) {}

  Delivery send(const Message& msg, double rssi, double now);
  const ThroughputTable& table() const { return table_; }

 private:
  ThroughputTable table_;
  double base_latency_;
  std::map<std::pair<std::string, std::string>, double> last_arrival_;
};

}  // namespace offload
