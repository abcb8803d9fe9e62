#include "offload/netsim.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "offload/error.hpp"
#include "offload/rng.hpp"

namespace offload {

void validate_link(const LinkModel& link) {
  if (!(link.path_loss_exponent >= 1.5 && link.path_loss_exponent <= 6.0)) {
    throw Error(ErrorCode::kConfig,
                fmt::format("path loss exponent {} outside [1.5, 6]",
                            link.path_loss_exponent));
  }
  if (!(link.d0 > 0.0)) {
    throw Error(ErrorCode::kConfig, "reference distance d0 must be > 0");
  }
  if (!(link.shadowing_sigma >= 0.0)) {
    throw Error(ErrorCode::kConfig, "shadowing sigma must be >= 0");
  }
  if (!(link.base_latency >= 0.0)) {
    throw Error(ErrorCode::kConfig, "base latency must be >= 0");
  }
}

Trajectory::Trajectory(std::vector<Waypoint> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.empty()) {
    throw Error(ErrorCode::kConfig, "trajectory needs at least one waypoint");
  }
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    const auto& w = waypoints_[i];
    if (!std::isfinite(w.t) || !std::isfinite(w.x) || !std::isfinite(w.y)) {
      throw Error(ErrorCode::kConfig, "trajectory waypoint is not finite");
    }
    if (i > 0 && !(w.t > waypoints_[i - 1].t)) {
      throw Error(ErrorCode::kConfig,
                  "trajectory waypoint times must be strictly increasing");
    }
  }
}

NodePose Trajectory::pose_at(const std::string& node_id, double t) const {
  NodePose pose{node_id, 0.0, 0.0, t};
  if (waypoints_.empty()) return pose;
  if (t <= waypoints_.front().t) {
    pose.x = waypoints_.front().x;
    pose.y = waypoints_.front().y;
    return pose;
  }
  if (t >= waypoints_.back().t) {
    pose.x = waypoints_.back().x;
    pose.y = waypoints_.back().y;
    return pose;
  }
  auto hi = std::upper_bound(
      waypoints_.begin(), waypoints_.end(), t,
      [](double value, const Waypoint& w) { return value < w.t; });
  auto lo = std::prev(hi);
  const double f = (t - lo->t) / (hi->t - lo->t);
  pose.x = lo->x + f * (hi->x - lo->x);
  pose.y = lo->y + f * (hi->y - lo->y);
  return pose;
}

double distance(const NodePose& a, const NodePose& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double rssi_at(const LinkModel& link, const NodePose& src, const NodePose& dst) {
  const double d = std::max(distance(src, dst), link.d0);
  double rssi = link.p0 - 10.0 * link.path_loss_exponent * std::log10(d / link.d0);
  if (link.shadowing_sigma > 0.0) {
    const std::uint64_t key =
        mix_seed(hash_name(src.node_id), hash_name(dst.node_id));
    const auto tick = static_cast<std::uint64_t>(std::llround(src.t * 1000.0));
    rssi += link.shadowing_sigma * keyed_normal(link.seed, key, tick);
  }
  return std::clamp(rssi, kRssiFloorDbm, kRssiCeilingDbm);
}

ThroughputTable::ThroughputTable(std::vector<Step> steps, double floor_rssi,
                                 double floor_mbps)
    : steps_(std::move(steps)), floor_rssi_(floor_rssi), floor_mbps_(floor_mbps) {
  double prev_rssi = INFINITY;
  double prev_mbps = INFINITY;
  for (const auto& s : steps_) {
    if (!(s.min_rssi < prev_rssi) || !(s.mbps <= prev_mbps) || !(s.mbps >= 0.0)) {
      throw Error(ErrorCode::kConfig,
                  "throughput table must have decreasing thresholds and "
                  "non-increasing non-negative rates");
    }
    prev_rssi = s.min_rssi;
    prev_mbps = s.mbps;
  }
  if (!steps_.empty() && !(floor_rssi_ < steps_.back().min_rssi)) {
    throw Error(ErrorCode::kConfig,
                "throughput floor must lie below the last table threshold");
  }
  if (!(floor_mbps_ >= 0.0) || floor_mbps_ > prev_mbps) {
    throw Error(ErrorCode::kConfig, "throughput floor rate is not monotone");
  }
}

ThroughputTable ThroughputTable::defaults(double nu) {
  return ThroughputTable({{-50.0, 54.0}, {-60.0, 36.0}, {-70.0, 18.0}, {-80.0, 6.0}},
                         nu, 1.0);
}

double ThroughputTable::mbps(double rssi) const {
  for (const auto& s : steps_) {
    if (rssi >= s.min_rssi) return s.mbps;
  }
  return rssi >= floor_rssi_ ? floor_mbps_ : 0.0;
}

Delivery deliver(const Message& msg, double rssi, double now,
                 const ThroughputTable& table, double base_latency) {
  if (!(msg.size > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("message {} from {} has non-positive size", msg.id,
                            msg.src));
  }
  const double mbps = table.mbps(rssi);
  if (mbps <= 0.0) return {true, now};
  return {false, now + base_latency + msg.size * 8.0 / (mbps * 1e6)};
}

Delivery Transport::send(const Message& msg, double rssi, double now) {
  Delivery d = deliver(msg, rssi, now, table_, base_latency_);
  if (d.dropped) return d;
  auto& last = last_arrival_[{msg.src, msg.dst}];
  d.arrival = std::max(d.arrival, last);
  last = d.arrival;
  return d;
}

}  // namespace offload
