#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "offload/utility.hpp"

namespace offload {

enum class TraceKind { kSynthetic, kCsvReplay };

struct TraceSource {
  TraceKind kind = TraceKind::kSynthetic;
  std::uint64_t seed = 0;
  double sample_period = 1.0;
};

/// A background load burst on one edge (an inference model started by
/// someone else, for instance).
struct Spike {
  EdgeId edge_id;
  double start = 0.0;
  double duration = 0.0;
  double cpu_load = 0.0;  // percentage points
  double mem_load = 0.0;  // MB

  bool active_at(double t) const { return t >= start && t < start + duration; }
  bool operator==(const Spike&) const = default;
};

struct SyntheticDeviceModel {
  double cpu_max = 100.0;
  double mem_max = 4096.0;
  double base_cpu = 0.0;  // percent
  double base_mem = 0.0;  // MB
  double noise = 2.0;     // +/- percentage points, uniform
};

/// Background readings at time t: base + active spikes + seeded noise,
/// clamped to the device limits. `tick` keys the noise draw.
DeviceSnapshot sample_device_synthetic(const EdgeId& edge,
                                       const SyntheticDeviceModel& model,
                                       const std::vector<Spike>& spikes,
                                       double t, std::uint64_t seed,
                                       std::uint64_t tick);

/// Load the hosted task adds on top of the background readings.
struct TaskLoad {
  double cpu = 0.0;  // percentage points
  double mem = 0.0;  // MB
};

class DeviceProfiler {
 public:
  virtual ~DeviceProfiler() = default;

  const EdgeId& edge_id() const { return edge_id_; }

  /// Time of the next snapshot; nullopt once the trace is exhausted.
  virtual std::optional<double> next_time() const = 0;

  /// Emits the snapshot at next_time() and advances.
  virtual DeviceSnapshot emit(const TaskLoad& load) = 0;

 protected:
  explicit DeviceProfiler(EdgeId id) : edge_id_(std::move(id)) {}

 private:
  EdgeId edge_id_;
};

class SyntheticProfiler final : public DeviceProfiler {
 public:
  SyntheticProfiler(EdgeId id, SyntheticDeviceModel model, TraceSource source,
                    double horizon);

  void set_spikes(std::vector<Spike> spikes) { spikes_ = std::move(spikes); }
  const std::vector<Spike>& spikes() const { return spikes_; }

  std::optional<double> next_time() const override;
  DeviceSnapshot emit(const TaskLoad& load) override;

  DeviceSnapshot background_at(double t) const;

 private:
  SyntheticDeviceModel model_;
  TraceSource source_;
  double horizon_;
  std::uint64_t tick_ = 1;
  std::vector<Spike> spikes_;
};

class ReplayProfiler final : public DeviceProfiler {
 public:
  ReplayProfiler(EdgeId id, std::vector<DeviceSnapshot> rows);

  std::optional<double> next_time() const override;
  DeviceSnapshot emit(const TaskLoad& load) override;

 private:
  std::vector<DeviceSnapshot> rows_;
  std::size_t next_ = 0;
};

struct ProfilerConfig {
  EdgeId edge_id;
  TraceSource source;
  SyntheticDeviceModel model;          // synthetic only
  std::vector<DeviceSnapshot> trace;   // csv-replay only
};

using ProfilerSet = std::map<EdgeId, std::unique_ptr<DeviceProfiler>>;

ProfilerSet init_profilers(const std::vector<ProfilerConfig>& configs,
                           double horizon);

// Trace CSV files. Header rows are required:
//   t,edge_id,cpu_max,cpu_used,mem_max,mem_used
//   t,robot_id,edge_id,rssi
// Errors carry "file:line:" prefixes.
std::vector<DeviceSnapshot> parse_device_trace(const std::string& text,
                                               const std::string& origin);
std::vector<NetworkSnapshot> parse_network_trace(const std::string& text,
                                                 const std::string& origin);
std::vector<DeviceSnapshot> read_device_trace(const std::filesystem::path& path);
std::vector<NetworkSnapshot> read_network_trace(const std::filesystem::path& path);

std::string format_device_trace(const std::vector<DeviceSnapshot>& rows);
std::string format_network_trace(const std::vector<NetworkSnapshot>& rows);

/// Freshest per-edge view assembled by one robot's gateway.
struct EdgeData {
  EdgeId edge_id;
  DeviceSnapshot device;
  std::optional<NetworkSnapshot> network;
  double device_age = 0.0;
  double network_age = 0.0;
  bool stale = false;
};

class Gateway {
 public:
  /// Readings older than stale_after seconds are flagged stale.
  Gateway(RobotId robot_id, double stale_after);

  const RobotId& robot_id() const { return robot_id_; }

  void ingest(const DeviceSnapshot& snapshot);
  void ingest(const NetworkSnapshot& snapshot);

  /// Latest snapshot per edge with timestamp <= now. Edges that never
  /// reported are absent from the map.
  std::map<EdgeId, EdgeData> collect(double now) const;

 private:
  static constexpr std::size_t kHistory = 8;

  RobotId robot_id_;
  double stale_after_;
  std::map<EdgeId, std::deque<DeviceSnapshot>> devices_;
  std::map<EdgeId, std::deque<NetworkSnapshot>> networks_;
};

}  // namespace offload
