#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "offload/consensus.hpp"
#include "offload/profiling.hpp"
#include "offload/scenario.hpp"

namespace offload {

/// Single-threaded event queue ordered by (time, phase, insertion order).
/// The phase ranks event kinds that share a timestamp.
class EventQueue {
 public:
  using Action = std::function<void()>;

  void schedule(double t, int phase, Action action);
  bool empty() const { return heap_.empty(); }
  double next_time() const { return heap_.top().t; }

  /// Pops and runs the earliest event; returns its time.
  double run_next();

 private:
  struct Event {
    double t;
    int phase;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.t != b.t) return a.t > b.t;
      if (a.phase != b.phase) return a.phase > b.phase;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t seq_ = 0;
};

/// Seeded Poisson schedule of background-load spikes over [0, horizon).
std::vector<Spike> inject_spikes(const SpikeModel& model,
                                 const std::vector<EdgeId>& edges,
                                 std::uint64_t seed, double horizon);

struct TaskMessage {
  RobotId robot;
  std::uint64_t id = 0;
  double created_at = 0.0;
};

/// Counts processed messages per robot; a merged output is produced each
/// time every robot has contributed one more message.
class MergeTracker {
 public:
  explicit MergeTracker(std::vector<RobotId> robots);

  /// Returns true when this message completes a merged output.
  bool on_processed(const RobotId& robot);
  std::uint64_t merged() const { return merged_; }

 private:
  std::map<RobotId, std::uint64_t> processed_;
  std::uint64_t merged_ = 0;
};

struct EdgeState {
  EdgeId id;
  double capacity_factor = 1.0;
  double reference_rate = 10.0;  // msg/s on an idle reference CPU
  double cpu_max = 100.0;
  double mem_max = 4096.0;
  std::deque<TaskMessage> queue;
  double credit = 0.0;
};

/// capacity_factor * (1 - cpu_used / 100) * reference_rate, never negative.
double service_rate(double capacity_factor, double cpu_used, double reference_rate);

struct ExecuteResult {
  std::vector<TaskMessage> processed;
  std::size_t merged_events = 0;
  double cpu_used = 0.0;  // background plus task share for this step
  double mem_used = 0.0;
};

/// Advances one edge by dt. `background_cpu` (percent) is the load from
/// everything but the task and sets the service rate; each processed
/// message then adds its share of the step's CPU time on top.
ExecuteResult edge_execute(EdgeState& edge, const std::vector<TaskMessage>& incoming,
                           double background_cpu, double background_mem,
                           const TaskSpec& task, double dt, MergeTracker& merge);

struct EdgeMetrics {
  double mean_cpu = 0.0;  // percent
  double peak_cpu = 0.0;
  double mean_mem = 0.0;  // percent of mem_max
  double peak_mem = 0.0;
  double mean_throughput = 0.0;  // Mbps received over the task latency
  std::uint64_t processed = 0;
};

struct SeriesRow {
  double t = 0.0;
  std::string host;
  std::vector<double> cpu;
  std::vector<double> mem;
  std::vector<std::size_t> queue;
  std::vector<double> throughput;
  std::uint64_t generated = 0;
  std::uint64_t processed = 0;
  std::uint64_t dropped = 0;
  std::uint64_t merged = 0;
};

struct MetricsReport {
  std::string scheme;
  std::uint64_t seed = 0;
  std::vector<EdgeId> edges;
  std::vector<RobotId> robots;
  std::map<EdgeId, EdgeMetrics> per_edge;

  double task_latency = 0.0;  // seconds until the whole budget resolved
  bool completed = false;
  double processing_frequency = 0.0;  // merged outputs per second
  std::uint64_t merged_outputs = 0;
  double mean_message_latency = 0.0;
  std::size_t switch_count = 0;
  std::size_t spike_count = 0;

  std::uint64_t budget = 0;
  std::uint64_t generated = 0;
  std::uint64_t processed = 0;
  std::uint64_t queued = 0;
  std::uint64_t dropped = 0;

  std::map<RobotId, std::vector<Decision>> decision_logs;
  std::map<RobotId, std::size_t> remap_counts;
  std::vector<SeriesRow> series;

  bool conserved() const { return generated == processed + queued + dropped; }
  double cpu_balance_variance() const;
  double mem_balance_variance() const;
  double total_throughput() const;

  std::string metrics_csv() const;
  /// Decision log of one robot's executor (first robot when empty).
  std::string decisions_csv(const RobotId& robot = {}) const;
  std::string summary_text() const;
  nlohmann::json summary_json() const;
};

MetricsReport run_scenario(const ScenarioConfig& config);

}  // namespace offload
