#include "offload/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "offload/netsim.hpp"
#include "offload/rng.hpp"
#include "offload/scheduler.hpp"

namespace offload {

void EventQueue::schedule(double t, int phase, Action action) {
  heap_.push(Event{t, phase, seq_++, std::move(action)});
}

double EventQueue::run_next() {
  Event ev = heap_.top();
  heap_.pop();
  ev.action();
  return ev.t;
}

std::vector<Spike> inject_spikes(const SpikeModel& model,
                                 const std::vector<EdgeId>& edges,
                                 std::uint64_t seed, double horizon) {
  std::vector<Spike> out;
  if (model.rate <= 0.0 || edges.empty()) return out;
  Rng rng(mix_seed(seed, hash_name("spikes")));
  double t = 0.0;
  while (true) {
    t += rng.exponential(model.rate);
    if (t >= horizon) break;
    Spike s;
    s.start = t;
    s.edge_id = edges[rng.index(edges.size())];
    s.duration = rng.uniform(model.duration_min, model.duration_max);
    s.cpu_load = rng.uniform(model.cpu_min, model.cpu_max);
    s.mem_load = rng.uniform(model.mem_min, model.mem_max);
    out.push_back(std::move(s));
  }
  return out;
}

MergeTracker::MergeTracker(std::vector<RobotId> robots) {
  for (auto& r : robots) processed_.emplace(std::move(r), 0);
}

bool MergeTracker::on_processed(const RobotId& robot) {
  auto it = processed_.find(robot);
  if (it == processed_.end()) return false;
  ++it->second;
  std::uint64_t lowest = it->second;
  for (const auto& [r, n] : processed_) lowest = std::min(lowest, n);
  if (lowest > merged_) {
    merged_ = lowest;
    return true;
  }
  return false;
}

double service_rate(double capacity_factor, double cpu_used, double reference_rate) {
  const double headroom = std::clamp(1.0 - cpu_used / 100.0, 0.0, 1.0);
  return capacity_factor * headroom * reference_rate;
}

ExecuteResult edge_execute(EdgeState& edge, const std::vector<TaskMessage>& incoming,
                           double background_cpu, double background_mem,
                           const TaskSpec& task, double dt, MergeTracker& merge) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "edge_execute needs dt > 0");
  for (const auto& m : incoming) edge.queue.push_back(m);

  ExecuteResult r;
  if (edge.queue.empty()) {
    edge.credit = 0.0;
  } else {
    edge.credit += service_rate(edge.capacity_factor, background_cpu, edge.reference_rate) * dt;
    while (edge.credit >= 1.0 && !edge.queue.empty()) {
      r.processed.push_back(edge.queue.front());
      edge.queue.pop_front();
      edge.credit -= 1.0;
      if (merge.on_processed(r.processed.back().robot)) ++r.merged_events;
    }
    if (edge.queue.empty()) edge.credit = 0.0;
  }
  // Percent of this step the task kept the edge's CPU busy.
  const double per_message =
      task.work_per_message / (edge.capacity_factor * dt * 1000.0) * 100.0;
  r.cpu_used = std::clamp(background_cpu + per_message * static_cast<double>(r.processed.size()),
                          0.0, edge.cpu_max);
  r.mem_used = std::clamp(
      background_mem + task.message_mem * static_cast<double>(edge.queue.size()), 0.0,
      edge.mem_max);
  return r;
}

namespace {

enum Phase : int {
  kSample = 0,
  kExec = 1,
  kDecide = 2,
  kCompare = 3,
  kConsensus = 4,
  kDeliver = 5,
  kGenerate = 6,
  kMetrics = 7,
};

std::string data_channel(const RobotId& robot) { return "/" + robot + "/map"; }

class Engine {
 public:
  explicit Engine(const ScenarioConfig& cfg);
  MetricsReport run();

 private:
  struct EdgeRuntime {
    const EdgeConfig* cfg = nullptr;
    EdgeState state;
    SyntheticProfiler* synthetic = nullptr;
    std::optional<DeviceSnapshot> last_replayed;
    std::optional<DeviceSnapshot> last_reported;
    std::vector<TaskMessage> inbox;
    double busy_ms = 0.0;
    double last_sample_t = 0.0;
    double bits_tick = 0.0;
    double bits_total = 0.0;
    double cpu_sum = 0.0, cpu_peak = 0.0, mem_sum = 0.0, mem_peak = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t processed = 0;
  };

  struct RobotRuntime {
    const RobotConfig* cfg = nullptr;
    std::unique_ptr<Gateway> gateway;
    std::unique_ptr<Scheduler> scheduler;
    std::unique_ptr<Executor> executor;
    std::map<std::uint64_t, std::map<RobotId, EdgeId>> proposals;
    std::deque<TaskMessage> outbox;
    std::uint64_t budget = 0;
    std::uint64_t sent = 0;
  };

  NodePose robot_pose(const RobotRuntime& r, double t) const {
    return r.cfg->trajectory.pose_at(r.cfg->id, t);
  }
  NodePose edge_pose(const EdgeRuntime& e, double t) const {
    return NodePose{e.cfg->id, e.cfg->x, e.cfg->y, t};
  }
  double link_rssi(const RobotRuntime& r, const EdgeRuntime& e, double t) const;
  double background_cpu(const EdgeRuntime& e, double t) const;
  double background_mem(const EdgeRuntime& e, double t) const;

  void load_traces();
  void schedule_device_sample(const EdgeId& id);
  void schedule_network_samples();
  void on_exec_tick(std::uint64_t k);
  void on_decision(std::uint64_t k);
  void on_compare(std::uint64_t k);
  void on_consensus(std::uint64_t k);
  void on_generate(const RobotId& robot, std::uint64_t n);
  void on_metrics_tick(std::uint64_t k);
  void route(RobotRuntime& r, const TaskMessage& m);
  void flush_outboxes();
  void resolve_one();
  void broadcast(const RobotId& from, const std::function<void(RobotRuntime&, double)>& on_arrival);

  const ScenarioConfig& cfg_;
  LinkModel link_;
  std::unique_ptr<Transport> transport_;
  std::vector<EdgeId> edge_ids_;
  std::vector<RobotId> robot_ids_;
  std::map<EdgeId, EdgeRuntime> edges_;
  std::map<RobotId, RobotRuntime> robots_;
  ProfilerSet profilers_;
  std::vector<Spike> spikes_;
  std::map<std::pair<RobotId, EdgeId>, double> replay_rssi_;
  std::vector<NetworkSnapshot> net_rows_;
  MergeTracker merge_;
  EventQueue queue_;

  double now_ = 0.0;
  bool done_ = false;
  std::uint64_t budget_ = 0;
  std::uint64_t generated_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t in_flight_ = 0;
  std::uint64_t resolved_ = 0;
  std::uint64_t next_message_id_ = 1;
  double latency_sum_ = 0.0;
  std::vector<SeriesRow> series_;
};

Engine::Engine(const ScenarioConfig& cfg)
    : cfg_(cfg), merge_([&] {
        std::vector<RobotId> ids;
        for (const auto& r : cfg.robots) ids.push_back(r.id);
        return ids;
      }()) {
  validate(cfg_);
  link_ = cfg_.link;
  link_.seed = mix_seed(cfg_.seed, hash_name("shadowing"));
  transport_ = std::make_unique<Transport>(cfg_.throughput_table(), link_.base_latency);
  edge_ids_ = cfg_.edge_ids();
  for (const auto& r : cfg_.robots) robot_ids_.push_back(r.id);

  spikes_ = inject_spikes(cfg_.spikes, edge_ids_, cfg_.seed, cfg_.duration);

  for (const auto& e : cfg_.edges) {
    EdgeRuntime rt;
    rt.cfg = &e;
    rt.state.id = e.id;
    rt.state.capacity_factor = e.capacity_factor;
    rt.state.reference_rate = cfg_.reference_rate();
    rt.state.cpu_max = e.cpu_max;
    rt.state.mem_max = e.mem_max;
    edges_.emplace(e.id, std::move(rt));
  }
  load_traces();

  for (auto& [id, e] : edges_) {
    if (auto* s = dynamic_cast<SyntheticProfiler*>(profilers_.at(id).get())) {
      std::vector<Spike> mine;
      for (const auto& sp : spikes_) {
        if (sp.edge_id == id) mine.push_back(sp);
      }
      s->set_spikes(std::move(mine));
      e.synthetic = s;
    }
  }

  std::vector<std::string> channels;
  for (const auto& r : robot_ids_) channels.push_back(data_channel(r));

  for (const auto& rc : cfg_.robots) {
    RobotRuntime rt;
    rt.cfg = &rc;
    rt.gateway = std::make_unique<Gateway>(rc.id, cfg_.stale_after());
    rt.executor = std::make_unique<Executor>(rc.id, cfg_.task.task_id, channels,
                                             cfg_.robots.size());
    if (cfg_.scheme.is_dynamic()) {
      SchedulerState st;
      st.robot_id = rc.id;
      st.edges = edge_ids_;
      st.weights = cfg_.weights();
      st.sticky_bonus = cfg_.sticky_bonus;
      rt.scheduler = std::make_unique<Scheduler>(std::move(st), cfg_.task, cfg_.bounds,
                                                 cfg_.table_stale_after());
    } else {
      rt.executor->deploy(cfg_.scheme.target);
    }
    rt.budget = static_cast<std::uint64_t>(std::llround(rc.input_rate * cfg_.nominal_duration));
    budget_ += rt.budget;
    robots_.emplace(rc.id, std::move(rt));
  }
}

void Engine::load_traces() {
  std::map<EdgeId, std::vector<DeviceSnapshot>> rows;
  auto take = [&](const std::vector<DeviceSnapshot>& trace, const std::string& origin,
                  const std::optional<EdgeId>& only) {
    for (const auto& s : trace) {
      if (edges_.count(s.edge_id) == 0 || (only && s.edge_id != *only)) {
        throw Error(ErrorCode::kParse,
                    fmt::format("{}: row at t={} names unexpected edge '{}'", origin, s.t,
                                s.edge_id));
      }
      rows[s.edge_id].push_back(s);
    }
  };
  if (cfg_.device_trace) {
    take(read_device_trace(*cfg_.device_trace), cfg_.device_trace->string(), std::nullopt);
  }
  for (const auto& e : cfg_.edges) {
    if (e.trace) take(read_device_trace(*e.trace), e.trace->string(), e.id);
  }

  std::vector<ProfilerConfig> pcs;
  for (const auto& e : cfg_.edges) {
    ProfilerConfig pc;
    pc.edge_id = e.id;
    pc.source.sample_period = cfg_.sample_period;
    pc.source.seed = mix_seed(cfg_.seed, hash_name("device-noise"));
    pc.model = SyntheticDeviceModel{e.cpu_max, e.mem_max, e.base_cpu, e.base_mem, e.noise};
    if (auto it = rows.find(e.id); it != rows.end()) {
      pc.source.kind = TraceKind::kCsvReplay;
      pc.trace = it->second;
    } else if (cfg_.device_trace) {
      throw Error(ErrorCode::kParse, fmt::format("{}: no rows for edge '{}'",
                                                 cfg_.device_trace->string(), e.id));
    }
    pcs.push_back(std::move(pc));
  }
  profilers_ = init_profilers(pcs, cfg_.duration);

  if (cfg_.network_trace) {
    net_rows_ = read_network_trace(*cfg_.network_trace);
    for (const auto& s : net_rows_) {
      if (edges_.count(s.edge_id) == 0 ||
          std::find(robot_ids_.begin(), robot_ids_.end(), s.robot_id) == robot_ids_.end()) {
        throw Error(ErrorCode::kParse,
                    fmt::format("{}: row at t={} names unknown link {}-{}",
                                cfg_.network_trace->string(), s.t, s.robot_id, s.edge_id));
      }
    }
  }
}

double Engine::link_rssi(const RobotRuntime& r, const EdgeRuntime& e, double t) const {
  if (auto it = replay_rssi_.find({r.cfg->id, e.cfg->id}); it != replay_rssi_.end()) {
    return it->second;
  }
  return rssi_at(link_, robot_pose(r, t), edge_pose(e, t));
}

double Engine::background_cpu(const EdgeRuntime& e, double t) const {
  if (e.synthetic) return e.synthetic->background_at(t).cpu_used;
  return e.last_replayed ? e.last_replayed->cpu_used : 0.0;
}

double Engine::background_mem(const EdgeRuntime& e, double t) const {
  if (e.synthetic) return e.synthetic->background_at(t).mem_used;
  return e.last_replayed ? e.last_replayed->mem_used : 0.0;
}

void Engine::schedule_device_sample(const EdgeId& id) {
  auto next = profilers_.at(id)->next_time();
  if (!next || *next > cfg_.duration) return;
  queue_.schedule(*next, kSample, [this, id] {
    EdgeRuntime& e = edges_.at(id);
    TaskLoad load;
    const double window = now_ - e.last_sample_t;
    if (window > 0.0) load.cpu = e.busy_ms / (window * 1000.0) * 100.0;
    load.mem = cfg_.task.message_mem * static_cast<double>(e.state.queue.size());
    DeviceSnapshot snap = profilers_.at(id)->emit(load);
    if (!e.synthetic) e.last_replayed = snap;
    e.last_reported = snap;
    e.busy_ms = 0.0;
    e.last_sample_t = now_;
    const double mem_pct = snap.mem_used / snap.mem_max * 100.0;
    e.cpu_sum += snap.cpu_used;
    e.cpu_peak = std::max(e.cpu_peak, snap.cpu_used);
    e.mem_sum += mem_pct;
    e.mem_peak = std::max(e.mem_peak, mem_pct);
    ++e.samples;
    for (auto& [rid, r] : robots_) r.gateway->ingest(snap);
    schedule_device_sample(id);
  });
}

void Engine::schedule_network_samples() {
  if (cfg_.network_trace) {
    for (std::size_t i = 0; i < net_rows_.size(); ++i) {
      if (net_rows_[i].t > cfg_.duration) continue;
      queue_.schedule(net_rows_[i].t, kSample, [this, i] {
        const auto& s = net_rows_[i];
        replay_rssi_[{s.robot_id, s.edge_id}] = s.rssi;
        robots_.at(s.robot_id).gateway->ingest(s);
      });
    }
    return;
  }
  const auto ticks = static_cast<std::uint64_t>(std::floor(cfg_.duration / cfg_.sample_period));
  for (std::uint64_t k = 1; k <= ticks; ++k) {
    queue_.schedule(static_cast<double>(k) * cfg_.sample_period, kSample,
                    [this] {
                      for (auto& [rid, r] : robots_) {
                        for (auto& [eid, e] : edges_) {
                          r.gateway->ingest(
                              NetworkSnapshot{rid, eid, now_, link_rssi(r, e, now_)});
                        }
                      }
                    });
  }
}

void Engine::resolve_one() {
  ++resolved_;
  if (resolved_ >= budget_) done_ = true;
}

void Engine::on_exec_tick(std::uint64_t k) {
  for (auto& [id, e] : edges_) {
    std::vector<TaskMessage> incoming;
    incoming.swap(e.inbox);
    const auto r = edge_execute(e.state, incoming, background_cpu(e, now_),
                                background_mem(e, now_), cfg_.task, cfg_.exec_step, merge_);
    e.busy_ms += static_cast<double>(r.processed.size()) * cfg_.task.work_per_message /
                 e.state.capacity_factor;
    for (const auto& m : r.processed) {
      ++processed_;
      ++e.processed;
      latency_sum_ += now_ - m.created_at;
      resolve_one();
    }
  }
  if (done_) return;
  const double next = static_cast<double>(k + 1) * cfg_.exec_step;
  if (next <= cfg_.duration) {
    queue_.schedule(next, kExec, [this, k] { on_exec_tick(k + 1); });
  }
}

void Engine::broadcast(const RobotId& from,
                       const std::function<void(RobotRuntime&, double)>& on_arrival) {
  const RobotRuntime& src = robots_.at(from);
  for (auto& [rid, dst] : robots_) {
    if (rid == from) continue;
    Message m;
    m.src = from;
    m.dst = rid;
    m.size = cfg_.control_message_size;
    m.created_at = now_;
    m.tag = "control";
    const double rssi = rssi_at(link_, robot_pose(src, now_), robot_pose(dst, now_));
    const Delivery d = transport_->send(m, rssi, now_);
    if (d.dropped) continue;
    RobotRuntime* target = &dst;
    queue_.schedule(d.arrival, kDeliver,
                    [on_arrival, target, t = d.arrival] { on_arrival(*target, t); });
  }
}

void Engine::on_decision(std::uint64_t k) {
  for (auto& [rid, r] : robots_) {
    r.scheduler->set_selected_edge(r.executor->current());
    const auto msg = r.scheduler->compute_own(r.gateway->collect(now_), now_, k);
    const std::string wire = encode_table(msg);
    broadcast(rid, [wire](RobotRuntime& dst, double t) {
      dst.scheduler->receive_peer(decode_table(wire), t);
    });
  }
  queue_.schedule(now_ + cfg_.exchange_window, kCompare, [this, k] { on_compare(k); });
  queue_.schedule(now_ + 2.0 * cfg_.exchange_window, kConsensus,
                  [this, k] { on_consensus(k); });
  const double next = static_cast<double>(k + 1) * cfg_.decision_period;
  if (next <= cfg_.duration) {
    queue_.schedule(next, kDecide, [this, k] { on_decision(k + 1); });
  }
}

void Engine::on_compare(std::uint64_t k) {
  for (auto& [rid, r] : robots_) {
    const Proposal p = r.scheduler->propose(now_);
    r.proposals[k][rid] = p.max_edge;
    broadcast(rid, [k, from = rid, edge = p.max_edge](RobotRuntime& dst, double) {
      dst.proposals[k][from] = edge;
    });
  }
}

void Engine::on_consensus(std::uint64_t k) {
  for (auto& [rid, r] : robots_) {
    r.executor->on_proposals(r.proposals[k], k);
    r.proposals.erase(r.proposals.begin(), r.proposals.upper_bound(k));
  }
  flush_outboxes();
}

void Engine::route(RobotRuntime& r, const TaskMessage& m) {
  const ChannelBinding& binding = r.executor->registry().resolve(data_channel(r.cfg->id));
  if (!binding.target) {
    r.outbox.push_back(m);
    return;
  }
  const EdgeId edge = *binding.target;
  EdgeRuntime& e = edges_.at(edge);
  Message wire;
  wire.src = r.cfg->id;
  wire.dst = edge;
  wire.size = cfg_.task.message_size;
  wire.created_at = m.created_at;
  wire.tag = binding.channel;
  wire.id = m.id;
  const Delivery d = transport_->send(wire, link_rssi(r, e, now_), now_);
  if (d.dropped) {
    ++dropped_;
    resolve_one();
    return;
  }
  ++in_flight_;
  queue_.schedule(d.arrival, kDeliver, [this, edge, m] {
    EdgeRuntime& dst = edges_.at(edge);
    --in_flight_;
    dst.inbox.push_back(m);
    const double bits = cfg_.task.message_size * 8.0;
    dst.bits_tick += bits;
    dst.bits_total += bits;
  });
}

void Engine::flush_outboxes() {
  for (auto& [rid, r] : robots_) {
    if (r.outbox.empty()) continue;
    if (!r.executor->registry().resolve(data_channel(rid)).target) continue;
    std::deque<TaskMessage> pending;
    pending.swap(r.outbox);
    for (const auto& m : pending) route(r, m);
  }
}

void Engine::on_generate(const RobotId& robot, std::uint64_t n) {
  RobotRuntime& r = robots_.at(robot);
  TaskMessage m{robot, next_message_id_++, now_};
  ++generated_;
  ++r.sent;
  route(r, m);
  if (r.sent < r.budget) {
    const double next = static_cast<double>(n + 1) / r.cfg->input_rate;
    if (next <= cfg_.duration) {
      queue_.schedule(next, kGenerate, [this, robot, n] { on_generate(robot, n + 1); });
    }
  }
}

void Engine::on_metrics_tick(std::uint64_t k) {
  SeriesRow row;
  row.t = now_;
  const auto& host = robots_.at(robot_ids_.front()).executor->current();
  row.host = host.value_or("-");
  for (auto& [id, e] : edges_) {
    row.cpu.push_back(e.last_reported ? e.last_reported->cpu_used : 0.0);
    row.mem.push_back(e.last_reported
                          ? e.last_reported->mem_used / e.last_reported->mem_max * 100.0
                          : 0.0);
    row.queue.push_back(e.state.queue.size() + e.inbox.size());
    row.throughput.push_back(e.bits_tick / cfg_.sample_period / 1e6);
    e.bits_tick = 0.0;
  }
  row.generated = generated_;
  row.processed = processed_;
  row.dropped = dropped_;
  row.merged = merge_.merged();
  series_.push_back(std::move(row));
  const double next = static_cast<double>(k + 1) * cfg_.sample_period;
  if (next <= cfg_.duration) {
    queue_.schedule(next, kMetrics, [this, k] { on_metrics_tick(k + 1); });
  }
}

MetricsReport Engine::run() {
  for (const auto& id : edge_ids_) schedule_device_sample(id);
  schedule_network_samples();
  queue_.schedule(cfg_.exec_step, kExec, [this] { on_exec_tick(1); });
  if (cfg_.scheme.is_dynamic()) {
    queue_.schedule(cfg_.decision_period, kDecide, [this] { on_decision(1); });
  }
  for (auto& [rid, r] : robots_) {
    if (r.budget == 0) continue;
    const double first = 1.0 / r.cfg->input_rate;
    if (first <= cfg_.duration) {
      queue_.schedule(first, kGenerate, [this, id = rid] { on_generate(id, 1); });
    }
  }
  queue_.schedule(cfg_.sample_period, kMetrics, [this] { on_metrics_tick(1); });
  if (budget_ == 0) done_ = true;

  while (!done_ && !queue_.empty()) {
    if (queue_.next_time() > cfg_.duration) break;
    now_ = queue_.next_time();
    queue_.run_next();
  }
  // Stopping early is safe once every budgeted message is resolved, but the
  // task only completes if all of them were actually processed.
  const bool completed = done_ && processed_ >= budget_;
  const double end = completed ? now_ : cfg_.duration;

  MetricsReport rep;
  rep.scheme = cfg_.scheme.name();
  rep.seed = cfg_.seed;
  rep.edges = edge_ids_;
  rep.robots = robot_ids_;
  rep.task_latency = end;
  rep.completed = completed;
  rep.merged_outputs = merge_.merged();
  rep.processing_frequency = end > 0.0 ? static_cast<double>(rep.merged_outputs) / end : 0.0;
  rep.mean_message_latency =
      processed_ > 0 ? latency_sum_ / static_cast<double>(processed_) : 0.0;
  rep.spike_count = spikes_.size();
  rep.budget = budget_;
  rep.generated = generated_;
  rep.processed = processed_;
  rep.dropped = dropped_;

  std::uint64_t queued = in_flight_;
  for (const auto& [id, e] : edges_) {
    queued += e.state.queue.size() + e.inbox.size();
    EdgeMetrics m;
    if (e.samples > 0) {
      m.mean_cpu = e.cpu_sum / static_cast<double>(e.samples);
      m.mean_mem = e.mem_sum / static_cast<double>(e.samples);
    }
    m.peak_cpu = e.cpu_peak;
    m.peak_mem = e.mem_peak;
    m.mean_throughput = end > 0.0 ? e.bits_total / end / 1e6 : 0.0;
    m.processed = e.processed;
    rep.per_edge.emplace(id, m);
  }
  for (const auto& [rid, r] : robots_) {
    queued += r.outbox.size();
    rep.decision_logs[rid] = r.executor->log();
    rep.remap_counts[rid] = r.executor->remap_count();
  }
  rep.queued = queued;
  rep.switch_count = rep.remap_counts.at(robot_ids_.front());
  rep.series = std::move(series_);
  return rep;
}

double variance(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size());
}

}  // namespace

double MetricsReport::cpu_balance_variance() const {
  std::vector<double> xs;
  for (const auto& [id, m] : per_edge) xs.push_back(m.mean_cpu);
  return variance(xs);
}

double MetricsReport::mem_balance_variance() const {
  std::vector<double> xs;
  for (const auto& [id, m] : per_edge) xs.push_back(m.mean_mem);
  return variance(xs);
}

double MetricsReport::total_throughput() const {
  double sum = 0.0;
  for (const auto& [id, m] : per_edge) sum += m.mean_throughput;
  return sum;
}

std::string MetricsReport::metrics_csv() const {
  std::string out = "t,host";
  for (const auto& e : edges) {
    out += fmt::format(",cpu_{0},mem_{0},queue_{0},thpt_{0}", e);
  }
  out += ",generated,processed,dropped,merged\n";
  for (const auto& row : series) {
    out += fmt::format("{:.3f},{}", row.t, row.host);
    for (std::size_t i = 0; i < row.cpu.size(); ++i) {
      out += fmt::format(",{:.6f},{:.6f},{},{:.6f}", row.cpu[i], row.mem[i], row.queue[i],
                         row.throughput[i]);
    }
    out += fmt::format(",{},{},{},{}\n", row.generated, row.processed, row.dropped,
                       row.merged);
  }
  return out;
}

std::string MetricsReport::decisions_csv(const RobotId& robot) const {
  std::string out = decision_csv_header(edges) + "\n";
  const RobotId& who = robot.empty() && !robots.empty() ? robots.front() : robot;
  auto it = decision_logs.find(who);
  if (it == decision_logs.end()) return out;
  for (const auto& d : it->second) out += decision_csv_row(d, edges) + "\n";
  return out;
}

std::string MetricsReport::summary_text() const {
  std::string out;
  out += fmt::format("scheme              {}\n", scheme);
  out += fmt::format("seed                {}\n", seed);
  out += fmt::format("completed           {}\n", completed ? "yes" : "no");
  out += fmt::format("task latency        {:.3f} s\n", task_latency);
  out += fmt::format("merged outputs      {}\n", merged_outputs);
  out += fmt::format("frequency           {:.4f} Hz\n", processing_frequency);
  out += fmt::format("mean msg latency    {:.4f} s\n", mean_message_latency);
  out += fmt::format("switches            {}\n", switch_count);
  out += fmt::format("spikes injected     {}\n", spike_count);
  out += fmt::format("messages            budget {} generated {} processed {} queued {} "
                     "dropped {}\n",
                     budget, generated, processed, queued, dropped);
  out += fmt::format("cpu balance var     {:.4f}\n", cpu_balance_variance());
  out += fmt::format("mem balance var     {:.4f}\n", mem_balance_variance());
  out += "edge   mean_cpu  peak_cpu  mean_mem  peak_mem  thpt_mbps  processed\n";
  for (const auto& e : edges) {
    const auto& m = per_edge.at(e);
    out += fmt::format("{:<6} {:8.2f}  {:8.2f}  {:8.2f}  {:8.2f}  {:9.4f}  {:9}\n", e,
                       m.mean_cpu, m.peak_cpu, m.mean_mem, m.peak_mem, m.mean_throughput,
                       m.processed);
  }
  return out;
}

nlohmann::json MetricsReport::summary_json() const {
  nlohmann::json j;
  j["scheme"] = scheme;
  j["seed"] = seed;
  j["completed"] = completed;
  j["task_latency"] = task_latency;
  j["merged_outputs"] = merged_outputs;
  j["processing_frequency"] = processing_frequency;
  j["mean_message_latency"] = mean_message_latency;
  j["switch_count"] = switch_count;
  j["spike_count"] = spike_count;
  j["messages"] = {{"budget", budget},
                   {"generated", generated},
                   {"processed", processed},
                   {"queued", queued},
                   {"dropped", dropped}};
  j["cpu_balance_variance"] = cpu_balance_variance();
  j["mem_balance_variance"] = mem_balance_variance();
  auto edges_json = nlohmann::json::object();
  for (const auto& [id, m] : per_edge) {
    edges_json[id] = {{"mean_cpu", m.mean_cpu},     {"peak_cpu", m.peak_cpu},
                      {"mean_mem", m.mean_mem},     {"peak_mem", m.peak_mem},
                      {"mean_throughput", m.mean_throughput},
                      {"processed", m.processed}};
  }
  j["edges"] = std::move(edges_json);
  auto remaps = nlohmann::json::object();
  for (const auto& [rid, n] : remap_counts) remaps[rid] = n;
  j["remap_counts"] = std::move(remaps);
  return j;
}

MetricsReport run_scenario(const ScenarioConfig& config) {
  Engine engine(config);
  return engine.run();
}

}  // namespace offload
