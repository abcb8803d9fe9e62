#include "offload/profiling.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "offload/rng.hpp"

namespace offload {

DeviceSnapshot sample_device_synthetic(const EdgeId& edge,
                                       const SyntheticDeviceModel& model,
                                       const std::vector<Spike>& spikes,
                                       double t, std::uint64_t seed,
                                       std::uint64_t tick) {
  double cpu = model.base_cpu;
  double mem = model.base_mem;
  for (const auto& s : spikes) {
    if (s.edge_id == edge && s.active_at(t)) {
      cpu += s.cpu_load;
      mem += s.mem_load;
    }
  }
  if (model.noise > 0.0) {
    const std::uint64_t key = hash_name(edge);
    const double u_cpu = keyed_uniform(seed, key, 2 * tick);
    const double u_mem = keyed_uniform(seed, key, 2 * tick + 1);
    cpu += model.noise * (2.0 * u_cpu - 1.0);
    mem += model.mem_max * model.noise / 100.0 * (2.0 * u_mem - 1.0);
  }
  DeviceSnapshot snap;
  snap.edge_id = edge;
  snap.t = t;
  snap.cpu_max = model.cpu_max;
  snap.cpu_used = std::clamp(cpu, 0.0, model.cpu_max);
  snap.mem_max = model.mem_max;
  snap.mem_used = std::clamp(mem, 0.0, model.mem_max);
  return snap;
}

SyntheticProfiler::SyntheticProfiler(EdgeId id, SyntheticDeviceModel model,
                                     TraceSource source, double horizon)
    : DeviceProfiler(std::move(id)),
      model_(model),
      source_(source),
      horizon_(horizon) {
  if (!(source_.sample_period > 0.0)) {
    throw Error(ErrorCode::kConfig,
                fmt::format("edge {}: sample_period must be > 0", edge_id()));
  }
}

std::optional<double> SyntheticProfiler::next_time() const {
  const double t = static_cast<double>(tick_) * source_.sample_period;
  if (t > horizon_) return std::nullopt;
  return t;
}

DeviceSnapshot SyntheticProfiler::background_at(double t) const {
  const auto tick = static_cast<std::uint64_t>(std::llround(t / source_.sample_period));
  return sample_device_synthetic(edge_id(), model_, spikes_, t, source_.seed, tick);
}

DeviceSnapshot SyntheticProfiler::emit(const TaskLoad& load) {
  const double t = static_cast<double>(tick_) * source_.sample_period;
  DeviceSnapshot snap =
      sample_device_synthetic(edge_id(), model_, spikes_, t, source_.seed, tick_);
  snap.cpu_used = std::clamp(snap.cpu_used + load.cpu, 0.0, snap.cpu_max);
  snap.mem_used = std::clamp(snap.mem_used + load.mem, 0.0, snap.mem_max);
  ++tick_;
  return snap;
}

ReplayProfiler::ReplayProfiler(EdgeId id, std::vector<DeviceSnapshot> rows)
    : DeviceProfiler(std::move(id)), rows_(std::move(rows)) {}

std::optional<double> ReplayProfiler::next_time() const {
  if (next_ >= rows_.size()) return std::nullopt;
  return rows_[next_].t;
}

DeviceSnapshot ReplayProfiler::emit(const TaskLoad& /*load*/) {
  if (next_ >= rows_.size()) {
    throw Error(ErrorCode::kInternal,
                fmt::format("edge {}: replay trace exhausted", edge_id()));
  }
  return rows_[next_++];
}

ProfilerSet init_profilers(const std::vector<ProfilerConfig>& configs,
                           double horizon) {
  if (configs.empty()) {
    throw Error(ErrorCode::kConfig, "at least one edge is required");
  }
  ProfilerSet set;
  for (const auto& cfg : configs) {
    if (set.count(cfg.edge_id) != 0) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("duplicate edge id '{}'", cfg.edge_id));
    }
    if (!(cfg.source.sample_period > 0.0)) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("edge {}: sample_period must be > 0", cfg.edge_id));
    }
    std::unique_ptr<DeviceProfiler> p;
    if (cfg.source.kind == TraceKind::kSynthetic) {
      p = std::make_unique<SyntheticProfiler>(cfg.edge_id, cfg.model, cfg.source,
                                              horizon);
    } else {
      p = std::make_unique<ReplayProfiler>(cfg.edge_id, cfg.trace);
    }
    set.emplace(cfg.edge_id, std::move(p));
  }
  return set;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct CsvLines {
  std::vector<std::pair<std::size_t, std::string>> rows;  // (line number, text)
};

CsvLines read_lines(const std::string& text, const std::string& origin,
                    const std::string& header) {
  CsvLines out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!have_header) {
      std::string joined;
      for (const auto& f : split_fields(line)) {
        if (!joined.empty()) joined += ',';
        joined += f;
      }
      if (joined != header) {
        throw Error(ErrorCode::kParse,
                    fmt::format("{}:{}: expected header '{}'", origin, lineno, header));
      }
      have_header = true;
      continue;
    }
    out.rows.emplace_back(lineno, line);
  }
  if (!have_header) {
    throw Error(ErrorCode::kParse,
                fmt::format("{}:1: missing header '{}'", origin, header));
  }
  return out;
}

double parse_number(const std::string& s, const std::string& origin,
                    std::size_t lineno, const char* column) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse,
                fmt::format("{}:{}: column '{}': '{}' is not a number", origin,
                            lineno, column, s));
  }
  return v;
}

void require_columns(const std::vector<std::string>& fields, std::size_t n,
                     const std::string& origin, std::size_t lineno) {
  if (fields.size() != n) {
    throw Error(ErrorCode::kParse,
                fmt::format("{}:{}: expected {} columns, found {}", origin, lineno,
                            n, fields.size()));
  }
}

void require_id(const std::string& id, const char* column, const std::string& origin,
                std::size_t lineno) {
  if (id.empty()) {
    throw Error(ErrorCode::kParse,
                fmt::format("{}:{}: column '{}' is empty", origin, lineno, column));
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<DeviceSnapshot> parse_device_trace(const std::string& text,
                                               const std::string& origin) {
  const auto lines =
      read_lines(text, origin, "t,edge_id,cpu_max,cpu_used,mem_max,mem_used");
  std::vector<DeviceSnapshot> rows;
  std::map<EdgeId, double> last_t;
  for (const auto& [lineno, line] : lines.rows) {
    const auto f = split_fields(line);
    require_columns(f, 6, origin, lineno);
    DeviceSnapshot s;
    s.t = parse_number(f[0], origin, lineno, "t");
    s.edge_id = f[1];
    require_id(s.edge_id, "edge_id", origin, lineno);
    s.cpu_max = parse_number(f[2], origin, lineno, "cpu_max");
    s.cpu_used = parse_number(f[3], origin, lineno, "cpu_used");
    s.mem_max = parse_number(f[4], origin, lineno, "mem_max");
    s.mem_used = parse_number(f[5], origin, lineno, "mem_used");
    if (!(s.cpu_max > 0.0 && s.cpu_max <= 100.0) || s.cpu_used < 0.0 ||
        s.cpu_used > s.cpu_max || !(s.mem_max > 0.0) || s.mem_used < 0.0 ||
        s.mem_used > s.mem_max || s.t < 0.0) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: snapshot values out of range", origin, lineno));
    }
    auto [it, fresh] = last_t.try_emplace(s.edge_id, s.t);
    if (!fresh) {
      if (s.t < it->second) {
        throw Error(ErrorCode::kParse,
                    fmt::format("{}:{}: timestamp goes backwards for edge {}",
                                origin, lineno, s.edge_id));
      }
      it->second = s.t;
    }
    rows.push_back(std::move(s));
  }
  return rows;
}

std::vector<NetworkSnapshot> parse_network_trace(const std::string& text,
                                                 const std::string& origin) {
  const auto lines = read_lines(text, origin, "t,robot_id,edge_id,rssi");
  std::vector<NetworkSnapshot> rows;
  std::map<std::pair<RobotId, EdgeId>, double> last_t;
  for (const auto& [lineno, line] : lines.rows) {
    const auto f = split_fields(line);
    require_columns(f, 4, origin, lineno);
    NetworkSnapshot s;
    s.t = parse_number(f[0], origin, lineno, "t");
    s.robot_id = f[1];
    s.edge_id = f[2];
    require_id(s.robot_id, "robot_id", origin, lineno);
    require_id(s.edge_id, "edge_id", origin, lineno);
    s.rssi = parse_number(f[3], origin, lineno, "rssi");
    if (s.rssi < -120.0 || s.rssi > 0.0 || s.t < 0.0) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: rssi {} outside [-120, 0] dBm", origin,
                              lineno, s.rssi));
    }
    auto [it, fresh] = last_t.try_emplace({s.robot_id, s.edge_id}, s.t);
    if (!fresh) {
      if (s.t < it->second) {
        throw Error(ErrorCode::kParse,
                    fmt::format("{}:{}: timestamp goes backwards for link {}-{}",
                                origin, lineno, s.robot_id, s.edge_id));
      }
      it->second = s.t;
    }
    rows.push_back(std::move(s));
  }
  return rows;
}

std::vector<DeviceSnapshot> read_device_trace(const std::filesystem::path& path) {
  return parse_device_trace(slurp(path), path.string());
}

std::vector<NetworkSnapshot> read_network_trace(const std::filesystem::path& path) {
  return parse_network_trace(slurp(path), path.string());
}

std::string format_device_trace(const std::vector<DeviceSnapshot>& rows) {
  std::string out = "t,edge_id,cpu_max,cpu_used,mem_max,mem_used\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.t, r.edge_id, r.cpu_max, r.cpu_used,
                       r.mem_max, r.mem_used);
  }
  return out;
}

std::string format_network_trace(const std::vector<NetworkSnapshot>& rows) {
  std::string out = "t,robot_id,edge_id,rssi\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", r.t, r.robot_id, r.edge_id, r.rssi);
  }
  return out;
}

Gateway::Gateway(RobotId robot_id, double stale_after)
    : robot_id_(std::move(robot_id)), stale_after_(stale_after) {}

namespace {

template <typename Snapshot>
void remember(std::deque<Snapshot>& history, const Snapshot& s, std::size_t cap) {
  // Keep timestamp order even if delivery was not.
  auto pos = std::upper_bound(history.begin(), history.end(), s.t,
                              [](double t, const Snapshot& x) { return t < x.t; });
  history.insert(pos, s);
  while (history.size() > cap) history.pop_front();
}

template <typename Snapshot>
const Snapshot* latest_at(const std::deque<Snapshot>& history, double now) {
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    if (it->t <= now) return &*it;
  }
  return nullptr;
}

}  // namespace

void Gateway::ingest(const DeviceSnapshot& snapshot) {
  remember(devices_[snapshot.edge_id], snapshot, kHistory);
}

void Gateway::ingest(const NetworkSnapshot& snapshot) {
  if (snapshot.robot_id != robot_id_) return;
  remember(networks_[snapshot.edge_id], snapshot, kHistory);
}

std::map<EdgeId, EdgeData> Gateway::collect(double now) const {
  std::map<EdgeId, EdgeData> out;
  for (const auto& [edge, history] : devices_) {
    const DeviceSnapshot* dev = latest_at(history, now);
    if (dev == nullptr) continue;
    EdgeData d;
    d.edge_id = edge;
    d.device = *dev;
    d.device_age = now - dev->t;
    d.stale = d.device_age > stale_after_;
    if (auto it = networks_.find(edge); it != networks_.end()) {
      if (const NetworkSnapshot* net = latest_at(it->second, now)) {
        d.network = *net;
        d.network_age = now - net->t;
        d.stale = d.stale || d.network_age > stale_after_;
      }
    }
    if (!d.network) d.stale = true;
    out.emplace(edge, std::move(d));
  }
  return out;
}

}  // namespace offload
