#include "offload/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace offload {

Scheme Scheme::parse(std::string_view text) {
  std::string s(text);
  Scheme scheme;
  auto take = [&](std::string_view prefix) {
    if (s.rfind(prefix, 0) == 0) {
      s.erase(0, prefix.size());
      return true;
    }
    return false;
  };
  if (take("fixed:") || take("fixed_") || take("Fixed_")) {
    scheme.kind = Kind::kFixed;
  } else if (take("dynamic:") || take("dyna_") || take("dynamic_")) {
    scheme.kind = Kind::kDynamic;
    if (std::find(dynamic_variants().begin(), dynamic_variants().end(), s) ==
        dynamic_variants().end()) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("unknown dynamic variant '{}' in scheme '{}'", s, text));
    }
  } else {
    throw Error(ErrorCode::kConfig, fmt::format("unknown scheme '{}'", text));
  }
  if (s.empty()) {
    throw Error(ErrorCode::kConfig, fmt::format("scheme '{}' names no target", text));
  }
  scheme.target = s;
  return scheme;
}

std::string Scheme::name() const {
  return (kind == Kind::kFixed ? "fixed:" : "dynamic:") + target;
}

std::map<std::string, Weights> default_weight_presets() {
  return {
      {"cpu", {0.8, 0.1, 0.1}},
      {"mem", {0.1, 0.8, 0.1}},
      {"both", {0.45, 0.45, 0.1}},
      {"net", {0.1, 0.1, 0.8}},
  };
}

Weights ScenarioConfig::weights() const {
  if (!scheme.is_dynamic()) return weight_presets.at("both");
  return weight_presets.at(scheme.target);
}

ThroughputTable ScenarioConfig::throughput_table() const {
  return ThroughputTable(throughput_steps, bounds.nu, throughput_floor_mbps);
}

std::vector<EdgeId> ScenarioConfig::edge_ids() const {
  std::vector<EdgeId> ids;
  for (const auto& e : edges) ids.push_back(e.id);
  return ids;
}

std::uint64_t ScenarioConfig::message_budget() const {
  std::uint64_t total = 0;
  for (const auto& r : robots) {
    total += static_cast<std::uint64_t>(std::llround(r.input_rate * nominal_duration));
  }
  return total;
}

const EdgeConfig* ScenarioConfig::find_edge(const EdgeId& id) const {
  for (const auto& e : edges) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

class Diagnostics {
 public:
  explicit Diagnostics(const ScenarioConfig& c) : c_(c) {}

  [[noreturn]] void fail(const std::string& field, const std::string& why) const {
    std::string key = field;
    int line = 0;
    while (true) {
      if (auto it = c_.source_lines.find(key); it != c_.source_lines.end()) {
        line = it->second;
        break;
      }
      const auto cut = key.find_last_of(".[");
      if (cut == std::string::npos) break;
      key.erase(cut);
    }
    const std::string where = c_.origin.empty() ? "config" : c_.origin;
    if (line > 0) {
      throw Error(ErrorCode::kConfig, fmt::format("{}:{}: {}: {}", where, line, field, why));
    }
    throw Error(ErrorCode::kConfig, fmt::format("{}: {}: {}", where, field, why));
  }

  void positive(double v, const std::string& field) const {
    if (!(v > 0.0) || !std::isfinite(v)) fail(field, fmt::format("must be > 0 (got {})", v));
  }
  void non_negative(double v, const std::string& field) const {
    if (!(v >= 0.0) || !std::isfinite(v)) fail(field, fmt::format("must be >= 0 (got {})", v));
  }
  void range(double lo, double hi, const std::string& field) const {
    if (!(lo <= hi)) fail(field, fmt::format("range [{}, {}] is empty", lo, hi));
  }

 private:
  const ScenarioConfig& c_;
};

}  // namespace

void validate(const ScenarioConfig& c) {
  Diagnostics d(c);
  d.positive(c.duration, "duration");
  d.positive(c.nominal_duration, "nominal_duration");
  d.positive(c.sample_period, "sample_period");
  d.positive(c.decision_period, "decision_period");
  d.positive(c.exec_step, "exec_step");
  d.non_negative(c.exchange_window, "exchange_window");
  if (2.0 * c.exchange_window >= c.decision_period) {
    d.fail("exchange_window", "two exchange windows must fit in one decision_period");
  }
  if (!(c.sticky_bonus >= 0.0 && c.sticky_bonus <= 0.5)) {
    d.fail("sticky_bonus", fmt::format("must lie in [0, 0.5] (got {})", c.sticky_bonus));
  }
  for (const auto& [name, w] : c.weight_presets) {
    if (std::find(dynamic_variants().begin(), dynamic_variants().end(), name) ==
        dynamic_variants().end()) {
      d.fail("weight_presets." + name, "unknown preset name");
    }
    try {
      validate_weights(w);
    } catch (const Error& e) {
      d.fail("weight_presets." + name, e.what());
    }
  }
  for (const auto& v : dynamic_variants()) {
    if (c.weight_presets.count(v) == 0) d.fail("weight_presets", "missing preset " + v);
  }
  if (!(c.bounds.nu < c.bounds.rho)) {
    d.fail("bounds", fmt::format("nu ({}) must be below rho ({})", c.bounds.nu, c.bounds.rho));
  }
  try {
    validate_link(c.link);
  } catch (const Error& e) {
    d.fail("link", e.what());
  }
  try {
    (void)c.throughput_table();
  } catch (const Error& e) {
    d.fail("throughput", e.what());
  }
  d.positive(c.control_message_size, "link.control_message_size");

  d.non_negative(c.task.mem_footprint, "task.mem_footprint");
  d.positive(c.task.work_per_message, "task.work_per_message");
  d.positive(c.task.message_size, "task.message_size");
  d.non_negative(c.task.message_mem, "task.message_mem");

  if (c.edges.empty()) d.fail("edges", "at least one edge is required");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto& e = c.edges[i];
    const std::string f = fmt::format("edges[{}]", i);
    if (e.id.empty()) d.fail(f + ".id", "must not be empty");
    if (!ids.insert(e.id).second) d.fail(f + ".id", "duplicate id '" + e.id + "'");
    if (!(e.cpu_max > 0.0 && e.cpu_max <= 100.0)) d.fail(f + ".cpu_max", "must lie in (0, 100]");
    d.positive(e.mem_max, f + ".mem_max");
    d.positive(e.capacity_factor, f + ".capacity_factor");
    if (!(e.base_cpu >= 0.0 && e.base_cpu <= 100.0)) d.fail(f + ".base_cpu", "must lie in [0, 100]");
    d.non_negative(e.base_mem, f + ".base_mem");
    d.non_negative(e.noise, f + ".noise");
  }
  if (c.robots.empty()) d.fail("robots", "at least one robot is required");
  for (std::size_t i = 0; i < c.robots.size(); ++i) {
    const auto& r = c.robots[i];
    const std::string f = fmt::format("robots[{}]", i);
    if (r.id.empty()) d.fail(f + ".id", "must not be empty");
    if (!ids.insert(r.id).second) d.fail(f + ".id", "duplicate id '" + r.id + "'");
    d.positive(r.input_rate, f + ".input_rate");
  }
  d.non_negative(c.spikes.rate, "spikes.rate");
  d.range(c.spikes.duration_min, c.spikes.duration_max, "spikes.duration");
  d.range(c.spikes.cpu_min, c.spikes.cpu_max, "spikes.cpu");
  d.range(c.spikes.mem_min, c.spikes.mem_max, "spikes.mem");
  d.non_negative(c.spikes.duration_min, "spikes.duration");
  d.non_negative(c.spikes.cpu_min, "spikes.cpu");
  d.non_negative(c.spikes.mem_min, "spikes.mem");

  if (!c.scheme.is_dynamic() && c.find_edge(c.scheme.target) == nullptr) {
    d.fail("scheme", fmt::format("fixed scheme names unknown edge '{}'", c.scheme.target));
  }
}

namespace {

class Reader {
 public:
  Reader(ScenarioConfig& c, std::filesystem::path base) : c_(c), base_(std::move(base)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& field,
                         const std::string& why) const {
    throw Error(ErrorCode::kConfig, fmt::format("{}:{}: {}: {}", origin(),
                                                n.Mark().line + 1, field, why));
  }

  std::string origin() const { return c_.origin.empty() ? "config" : c_.origin; }

  void mark(const YAML::Node& n, const std::string& field) {
    if (n.Mark().line >= 0) c_.source_lines[field] = n.Mark().line + 1;
  }

  void expect_map(const YAML::Node& n, const std::string& field,
                  std::initializer_list<const char*> allowed) {
    if (!n.IsMap()) fail(n, field, "expected a mapping");
    mark(n, field);
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; })) {
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
      }
    }
  }

  double number(const YAML::Node& n, const std::string& field) {
    mark(n, field);
    try {
      return n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, field, "expected a number");
    }
  }

  std::string text(const YAML::Node& n, const std::string& field) {
    mark(n, field);
    if (!n.IsScalar()) fail(n, field, "expected a string");
    return n.as<std::string>();
  }

  void opt(const YAML::Node& parent, const char* key, const std::string& prefix,
           double& out) {
    if (auto n = parent[key]) out = number(n, join(prefix, key));
  }

  std::pair<double, double> pair(const YAML::Node& n, const std::string& field) {
    mark(n, field);
    if (!n.IsSequence() || n.size() != 2) fail(n, field, "expected [a, b]");
    return {number(n[0], field), number(n[1], field)};
  }

  std::filesystem::path path(const YAML::Node& n, const std::string& field) {
    std::filesystem::path p = text(n, field);
    if (p.is_relative() && !base_.empty()) p = base_ / p;
    return p.lexically_normal();
  }

  static std::string join(const std::string& prefix, const char* key) {
    return prefix.empty() ? std::string(key) : prefix + "." + key;
  }

 private:
  ScenarioConfig& c_;
  std::filesystem::path base_;
};

Weights read_weights(Reader& r, const YAML::Node& n, const std::string& field) {
  r.expect_map(n, field, {"cpu", "mem", "net"});
  Weights w;
  r.opt(n, "cpu", field, w.cpu);
  r.opt(n, "mem", field, w.mem);
  r.opt(n, "net", field, w.net);
  return w;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin,
                              const std::filesystem::path& base_dir) {
  ScenarioConfig c;
  c.origin = origin;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::kParse, fmt::format("{}:{}: {}", origin.empty() ? "config" : origin,
                                               e.mark.line + 1, e.msg));
  }
  Reader r(c, base_dir);
  if (!root.IsMap()) {
    throw Error(ErrorCode::kConfig,
                fmt::format("{}:1: top level must be a mapping", r.origin()));
  }
  r.expect_map(root, "",
               {"seed", "scheme", "duration", "nominal_duration", "sample_period",
                "decision_period", "exchange_window", "exec_step", "sticky_bonus",
                "weight_presets", "bounds", "link", "throughput", "task", "spikes",
                "edges", "robots", "device_trace", "network_trace"});

  if (auto n = root["seed"]) {
    r.mark(n, "seed");
    try {
      c.seed = n.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      r.fail(n, "seed", "expected a non-negative integer");
    }
  }
  if (auto n = root["scheme"]) {
    try {
      c.scheme = Scheme::parse(r.text(n, "scheme"));
    } catch (const Error& e) {
      r.fail(n, "scheme", e.what());
    }
  } else {
    c.scheme = Scheme::parse("dynamic:both");
  }
  r.opt(root, "duration", "", c.duration);
  r.opt(root, "nominal_duration", "", c.nominal_duration);
  r.opt(root, "sample_period", "", c.sample_period);
  r.opt(root, "decision_period", "", c.decision_period);
  r.opt(root, "exchange_window", "", c.exchange_window);
  r.opt(root, "exec_step", "", c.exec_step);
  r.opt(root, "sticky_bonus", "", c.sticky_bonus);

  if (auto n = root["weight_presets"]) {
    r.expect_map(n, "weight_presets", {"cpu", "mem", "both", "net"});
    for (const auto& kv : n) {
      const auto name = kv.first.as<std::string>();
      c.weight_presets[name] = read_weights(r, kv.second, "weight_presets." + name);
    }
  }
  if (auto n = root["bounds"]) {
    r.expect_map(n, "bounds", {"nu", "rho"});
    r.opt(n, "nu", "bounds", c.bounds.nu);
    r.opt(n, "rho", "bounds", c.bounds.rho);
  }
  if (auto n = root["link"]) {
    r.expect_map(n, "link", {"p0", "d0", "exponent", "shadowing_sigma", "base_latency",
                             "control_message_size"});
    r.opt(n, "p0", "link", c.link.p0);
    r.opt(n, "d0", "link", c.link.d0);
    r.opt(n, "exponent", "link", c.link.path_loss_exponent);
    r.opt(n, "shadowing_sigma", "link", c.link.shadowing_sigma);
    r.opt(n, "base_latency", "link", c.link.base_latency);
    r.opt(n, "control_message_size", "link", c.control_message_size);
  }
  if (auto n = root["throughput"]) {
    r.expect_map(n, "throughput", {"steps", "floor_mbps"});
    if (auto steps = n["steps"]) {
      r.mark(steps, "throughput.steps");
      if (!steps.IsSequence()) r.fail(steps, "throughput.steps", "expected a list");
      c.throughput_steps.clear();
      for (const auto& s : steps) {
        auto [rssi, mbps] = r.pair(s, "throughput.steps");
        c.throughput_steps.push_back({rssi, mbps});
      }
    }
    r.opt(n, "floor_mbps", "throughput", c.throughput_floor_mbps);
  }
  if (auto n = root["task"]) {
    r.expect_map(n, "task", {"id", "mem_footprint", "work_per_message", "message_size",
                             "message_mem"});
    if (auto id = n["id"]) c.task.task_id = r.text(id, "task.id");
    r.opt(n, "mem_footprint", "task", c.task.mem_footprint);
    r.opt(n, "work_per_message", "task", c.task.work_per_message);
    r.opt(n, "message_size", "task", c.task.message_size);
    r.opt(n, "message_mem", "task", c.task.message_mem);
  }
  if (auto n = root["spikes"]) {
    r.expect_map(n, "spikes", {"rate", "duration", "cpu", "mem"});
    r.opt(n, "rate", "spikes", c.spikes.rate);
    if (auto v = n["duration"]) {
      std::tie(c.spikes.duration_min, c.spikes.duration_max) = r.pair(v, "spikes.duration");
    }
    if (auto v = n["cpu"]) std::tie(c.spikes.cpu_min, c.spikes.cpu_max) = r.pair(v, "spikes.cpu");
    if (auto v = n["mem"]) std::tie(c.spikes.mem_min, c.spikes.mem_max) = r.pair(v, "spikes.mem");
  }
  if (auto n = root["edges"]) {
    r.mark(n, "edges");
    if (!n.IsSequence()) r.fail(n, "edges", "expected a list");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto& en = n[i];
      const std::string f = fmt::format("edges[{}]", i);
      r.expect_map(en, f, {"id", "cpu_max", "mem_max", "capacity_factor", "base_cpu",
                           "base_mem", "noise", "pose", "trace"});
      EdgeConfig e;
      if (auto id = en["id"]) e.id = r.text(id, f + ".id");
      r.opt(en, "cpu_max", f, e.cpu_max);
      r.opt(en, "mem_max", f, e.mem_max);
      r.opt(en, "capacity_factor", f, e.capacity_factor);
      r.opt(en, "base_cpu", f, e.base_cpu);
      r.opt(en, "base_mem", f, e.base_mem);
      r.opt(en, "noise", f, e.noise);
      if (auto p = en["pose"]) std::tie(e.x, e.y) = r.pair(p, f + ".pose");
      if (auto t = en["trace"]) e.trace = r.path(t, f + ".trace");
      c.edges.push_back(std::move(e));
    }
  }
  if (auto n = root["robots"]) {
    r.mark(n, "robots");
    if (!n.IsSequence()) r.fail(n, "robots", "expected a list");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto& rn = n[i];
      const std::string f = fmt::format("robots[{}]", i);
      r.expect_map(rn, f, {"id", "input_rate", "pose", "trajectory"});
      RobotConfig robot;
      if (auto id = rn["id"]) robot.id = r.text(id, f + ".id");
      r.opt(rn, "input_rate", f, robot.input_rate);
      if (rn["pose"] && rn["trajectory"]) {
        r.fail(rn, f, "give either pose or trajectory, not both");
      }
      if (auto p = rn["pose"]) {
        auto [x, y] = r.pair(p, f + ".pose");
        robot.trajectory = Trajectory::stationary(x, y);
      }
      if (auto t = rn["trajectory"]) {
        r.mark(t, f + ".trajectory");
        if (!t.IsSequence()) r.fail(t, f + ".trajectory", "expected a list of [t, x, y]");
        std::vector<Trajectory::Waypoint> wps;
        for (const auto& w : t) {
          if (!w.IsSequence() || w.size() != 3) {
            r.fail(w, f + ".trajectory", "expected [t, x, y]");
          }
          wps.push_back({r.number(w[0], f + ".trajectory"), r.number(w[1], f + ".trajectory"),
                         r.number(w[2], f + ".trajectory")});
        }
        try {
          robot.trajectory = Trajectory(std::move(wps));
        } catch (const Error& e) {
          r.fail(t, f + ".trajectory", e.what());
        }
      }
      c.robots.push_back(std::move(robot));
    }
  }
  if (auto n = root["device_trace"]) c.device_trace = r.path(n, "device_trace");
  if (auto n = root["network_trace"]) c.network_trace = r.path(n, "network_trace");

  validate(c);
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string(), path.parent_path());
}

namespace {

void emit_pair(YAML::Emitter& out, double a, double b) {
  out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
}

void emit_weights(YAML::Emitter& out, const Weights& w) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "cpu" << YAML::Value << w.cpu
      << YAML::Key << "mem" << YAML::Value << w.mem << YAML::Key << "net" << YAML::Value
      << w.net << YAML::EndMap;
}

}  // namespace

std::string emit_scenario(const ScenarioConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "scheme" << YAML::Value << c.scheme.name();
  out << YAML::Key << "duration" << YAML::Value << c.duration;
  out << YAML::Key << "nominal_duration" << YAML::Value << c.nominal_duration;
  out << YAML::Key << "sample_period" << YAML::Value << c.sample_period;
  out << YAML::Key << "decision_period" << YAML::Value << c.decision_period;
  out << YAML::Key << "exchange_window" << YAML::Value << c.exchange_window;
  out << YAML::Key << "exec_step" << YAML::Value << c.exec_step;
  out << YAML::Key << "sticky_bonus" << YAML::Value << c.sticky_bonus;

  out << YAML::Key << "weight_presets" << YAML::Value << YAML::BeginMap;
  for (const auto& [name, w] : c.weight_presets) {
    out << YAML::Key << name << YAML::Value;
    emit_weights(out, w);
  }
  out << YAML::EndMap;

  out << YAML::Key << "bounds" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "nu" << YAML::Value << c.bounds.nu << YAML::Key << "rho"
      << YAML::Value << c.bounds.rho << YAML::EndMap;

  out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "p0" << YAML::Value << c.link.p0;
  out << YAML::Key << "d0" << YAML::Value << c.link.d0;
  out << YAML::Key << "exponent" << YAML::Value << c.link.path_loss_exponent;
  out << YAML::Key << "shadowing_sigma" << YAML::Value << c.link.shadowing_sigma;
  out << YAML::Key << "base_latency" << YAML::Value << c.link.base_latency;
  out << YAML::Key << "control_message_size" << YAML::Value << c.control_message_size;
  out << YAML::EndMap;

  out << YAML::Key << "throughput" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "steps" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : c.throughput_steps) emit_pair(out, s.min_rssi, s.mbps);
  out << YAML::EndSeq;
  out << YAML::Key << "floor_mbps" << YAML::Value << c.throughput_floor_mbps;
  out << YAML::EndMap;

  out << YAML::Key << "task" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << c.task.task_id;
  out << YAML::Key << "mem_footprint" << YAML::Value << c.task.mem_footprint;
  out << YAML::Key << "work_per_message" << YAML::Value << c.task.work_per_message;
  out << YAML::Key << "message_size" << YAML::Value << c.task.message_size;
  out << YAML::Key << "message_mem" << YAML::Value << c.task.message_mem;
  out << YAML::EndMap;

  out << YAML::Key << "spikes" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rate" << YAML::Value << c.spikes.rate;
  out << YAML::Key << "duration" << YAML::Value;
  emit_pair(out, c.spikes.duration_min, c.spikes.duration_max);
  out << YAML::Key << "cpu" << YAML::Value;
  emit_pair(out, c.spikes.cpu_min, c.spikes.cpu_max);
  out << YAML::Key << "mem" << YAML::Value;
  emit_pair(out, c.spikes.mem_min, c.spikes.mem_max);
  out << YAML::EndMap;

  out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : c.edges) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << e.id;
    out << YAML::Key << "cpu_max" << YAML::Value << e.cpu_max;
    out << YAML::Key << "mem_max" << YAML::Value << e.mem_max;
    out << YAML::Key << "capacity_factor" << YAML::Value << e.capacity_factor;
    out << YAML::Key << "base_cpu" << YAML::Value << e.base_cpu;
    out << YAML::Key << "base_mem" << YAML::Value << e.base_mem;
    out << YAML::Key << "noise" << YAML::Value << e.noise;
    out << YAML::Key << "pose" << YAML::Value;
    emit_pair(out, e.x, e.y);
    if (e.trace) {
      out << YAML::Key << "trace" << YAML::Value
          << std::filesystem::absolute(*e.trace).lexically_normal().string();
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "robots" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : c.robots) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << r.id;
    out << YAML::Key << "input_rate" << YAML::Value << r.input_rate;
    out << YAML::Key << "trajectory" << YAML::Value << YAML::BeginSeq;
    for (const auto& w : r.trajectory.waypoints()) {
      out << YAML::Flow << YAML::BeginSeq << w.t << w.x << w.y << YAML::EndSeq;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  if (c.device_trace) {
    out << YAML::Key << "device_trace" << YAML::Value
        << std::filesystem::absolute(*c.device_trace).lexically_normal().string();
  }
  if (c.network_trace) {
    out << YAML::Key << "network_trace" << YAML::Value
        << std::filesystem::absolute(*c.network_trace).lexically_normal().string();
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace offload
