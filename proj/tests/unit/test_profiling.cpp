#include <doctest.h>

#include <filesystem>
#include <functional>
#include <fstream>

#include "offload/profiling.hpp"

using namespace offload;

namespace {

ProfilerConfig synthetic(const std::string& id, std::uint64_t seed = 42, double noise = 2.0) {
  ProfilerConfig c;
  c.edge_id = id;
  c.source.kind = TraceKind::kSynthetic;
  c.source.seed = seed;
  c.source.sample_period = 1.0;
  c.model.base_cpu = 20;
  c.model.base_mem = 1024;
  c.model.noise = noise;
  return c;
}

DeviceSnapshot snap(const std::string& edge, double t, double cpu = 10) {
  DeviceSnapshot s;
  s.edge_id = edge;
  s.t = t;
  s.cpu_used = cpu;
  s.mem_max = 4096;
  s.mem_used = 100;
  return s;
}

NetworkSnapshot net(const std::string& edge, double t, double rssi = -50) {
  return NetworkSnapshot{"r1", edge, t, rssi};
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("three synthetic profilers each emit at t = 1") {
  auto set = init_profilers({synthetic("e1"), synthetic("e2"), synthetic("e3")}, 10.0);
  REQUIRE(set.size() == 3);
  for (auto& [id, p] : set) {
    REQUIRE(p->next_time());
    CHECK(*p->next_time() == 1.0);
    const auto s = p->emit({});
    CHECK(s.t == 1.0);
    CHECK(s.edge_id == id);
  }
}

TEST_CASE("synthetic profiler stops at the horizon") {
  auto set = init_profilers({synthetic("e1")}, 5.0);
  int n = 0;
  while (set.at("e1")->next_time()) {
    set.at("e1")->emit({});
    ++n;
  }
  CHECK(n == 5);
}

TEST_CASE("replay emits exactly the trace rows then ends") {
  ProfilerConfig c;
  c.edge_id = "e1";
  c.source.kind = TraceKind::kCsvReplay;
  for (int i = 1; i <= 10; ++i) c.trace.push_back(snap("e1", i, 3.25 * i));
  auto set = init_profilers({c}, 100.0);
  auto& p = *set.at("e1");
  for (int i = 1; i <= 10; ++i) {
    REQUIRE(p.next_time());
    const auto s = p.emit(TaskLoad{50, 50});
    CHECK(s == c.trace[static_cast<std::size_t>(i - 1)]);
  }
  CHECK_FALSE(p.next_time());
  CHECK_THROWS_AS(p.emit({}), Error);
}

TEST_CASE("synthetic streams are deterministic per seed") {
  auto a = init_profilers({synthetic("e1", 42)}, 50.0);
  auto b = init_profilers({synthetic("e1", 42)}, 50.0);
  auto c = init_profilers({synthetic("e1", 43)}, 50.0);
  bool differs = false;
  while (a.at("e1")->next_time()) {
    const auto x = a.at("e1")->emit({});
    CHECK(x == b.at("e1")->emit({}));
    differs = differs || !(x == c.at("e1")->emit({}));
  }
  CHECK(differs);
}

TEST_CASE("init_profilers rejects bad input") {
  CHECK_THROWS_AS(init_profilers({}, 10.0), Error);
  try {
    init_profilers({synthetic("e1"), synthetic("e1")}, 10.0);
    FAIL("duplicate accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
  auto bad = synthetic("e1");
  bad.source.sample_period = 0;
  CHECK_THROWS_AS(init_profilers({bad}, 10.0), Error);
}

TEST_CASE("synthetic device readings") {
  SyntheticDeviceModel m;
  m.base_cpu = 20;
  m.noise = 0;
  CHECK(sample_device_synthetic("e1", m, {}, 5, 1, 5).cpu_used == 20);
  const Spike spike{"e1", 0, 10, 70, 0};
  CHECK(sample_device_synthetic("e1", m, {spike}, 5, 1, 5).cpu_used == 90);
  CHECK(sample_device_synthetic("e1", m, {spike}, 10, 1, 10).cpu_used == 20);
  m.base_cpu = 50;
  CHECK(sample_device_synthetic("e1", m, {spike}, 5, 1, 5).cpu_used == 100);
  const Spike other{"e2", 0, 10, 70, 0};
  CHECK(sample_device_synthetic("e1", m, {other}, 5, 1, 5).cpu_used == 50);
}

TEST_CASE("synthetic noise is bounded") {
  SyntheticDeviceModel m;
  m.base_cpu = 50;
  m.base_mem = 2048;
  m.noise = 2;
  for (std::uint64_t k = 1; k < 2000; ++k) {
    const auto s = sample_device_synthetic("e1", m, {}, static_cast<double>(k), 5, k);
    CHECK(std::abs(s.cpu_used - 50) <= 2.0);
    CHECK(std::abs(s.mem_used - 2048) <= 0.02 * 4096 + 1e-9);
  }
}

TEST_CASE("gateway ages and absence") {
  Gateway g("r1", 3.0);
  for (double t : {1.0, 2.0, 3.0}) {
    g.ingest(snap("e1", t));
    g.ingest(net("e1", t));
  }
  g.ingest(snap("e2", 1.0));
  g.ingest(net("e2", 1.0));

  auto view = g.collect(3.4);
  CHECK(view.at("e1").device_age == doctest::Approx(0.4));
  CHECK(view.at("e1").network_age == doctest::Approx(0.4));
  CHECK_FALSE(view.at("e1").stale);
  CHECK(view.count("e3") == 0);

  view = g.collect(5.0);
  CHECK(view.at("e2").device_age == doctest::Approx(4.0));
  CHECK(view.at("e2").stale);
}

TEST_CASE("gateway returns the freshest snapshot not after now") {
  Gateway g("r1", 3.0);
  g.ingest(snap("e1", 1.0, 11));
  g.ingest(snap("e1", 2.0, 22));
  g.ingest(snap("e1", 3.0, 33));
  CHECK(g.collect(2.5).at("e1").device.cpu_used == 22);
  CHECK(g.collect(3.0).at("e1").device.cpu_used == 33);
  CHECK(g.collect(0.5).count("e1") == 0);
}

TEST_CASE("gateway without a network reading") {
  Gateway g("r1", 3.0);
  g.ingest(snap("e1", 1.0));
  const auto v = g.collect(1.0);
  CHECK_FALSE(v.at("e1").network.has_value());
}

TEST_CASE("device trace csv round trip") {
  std::vector<DeviceSnapshot> rows{snap("e1", 1, 12.5), snap("e2", 1, 0.1), snap("e1", 2, 99)};
  const auto text = format_device_trace(rows);
  CHECK(parse_device_trace(text, "x.csv") == rows);
}

TEST_CASE("network trace csv round trip") {
  std::vector<NetworkSnapshot> rows{net("e1", 1, -50.125), net("e2", 1, -71), net("e1", 2)};
  CHECK(parse_network_trace(format_network_trace(rows), "n.csv") == rows);
}

TEST_CASE("trace errors carry file and line") {
  CHECK(message_of([] { parse_device_trace("t,edge,cpu\n", "d.csv"); }).rfind("d.csv:1:", 0) == 0);
  const std::string missing_rssi = "t,robot_id,edge_id,rssi\n1,r1,e1,-50\n2,r1,e1\n";
  CHECK(message_of([&] { parse_network_trace(missing_rssi, "n.csv"); }).rfind("n.csv:3:", 0) == 0);
  const std::string bad_number =
      "t,edge_id,cpu_max,cpu_used,mem_max,mem_used\n1,e1,100,abc,4096,10\n";
  CHECK(message_of([&] { parse_device_trace(bad_number, "d.csv"); }).rfind("d.csv:2:", 0) == 0);
  const std::string overfull =
      "t,edge_id,cpu_max,cpu_used,mem_max,mem_used\n1,e1,100,120,4096,10\n";
  CHECK(message_of([&] { parse_device_trace(overfull, "d.csv"); }).rfind("d.csv:2:", 0) == 0);
  const std::string backwards =
      "t,edge_id,cpu_max,cpu_used,mem_max,mem_used\n2,e1,100,1,4096,10\n1,e1,100,1,4096,10\n";
  CHECK(message_of([&] { parse_device_trace(backwards, "d.csv"); }).rfind("d.csv:3:", 0) == 0);
  CHECK(message_of([] { parse_device_trace("", "e.csv"); }).rfind("e.csv:1:", 0) == 0);
}

TEST_CASE("reading a missing trace file is an io error") {
  try {
    read_device_trace("/nonexistent/trace.csv");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
