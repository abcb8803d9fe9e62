#include <doctest.h>

#include <algorithm>
#include <random>

#include "offload/scheduler.hpp"
#include "oracles.hpp"

using namespace offload;

namespace {

EdgeData edge(const std::string& id, double cpu_used, double rssi = -50, bool stale = false) {
  EdgeData d;
  d.edge_id = id;
  d.device.edge_id = id;
  d.device.cpu_used = cpu_used;
  d.device.mem_max = 4096;
  d.network = NetworkSnapshot{"r1", id, 0, rssi};
  d.stale = stale;
  return d;
}

SchedulerState state(double h = 0.0, std::optional<EdgeId> selected = std::nullopt) {
  SchedulerState s;
  s.robot_id = "r1";
  s.edges = {"e1", "e2"};
  s.weights = {1, 0, 0};
  s.sticky_bonus = h;
  s.selected_edge = std::move(selected);
  return s;
}

}  // namespace

TEST_CASE("identical snapshots score equally") {
  const auto t = calculate_utility(state(), {{"e1", edge("e1", 30)}, {"e2", edge("e2", 30)}},
                                   TaskSpec{}, NetworkBounds{});
  CHECK(t.at("e1") == t.at("e2"));
}

TEST_CASE("sticky bonus retains the selected edge") {
  // cpu weights only: scores 0.50 and 0.53
  const std::map<EdgeId, EdgeData> data{{"e1", edge("e1", 50)}, {"e2", edge("e2", 47)}};
  const auto t = calculate_utility(state(0.05, "e1"), data, TaskSpec{}, NetworkBounds{});
  CHECK(t.at("e1") == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(t.at("e2") == doctest::Approx(0.53).epsilon(1e-12));
  CHECK(select_max_edge(t).max_edge == "e1");
  const auto free = calculate_utility(state(0.0, "e1"), data, TaskSpec{}, NetworkBounds{});
  CHECK(select_max_edge(free).max_edge == "e2");
}

TEST_CASE("stale and absent edges score zero") {
  auto s = state();
  s.edges = {"e1", "e2", "e3"};
  const auto t = calculate_utility(s, {{"e1", edge("e1", 30)}, {"e2", edge("e2", 0, -50, true)}},
                                   TaskSpec{}, NetworkBounds{});
  CHECK(t.at("e2") == 0.0);
  CHECK(t.at("e3") == 0.0);
  CHECK(t.at("e1") > 0.0);
  CHECK_THROWS_AS(calculate_utility(s, {}, TaskSpec{}, NetworkBounds{}), Error);
}

TEST_CASE("scheduler state validation") {
  auto s = state(0.6);
  CHECK_THROWS_AS(validate_scheduler_state(s), Error);
  s = state(0.05, "e9");
  CHECK_THROWS_AS(validate_scheduler_state(s), Error);
  s = state(0.05);
  s.weights = {0.5, 0.6, 0};
  CHECK_THROWS_AS(validate_scheduler_state(s), Error);
  CHECK_NOTHROW(validate_scheduler_state(state(0.5, "e2")));
}

TEST_CASE("exchange and sum") {
  const ScoreTable own{{"e1", 0.4}, {"e2", 0.5}};
  CHECK(exchange_and_sum(own, {}, 10, 3) == own);

  std::map<RobotId, PeerTable> peers{{"r2", {own, 9.5, 1}}, {"r3", {own, 9.0, 1}}};
  auto s = exchange_and_sum(own, peers, 10, 3);
  CHECK(s.at("e1") == doctest::Approx(1.2));
  CHECK(s.at("e2") == doctest::Approx(1.5));

  peers["r3"].received_at = 5.0;
  s = exchange_and_sum(own, peers, 10, 3);
  CHECK(s.at("e1") == doctest::Approx(0.8));
  CHECK(s.at("e2") == doctest::Approx(1.0));
}

TEST_CASE("exchange and sum does not depend on peer order") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<RobotId, PeerTable>> peers;
    for (int r = 0; r < 6; ++r) {
      PeerTable p;
      p.scores = {{"e1", u(gen)}, {"e2", u(gen)}, {"e3", u(gen)}};
      p.received_at = 10;
      peers.emplace_back("r" + std::to_string(r), p);
    }
    const ScoreTable own{{"e1", u(gen)}, {"e2", u(gen)}, {"e3", u(gen)}};
    std::map<RobotId, PeerTable> a(peers.begin(), peers.end());
    std::shuffle(peers.begin(), peers.end(), gen);
    std::map<RobotId, PeerTable> b;
    for (const auto& p : peers) b.insert(p);
    CHECK(exchange_and_sum(own, a, 10, 3) == exchange_and_sum(own, b, 10, 3));
  }
}

TEST_CASE("select max edge examples") {
  CHECK(select_max_edge({{"e1", 1.1}, {"e2", 1.2}, {"e3", 0.9}}).max_edge == "e2");
  CHECK(select_max_edge({{"e1", 0.8}}).max_edge == "e1");
  CHECK(select_max_edge({{"e1", 1.0}, {"e2", 1.0}}).max_edge == "e1");
  CHECK(select_max_edge({{"e10", 1.0}, {"e9", 1.0}}).max_edge == "e10");
  CHECK_THROWS_AS(select_max_edge({}), Error);
}

TEST_CASE("select max edge agrees with enumeration up to 50 edges") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 50);
    ScoreTable t;
    for (int i = 0; i < n; ++i) {
      // coarse values so ties are common
      t["e" + std::to_string(gen() % 60)] = static_cast<double>(gen() % 8) / 4.0;
    }
    CHECK(select_max_edge(t).max_edge == oracle::argmax(t));
  }
}

TEST_CASE("a switch is proposed iff the rival beats the incumbent by more than h") {
  for (double h = 0.0; h <= 0.5; h += 0.01) {
    for (double gap = -0.2; gap <= 0.7; gap += 0.013) {
      const double a = 0.2;
      const double b = a + gap;
      ScoreTable own{{"A", a + h}, {"B", b}};
      const bool switched = select_max_edge(own).max_edge == "B";
      CHECK(switched == (b > a + h));
    }
  }
}

TEST_CASE("argmax is invariant under positive scaling") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    ScoreTable own;
    std::map<RobotId, PeerTable> peers;
    for (int e = 0; e < 5; ++e) own["e" + std::to_string(e)] = u(gen);
    for (int r = 0; r < 3; ++r) {
      PeerTable p;
      for (int e = 0; e < 5; ++e) p.scores["e" + std::to_string(e)] = u(gen);
      peers["r" + std::to_string(r)] = p;
    }
    const double k = 0.1 + 10 * u(gen);
    ScoreTable own_k = own;
    for (auto& [e, v] : own_k) v *= k;
    auto peers_k = peers;
    for (auto& [r, p] : peers_k) {
      for (auto& [e, v] : p.scores) v *= k;
    }
    CHECK(select_max_edge(exchange_and_sum(own, peers, 0, 3)).max_edge ==
          select_max_edge(exchange_and_sum(own_k, peers_k, 0, 3)).max_edge);
  }
}

TEST_CASE("utility table wire form round-trips exactly") {
  UtilityTableMsg m{7, "r2", 3.25, {{"e1", 0.1 + 0.2}, {"e2", 1.0 / 3.0}}};
  CHECK(decode_table(encode_table(m)) == m);
  CHECK_THROWS_AS(decode_table("{not json"), Error);
  CHECK_THROWS_AS(decode_table(R"({"iteration":1})"), Error);
}

TEST_CASE("scheduler keeps its selection when everything is stale") {
  auto s = state(0.05, "e2");
  Scheduler sch(s, TaskSpec{}, NetworkBounds{}, 3.0);
  sch.compute_own({{"e1", edge("e1", 10, -50, true)}, {"e2", edge("e2", 10, -50, true)}}, 5, 1);
  CHECK(sch.propose(5).max_edge == "e2");
}

TEST_CASE("scheduler sums fresh peer tables") {
  Scheduler sch(state(), TaskSpec{}, NetworkBounds{}, 3.0);
  const auto own = sch.compute_own({{"e1", edge("e1", 40)}, {"e2", edge("e2", 50)}}, 1, 1);
  CHECK(own.robot_id == "r1");
  CHECK(own.iteration == 1);
  sch.receive_peer(UtilityTableMsg{1, "r2", 1.0, {{"e1", 0.0}, {"e2", 1.0}}}, 1.05);
  const auto p = sch.propose(1.1);
  CHECK(p.max_edge == "e2");
  CHECK(p.utility_table.at("e1") == doctest::Approx(0.6));
  CHECK(p.utility_table.at("e2") == doctest::Approx(1.5));
  CHECK(sch.propose(10).max_edge == "e1");
}
