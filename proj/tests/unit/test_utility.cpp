#include <doctest.h>

#include <random>

#include "offload/utility.hpp"
#include "oracles.hpp"

using namespace offload;

namespace {

DeviceSnapshot cpu(double max, double used) {
  DeviceSnapshot s;
  s.edge_id = "e1";
  s.cpu_max = max;
  s.cpu_used = used;
  s.mem_max = 4096;
  return s;
}

DeviceSnapshot mem(double max, double used) {
  DeviceSnapshot s;
  s.edge_id = "e1";
  s.mem_max = max;
  s.mem_used = used;
  return s;
}

TaskSpec footprint(double theta) {
  TaskSpec t;
  t.mem_footprint = theta;
  return t;
}

NetworkSnapshot link(double rssi) {
  NetworkSnapshot n;
  n.robot_id = "r1";
  n.edge_id = "e1";
  n.rssi = rssi;
  return n;
}

constexpr double kTol = 1e-12;

}  // namespace

TEST_CASE("cpu utility examples") {
  CHECK(cpu_utility(cpu(100, 0)) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(cpu_utility(cpu(100, 100)) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(std::abs(cpu_utility(cpu(100, 40)) - 0.6) < kTol);
  CHECK_THROWS_AS(cpu_utility(cpu(0, 0)), Error);
  try {
    cpu_utility(cpu(-1, 0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSnapshot);
  }
}

TEST_CASE("memory utility examples") {
  CHECK(std::abs(memory_utility(mem(4096, 0), footprint(0)) - 1.0) < kTol);
  CHECK(std::abs(memory_utility(mem(4096, 1536), footprint(512)) - 0.5) < kTol);
  CHECK(memory_utility(mem(4096, 3584), footprint(1024)) == 0.0);
  CHECK_THROWS_AS(memory_utility(mem(0, 0), footprint(0)), Error);
}

TEST_CASE("rssi utility examples") {
  const NetworkBounds b{-85, -30};
  CHECK(rssi_utility(link(-85), b) == 0.0);
  CHECK(std::abs(rssi_utility(link(-30), b) - 1.0) < kTol);
  CHECK(std::abs(rssi_utility(link(-60), b) - 25.0 / 55.0) < kTol);
  CHECK(rssi_utility(link(-100), b) == 0.0);
  CHECK(rssi_utility(link(-10), b) == 1.0);
  try {
    rssi_utility(link(-60), NetworkBounds{-30, -30});
    FAIL("expected invalid bounds");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidBounds);
  }
}

TEST_CASE("total utility examples") {
  CHECK(std::abs(total_utility(0.7, 0.2, 0.9, {1, 0, 0}) - 0.7) < kTol);
  CHECK(std::abs(total_utility(0.6, 0.5, 0.5, {0.3, 0.3, 0.4}) - 0.53) < kTol);
  try {
    total_utility(0.5, 0.5, 0.5, {0.5, 0.6, 0.2});
    FAIL("expected invalid weights");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidWeights);
  }
  CHECK_THROWS_AS(total_utility(0.5, 0.5, 0.5, {1.2, -0.2, 0.0}), Error);
  CHECK_NOTHROW(total_utility(0.5, 0.5, 0.5, {0.1, 0.2, 0.7 + 5e-10}));
  CHECK_THROWS_AS(total_utility(0.5, 0.5, 0.5, {0.1, 0.2, 0.7 + 1e-8}), Error);
}

TEST_CASE("sum over edges examples") {
  auto s = sum_over_edges({{"r1", {{"e1", 0.5}}}, {"r2", {{"e1", 0.3}}}});
  CHECK(std::abs(s.at("e1") - 0.8) < kTol);

  const ScoreTable one{{"e1", 0.25}, {"e2", 0.75}};
  CHECK(sum_over_edges({{"r1", one}}) == one);

  s = sum_over_edges({{"r1", {{"e1", 0.2}, {"e2", 0.9}}}, {"r2", {{"e1", 0.9}, {"e2", 0.3}}}});
  CHECK(std::abs(s.at("e1") - 1.1) < kTol);
  CHECK(std::abs(s.at("e2") - 1.2) < kTol);
  CHECK(oracle::argmax(s) == "e2");

  s = sum_over_edges({{"r1", {{"e1", 0.4}}}, {"r2", {{"e2", 0.6}}}});
  CHECK(s.at("e1") == 0.4);
  CHECK(s.at("e2") == 0.6);

  CHECK_THROWS_AS(sum_over_edges({}), Error);
  CHECK_THROWS_AS(sum_over_edges({{"r1", {}}}), Error);
}

TEST_CASE("component utilities stay in the unit interval") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> pct(0, 100), mb(0, 8192), dbm(-120, 0);
  const NetworkBounds b;
  for (int i = 0; i < 5000; ++i) {
    const double eta = cpu_utility(cpu(100, pct(gen)));
    const double sigma = memory_utility(mem(4096, std::min(mb(gen), 4096.0)), footprint(mb(gen)));
    const double kappa = rssi_utility(link(dbm(gen)), b);
    CHECK((eta >= 0.0 && eta <= 1.0));
    CHECK((sigma >= 0.0 && sigma <= 1.0));
    CHECK((kappa >= 0.0 && kappa <= 1.0));
  }
}

TEST_CASE("utilities are monotone on the unclamped region") {
  const NetworkBounds b;
  for (double beta = 0; beta < 99; beta += 1) {
    CHECK(cpu_utility(cpu(100, beta)) > cpu_utility(cpu(100, beta + 1)));
  }
  for (double mu = 0; mu < 3000; mu += 50) {
    CHECK(memory_utility(mem(4096, mu), footprint(256)) >
          memory_utility(mem(4096, mu + 50), footprint(256)));
    CHECK(memory_utility(mem(4096, 256), footprint(mu)) >
          memory_utility(mem(4096, 256), footprint(mu + 50)));
  }
  for (double l = -85; l < -30; l += 0.5) {
    CHECK(rssi_utility(link(l), b) < rssi_utility(link(l + 0.5), b));
  }
}

TEST_CASE("total utility is linear and degenerates on corner weights") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const double eta = u(gen), sigma = u(gen), kappa = u(gen), a = u(gen);
    const double w1 = u(gen), w2 = (1 - w1) * u(gen);
    const Weights w{w1, w2, 1 - w1 - w2};
    CHECK(total_utility(a * eta, a * sigma, a * kappa, w) ==
          doctest::Approx(a * total_utility(eta, sigma, kappa, w)).epsilon(1e-12));
    CHECK(total_utility(eta, sigma, kappa, {1, 0, 0}) == eta);
    CHECK(total_utility(eta, sigma, kappa, {0, 1, 0}) == sigma);
    CHECK(total_utility(eta, sigma, kappa, {0, 0, 1}) == kappa);
  }
}

TEST_CASE("component-wise dominance implies a strictly higher total") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const Weights w{0.45, 0.45, 0.1};
    const double eta = u(gen) * 0.9, sigma = u(gen) * 0.9, kappa = u(gen) * 0.9;
    const double bump = 0.01 + 0.09 * u(gen);
    CHECK(total_utility(eta + bump, sigma, kappa, w) > total_utility(eta, sigma, kappa, w));
    CHECK(total_utility(eta, sigma + bump, kappa + bump, w) >
          total_utility(eta, sigma, kappa, w));
  }
}

TEST_CASE("sum over edges matches brute-force accumulation") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const int robots = 1 + static_cast<int>(gen() % 10);
    const int edges = 1 + static_cast<int>(gen() % 10);
    std::map<RobotId, ScoreTable> tables;
    std::map<std::string, double> expected;
    for (int r = 0; r < robots; ++r) {
      auto& t = tables["r" + std::to_string(r)];
      for (int e = 0; e < edges; ++e) {
        if (gen() % 5 == 0) continue;
        const std::string id = "e" + std::to_string(e);
        t[id] = u(gen);
      }
    }
    for (const auto& [r, t] : tables) {
      for (const auto& [e, v] : t) expected[e] += v;
    }
    if (expected.empty()) continue;
    const auto got = sum_over_edges(tables);
    REQUIRE(got.size() == expected.size());
    for (const auto& [e, v] : expected) CHECK(got.at(e) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("evaluate_edge combines the three components") {
  DeviceSnapshot d = cpu(100, 40);
  d.mem_used = 1536;
  const auto b = evaluate_edge(d, link(-60), footprint(512), NetworkBounds{}, {0.3, 0.3, 0.4});
  CHECK(b.edge_id == "e1");
  CHECK(std::abs(b.eta - 0.6) < kTol);
  CHECK(std::abs(b.sigma - 0.5) < kTol);
  CHECK(std::abs(b.kappa - 25.0 / 55.0) < kTol);
  CHECK(std::abs(b.total - (0.18 + 0.15 + 0.4 * 25.0 / 55.0)) < kTol);
}
