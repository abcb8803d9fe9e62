#include <doctest.h>

#include <cmath>

#include "offload/error.hpp"
#include "offload/netsim.hpp"

using namespace offload;

namespace {

LinkModel quiet(double p0 = -40, double n = 2.2) {
  LinkModel l;
  l.p0 = p0;
  l.path_loss_exponent = n;
  l.shadowing_sigma = 0;
  return l;
}

NodePose at(const std::string& id, double x, double y = 0, double t = 0) {
  return NodePose{id, x, y, t};
}

}  // namespace

TEST_CASE("rssi at the reference distance is p0") {
  CHECK(rssi_at(quiet(), at("r1", 0), at("e1", 1)) == doctest::Approx(-40));
  CHECK(rssi_at(quiet(), at("r1", 0), at("e1", 0.2)) == doctest::Approx(-40));
}

TEST_CASE("log-distance law at ten reference distances") {
  CHECK(rssi_at(quiet(-40, 2), at("r1", 0), at("e1", 10)) == doctest::Approx(-60).epsilon(1e-12));
}

TEST_CASE("rssi is clamped") {
  CHECK(rssi_at(quiet(-40, 6), at("r1", 0), at("e1", 1e6)) == kRssiFloorDbm);
  CHECK(rssi_at(quiet(-10, 2), at("r1", 0), at("e1", 1)) == kRssiCeilingDbm);
}

TEST_CASE("shadowed rssi is deterministic and keyed by link and time") {
  LinkModel l;
  l.seed = 99;
  const double a = rssi_at(l, at("r1", 0, 0, 3), at("e1", 5));
  CHECK(a == rssi_at(l, at("r1", 0, 0, 3), at("e1", 5)));
  CHECK(a != rssi_at(l, at("r1", 0, 0, 4), at("e1", 5)));
  CHECK(a != rssi_at(l, at("r2", 0, 0, 3), at("e1", 5)));
  l.seed = 100;
  CHECK(a != rssi_at(l, at("r1", 0, 0, 3), at("e1", 5)));
}

TEST_CASE("rssi is non-increasing in distance without shadowing") {
  double prev = 0;
  for (double d = 0.1; d < 500; d *= 1.1) {
    const double r = rssi_at(quiet(), at("r1", 0), at("e1", d));
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("link model validation") {
  LinkModel l;
  CHECK_NOTHROW(validate_link(l));
  l.path_loss_exponent = 1.0;
  CHECK_THROWS_AS(validate_link(l), Error);
  l.path_loss_exponent = 6.5;
  CHECK_THROWS_AS(validate_link(l), Error);
  l = LinkModel{};
  l.d0 = 0;
  CHECK_THROWS_AS(validate_link(l), Error);
}

TEST_CASE("default throughput table") {
  const auto t = ThroughputTable::defaults();
  CHECK(t.mbps(-45) == 54);
  CHECK(t.mbps(-50) == 54);
  CHECK(t.mbps(-55) == 36);
  CHECK(t.mbps(-65) == 18);
  CHECK(t.mbps(-75) == 6);
  CHECK(t.mbps(-82) == 1);
  CHECK(t.mbps(-85) == 1);
  CHECK(t.mbps(-95) == 0);
}

TEST_CASE("throughput is monotone non-decreasing in rssi") {
  const auto t = ThroughputTable::defaults();
  double prev = -1;
  for (double r = -130; r <= 0; r += 0.25) {
    CHECK(t.mbps(r) >= prev);
    prev = t.mbps(r);
  }
}

TEST_CASE("throughput table rejects non-monotone steps") {
  CHECK_THROWS_AS(ThroughputTable({{-60, 36}, {-50, 54}}, -85), Error);
  CHECK_THROWS_AS(ThroughputTable({{-50, 18}, {-60, 36}}, -85), Error);
}

TEST_CASE("deliver timing") {
  const auto t = ThroughputTable::defaults();
  Message m{"r1", "e1", 1e6, 0, "map", 1};
  const auto d = deliver(m, -75, 10.0, t, 0.005);
  CHECK_FALSE(d.dropped);
  CHECK(d.arrival == doctest::Approx(10.0 + 0.005 + 8e6 / 6e6).epsilon(1e-12));
  CHECK(deliver(m, -95, 10.0, t, 0.005).dropped);
  m.size = 0;
  CHECK_THROWS_AS(deliver(m, -75, 10.0, t, 0.005), Error);
}

TEST_CASE("transport keeps per-pair FIFO order and causality") {
  Transport tr(ThroughputTable::defaults(), 0.005);
  const auto big = tr.send(Message{"r1", "e1", 1e6, 0, "map", 1}, -75, 0.0);
  const auto small = tr.send(Message{"r1", "e1", 100, 0.1, "map", 2}, -45, 0.1);
  CHECK(small.arrival >= big.arrival);
  const auto other = tr.send(Message{"r2", "e1", 100, 0.1, "map", 3}, -45, 0.1);
  CHECK(other.arrival < big.arrival);
  CHECK(other.arrival >= 0.1 + 0.005);
}

TEST_CASE("trajectory interpolation") {
  Trajectory tr({{0, 0, 0}, {10, 10, 0}});
  CHECK(tr.pose_at("r1", 5).x == doctest::Approx(5));
  CHECK(tr.pose_at("r1", -1).x == 0);
  CHECK(tr.pose_at("r1", 20).x == 10);
  CHECK(distance(at("a", 0, 0), at("b", 3, 4)) == doctest::Approx(5));
}
