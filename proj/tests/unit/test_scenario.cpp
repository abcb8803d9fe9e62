#include <doctest.h>

#include "offload/scenario.hpp"

using namespace offload;

namespace {

const char* kBase = R"(seed: 3
scheme: dynamic:both
duration: 60
nominal_duration: 20
task: {id: t, mem_footprint: 128, work_per_message: 50, message_size: 10000, message_mem: 1}
edges:
  - {id: e1, pose: [0, 0]}
  - {id: e2, pose: [3, 0], capacity_factor: 0.5}
robots:
  - {id: r1, input_rate: 2, pose: [1, 1]}
  - {id: r2, input_rate: 1.5, trajectory: [[0, 1, 1], [30, 2, 1]]}
)";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "cfg.yaml");
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(Scheme::parse("fixed:e1") == Scheme{Scheme::Kind::kFixed, "e1"});
  CHECK(Scheme::parse("fixed_e2") == Scheme{Scheme::Kind::kFixed, "e2"});
  CHECK(Scheme::parse("Fixed_e3") == Scheme{Scheme::Kind::kFixed, "e3"});
  CHECK(Scheme::parse("dynamic:mem") == Scheme{Scheme::Kind::kDynamic, "mem"});
  CHECK(Scheme::parse("dyna_both") == Scheme{Scheme::Kind::kDynamic, "both"});
  CHECK(Scheme::parse("dyna_cpu").name() == "dynamic:cpu");
  CHECK_THROWS_AS(Scheme::parse("dynamic:gpu"), Error);
  CHECK_THROWS_AS(Scheme::parse("random"), Error);
  CHECK_THROWS_AS(Scheme::parse("fixed:"), Error);
}

TEST_CASE("default weight presets") {
  const auto p = default_weight_presets();
  CHECK(p.at("cpu") == Weights{0.8, 0.1, 0.1});
  CHECK(p.at("mem") == Weights{0.1, 0.8, 0.1});
  CHECK(p.at("both") == Weights{0.45, 0.45, 0.1});
  CHECK(p.at("net") == Weights{0.1, 0.1, 0.8});
}

TEST_CASE("parse a scenario") {
  const auto c = parse_scenario(kBase, "cfg.yaml");
  CHECK(c.seed == 3);
  CHECK(c.scheme.name() == "dynamic:both");
  CHECK(c.weights() == Weights{0.45, 0.45, 0.1});
  CHECK(c.edges.size() == 2);
  CHECK(c.edges[1].capacity_factor == 0.5);
  CHECK(c.robots[1].trajectory.waypoints().size() == 2);
  CHECK(c.reference_rate() == doctest::Approx(20.0));
  CHECK(c.message_budget() == 70);
  CHECK(c.edge_ids() == std::vector<EdgeId>{"e1", "e2"});
}

TEST_CASE("emitted config round-trips") {
  const auto c = parse_scenario(kBase, "cfg.yaml");
  const auto text = emit_scenario(c);
  const auto again = parse_scenario(text, "effective.yaml");
  CHECK(emit_scenario(again) == text);
}

TEST_CASE("weights not summing to one name the field and line") {
  std::string text = kBase;
  text += "weight_presets:\n  both: {cpu: 0.5, mem: 0.5, net: 0.1}\n";
  const auto msg = error_of(text);
  CHECK(msg.find("cfg.yaml:13:") != std::string::npos);
  CHECK(msg.find("weight_presets.both") != std::string::npos);
}

TEST_CASE("config diagnostics are line anchored") {
  std::string text = kBase;
  text.replace(text.find("duration: 60"), 12, "duration: -1");
  CHECK(error_of(text).rfind("cfg.yaml:3:", 0) == 0);

  text = kBase;
  text += "surprise: 1\n";
  const auto unknown = error_of(text);
  CHECK(unknown.rfind("cfg.yaml:12:", 0) == 0);
  CHECK(unknown.find("surprise") != std::string::npos);

  text = kBase;
  text.replace(text.find("dynamic:both"), 12, "fixed:e7");
  CHECK(error_of(text).rfind("cfg.yaml:2:", 0) == 0);

  text = kBase;
  text.replace(text.find("id: e2"), 6, "id: e1");
  CHECK(error_of(text).find("duplicate") != std::string::npos);

  CHECK(error_of("seed: [1\n").rfind("cfg.yaml:", 0) == 0);
}

TEST_CASE("validation errors use the config code") {
  std::string text = kBase;
  text += "sticky_bonus: 0.9\n";
  try {
    parse_scenario(text, "cfg.yaml");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
}

TEST_CASE("missing file is an io error") {
  try {
    load_scenario("/nonexistent/cfg.yaml");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
