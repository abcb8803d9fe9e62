#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "offload/scenario.hpp"
#include "offload/simulation.hpp"

namespace offload {

/// Metrics tabulated per run, in column order.
const std::vector<std::string>& comparison_metrics();

/// Value of a named comparison metric for one run.
double metric_value(const MetricsReport& report, const std::string& metric);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single run
};

struct SchemeResult {
  Scheme scheme;
  std::vector<MetricsReport> runs;  // one per seed, same order as seeds
  std::map<std::string, MetricStats> stats;
};

struct RelativeDelta {
  std::string dynamic_scheme;
  std::string fixed_scheme;
  std::string metric;
  double delta = 0.0;  // (dynamic - fixed) / |fixed|
};

struct Comparison {
  std::vector<std::uint64_t> seeds;
  std::vector<SchemeResult> results;
  std::vector<RelativeDelta> deltas;

  const SchemeResult& result(const std::string& scheme_name) const;

  /// Per-seed rows plus one mean±std aggregate row for every scheme.
  std::string csv() const;
  std::string deltas_csv() const;
  std::string table_text() const;
  nlohmann::json to_json() const;
};

/// Default scheme list: every fixed edge plus dynamic cpu, mem and both.
std::vector<Scheme> default_schemes(const ScenarioConfig& base);

/// Default seeds: base.seed, base.seed + 1, ... (count of them).
std::vector<std::uint64_t> default_seeds(const ScenarioConfig& base, std::size_t count = 5);

/// Runs every scheme over the same seeds. Independent runs may execute on
/// up to `threads` workers (0 picks the hardware concurrency); results do
/// not depend on it.
Comparison compare_schemes(const ScenarioConfig& base, const std::vector<Scheme>& schemes,
                           const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

}  // namespace offload
