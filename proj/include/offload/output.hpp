#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "offload/compare.hpp"
#include "offload/scenario.hpp"
#include "offload/simulation.hpp"

namespace offload {

/// Writes a run directory:
///   metrics.csv              time series, one row per sampling tick
///   decisions.csv            decision log of the first robot's executor
///   executors/<robot>.csv    decision log of every executor
///   summary.txt, summary.json
///   effective_config.yaml    resolved config that reproduces the run
/// Returns the paths written.
std::vector<std::filesystem::path> write_run_outputs(const MetricsReport& report,
                                                     const ScenarioConfig& config,
                                                     const std::filesystem::path& dir);

/// comparison.csv, deltas.csv, comparison.txt, comparison.json and
/// effective_config.yaml.
std::vector<std::filesystem::path> write_comparison_outputs(const Comparison& cmp,
                                                            const ScenarioConfig& config,
                                                            const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace offload
