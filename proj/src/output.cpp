#include "offload/output.hpp"

#include <fstream>

#include <fmt/format.h>

namespace offload {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(ErrorCode::kIo, fmt::format("short write to '{}'", path.string()));
}

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot create output directory '{}': {}", dir.string(),
                            ec ? ec.message() : "not a directory"));
  }
}

}  // namespace

std::vector<std::filesystem::path> write_run_outputs(const MetricsReport& report,
                                                     const ScenarioConfig& config,
                                                     const std::filesystem::path& dir) {
  ensure_dir(dir);
  ensure_dir(dir / "executors");
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    write_text_file(p, text);
    written.push_back(p);
  };
  put(dir / "metrics.csv", report.metrics_csv());
  put(dir / "decisions.csv", report.decisions_csv());
  for (const auto& robot : report.robots) {
    put(dir / "executors" / (robot + ".csv"), report.decisions_csv(robot));
  }
  put(dir / "summary.txt", report.summary_text());
  put(dir / "summary.json", report.summary_json().dump(2) + "\n");
  put(dir / "effective_config.yaml", emit_scenario(config));
  return written;
}

std::vector<std::filesystem::path> write_comparison_outputs(const Comparison& cmp,
                                                            const ScenarioConfig& config,
                                                            const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    write_text_file(p, text);
    written.push_back(p);
  };
  put(dir / "comparison.csv", cmp.csv());
  put(dir / "deltas.csv", cmp.deltas_csv());
  put(dir / "comparison.txt", cmp.table_text());
  put(dir / "comparison.json", cmp.to_json().dump(2) + "\n");
  put(dir / "effective_config.yaml", emit_scenario(config));
  return written;
}

}  // namespace offload
