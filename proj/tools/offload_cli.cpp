#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "offload/offload.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int exit_code_for(offload_status status) {
  switch (status) {
    case OFFLOAD_OK:
      return kExitOk;
    case OFFLOAD_ERR_INVALID_ARGUMENT:
    case OFFLOAD_ERR_INVALID_SNAPSHOT:
    case OFFLOAD_ERR_INVALID_BOUNDS:
    case OFFLOAD_ERR_INVALID_WEIGHTS:
    case OFFLOAD_ERR_CONFIG:
    case OFFLOAD_ERR_PARSE:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

int report_failure(offload_status status) {
  std::cerr << "error: " << offload_last_error() << "\n";
  return exit_code_for(status);
}

struct ScenarioHandle {
  offload_scenario* ptr = nullptr;
  ~ScenarioHandle() { offload_scenario_free(ptr); }
};

struct ReportHandle {
  offload_report* ptr = nullptr;
  ~ReportHandle() { offload_report_free(ptr); }
};

struct ComparisonHandle {
  offload_comparison* ptr = nullptr;
  ~ComparisonHandle() { offload_comparison_free(ptr); }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::string scheme;
  std::string schemes;
  std::string seeds;
  std::string device_trace;
  std::string net_trace;
  unsigned threads = 0;
  int verbosity = 0;
};

int load(const Options& opt, ScenarioHandle& scenario) {
  if (auto st = offload_scenario_load(opt.config.c_str(), &scenario.ptr); st != OFFLOAD_OK) {
    return report_failure(st);
  }
  if (opt.seed) offload_scenario_set_seed(scenario.ptr, *opt.seed);
  return kExitOk;
}

int finish_run(const Options& opt, ScenarioHandle& scenario) {
  ReportHandle report;
  if (auto st = offload_run(scenario.ptr, &report.ptr); st != OFFLOAD_OK) {
    return report_failure(st);
  }
  if (auto st = offload_report_write(report.ptr, opt.out.c_str()); st != OFFLOAD_OK) {
    return report_failure(st);
  }
  if (opt.verbosity > 0) std::cout << offload_report_summary_text(report.ptr);
  offload_run_summary summary{};
  offload_report_summary(report.ptr, &summary);
  std::cout << "wrote " << opt.out << " (latency " << summary.task_latency << " s, "
            << summary.switch_count << " switches)\n";
  return kExitOk;
}

int cmd_run(const Options& opt) {
  ScenarioHandle scenario;
  if (int rc = load(opt, scenario); rc != kExitOk) return rc;
  if (!opt.scheme.empty()) {
    if (auto st = offload_scenario_set_scheme(scenario.ptr, opt.scheme.c_str());
        st != OFFLOAD_OK) {
      std::cerr << "valid schemes: " << offload_scenario_valid_schemes(scenario.ptr) << "\n";
      return report_failure(st);
    }
  }
  return finish_run(opt, scenario);
}

int cmd_replay(const Options& opt) {
  ScenarioHandle scenario;
  if (int rc = load(opt, scenario); rc != kExitOk) return rc;
  if (!opt.scheme.empty()) {
    if (auto st = offload_scenario_set_scheme(scenario.ptr, opt.scheme.c_str());
        st != OFFLOAD_OK) {
      return report_failure(st);
    }
  }
  if (auto st = offload_scenario_set_device_trace(scenario.ptr, opt.device_trace.c_str());
      st != OFFLOAD_OK) {
    return report_failure(st);
  }
  if (auto st = offload_scenario_set_network_trace(scenario.ptr, opt.net_trace.c_str());
      st != OFFLOAD_OK) {
    return report_failure(st);
  }
  return finish_run(opt, scenario);
}

int cmd_compare(const Options& opt) {
  ScenarioHandle scenario;
  if (int rc = load(opt, scenario); rc != kExitOk) return rc;

  const char* schemes = nullptr;
  if (!opt.schemes.empty()) {
    const auto names = split(opt.schemes);
    if (names.size() < 2) {
      std::cerr << "error: compare needs at least two schemes\n"
                << "valid schemes: " << offload_scenario_valid_schemes(scenario.ptr) << "\n";
      return kExitValidation;
    }
    schemes = opt.schemes.c_str();
  }

  std::vector<std::uint64_t> seeds;
  for (const auto& s : split(opt.seeds)) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      std::cerr << "error: --seeds: '" << s << "' is not an unsigned integer\n";
      return kExitValidation;
    }
  }

  ComparisonHandle cmp;
  auto st = offload_compare(scenario.ptr, schemes, seeds.empty() ? nullptr : seeds.data(),
                            seeds.size(), opt.threads, &cmp.ptr);
  if (st != OFFLOAD_OK) {
    if (exit_code_for(st) == kExitValidation) {
      std::cerr << "valid schemes: " << offload_scenario_valid_schemes(scenario.ptr) << "\n";
    }
    return report_failure(st);
  }
  if (auto wst = offload_comparison_write(cmp.ptr, opt.out.c_str()); wst != OFFLOAD_OK) {
    return report_failure(wst);
  }
  std::cout << offload_comparison_table(cmp.ptr);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus-based offloading scheduler simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(offload_version()));

  Options opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario file (YAML)")->required();
    sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Seed override");
    sub->add_flag("-v,--verbose", opt.verbosity, "Print the run summary");
  };

  auto* run = app.add_subcommand("run", "Run one scenario");
  common(run);
  run->add_option("--scheme", opt.scheme, "Scheme override, e.g. fixed:e1 or dynamic:both");

  auto* compare = app.add_subcommand("compare", "Compare schemes over several seeds");
  common(compare);
  compare->add_option("--schemes", opt.schemes,
                      "Comma-separated schemes (default: every fixed edge, dynamic cpu/mem/both)");
  compare->add_option("--seeds", opt.seeds, "Comma-separated seeds (default: five from --seed)");
  compare->add_option("--threads", opt.threads, "Worker threads (0 = hardware concurrency)");

  auto* replay = app.add_subcommand("replay", "Run against recorded device and network traces");
  common(replay);
  replay->add_option("--device-trace", opt.device_trace, "Device trace CSV")->required();
  replay->add_option("--net-trace", opt.net_trace, "Network trace CSV")->required();
  replay->add_option("--scheme", opt.scheme, "Scheme override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (run->parsed()) return cmd_run(opt);
  if (compare->parsed()) return cmd_compare(opt);
  return cmd_replay(opt);
}
