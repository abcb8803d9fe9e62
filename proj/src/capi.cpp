#include "offload/offload.h"

#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "offload/compare.hpp"
#include "offload/output.hpp"
#include "offload/scenario.hpp"
#include "offload/simulation.hpp"
#include "offload/utility.hpp"

struct offload_scenario {
  offload::ScenarioConfig config;
  std::string cached;
};

struct offload_report {
  offload::MetricsReport report;
  offload::ScenarioConfig config;
  std::string cached;
};

struct offload_comparison {
  offload::Comparison comparison;
  offload::ScenarioConfig config;
  std::string cached;
};

namespace {

thread_local std::string g_last_error;

offload_status fail(offload_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
offload_status guarded(F&& body) {
  try {
    body();
    return OFFLOAD_OK;
  } catch (const offload::Error& e) {
    return fail(static_cast<offload_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OFFLOAD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OFFLOAD_ERR_INTERNAL, e.what());
  }
}

#define OFFLOAD_REQUIRE(ptr)                                                      \
  do {                                                                            \
    if ((ptr) == nullptr) return fail(OFFLOAD_ERR_INVALID_ARGUMENT, #ptr " is NULL"); \
  } while (0)

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

extern "C" {

const char* offload_version(void) { return "1.0.0"; }

const char* offload_last_error(void) { return g_last_error.c_str(); }

const char* offload_status_string(offload_status status) {
  if (status == OFFLOAD_OK) return "ok";
  return offload::to_string(static_cast<offload::ErrorCode>(status));
}

offload_status offload_cpu_utility(double cpu_max, double cpu_used, double* out) {
  OFFLOAD_REQUIRE(out);
  return guarded([&] {
    offload::DeviceSnapshot s;
    s.cpu_max = cpu_max;
    s.cpu_used = cpu_used;
    *out = offload::cpu_utility(s);
  });
}

offload_status offload_memory_utility(double mem_max, double mem_used, double task_footprint,
                                      double* out) {
  OFFLOAD_REQUIRE(out);
  return guarded([&] {
    offload::DeviceSnapshot s;
    s.mem_max = mem_max;
    s.mem_used = mem_used;
    offload::TaskSpec task;
    task.mem_footprint = task_footprint;
    *out = offload::memory_utility(s, task);
  });
}

offload_status offload_rssi_utility(double rssi, double nu, double rho, double* out) {
  OFFLOAD_REQUIRE(out);
  return guarded([&] {
    offload::NetworkSnapshot n;
    n.rssi = rssi;
    *out = offload::rssi_utility(n, offload::NetworkBounds{nu, rho});
  });
}

offload_status offload_total_utility(double eta, double sigma, double kappa, double w_cpu,
                                     double w_mem, double w_net, double* out) {
  OFFLOAD_REQUIRE(out);
  return guarded([&] {
    *out = offload::total_utility(eta, sigma, kappa, offload::Weights{w_cpu, w_mem, w_net});
  });
}

offload_status offload_scenario_load(const char* path, offload_scenario** out) {
  OFFLOAD_REQUIRE(path);
  OFFLOAD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<offload_scenario>();
    s->config = offload::load_scenario(path);
    *out = s.release();
  });
}

offload_status offload_scenario_parse(const char* yaml_text, const char* base_dir,
                                      offload_scenario** out) {
  OFFLOAD_REQUIRE(yaml_text);
  OFFLOAD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<offload_scenario>();
    s->config = offload::parse_scenario(yaml_text, "<string>",
                                        base_dir ? std::filesystem::path(base_dir)
                                                 : std::filesystem::path());
    *out = s.release();
  });
}

void offload_scenario_free(offload_scenario* scenario) { delete scenario; }

offload_status offload_scenario_set_seed(offload_scenario* scenario, uint64_t seed) {
  OFFLOAD_REQUIRE(scenario);
  scenario->config.seed = seed;
  return OFFLOAD_OK;
}

offload_status offload_scenario_set_scheme(offload_scenario* scenario, const char* scheme) {
  OFFLOAD_REQUIRE(scenario);
  OFFLOAD_REQUIRE(scheme);
  return guarded([&] {
    offload::ScenarioConfig next = scenario->config;
    next.scheme = offload::Scheme::parse(scheme);
    offload::validate(next);
    scenario->config = std::move(next);
  });
}

offload_status offload_scenario_set_sticky_bonus(offload_scenario* scenario, double bonus) {
  OFFLOAD_REQUIRE(scenario);
  return guarded([&] {
    offload::ScenarioConfig next = scenario->config;
    next.sticky_bonus = bonus;
    offload::validate(next);
    scenario->config = std::move(next);
  });
}

offload_status offload_scenario_set_device_trace(offload_scenario* scenario, const char* path) {
  OFFLOAD_REQUIRE(scenario);
  OFFLOAD_REQUIRE(path);
  return guarded([&] {
    (void)offload::read_device_trace(path);
    scenario->config.device_trace = std::filesystem::path(path);
  });
}

offload_status offload_scenario_set_network_trace(offload_scenario* scenario,
                                                  const char* path) {
  OFFLOAD_REQUIRE(scenario);
  OFFLOAD_REQUIRE(path);
  return guarded([&] {
    (void)offload::read_network_trace(path);
    scenario->config.network_trace = std::filesystem::path(path);
  });
}

uint64_t offload_scenario_seed(const offload_scenario* scenario) {
  return scenario ? scenario->config.seed : 0;
}

const char* offload_scenario_valid_schemes(offload_scenario* scenario) {
  if (scenario == nullptr) return "";
  std::string out;
  for (const auto& e : scenario->config.edges) out += (out.empty() ? "" : ",") + ("fixed:" + e.id);
  for (const auto& v : offload::dynamic_variants()) out += ",dynamic:" + v;
  scenario->cached = std::move(out);
  return scenario->cached.c_str();
}

const char* offload_scenario_effective_config(offload_scenario* scenario) {
  if (scenario == nullptr) return "";
  scenario->cached = offload::emit_scenario(scenario->config);
  return scenario->cached.c_str();
}

offload_status offload_run(const offload_scenario* scenario, offload_report** out) {
  OFFLOAD_REQUIRE(scenario);
  OFFLOAD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<offload_report>();
    r->config = scenario->config;
    r->report = offload::run_scenario(r->config);
    *out = r.release();
  });
}

void offload_report_free(offload_report* report) { delete report; }

offload_status offload_report_summary(const offload_report* report, offload_run_summary* out) {
  OFFLOAD_REQUIRE(report);
  OFFLOAD_REQUIRE(out);
  const auto& r = report->report;
  out->task_latency = r.task_latency;
  out->processing_frequency = r.processing_frequency;
  out->mean_message_latency = r.mean_message_latency;
  out->cpu_balance_variance = r.cpu_balance_variance();
  out->total_throughput_mbps = r.total_throughput();
  out->merged_outputs = r.merged_outputs;
  out->switch_count = r.switch_count;
  out->budget = r.budget;
  out->generated = r.generated;
  out->processed = r.processed;
  out->queued = r.queued;
  out->dropped = r.dropped;
  out->completed = r.completed ? 1 : 0;
  return OFFLOAD_OK;
}

const char* offload_report_summary_text(offload_report* report) {
  if (report == nullptr) return "";
  report->cached = report->report.summary_text();
  return report->cached.c_str();
}

const char* offload_report_metrics_csv(offload_report* report) {
  if (report == nullptr) return "";
  report->cached = report->report.metrics_csv();
  return report->cached.c_str();
}

const char* offload_report_decisions_csv(offload_report* report, const char* robot_id) {
  if (report == nullptr) return "";
  report->cached = report->report.decisions_csv(robot_id ? robot_id : "");
  return report->cached.c_str();
}

offload_status offload_report_write(const offload_report* report, const char* out_dir) {
  OFFLOAD_REQUIRE(report);
  OFFLOAD_REQUIRE(out_dir);
  return guarded(
      [&] { offload::write_run_outputs(report->report, report->config, out_dir); });
}

offload_status offload_compare(const offload_scenario* scenario, const char* schemes,
                               const uint64_t* seeds, size_t n_seeds, unsigned threads,
                               offload_comparison** out) {
  OFFLOAD_REQUIRE(scenario);
  OFFLOAD_REQUIRE(out);
  *out = nullptr;
  if (n_seeds > 0 && seeds == nullptr) {
    return fail(OFFLOAD_ERR_INVALID_ARGUMENT, "seeds is NULL but n_seeds > 0");
  }
  return guarded([&] {
    const auto& base = scenario->config;
    std::vector<offload::Scheme> list;
    if (schemes == nullptr) {
      list = offload::default_schemes(base);
    } else {
      for (const auto& name : split_list(schemes)) {
        auto s = offload::Scheme::parse(name);
        if (!s.is_dynamic() && base.find_edge(s.target) == nullptr) {
          throw offload::Error(offload::ErrorCode::kConfig,
                               "scheme '" + name + "' names an unknown edge");
        }
        list.push_back(std::move(s));
      }
    }
    std::vector<std::uint64_t> seed_list =
        n_seeds > 0 ? std::vector<std::uint64_t>(seeds, seeds + n_seeds)
                    : offload::default_seeds(base);
    auto c = std::make_unique<offload_comparison>();
    c->config = base;
    c->comparison = offload::compare_schemes(base, list, seed_list, threads);
    *out = c.release();
  });
}

void offload_comparison_free(offload_comparison* comparison) { delete comparison; }

const char* offload_comparison_table(offload_comparison* comparison) {
  if (comparison == nullptr) return "";
  comparison->cached = comparison->comparison.table_text();
  return comparison->cached.c_str();
}

const char* offload_comparison_csv(offload_comparison* comparison) {
  if (comparison == nullptr) return "";
  comparison->cached = comparison->comparison.csv();
  return comparison->cached.c_str();
}

offload_status offload_comparison_write(const offload_comparison* comparison,
                                        const char* out_dir) {
  OFFLOAD_REQUIRE(comparison);
  OFFLOAD_REQUIRE(out_dir);
  return guarded([&] {
    offload::write_comparison_outputs(comparison->comparison, comparison->config, out_dir);
  });
}

}  // extern "C"
