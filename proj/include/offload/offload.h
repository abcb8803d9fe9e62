/*
 * C interface to the offload library: utility scoring, scenario loading,
 * simulation runs and scheme comparisons.
 *
 * Every function that can fail returns an offload_status. On failure a
 * message is available from offload_last_error() on the same thread until
 * the next failing call. Strings returned by accessor functions are owned
 * by the handle they came from and stay valid until the handle is freed.
 */
#ifndef OFFLOAD_OFFLOAD_H_
#define OFFLOAD_OFFLOAD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OFFLOAD_API __declspec(dllexport)
#else
#define OFFLOAD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum offload_status {
  OFFLOAD_OK = 0,
  OFFLOAD_ERR_INVALID_ARGUMENT = 1,
  OFFLOAD_ERR_INVALID_SNAPSHOT = 2,
  OFFLOAD_ERR_INVALID_BOUNDS = 3,
  OFFLOAD_ERR_INVALID_WEIGHTS = 4,
  OFFLOAD_ERR_NO_CANDIDATES = 5,
  OFFLOAD_ERR_CONFIG = 6,
  OFFLOAD_ERR_PARSE = 7,
  OFFLOAD_ERR_IO = 8,
  OFFLOAD_ERR_REMAP = 9,
  OFFLOAD_ERR_INTERNAL = 10
} offload_status;

typedef struct offload_scenario offload_scenario;
typedef struct offload_report offload_report;
typedef struct offload_comparison offload_comparison;

typedef struct offload_run_summary {
  double task_latency;
  double processing_frequency;
  double mean_message_latency;
  double cpu_balance_variance;
  double total_throughput_mbps;
  uint64_t merged_outputs;
  uint64_t switch_count;
  uint64_t budget;
  uint64_t generated;
  uint64_t processed;
  uint64_t queued;
  uint64_t dropped;
  int completed;
} offload_run_summary;

OFFLOAD_API const char* offload_version(void);
OFFLOAD_API const char* offload_last_error(void);
OFFLOAD_API const char* offload_status_string(offload_status status);

/* Component utilities, clamped to [0, 1]. */
OFFLOAD_API offload_status offload_cpu_utility(double cpu_max, double cpu_used, double* out);
OFFLOAD_API offload_status offload_memory_utility(double mem_max, double mem_used,
                                                  double task_footprint, double* out);
OFFLOAD_API offload_status offload_rssi_utility(double rssi, double nu, double rho,
                                                double* out);
OFFLOAD_API offload_status offload_total_utility(double eta, double sigma, double kappa,
                                                 double w_cpu, double w_mem, double w_net,
                                                 double* out);

/* Scenarios. base_dir resolves relative trace paths; may be NULL. */
OFFLOAD_API offload_status offload_scenario_load(const char* path, offload_scenario** out);
OFFLOAD_API offload_status offload_scenario_parse(const char* yaml_text, const char* base_dir,
                                                  offload_scenario** out);
OFFLOAD_API void offload_scenario_free(offload_scenario* scenario);

OFFLOAD_API offload_status offload_scenario_set_seed(offload_scenario* scenario, uint64_t seed);
OFFLOAD_API offload_status offload_scenario_set_scheme(offload_scenario* scenario,
                                                       const char* scheme);
OFFLOAD_API offload_status offload_scenario_set_sticky_bonus(offload_scenario* scenario,
                                                             double bonus);
OFFLOAD_API offload_status offload_scenario_set_device_trace(offload_scenario* scenario,
                                                             const char* path);
OFFLOAD_API offload_status offload_scenario_set_network_trace(offload_scenario* scenario,
                                                              const char* path);
OFFLOAD_API uint64_t offload_scenario_seed(const offload_scenario* scenario);
/* Comma-separated scheme names this scenario accepts. */
OFFLOAD_API const char* offload_scenario_valid_schemes(offload_scenario* scenario);
/* Resolved configuration (YAML). */
OFFLOAD_API const char* offload_scenario_effective_config(offload_scenario* scenario);

/* Runs. */
OFFLOAD_API offload_status offload_run(const offload_scenario* scenario, offload_report** out);
OFFLOAD_API void offload_report_free(offload_report* report);
OFFLOAD_API offload_status offload_report_summary(const offload_report* report,
                                                  offload_run_summary* out);
OFFLOAD_API const char* offload_report_summary_text(offload_report* report);
OFFLOAD_API const char* offload_report_metrics_csv(offload_report* report);
/* robot_id NULL or "" selects the first robot's executor. */
OFFLOAD_API const char* offload_report_decisions_csv(offload_report* report,
                                                     const char* robot_id);
OFFLOAD_API offload_status offload_report_write(const offload_report* report,
                                                const char* out_dir);

/* Comparisons. schemes: comma-separated names, NULL for the default set.
 * seeds/n_seeds: NULL/0 for five seeds starting at the scenario seed.
 * threads: 0 for hardware concurrency. */
OFFLOAD_API offload_status offload_compare(const offload_scenario* scenario,
                                           const char* schemes, const uint64_t* seeds,
                                           size_t n_seeds, unsigned threads,
                                           offload_comparison** out);
OFFLOAD_API void offload_comparison_free(offload_comparison* comparison);
OFFLOAD_API const char* offload_comparison_table(offload_comparison* comparison);
OFFLOAD_API const char* offload_comparison_csv(offload_comparison* comparison);
OFFLOAD_API offload_status offload_comparison_write(const offload_comparison* comparison,
                                                    const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* OFFLOAD_OFFLOAD_H_ */
