#include "offload/compare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace offload {

const std::vector<std::string>& comparison_metrics() {
  static const std::vector<std::string> m{
      "task_latency_s", "frequency_hz",   "mean_msg_latency_s", "throughput_mbps",
      "cpu_balance_var", "mem_balance_var", "switch_count",      "dropped"};
  return m;
}

double metric_value(const MetricsReport& r, const std::string& metric) {
  if (metric == "task_latency_s") return r.task_latency;
  if (metric == "frequency_hz") return r.processing_frequency;
  if (metric == "mean_msg_latency_s") return r.mean_message_latency;
  if (metric == "throughput_mbps") return r.total_throughput();
  if (metric == "cpu_balance_var") return r.cpu_balance_variance();
  if (metric == "mem_balance_var") return r.mem_balance_variance();
  if (metric == "switch_count") return static_cast<double>(r.switch_count);
  if (metric == "dropped") return static_cast<double>(r.dropped);
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown metric '{}'", metric));
}

const SchemeResult& Comparison::result(const std::string& scheme_name) const {
  for (const auto& r : results) {
    if (r.scheme.name() == scheme_name) return r;
  }
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("scheme '{}' is not part of the comparison", scheme_name));
}

std::vector<Scheme> default_schemes(const ScenarioConfig& base) {
  std::vector<Scheme> out;
  for (const auto& e : base.edges) out.push_back(Scheme{Scheme::Kind::kFixed, e.id});
  for (const char* v : {"cpu", "mem", "both"}) {
    out.push_back(Scheme{Scheme::Kind::kDynamic, v});
  }
  return out;
}

std::vector<std::uint64_t> default_seeds(const ScenarioConfig& base, std::size_t count) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < count; ++i) seeds.push_back(base.seed + i);
  return seeds;
}

namespace {

MetricStats stats_of(const std::vector<double>& xs) {
  MetricStats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

Comparison compare_schemes(const ScenarioConfig& base, const std::vector<Scheme>& schemes,
                           const std::vector<std::uint64_t>& seeds, unsigned threads) {
  if (schemes.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a comparison needs at least two schemes");
  }
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "a comparison needs seeds");

  struct Job {
    std::size_t scheme;
    std::size_t seed;
  };
  std::vector<Job> jobs;
  std::vector<ScenarioConfig> configs;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      ScenarioConfig c = base;
      c.scheme = schemes[i];
      c.seed = seeds[j];
      validate(c);
      configs.push_back(std::move(c));
      jobs.push_back({i, j});
    }
  }

  std::vector<MetricsReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        reports[k] = run_scenario(configs[k]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  Comparison cmp;
  cmp.seeds = seeds;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    SchemeResult r;
    r.scheme = schemes[i];
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      r.runs.push_back(std::move(reports[i * seeds.size() + j]));
    }
    for (const auto& m : comparison_metrics()) {
      std::vector<double> xs;
      for (const auto& run : r.runs) xs.push_back(metric_value(run, m));
      r.stats[m] = stats_of(xs);
    }
    cmp.results.push_back(std::move(r));
  }
  for (const auto& dyn : cmp.results) {
    if (!dyn.scheme.is_dynamic()) continue;
    for (const auto& fixed : cmp.results) {
      if (fixed.scheme.is_dynamic()) continue;
      for (const auto& m : comparison_metrics()) {
        const double f = fixed.stats.at(m).mean;
        const double d = dyn.stats.at(m).mean;
        const double delta = f != 0.0 ? (d - f) / std::abs(f) : (d == 0.0 ? 0.0 : INFINITY);
        cmp.deltas.push_back({dyn.scheme.name(), fixed.scheme.name(), m, delta});
      }
    }
  }
  return cmp;
}

std::string Comparison::csv() const {
  std::string out = "scheme,seed";
  for (const auto& m : comparison_metrics()) out += "," + m;
  out += "\n";
  for (const auto& r : results) {
    for (std::size_t j = 0; j < r.runs.size(); ++j) {
      out += fmt::format("{},{}", r.scheme.name(), seeds[j]);
      for (const auto& m : comparison_metrics()) {
        out += fmt::format(",{:.6f}", metric_value(r.runs[j], m));
      }
      out += "\n";
    }
    out += fmt::format("{},mean±std", r.scheme.name());
    for (const auto& m : comparison_metrics()) {
      const auto& s = r.stats.at(m);
      out += fmt::format(",{:.6f}±{:.6f}", s.mean, s.stddev);
    }
    out += "\n";
  }
  return out;
}

std::string Comparison::deltas_csv() const {
  std::string out = "dynamic,fixed,metric,relative_delta\n";
  for (const auto& d : deltas) {
    out += fmt::format("{},{},{},{:.6f}\n", d.dynamic_scheme, d.fixed_scheme, d.metric, d.delta);
  }
  return out;
}

std::string Comparison::table_text() const {
  std::string out = fmt::format("{} seed(s):", seeds.size());
  for (auto s : seeds) out += fmt::format(" {}", s);
  out += "\n\n";
  out += fmt::format("{:<14}", "scheme");
  for (const auto& m : comparison_metrics()) out += fmt::format(" {:>24}", m);
  out += "\n";
  for (const auto& r : results) {
    out += fmt::format("{:<14}", r.scheme.name());
    for (const auto& m : comparison_metrics()) {
      const auto& s = r.stats.at(m);
      out += fmt::format(" {:>24}", fmt::format("{:.3f}±{:.3f}", s.mean, s.stddev));
    }
    out += "\n";
  }
  if (!deltas.empty()) {
    out += "\nrelative delta of dynamic vs fixed (mean):\n";
    for (const auto& d : deltas) {
      if (d.metric != "task_latency_s" && d.metric != "frequency_hz" &&
          d.metric != "throughput_mbps" && d.metric != "cpu_balance_var") {
        continue;
      }
      out += fmt::format("  {:<14} vs {:<10} {:<18} {:+.1f}%\n", d.dynamic_scheme,
                         d.fixed_scheme, d.metric, d.delta * 100.0);
    }
  }
  return out;
}

nlohmann::json Comparison::to_json() const {
  nlohmann::json j;
  j["seeds"] = seeds;
  auto schemes = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json s;
    s["scheme"] = r.scheme.name();
    for (const auto& [m, st] : r.stats) s["stats"][m] = {{"mean", st.mean}, {"std", st.stddev}};
    auto runs = nlohmann::json::array();
    for (const auto& run : r.runs) runs.push_back(run.summary_json());
    s["runs"] = std::move(runs);
    schemes.push_back(std::move(s));
  }
  j["schemes"] = std::move(schemes);
  auto deltas_json = nlohmann::json::array();
  for (const auto& d : deltas) {
    deltas_json.push_back({{"dynamic", d.dynamic_scheme},
                           {"fixed", d.fixed_scheme},
                           {"metric", d.metric},
                           {"relative_delta", std::isfinite(d.delta) ? nlohmann::json(d.delta)
                                                                     : nlohmann::json()}});
  }
  j["deltas"] = std::move(deltas_json);
  return j;
}

}  // namespace offload
