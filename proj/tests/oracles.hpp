#pragma once

// Independent reference implementations used to cross-check the library.
// They deliberately share no code with src/.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// Linear scan over a sorted copy of the keys; first maximum wins.
inline std::string argmax(const std::map<std::string, double>& scores) {
  std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t best = 0;
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].second > items[best].second) best = i;
  }
  return items[best].first;
}

struct Vote {
  std::string winner;
  std::map<std::string, int> counts;
};

// Counts by enumerating every candidate against every ballot.
inline Vote plurality(const std::vector<std::string>& ballots,
                      const std::optional<std::string>& previous) {
  std::vector<std::string> candidates = ballots;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  Vote v;
  int top = 0;
  for (const auto& c : candidates) {
    int n = 0;
    for (const auto& b : ballots) n += (b == c) ? 1 : 0;
    v.counts[c] = n;
    top = std::max(top, n);
  }
  std::vector<std::string> leaders;
  for (const auto& c : candidates) {
    if (v.counts[c] == top) leaders.push_back(c);
  }
  if (previous && std::find(leaders.begin(), leaders.end(), *previous) != leaders.end()) {
    v.winner = *previous;
  } else {
    v.winner = leaders.front();
  }
  return v;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : s) {
    h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t finalize(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct SpikeRow {
  std::string edge;
  double start;
  double duration;
  double cpu;
  double mem;
};

// Poisson arrivals by inversion: gap = -ln(1 - u) / rate.
inline std::vector<SpikeRow> spikes(double rate, const std::vector<std::string>& edges,
                                    std::uint64_t seed, double horizon, double dmin,
                                    double dmax, double cmin, double cmax, double mmin,
                                    double mmax) {
  std::vector<SpikeRow> out;
  if (rate <= 0.0 || edges.empty()) return out;
  std::mt19937_64 gen(finalize(seed ^ finalize(fnv1a("spikes"))));
  auto u = [&] { return std::ldexp(static_cast<double>(gen() >> 11), -53); };
  for (double t = -std::log1p(-u()) / rate; t < horizon; t += -std::log1p(-u()) / rate) {
    SpikeRow s;
    s.start = t;
    s.edge = edges[static_cast<std::size_t>(std::floor(u() * edges.size()))];
    s.duration = dmin + (dmax - dmin) * u();
    s.cpu = cmin + (cmax - cmin) * u();
    s.mem = mmin + (mmax - mmin) * u();
    out.push_back(s);
  }
  return out;
}

// Population variance.
inline double variance(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size());
}

}  // namespace oracle
