#include "offload/scheduler.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace offload {

std::string encode_table(const UtilityTableMsg& msg) {
  nlohmann::json j;
  j["iteration"] = msg.iteration;
  j["robot_id"] = msg.robot_id;
  j["timestamp"] = msg.timestamp;
  auto scores = nlohmann::json::array();
  for (const auto& [edge, score] : msg.scores) scores.push_back({edge, score});
  j["scores"] = std::move(scores);
  return j.dump();
}

UtilityTableMsg decode_table(const std::string& wire) {
  try {
    const auto j = nlohmann::json::parse(wire);
    UtilityTableMsg msg;
    msg.iteration = j.at("iteration").get<std::uint64_t>();
    msg.robot_id = j.at("robot_id").get<std::string>();
    msg.timestamp = j.at("timestamp").get<double>();
    for (const auto& pair : j.at("scores")) {
      msg.scores[pair.at(0).get<std::string>()] = pair.at(1).get<double>();
    }
    return msg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("bad utility table: {}", e.what()));
  }
}

void validate_scheduler_state(const SchedulerState& state) {
  validate_weights(state.weights);
  if (!(state.sticky_bonus >= 0.0 && state.sticky_bonus <= kMaxStickyBonus)) {
    throw Error(ErrorCode::kConfig,
                fmt::format("sticky bonus {} outside [0, {}]", state.sticky_bonus,
                            kMaxStickyBonus));
  }
  if (state.selected_edge &&
      std::find(state.edges.begin(), state.edges.end(), *state.selected_edge) ==
          state.edges.end()) {
    throw Error(ErrorCode::kConfig,
                fmt::format("selected edge {} is not a known edge",
                            *state.selected_edge));
  }
}

ScoreTable calculate_utility(const SchedulerState& state,
                             const std::map<EdgeId, EdgeData>& edge_data,
                             const TaskSpec& task, const NetworkBounds& bounds) {
  validate_weights(state.weights);
  const bool any_present = std::any_of(
      state.edges.begin(), state.edges.end(),
      [&](const EdgeId& e) { return edge_data.count(e) != 0; });
  if (!any_present) {
    throw Error(ErrorCode::kNoCandidates,
                fmt::format("robot {}: no edge has reported", state.robot_id));
  }
  ScoreTable table;
  for (const auto& edge : state.edges) {
    auto it = edge_data.find(edge);
    if (it == edge_data.end() || it->second.stale || !it->second.network) {
      table[edge] = 0.0;
      continue;
    }
    const auto b = evaluate_edge(it->second.device, *it->second.network, task,
                                 bounds, state.weights);
    double score = b.total;
    if (state.selected_edge && *state.selected_edge == edge) {
      score += state.sticky_bonus;
    }
    table[edge] = score;
  }
  return table;
}

ScoreTable exchange_and_sum(const ScoreTable& own,
                            const std::map<RobotId, PeerTable>& peers, double now,
                            double stale_after) {
  std::map<RobotId, ScoreTable> tables;
  // Own table first under a key no peer can collide with.
  tables.emplace(std::string(), own);
  for (const auto& [robot, peer] : peers) {
    if (now - peer.received_at > stale_after) continue;
    tables.emplace(robot, peer.scores);
  }
  return sum_over_edges(tables);
}

Proposal select_max_edge(const ScoreTable& summed) {
  if (summed.empty()) {
    throw Error(ErrorCode::kNoCandidates, "cannot select from an empty table");
  }
  // std::map iterates in ascending key order; strict > keeps the first max.
  auto best = summed.begin();
  for (auto it = std::next(summed.begin()); it != summed.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  Proposal p;
  p.max_edge = best->first;
  p.utility_table = summed;
  return p;
}

Scheduler::Scheduler(SchedulerState state, TaskSpec task, NetworkBounds bounds,
                     double table_stale_after)
    : state_(std::move(state)),
      task_(std::move(task)),
      bounds_(bounds),
      table_stale_after_(table_stale_after) {
  validate_scheduler_state(state_);
  validate_bounds(bounds_);
}

UtilityTableMsg Scheduler::compute_own(const std::map<EdgeId, EdgeData>& edge_data,
                                       double now, std::uint64_t iteration) {
  iteration_ = iteration;
  all_stale_ = std::none_of(state_.edges.begin(), state_.edges.end(),
                            [&](const EdgeId& e) {
                              auto it = edge_data.find(e);
                              return it != edge_data.end() && !it->second.stale;
                            });
  if (std::none_of(state_.edges.begin(), state_.edges.end(),
                   [&](const EdgeId& e) { return edge_data.count(e) != 0; })) {
    // Nothing reported yet: publish an all-zero table rather than fail the
    // whole iteration.
    own_.clear();
    for (const auto& e : state_.edges) own_[e] = 0.0;
  } else {
    own_ = calculate_utility(state_, edge_data, task_, bounds_);
  }
  return UtilityTableMsg{iteration, state_.robot_id, now, own_};
}

void Scheduler::receive_peer(const UtilityTableMsg& msg, double now) {
  if (msg.robot_id == state_.robot_id) return;
  auto& slot = state_.peer_tables[msg.robot_id];
  if (msg.iteration < slot.iteration) return;
  slot.scores = msg.scores;
  slot.received_at = now;
  slot.iteration = msg.iteration;
}

Proposal Scheduler::propose(double now) const {
  Proposal p;
  if (all_stale_ && state_.selected_edge) {
    p.max_edge = *state_.selected_edge;
    p.utility_table = own_;
  } else {
    p = select_max_edge(
        exchange_and_sum(own_, state_.peer_tables, now, table_stale_after_));
  }
  p.robot_id = state_.robot_id;
  p.iteration = iteration_;
  return p;
}

}  // namespace offload
