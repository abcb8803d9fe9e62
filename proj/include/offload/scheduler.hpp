#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "offload/profiling.hpp"
#include "offload/utility.hpp"

namespace offload {

inline constexpr double kMaxStickyBonus = 0.5;

/// Utility-table message exchanged between robot schedulers.
struct UtilityTableMsg {
  std::uint64_t iteration = 0;
  RobotId robot_id;
  double timestamp = 0.0;
  ScoreTable scores;

  bool operator==(const UtilityTableMsg&) const = default;
};

/// JSON wire form: {"iteration":..,"robot_id":..,"timestamp":..,
/// "scores":[["e1",0.5],...]}. Scores round-trip exactly.
std::string encode_table(const UtilityTableMsg& msg);
UtilityTableMsg decode_table(const std::string& wire);

struct PeerTable {
  ScoreTable scores;
  double received_at = 0.0;
  std::uint64_t iteration = 0;
};

struct SchedulerState {
  RobotId robot_id;
  std::vector<EdgeId> edges;  // known edge set
  std::optional<EdgeId> selected_edge;
  Weights weights;
  double sticky_bonus = 0.05;
  std::map<RobotId, PeerTable> peer_tables;
};

void validate_scheduler_state(const SchedulerState& state);

struct Proposal {
  RobotId robot_id;
  EdgeId max_edge;
  std::uint64_t iteration = 0;
  ScoreTable utility_table;
};

/// Own per-edge totals. The selected edge gets the sticky bonus; stale or
/// absent edges score exactly 0.
ScoreTable calculate_utility(const SchedulerState& state,
                             const std::map<EdgeId, EdgeData>& edge_data,
                             const TaskSpec& task, const NetworkBounds& bounds);

/// Sum of the own table and every peer table received within
/// stale_after seconds of now.
ScoreTable exchange_and_sum(const ScoreTable& own,
                            const std::map<RobotId, PeerTable>& peers, double now,
                            double stale_after);

/// Argmax; ties go to the lexicographically smallest edge id.
Proposal select_max_edge(const ScoreTable& summed);

/// One robot's scheduler as an event-driven state machine.
class Scheduler {
 public:
  Scheduler(SchedulerState state, TaskSpec task, NetworkBounds bounds,
            double table_stale_after);

  const SchedulerState& state() const { return state_; }
  void set_selected_edge(std::optional<EdgeId> edge) {
    state_.selected_edge = std::move(edge);
  }

  /// Computes and stores the robot's own table for this iteration; the
  /// returned message is what gets broadcast to peers.
  UtilityTableMsg compute_own(const std::map<EdgeId, EdgeData>& edge_data,
                              double now, std::uint64_t iteration);

  void receive_peer(const UtilityTableMsg& msg, double now);

  /// Sums own and fresh peer tables and picks the argmax. When every edge
  /// looked stale to this robot the current selection is kept instead.
  Proposal propose(double now) const;

 private:
  SchedulerState state_;
  TaskSpec task_;
  NetworkBounds bounds_;
  double table_stale_after_;
  ScoreTable own_;
  std::uint64_t iteration_ = 0;
  bool all_stale_ = false;
};

}  // namespace offload
