#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "offload/utility.hpp"

namespace offload {

struct Decision {
  std::uint64_t iteration = 0;
  std::optional<EdgeId> winner;
  std::map<EdgeId, int> votes;
  bool switched = false;
  bool deferred = false;

  bool operator==(const Decision&) const = default;
};

/// Smallest number of proposals that lets an iteration decide.
std::size_t quorum_size(std::size_t robot_count);

/// Plurality vote over the robots' proposals. Vote ties keep `previous`
/// when it is among the leaders, otherwise the smallest edge id wins.
/// Without quorum the decision is deferred and `previous` is kept.
/// `switched` is only set when a previous winner existed and changed.
Decision consensus(const std::map<RobotId, EdgeId>& proposals,
                   const std::optional<EdgeId>& previous, std::size_t robot_count,
                   std::uint64_t iteration = 0);

struct RemapPlan {
  std::string task_id;
  EdgeId target;
  std::vector<std::string> in_topics;
  std::vector<std::string> out_topics;
  std::map<std::string, std::string> mapping;  // in -> out

  bool operator==(const RemapPlan&) const = default;
};

/// Channel name as exposed by `edge`.
std::string remapped_channel(const EdgeId& edge, const std::string& channel);

RemapPlan make_remap_plan(const std::string& task_id, const EdgeId& target,
                          const std::vector<std::string>& channels);

struct AllocationMemory {
  std::vector<std::pair<std::uint64_t, EdgeId>> history;
  std::optional<EdgeId> last_remapped;
};

/// Plan only when the decision switched to something other than the last
/// remap target. Non-deferred winners are appended to the history.
std::optional<RemapPlan> decide_offload(const Decision& decision,
                                        AllocationMemory& memory,
                                        const std::string& task_id,
                                        const std::vector<std::string>& channels);

struct ChannelBinding {
  std::optional<EdgeId> target;
  std::string channel;  // the name traffic is actually published on

  bool operator==(const ChannelBinding&) const = default;
};

class ChannelRegistry {
 public:
  void add_channel(const std::string& name);
  bool contains(const std::string& name) const { return bindings_.count(name) != 0; }
  const ChannelBinding& resolve(const std::string& name) const;
  const std::map<std::string, ChannelBinding>& bindings() const { return bindings_; }

  bool operator==(const ChannelRegistry&) const = default;

 private:
  friend ChannelRegistry apply_remap(const RemapPlan&, const ChannelRegistry&);
  std::map<std::string, ChannelBinding> bindings_;
};

/// All-or-nothing: an unknown in-channel throws and leaves the input
/// registry untouched.
ChannelRegistry apply_remap(const RemapPlan& plan, const ChannelRegistry& registry);

/// One robot's executor: consensus, offload guard and channel rebinding.
class Executor {
 public:
  Executor(RobotId robot_id, std::string task_id, std::vector<std::string> channels,
           std::size_t robot_count);

  /// Binds every channel to `edge` without counting a switch. Used for the
  /// initial placement.
  void deploy(const EdgeId& edge);

  struct Outcome {
    Decision decision;
    std::optional<RemapPlan> plan;
  };

  Outcome on_proposals(const std::map<RobotId, EdgeId>& proposals,
                       std::uint64_t iteration);

  const RobotId& robot_id() const { return robot_id_; }
  const std::optional<EdgeId>& current() const { return current_; }
  const ChannelRegistry& registry() const { return registry_; }
  const AllocationMemory& memory() const { return memory_; }
  const std::vector<Decision>& log() const { return log_; }
  std::size_t remap_count() const { return remap_count_; }

 private:
  RobotId robot_id_;
  std::string task_id_;
  std::vector<std::string> channels_;
  std::size_t robot_count_;
  std::optional<EdgeId> current_;
  ChannelRegistry registry_;
  AllocationMemory memory_;
  std::vector<Decision> log_;
  std::size_t remap_count_ = 0;
};

/// Decision log CSV: iteration,winner,votes_<edge>...,switched
std::string decision_csv_header(const std::vector<EdgeId>& edges);
std::string decision_csv_row(const Decision& d, const std::vector<EdgeId>& edges);

}  // namespace offload
