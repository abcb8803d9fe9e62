#include "offload/consensus.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "offload/error.hpp"

namespace offload {

std::size_t quorum_size(std::size_t robot_count) { return (robot_count + 1) / 2; }

Decision consensus(const std::map<RobotId, EdgeId>& proposals,
                   const std::optional<EdgeId>& previous, std::size_t robot_count,
                   std::uint64_t iteration) {
  Decision d;
  d.iteration = iteration;
  for (const auto& [robot, edge] : proposals) ++d.votes[edge];

  if (proposals.empty() || proposals.size() < quorum_size(robot_count)) {
    d.deferred = true;
    d.winner = previous;
    return d;
  }

  int best = 0;
  for (const auto& [edge, count] : d.votes) best = std::max(best, count);

  if (previous) {
    auto it = d.votes.find(*previous);
    if (it != d.votes.end() && it->second == best) d.winner = previous;
  }
  if (!d.winner) {
    for (const auto& [edge, count] : d.votes) {
      if (count == best) {
        d.winner = edge;
        break;
      }
    }
  }
  d.switched = previous.has_value() && *d.winner != *previous;
  return d;
}

std::string remapped_channel(const EdgeId& edge, const std::string& channel) {
  if (!channel.empty() && channel.front() == '/') return "/" + edge + channel;
  return "/" + edge + "/" + channel;
}

RemapPlan make_remap_plan(const std::string& task_id, const EdgeId& target,
                          const std::vector<std::string>& channels) {
  RemapPlan plan;
  plan.task_id = task_id;
  plan.target = target;
  for (const auto& in : channels) {
    const auto out = remapped_channel(target, in);
    if (!plan.mapping.emplace(in, out).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("remap plan lists channel {} twice", in));
    }
    plan.in_topics.push_back(in);
    plan.out_topics.push_back(out);
  }
  return plan;
}

std::optional<RemapPlan> decide_offload(const Decision& decision,
                                        AllocationMemory& memory,
                                        const std::string& task_id,
                                        const std::vector<std::string>& channels) {
  if (decision.deferred || !decision.winner) return std::nullopt;
  const EdgeId& winner = *decision.winner;
  if (memory.history.empty() || memory.history.back().first < decision.iteration) {
    memory.history.emplace_back(decision.iteration, winner);
  }
  if (!decision.switched || memory.last_remapped == winner) return std::nullopt;
  memory.last_remapped = winner;
  return make_remap_plan(task_id, winner, channels);
}

void ChannelRegistry::add_channel(const std::string& name) {
  bindings_.try_emplace(name, ChannelBinding{std::nullopt, name});
}

const ChannelBinding& ChannelRegistry::resolve(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) {
    throw Error(ErrorCode::kRemap, fmt::format("unknown channel '{}'", name));
  }
  return it->second;
}

ChannelRegistry apply_remap(const RemapPlan& plan, const ChannelRegistry& registry) {
  for (const auto& [in, out] : plan.mapping) {
    if (!registry.contains(in)) {
      throw Error(ErrorCode::kRemap,
                  fmt::format("task {}: remap names unknown channel '{}'",
                              plan.task_id, in));
    }
  }
  ChannelRegistry next = registry;
  for (const auto& [in, out] : plan.mapping) {
    next.bindings_[in] = ChannelBinding{plan.target, out};
  }
  return next;
}

Executor::Executor(RobotId robot_id, std::string task_id,
                   std::vector<std::string> channels, std::size_t robot_count)
    : robot_id_(std::move(robot_id)),
      task_id_(std::move(task_id)),
      channels_(std::move(channels)),
      robot_count_(robot_count) {
  for (const auto& c : channels_) registry_.add_channel(c);
}

void Executor::deploy(const EdgeId& edge) {
  registry_ = apply_remap(make_remap_plan(task_id_, edge, channels_), registry_);
  memory_.last_remapped = edge;
  current_ = edge;
}

Executor::Outcome Executor::on_proposals(const std::map<RobotId, EdgeId>& proposals,
                                         std::uint64_t iteration) {
  Outcome out;
  out.decision = consensus(proposals, current_, robot_count_, iteration);
  const Decision& d = out.decision;
  if (!d.deferred && d.winner && !current_) deploy(*d.winner);
  out.plan = decide_offload(d, memory_, task_id_, channels_);
  if (out.plan) {
    registry_ = apply_remap(*out.plan, registry_);
    ++remap_count_;
  }
  if (!d.deferred && d.winner) current_ = d.winner;
  log_.push_back(d);
  return out;
}

std::string decision_csv_header(const std::vector<EdgeId>& edges) {
  std::string out = "iteration,winner";
  for (const auto& e : edges) out += ",votes_" + e;
  out += ",switched";
  return out;
}

std::string decision_csv_row(const Decision& d, const std::vector<EdgeId>& edges) {
  std::string out = fmt::format("{},{}", d.iteration, d.winner.value_or("-"));
  for (const auto& e : edges) {
    auto it = d.votes.find(e);
    out += fmt::format(",{}", it == d.votes.end() ? 0 : it->second);
  }
  out += d.switched ? ",1" : ",0";
  return out;
}

}  // namespace offload
