#pragma once

// Baseline lane-allocation policies.

#include <string>
#include <vector>

#include "uamlanes/corridor.hpp"
#include "uamlanes/format.hpp"

namespace uamlanes {

struct LaneBlock {
  double start_minutes = 0.0;
  double end_minutes = 0.0;
  int fwd = 0;
  int rev = 0;

  bool operator==(const LaneBlock&) const = default;
};

/// Operator-prescribed time-of-day allocation.
struct BlockSchedule {
  std::vector<LaneBlock> blocks;

  /// CC-SV deployment: SV-bound heavy in the morning, CC-bound heavy in the
  /// afternoon, even in the evening.
  static BlockSchedule reference() {
    return {{{240.0, 720.0, 5, 1}, {720.0, 1140.0, 1, 5}, {1140.0, 1440.0, 3, 3}}};
  }

  void validate(const CorridorSpec& spec) const {
    if (blocks.empty()) throw ConfigError("block schedule is empty");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& b = blocks[i];
      if (!(b.end_minutes > b.start_minutes)) throw ConfigError("block " + std::to_string(i) + " has end <= start");
      if (b.fwd < 0 || b.rev < 0 || b.fwd + b.rev > spec.lane_count)
        throw ConfigError("block " + std::to_string(i) + " allocates more than lane_count lanes");
      if (i > 0 && b.start_minutes != blocks[i - 1].end_minutes)
        throw ConfigError("blocks must be contiguous and non-overlapping (block " + std::to_string(i) + ")");
    }
    if (blocks.front().start_minutes > spec.horizon_start || blocks.back().end_minutes < spec.window_end())
      throw ConfigError("blocks do not cover the operating window " + format_clock(spec.horizon_start) + "-" +
                        format_clock(spec.window_end()));
  }
};

/// Even split: floor(L/2) lanes each way for the whole horizon.
inline LaneSchedule fixed_split_schedule(const CorridorSpec& spec) {
  return LaneSchedule::constant(spec.horizon, spec.lane_count / 2, spec.lane_count / 2);
}

/// Each slot takes the allocation of the block containing its start time.
inline LaneSchedule fixed_asymmetric_schedule(const CorridorSpec& spec, const BlockSchedule& blocks) {
  blocks.validate(spec);
  LaneSchedule out = LaneSchedule::constant(spec.horizon, 0, 0);
  for (int t = 0; t < spec.horizon; ++t) {
    const double at = spec.slot_begin(t);
    const LaneBlock* hit = nullptr;
    for (const auto& b : blocks.blocks)
      if (b.start_minutes <= at && at < b.end_minutes) hit = &b;
    if (!hit) throw ConfigError("slot " + std::to_string(t) + " (" + format_clock(at) + ") is not covered by any block");
    out.fwd[t] = hit->fwd;
    out.rev[t] = hit->rev;
  }
  return out;
}

/// Proportional to the instantaneous demand split, round half away from
/// zero; all lanes are allocated. Holds the previous allocation when both
/// directions are empty (slot 0 falls back to the even split). Ignores flush.
inline LaneSchedule greedy_reactive_schedule(const CorridorSpec& spec, const DemandSeries& demand) {
  demand.validate(spec);
  const long long L = spec.lane_count;
  LaneSchedule out = LaneSchedule::constant(spec.horizon, 0, 0);
  int prev_f = spec.lane_count / 2;
  int prev_r = spec.lane_count / 2;
  for (int t = 0; t < spec.horizon; ++t) {
    const long long f = demand.fwd[t];
    const long long total = f + demand.rev[t];
    if (total > 0) {
      // round(L*f/total) for non-negative operands, in exact integer arithmetic
      prev_f = static_cast<int>((2 * L * f + total) / (2 * total));
      prev_r = spec.lane_count - prev_f;
    }
    out.fwd[t] = prev_f;
    out.rev[t] = prev_r;
  }
  return out;
}

enum class Policy { dynamic, fixed5050, fixed_asym, greedy };

inline const char* to_string(Policy p) {
  switch (p) {
    case Policy::dynamic: return "dynamic";
    case Policy::fixed5050: return "fixed5050";
    case Policy::fixed_asym: return "fixed_asym";
    case Policy::greedy: return "greedy";
  }
  return "unknown";
}

inline Policy policy_from_string(const std::string& name) {
  for (Policy p : {Policy::dynamic, Policy::fixed5050, Policy::fixed_asym, Policy::greedy})
    if (name == to_string(p)) return p;
  throw ConfigError("unknown policy '" + name + "' (expected dynamic, fixed5050, fixed_asym or greedy)");
}

}  // namespace uamlanes
