#pragma once

// Domain types for a single bi-directional corridor: geometry/timing, demand,
// lane schedules, lane events, and the penalty objective.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "uamlanes/errors.hpp"

namespace uamlanes {

enum class Direction { fwd, rev };

inline const char* to_string(Direction d) { return d == Direction::fwd ? "fwd" : "rev"; }

struct CorridorSpec {
  std::string node_i = "CC";
  std::string node_j = "SV";
  int lane_count = 6;
  int lane_throughput = 6;  // aircraft per slot per active lane
  int flush_slots = 2;
  double slot_minutes = 10.0;
  int horizon = 120;
  double horizon_start = 240.0;  // minutes since midnight

  void validate() const {
    if (lane_count < 1) throw ConfigError("corridor.lane_count must be >= 1");
    if (lane_throughput < 1) throw ConfigError("corridor.lane_throughput must be >= 1");
    if (flush_slots < 0) throw ConfigError("corridor.flush_slots must be >= 0");
    if (!(slot_minutes > 0.0)) throw ConfigError("corridor.slot_minutes must be > 0");
    if (horizon < 1) throw ConfigError("corridor.horizon must be >= 1");
    if (!(horizon_start >= 0.0) || horizon_start >= 1440.0)
      throw ConfigError("corridor.horizon_start must lie in [0, 1440)");
    if (horizon * slot_minutes > 1440.0)
      throw ConfigError("corridor horizon exceeds a single operating day");
  }

  double slot_begin(int slot) const { return horizon_start + slot * slot_minutes; }
  double window_end() const { return slot_begin(horizon); }

  /// Slot index containing a clock time; may be negative or >= horizon.
  int slot_of(double minutes) const {
    return static_cast<int>(std::floor((minutes - horizon_start) / slot_minutes));
  }

  int capacity_per_slot() const { return lane_count * lane_throughput; }
};

/// Penalty weights, resolved internally to integer micro-units so that
/// objective comparisons are exact.
struct CostWeights {
  double c_unserved = 1.0;
  double c_switch = 0.1;
  double c_waste = 0.01;

  static constexpr std::int64_t kScale = 1'000'000;

  void validate() const {
    for (double c : {c_unserved, c_switch, c_waste})
      if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("cost weights must be finite and >= 0");
  }

  static std::int64_t to_units(double c) { return static_cast<std::int64_t>(std::llround(c * kScale)); }
  std::int64_t unserved_units() const { return to_units(c_unserved); }
  std::int64_t switch_units() const { return to_units(c_switch); }
  std::int64_t waste_units() const { return to_units(c_waste); }
};

struct DemandSeries {
  std::vector<int> fwd;
  std::vector<int> rev;

  DemandSeries() = default;
  DemandSeries(std::vector<int> f, std::vector<int> r) : fwd(std::move(f)), rev(std::move(r)) {}
  static DemandSeries zeros(int horizon) { return {std::vector<int>(horizon, 0), std::vector<int>(horizon, 0)}; }

  int size() const { return static_cast<int>(fwd.size()); }
  const std::vector<int>& at(Direction d) const { return d == Direction::fwd ? fwd : rev; }
  std::vector<int>& at(Direction d) { return d == Direction::fwd ? fwd : rev; }

  long long total() const {
    long long sum = 0;
    for (int x : fwd) sum += x;
    for (int x : rev) sum += x;
    return sum;
  }

  void validate(const CorridorSpec& spec) const {
    if (static_cast<int>(fwd.size()) != spec.horizon || static_cast<int>(rev.size()) != spec.horizon)
      throw DimensionError("demand series length differs from corridor horizon");
    for (Direction d : {Direction::fwd, Direction::rev})
      for (int x : at(d))
        if (x < 0) throw ConfigError("demand entries must be non-negative");
  }

  bool operator==(const DemandSeries&) const = default;
};

/// Corridor state when the planning window opens.
///
/// `v_history_*[i]` holds deactivations at slot `i - flush_slots` (the last
/// entry is slot -1). Empty histories mean no recent deactivations.
struct InitialState {
  int y0_fwd = 0;
  int y0_rev = 0;
  std::vector<int> v_history_fwd;
  std::vector<int> v_history_rev;

  /// Total deactivations (both directions) at a pre-horizon slot k < 0.
  int history_at(int k, int flush_slots) const {
    const int idx = k + flush_slots;
    int total = 0;
    if (idx >= 0 && idx < static_cast<int>(v_history_fwd.size())) total += v_history_fwd[idx];
    if (idx >= 0 && idx < static_cast<int>(v_history_rev.size())) total += v_history_rev[idx];
    return total;
  }

  /// Shape and range checks only. Whether flush history leaves any feasible
  /// schedule is the solver's call (see budget_at_start).
  void validate(const CorridorSpec& spec) const {
    if (y0_fwd < 0 || y0_rev < 0) throw ConfigError("initial lane counts must be non-negative");
    if (y0_fwd + y0_rev > spec.lane_count) throw ConfigError("initial state uses more lanes than the corridor has");
    for (const auto* h : {&v_history_fwd, &v_history_rev}) {
      if (!h->empty() && static_cast<int>(h->size()) != spec.flush_slots)
        throw DimensionError("deactivation history must have flush_slots entries");
      for (int v : *h)
        if (v < 0 || v > spec.lane_count) throw ConfigError("deactivation history entries must lie in [0, lane_count]");
    }
  }

  /// Lanes tied up entering slot 0: active lanes plus those still flushing.
  /// Above lane_count no schedule is feasible.
  int budget_at_start(int flush_slots) const {
    int used = y0_fwd + y0_rev;
    for (int k = 1 - flush_slots; k <= -1; ++k) used += history_at(k, flush_slots);
    return used;
  }
};

struct LaneSchedule {
  std::vector<int> fwd;
  std::vector<int> rev;

  LaneSchedule() = default;
  LaneSchedule(std::vector<int> f, std::vector<int> r) : fwd(std::move(f)), rev(std::move(r)) {}
  static LaneSchedule constant(int horizon, int f, int r) {
    return {std::vector<int>(horizon, f), std::vector<int>(horizon, r)};
  }

  int size() const { return static_cast<int>(fwd.size()); }
  const std::vector<int>& at(Direction d) const { return d == Direction::fwd ? fwd : rev; }
  std::vector<int>& at(Direction d) { return d == Direction::fwd ? fwd : rev; }

  long long lane_slots() const {
    long long sum = 0;
    for (int x : fwd) sum += x;
    for (int x : rev) sum += x;
    return sum;
  }

  void validate(const CorridorSpec& spec) const {
    if (static_cast<int>(fwd.size()) != spec.horizon || static_cast<int>(rev.size()) != spec.horizon)
      throw DimensionError("lane schedule length differs from corridor horizon");
    for (int t = 0; t < spec.horizon; ++t) {
      if (fwd[t] < 0 || rev[t] < 0 || fwd[t] > spec.lane_count || rev[t] > spec.lane_count)
        throw ConfigError("lane schedule entry out of [0, lane_count] at slot " + std::to_string(t));
      if (fwd[t] + rev[t] > spec.lane_count)
        throw ConfigError("lane schedule exceeds lane_count at slot " + std::to_string(t));
    }
  }

  bool operator==(const LaneSchedule&) const = default;
};

struct ScheduleEvents {
  std::vector<int> a_fwd, a_rev;  // activations
  std::vector<int> v_fwd, v_rev;  // deactivations

  int size() const { return static_cast<int>(a_fwd.size()); }
  const std::vector<int>& activations(Direction d) const { return d == Direction::fwd ? a_fwd : a_rev; }
  const std::vector<int>& deactivations(Direction d) const { return d == Direction::fwd ? v_fwd : v_rev; }
  int deactivations_at(int t) const { return v_fwd[t] + v_rev[t]; }

  long long total_deactivations() const {
    long long sum = 0;
    for (int t = 0; t < size(); ++t) sum += deactivations_at(t);
    return sum;
  }
};

struct SlotOutcome {
  double shortfall = 0.0;
  double waste = 0.0;
  double served = 0.0;

  bool operator==(const SlotOutcome&) const = default;
};

/// Max-decomposition of the demand/capacity balance for one slot-direction.
inline SlotOutcome slot_outcome(int demand, int lanes, int lane_throughput) {
  const long long capacity = static_cast<long long>(lanes) * lane_throughput;
  SlotOutcome out;
  out.shortfall = static_cast<double>(std::max<long long>(0, demand - capacity));
  out.waste = static_cast<double>(std::max<long long>(0, capacity - demand));
  out.served = static_cast<double>(std::min<long long>(demand, capacity));
  return out;
}

/// Canonical (minimal) activation/deactivation events for a schedule.
inline ScheduleEvents derive_events(const LaneSchedule& schedule, const InitialState& init) {
  if (schedule.fwd.size() != schedule.rev.size())
    throw DimensionError("lane schedule directions have different lengths");
  const int horizon = schedule.size();
  ScheduleEvents ev;
  ev.a_fwd.assign(horizon, 0);
  ev.a_rev.assign(horizon, 0);
  ev.v_fwd.assign(horizon, 0);
  ev.v_rev.assign(horizon, 0);
  int prev_f = init.y0_fwd;
  int prev_r = init.y0_rev;
  for (int t = 0; t < horizon; ++t) {
    ev.a_fwd[t] = std::max(0, schedule.fwd[t] - prev_f);
    ev.v_fwd[t] = std::max(0, prev_f - schedule.fwd[t]);
    ev.a_rev[t] = std::max(0, schedule.rev[t] - prev_r);
    ev.v_rev[t] = std::max(0, prev_r - schedule.rev[t]);
    prev_f = schedule.fwd[t];
    prev_r = schedule.rev[t];
  }
  return ev;
}

inline ScheduleEvents derive_events(const LaneSchedule& schedule, const InitialState& init,
                                    const CorridorSpec& spec) {
  if (schedule.size() != spec.horizon || static_cast<int>(schedule.rev.size()) != spec.horizon)
    throw DimensionError("lane schedule length differs from corridor horizon");
  return derive_events(schedule, init);
}

/// Lanes in flush at slot t from deactivations in slots t-tau+1 .. last.
/// Pass last = t to include this slot's deactivations, last = t-1 to exclude them.
inline int flushing_lanes(const ScheduleEvents& ev, const InitialState& init, int flush_slots, int t,
                          int last) {
  int total = 0;
  for (int k = t - flush_slots + 1; k <= last; ++k)
    total += k < 0 ? init.history_at(k, flush_slots) : ev.deactivations_at(k);
  return total;
}

enum class ViolationKind {
  capacity,         // active + flushing lanes exceed lane_count
  idle_activation,  // activations drew more lanes than the idle pool held
};

inline const char* to_string(ViolationKind k) {
  return k == ViolationKind::capacity ? "capacity" : "idle_activation";
}

struct FeasibilityViolation {
  int slot = 0;
  ViolationKind kind = ViolationKind::capacity;
  int required = 0;   // lanes used (capacity) or activated (idle_activation)
  int available = 0;  // lane_count or idle pool

  bool operator==(const FeasibilityViolation&) const = default;
};

/// All slots where the schedule breaks the lane budget, including flush windows.
inline std::vector<FeasibilityViolation> check_feasibility(const LaneSchedule& schedule,
                                                           const CorridorSpec& spec,
                                                           const InitialState& init) {
  const ScheduleEvents ev = derive_events(schedule, init, spec);
  const int tau = spec.flush_slots;
  std::vector<FeasibilityViolation> out;
  int prev_f = init.y0_fwd;
  int prev_r = init.y0_rev;
  for (int t = 0; t < spec.horizon; ++t) {
    const int used = schedule.fwd[t] + schedule.rev[t] + flushing_lanes(ev, init, tau, t, t);
    if (used > spec.lane_count) out.push_back({t, ViolationKind::capacity, used, spec.lane_count});

    // With tau == 0 a lane deactivated this slot is idle again immediately.
    int idle = spec.lane_count - prev_f - prev_r - flushing_lanes(ev, init, tau, t, t - 1);
    if (tau == 0) idle += ev.deactivations_at(t);
    const int activated = ev.a_fwd[t] + ev.a_rev[t];
    if (activated > std::max(idle, 0)) out.push_back({t, ViolationKind::idle_activation, activated, idle});

    prev_f = schedule.fwd[t];
    prev_r = schedule.rev[t];
  }
  return out;
}

/// Integer penalty totals over the horizon.
struct PenaltyTotals {
  long long shortfall = 0;
  long long deactivations = 0;
  long long waste = 0;

  std::int64_t units(const CostWeights& w) const {
    return w.unserved_units() * shortfall + w.switch_units() * deactivations + w.waste_units() * waste;
  }
};

inline double units_to_z(std::int64_t units) { return static_cast<double>(units) / CostWeights::kScale; }

inline PenaltyTotals penalty_totals(const LaneSchedule& schedule, const DemandSeries& demand,
                                    const CorridorSpec& spec, const InitialState& init) {
  demand.validate(spec);
  const ScheduleEvents ev = derive_events(schedule, init, spec);
  PenaltyTotals totals;
  for (int t = 0; t < spec.horizon; ++t) {
    for (Direction d : {Direction::fwd, Direction::rev}) {
      const SlotOutcome o = slot_outcome(demand.at(d)[t], schedule.at(d)[t], spec.lane_throughput);
      totals.shortfall += static_cast<long long>(o.shortfall);
      totals.waste += static_cast<long long>(o.waste);
    }
    totals.deactivations += ev.deactivations_at(t);
  }
  return totals;
}

/// Exact objective in weight micro-units.
inline std::int64_t objective_units(const LaneSchedule& schedule, const DemandSeries& demand,
                                    const CostWeights& weights, const CorridorSpec& spec,
                                    const InitialState& init) {
  return penalty_totals(schedule, demand, spec, init).units(weights);
}

/// Weighted sum of shortfall, deactivations and waste over both directions.
/// Only deactivations are charged a switching cost.
inline double objective(const LaneSchedule& schedule, const DemandSeries& demand, const CostWeights& weights,
                        const CorridorSpec& spec, const InitialState& init) {
  return units_to_z(objective_units(schedule, demand, weights, spec, init));
}

}  // namespace uamlanes
