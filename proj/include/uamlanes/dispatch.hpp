#pragma once

// Trips -> per-slot directional aircraft demand: a capture-rate filter ranked
// by UAM travel-time advantage, then a slot-stepped vertiport queue that
// pools passengers into aircraft.

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "uamlanes/corridor.hpp"
#include "uamlanes/trips.hpp"

namespace uamlanes {

struct DispatchParams {
  double capture_rate = 0.3;
  int cap = 4;
  int min_load = 3;
  int max_wait_slots = 1;
  int entry_offset_slots = 0;

  void validate() const {
    if (!(capture_rate >= 0.0 && capture_rate <= 1.0)) throw ConfigError("dispatch.capture_rate must lie in [0, 1]");
    if (cap < 1) throw ConfigError("dispatch.cap must be >= 1");
    if (min_load < 1 || min_load > cap) throw ConfigError("dispatch.min_load must lie in [1, cap]");
    if (max_wait_slots < 0) throw ConfigError("dispatch.max_wait_slots must be >= 0");
    if (entry_offset_slots < 0) throw ConfigError("dispatch.entry_offset_slots must be >= 0");
  }
};

enum class PassengerStatus { served_uam, spilled_wait, rejected_capacity, not_captured };

inline const char* to_string(PassengerStatus s) {
  switch (s) {
    case PassengerStatus::served_uam: return "served_uam";
    case PassengerStatus::spilled_wait: return "spilled_wait";
    case PassengerStatus::rejected_capacity: return "rejected_capacity";
    case PassengerStatus::not_captured: return "not_captured";
  }
  return "unknown";
}

struct PassengerOutcome {
  std::string trip_id;
  PassengerStatus status = PassengerStatus::not_captured;
  int board_slot = -1;  // dispatch slot when served, -1 otherwise
  int wait_slots = 0;

  bool operator==(const PassengerOutcome&) const = default;
};

/// Which trips ride which aircraft: [direction][corridor entry slot][aircraft in dispatch order].
struct DemandProvenance {
  std::vector<std::vector<std::vector<std::string>>> fwd;
  std::vector<std::vector<std::vector<std::string>>> rev;

  explicit DemandProvenance(int horizon = 0) : fwd(horizon), rev(horizon) {}
  const auto& at(Direction d) const { return d == Direction::fwd ? fwd : rev; }
  auto& at(Direction d) { return d == Direction::fwd ? fwd : rev; }
};

struct DispatchResult {
  DemandSeries demand;
  std::vector<PassengerOutcome> outcomes;  // one per input trip, input order
  DemandProvenance provenance;
  std::vector<std::string> warnings;
};

/// Keeps the floor(p_c * N) trips with the largest UAM advantage, pooled over
/// both directions; ties go to the smaller trip_id. Input order is preserved.
inline TripCollection capture_filter(const TripCollection& trips, double capture_rate) {
  if (!(capture_rate >= 0.0 && capture_rate <= 1.0)) throw ConfigError("capture rate must lie in [0, 1]");
  const std::size_t n = trips.size();
  // Small epsilon so that e.g. 0.7 * 10 keeps 7 trips, not 6.
  const auto keep = std::min(n, static_cast<std::size_t>(std::floor(capture_rate * static_cast<double>(n) + 1e-9)));

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double aa = trips.trips[a].uam_advantage();
    const double ab = trips.trips[b].uam_advantage();
    if (aa != ab) return aa > ab;
    return trips.trips[a].trip_id < trips.trips[b].trip_id;
  });
  std::vector<char> kept(n, 0);
  for (std::size_t i = 0; i < keep; ++i) kept[order[i]] = 1;

  TripCollection out;
  out.zones = trips.zones;
  for (std::size_t i = 0; i < n; ++i)
    if (kept[i]) out.trips.push_back(trips.trips[i]);
  return out;
}

/// Slot-stepped vertiport queue per direction. Each slot: arrivals join in
/// (arrival slot, trip_id) order; while at least min_load wait, one aircraft
/// leaves with min(cap, queue) passengers from the front; anyone who has now
/// waited max_wait_slots slots without boarding spills to driving.
///
/// An aircraft dispatched at slot t enters the corridor at t + entry_offset.
/// Aircraft that would enter after the horizon are not flown; their
/// passengers spill and a warning is recorded.
inline DispatchResult simulate_dispatch(const TripCollection& trips, const DispatchParams& params,
                                        const CorridorSpec& spec) {
  params.validate();
  spec.validate();
  const int T = spec.horizon;

  std::vector<std::string> outside;
  for (const auto& t : trips.trips)
    if (t.depart_minutes < spec.horizon_start || t.depart_minutes >= spec.window_end()) outside.push_back(t.trip_id);
  if (!outside.empty()) {
    std::string ids;
    for (std::size_t i = 0; i < outside.size() && i < 20; ++i) ids += (i ? "," : "") + outside[i];
    if (outside.size() > 20) ids += ",...";
    throw ConfigError(std::to_string(outside.size()) + " trips depart outside the operating window: " + ids);
  }

  DispatchResult result;
  result.demand = DemandSeries::zeros(T);
  result.provenance = DemandProvenance(T);
  result.outcomes.resize(trips.size());
  for (std::size_t i = 0; i < trips.size(); ++i) result.outcomes[i].trip_id = trips.trips[i].trip_id;

  int unflown_aircraft = 0;
  for (Direction dir : {Direction::fwd, Direction::rev}) {
    struct Waiting {
      std::size_t index;
      int arrival;
    };
    std::vector<Waiting> arrivals;
    for (std::size_t i = 0; i < trips.size(); ++i) {
      const auto& t = trips.trips[i];
      if (t.direction == dir) arrivals.push_back({i, spec.slot_of(t.depart_minutes + t.fm_minutes)});
    }
    std::sort(arrivals.begin(), arrivals.end(), [&](const Waiting& a, const Waiting& b) {
      if (a.arrival != b.arrival) return a.arrival < b.arrival;
      return trips.trips[a.index].trip_id < trips.trips[b.index].trip_id;
    });

    auto spill = [&](const Waiting& w, int slot) {
      auto& o = result.outcomes[w.index];
      o.status = PassengerStatus::spilled_wait;
      o.board_slot = -1;
      o.wait_slots = std::max(0, slot - w.arrival);
    };

    std::deque<Waiting> queue;
    std::size_t next = 0;
    for (int slot = 0; slot < T; ++slot) {
      while (next < arrivals.size() && arrivals[next].arrival <= slot) queue.push_back(arrivals[next++]);

      while (static_cast<int>(queue.size()) >= params.min_load) {
        const int load = std::min<int>(params.cap, static_cast<int>(queue.size()));
        const int entry = slot + params.entry_offset_slots;
        std::vector<std::string> riders;
        for (int k = 0; k < load; ++k) {
          const Waiting w = queue.front();
          queue.pop_front();
          if (entry < T) {
            auto& o = result.outcomes[w.index];
            o.status = PassengerStatus::served_uam;
            o.board_slot = slot;
            o.wait_slots = slot - w.arrival;
            riders.push_back(trips.trips[w.index].trip_id);
          } else {
            spill(w, slot);
          }
        }
        if (entry < T) {
          result.demand.at(dir)[entry] += 1;
          result.provenance.at(dir)[entry].push_back(std::move(riders));
        } else {
          ++unflown_aircraft;
        }
      }

      while (!queue.empty() && slot - queue.front().arrival >= params.max_wait_slots) {
        spill(queue.front(), slot);
        queue.pop_front();
      }
    }
    // End of horizon: whoever is still waiting or arrives later goes by car.
    for (const auto& w : queue) spill(w, T - 1);
    for (; next < arrivals.size(); ++next) spill(arrivals[next], arrivals[next].arrival);
  }
  if (unflown_aircraft > 0)
    result.warnings.push_back(std::to_string(unflown_aircraft) +
                              " aircraft would enter the corridor after the horizon and were not flown");
  return result;
}

/// Capture filter followed by dispatch; returns one outcome per trip in the
/// full population (non-retained trips are not_captured).
inline DispatchResult build_demand(const TripCollection& trips, const DispatchParams& params,
                                   const CorridorSpec& spec) {
  const TripCollection captured = capture_filter(trips, params.capture_rate);
  DispatchResult sim = simulate_dispatch(captured, params, spec);

  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < sim.outcomes.size(); ++i) by_id.emplace(sim.outcomes[i].trip_id, i);

  std::vector<PassengerOutcome> all;
  all.reserve(trips.size());
  for (const auto& t : trips.trips) {
    if (auto it = by_id.find(t.trip_id); it != by_id.end()) {
      all.push_back(sim.outcomes[it->second]);
    } else {
      all.push_back({t.trip_id, PassengerStatus::not_captured, -1, 0});
    }
  }
  sim.outcomes = std::move(all);
  return sim;
}

inline std::string outcomes_to_csv(const std::vector<PassengerOutcome>& outcomes) {
  std::string out = "trip_id,status,board_slot,wait_slots\n";
  for (const auto& o : outcomes)
    csv::append_row(out, o.trip_id, std::string(to_string(o.status)),
                    o.board_slot >= 0 ? std::to_string(o.board_slot) : std::string(), std::to_string(o.wait_slots));
  return out;
}

}  // namespace uamlanes
