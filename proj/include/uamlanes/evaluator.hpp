#pragma once

// Policy-agnostic scoring of a lane schedule against demand, plus
// population-level travel-time impact.

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "uamlanes/corridor.hpp"
#include "uamlanes/dispatch.hpp"
#include "uamlanes/format.hpp"
#include "uamlanes/io.hpp"

namespace uamlanes {

struct SlotRecord {
  int slot = 0;
  Direction dir = Direction::fwd;
  int demand = 0;
  int lanes = 0;
  double served = 0.0;
  double shortfall = 0.0;
  double waste = 0.0;
  int deactivations = 0;
};

struct EvaluationReport {
  std::vector<SlotRecord> slots;  // slot-major, fwd before rev
  long long total_demand = 0;
  double total_shortfall = 0.0;
  double shortfall_rate = 0.0;
  double total_waste = 0.0;
  long long total_deactivations = 0;
  double total_served = 0.0;
  double mean_utilization = 0.0;
  double objective_z = 0.0;
  std::int64_t objective_units = 0;
  std::vector<FeasibilityViolation> violations;  // filled only in strict mode

  const SlotRecord& at(int slot, Direction d) const { return slots[2 * slot + (d == Direction::fwd ? 0 : 1)]; }
};

/// Scores any schedule. Flush-infeasible schedules are scored, not rejected;
/// `strict` additionally lists their lane-budget violations.
inline EvaluationReport evaluate(const LaneSchedule& schedule, const DemandSeries& demand, const CorridorSpec& spec,
                                 const InitialState& init, const CostWeights& weights, bool strict = false) {
  demand.validate(spec);
  const ScheduleEvents ev = derive_events(schedule, init, spec);
  const int K = spec.lane_throughput;

  EvaluationReport r;
  r.slots.reserve(2 * static_cast<std::size_t>(spec.horizon));
  double utilization_sum = 0.0;
  long long utilization_count = 0;
  for (int t = 0; t < spec.horizon; ++t) {
    for (Direction d : {Direction::fwd, Direction::rev}) {
      SlotRecord rec;
      rec.slot = t;
      rec.dir = d;
      rec.demand = demand.at(d)[t];
      rec.lanes = schedule.at(d)[t];
      const SlotOutcome o = slot_outcome(rec.demand, rec.lanes, K);
      rec.served = o.served;
      rec.shortfall = o.shortfall;
      rec.waste = o.waste;
      rec.deactivations = ev.deactivations(d)[t];

      r.total_demand += rec.demand;
      r.total_shortfall += rec.shortfall;
      r.total_waste += rec.waste;
      r.total_served += rec.served;
      r.total_deactivations += rec.deactivations;
      if (rec.lanes > 0) {
        utilization_sum += rec.served / (static_cast<double>(K) * rec.lanes);
        ++utilization_count;
      }
      r.slots.push_back(rec);
    }
  }
  r.shortfall_rate = r.total_demand > 0 ? r.total_shortfall / static_cast<double>(r.total_demand) : 0.0;
  r.mean_utilization = utilization_count > 0 ? utilization_sum / static_cast<double>(utilization_count) : 0.0;
  r.objective_units = objective_units(schedule, demand, weights, spec, init);
  r.objective_z = units_to_z(r.objective_units);
  if (strict) r.violations = check_feasibility(schedule, spec, init);
  return r;
}

/// Marks passengers of the last-dispatched ceil(shortfall) aircraft in each
/// slot-direction as rejected_capacity.
inline std::vector<PassengerOutcome> attribute_rejections(const EvaluationReport& report,
                                                          std::vector<PassengerOutcome> outcomes,
                                                          const DemandProvenance& provenance) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < outcomes.size(); ++i) by_id.emplace(outcomes[i].trip_id, i);

  for (const auto& rec : report.slots) {
    const auto& slots = provenance.at(rec.dir);
    if (rec.slot >= static_cast<int>(slots.size()))
      throw DimensionError("provenance is shorter than the evaluated horizon");
    const auto& aircraft = slots[rec.slot];
    if (static_cast<int>(aircraft.size()) != rec.demand)
      throw DimensionError("provenance lists " + std::to_string(aircraft.size()) + " aircraft but demand is " +
                           std::to_string(rec.demand) + " at slot " + std::to_string(rec.slot) + " " +
                           to_string(rec.dir));
    const auto rejected = static_cast<std::size_t>(std::ceil(rec.shortfall));
    for (std::size_t k = aircraft.size() - std::min(rejected, aircraft.size()); k < aircraft.size(); ++k) {
      for (const auto& id : aircraft[k]) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw DimensionError("provenance names unknown trip " + id);
        auto& o = outcomes[it->second];
        o.status = PassengerStatus::rejected_capacity;
        o.board_slot = -1;
      }
    }
  }
  return outcomes;
}

struct TravelImpact {
  double person_hours_saved = 0.0;
  double mean_trip_minutes = 0.0;
  double baseline_mean_trip_minutes = 0.0;
  long long served_uam = 0;
  long long spilled = 0;
  long long rejected_capacity = 0;
  long long not_captured = 0;
};

/// Served trips take fm + wait + flight + lm; everyone else drives.
inline TravelImpact travel_impact(const std::vector<PassengerOutcome>& outcomes, const TripCollection& trips,
                                  const CorridorSpec& spec) {
  std::unordered_map<std::string, const PassengerOutcome*> by_id;
  for (const auto& o : outcomes) by_id.emplace(o.trip_id, &o);

  TravelImpact impact;
  double incurred_sum = 0.0;
  double baseline_sum = 0.0;
  double saved_minutes = 0.0;
  for (const auto& t : trips.trips) {
    auto it = by_id.find(t.trip_id);
    if (it == by_id.end()) throw DimensionError("no passenger outcome for trip " + t.trip_id);
    const PassengerOutcome& o = *it->second;
    double incurred = t.drive_minutes;
    switch (o.status) {
      case PassengerStatus::served_uam:
        incurred = t.fm_minutes + o.wait_slots * spec.slot_minutes + t.flight_minutes + t.lm_minutes;
        saved_minutes += t.drive_minutes - incurred;
        ++impact.served_uam;
        break;
      case PassengerStatus::spilled_wait: ++impact.spilled; break;
      case PassengerStatus::rejected_capacity: ++impact.rejected_capacity; break;
      case PassengerStatus::not_captured: ++impact.not_captured; break;
    }
    incurred_sum += incurred;
    baseline_sum += t.drive_minutes;
  }
  const double n = static_cast<double>(trips.size());
  impact.person_hours_saved = saved_minutes / 60.0;
  impact.mean_trip_minutes = trips.empty() ? 0.0 : incurred_sum / n;
  impact.baseline_mean_trip_minutes = trips.empty() ? 0.0 : baseline_sum / n;
  return impact;
}

inline json to_json(const EvaluationReport& r) {
  json slots = json::array();
  for (const auto& s : r.slots)
    slots.push_back({{"slot", s.slot},
                     {"dir", to_string(s.dir)},
                     {"F", s.demand},
                     {"y", s.lanes},
                     {"served", s.served},
                     {"s", s.shortfall},
                     {"w", s.waste},
                     {"v", s.deactivations}});
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"slot", v.slot}, {"kind", to_string(v.kind)}, {"required", v.required},
                          {"available", v.available}});
  return json{{"total_demand", r.total_demand},
              {"total_served", r.total_served},
              {"total_shortfall", r.total_shortfall},
              {"shortfall_rate", r.shortfall_rate},
              {"total_waste", r.total_waste},
              {"total_deactivations", r.total_deactivations},
              {"mean_utilization", r.mean_utilization},
              {"objective_z", r.objective_z},
              {"violations", violations},
              {"slots", slots}};
}

inline std::string report_to_csv(const EvaluationReport& r) {
  std::string out = "slot,dir,F,y,served,s,w,v\n";
  for (const auto& s : r.slots)
    csv::append_row(out, std::to_string(s.slot), std::string(to_string(s.dir)), std::to_string(s.demand),
                    std::to_string(s.lanes), format_number(s.served), format_number(s.shortfall),
                    format_number(s.waste), std::to_string(s.deactivations));
  return out;
}

inline json to_json(const TravelImpact& t) {
  return json{{"person_hours_saved", t.person_hours_saved},
              {"mean_trip_minutes", t.mean_trip_minutes},
              {"baseline_mean_trip_minutes", t.baseline_mean_trip_minutes},
              {"counts",
               {{"served_uam", t.served_uam},
                {"spilled", t.spilled},
                {"rejected_capacity", t.rejected_capacity},
                {"not_captured", t.not_captured}}}};
}

}  // namespace uamlanes
