#pragma once

// Run configuration: one JSON document with a section per module. Missing
// sections and keys take the reference-scenario defaults; unknown keys are
// rejected.

#include <cstdint>
#include <string>

#include "uamlanes/io.hpp"
#include "uamlanes/pipeline.hpp"
#include "uamlanes/sweep.hpp"
#include "uamlanes/trips.hpp"

namespace uamlanes {

struct RunConfig {
  Scenario scenario;
  SyntheticProfile synthetic;
  SweepGrid sweep;
  std::uint64_t seed = 20250417;
  std::string output_dir = "out";

  void validate() const {
    scenario.validate();
    synthetic.validate();
    sweep.validate();
  }
};

namespace detail {

inline double clock_or_minutes(const json& v, const std::string& what) {
  if (v.is_string()) {
    if (auto m = parse_clock(v.get<std::string>())) return *m;
  } else if (v.is_number()) {
    return v.get<double>();
  }
  throw ConfigError(what + " must be HH:MM or minutes since midnight");
}

inline json peaks_to_json(const std::array<DeparturePeak, 2>& peaks) {
  json out = json::array();
  for (const auto& p : peaks)
    out.push_back({{"center", format_clock(p.center_minutes)}, {"width", p.width_minutes}, {"weight", p.weight}});
  return out;
}

inline std::array<DeparturePeak, 2> peaks_from_json(const json& j, const std::string& section) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(section + " must list exactly two peaks");
  std::array<DeparturePeak, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    require_keys(j[i], {"center", "width", "weight"}, section);
    if (j[i].contains("center")) out[i].center_minutes = clock_or_minutes(j[i].at("center"), section + ".center");
    read_key(j[i], "width", out[i].width_minutes, section);
    read_key(j[i], "weight", out[i].weight, section);
  }
  return out;
}

inline json draw_to_json(const TimeDraw& d) { return json{{"mean", d.mean}, {"sd", d.sd}, {"min", d.min}}; }

inline TimeDraw draw_from_json(const json& j, TimeDraw base, const std::string& section) {
  require_keys(j, {"mean", "sd", "min"}, section);
  read_key(j, "mean", base.mean, section);
  read_key(j, "sd", base.sd, section);
  read_key(j, "min", base.min, section);
  return base;
}

}  // namespace detail

inline json to_json(const DispatchParams& d) {
  return json{{"capture_rate", d.capture_rate},
              {"cap", d.cap},
              {"min_load", d.min_load},
              {"max_wait_slots", d.max_wait_slots},
              {"entry_offset_slots", d.entry_offset_slots}};
}

inline DispatchParams dispatch_from_json(const json& j) {
  detail::require_keys(j, {"capture_rate", "cap", "min_load", "max_wait_slots", "entry_offset_slots"}, "dispatch");
  DispatchParams d;
  detail::read_key(j, "capture_rate", d.capture_rate, "dispatch");
  detail::read_key(j, "cap", d.cap, "dispatch");
  detail::read_key(j, "min_load", d.min_load, "dispatch");
  detail::read_key(j, "max_wait_slots", d.max_wait_slots, "dispatch");
  detail::read_key(j, "entry_offset_slots", d.entry_offset_slots, "dispatch");
  d.validate();
  return d;
}

inline json to_json(const SyntheticProfile& p) {
  return json{{"population", p.population},
              {"fwd_share", p.fwd_share},
              {"fwd_peaks", detail::peaks_to_json(p.fwd_peaks)},
              {"rev_peaks", detail::peaks_to_json(p.rev_peaks)},
              {"drive", detail::draw_to_json(p.drive)},
              {"first_mile", detail::draw_to_json(p.first_mile)},
              {"last_mile", detail::draw_to_json(p.last_mile)},
              {"flight", detail::draw_to_json(p.flight)},
              {"zones_per_cluster", p.zones_per_cluster}};
}

inline SyntheticProfile synthetic_from_json(const json& j) {
  detail::require_keys(j, {"population", "fwd_share", "fwd_peaks", "rev_peaks", "drive", "first_mile", "last_mile",
                           "flight", "zones_per_cluster"},
                       "synthetic");
  SyntheticProfile p;
  detail::read_key(j, "population", p.population, "synthetic");
  detail::read_key(j, "fwd_share", p.fwd_share, "synthetic");
  if (j.contains("fwd_peaks")) p.fwd_peaks = detail::peaks_from_json(j.at("fwd_peaks"), "synthetic.fwd_peaks");
  if (j.contains("rev_peaks")) p.rev_peaks = detail::peaks_from_json(j.at("rev_peaks"), "synthetic.rev_peaks");
  if (j.contains("drive")) p.drive = detail::draw_from_json(j.at("drive"), p.drive, "synthetic.drive");
  if (j.contains("first_mile"))
    p.first_mile = detail::draw_from_json(j.at("first_mile"), p.first_mile, "synthetic.first_mile");
  if (j.contains("last_mile"))
    p.last_mile = detail::draw_from_json(j.at("last_mile"), p.last_mile, "synthetic.last_mile");
  if (j.contains("flight")) p.flight = detail::draw_from_json(j.at("flight"), p.flight, "synthetic.flight");
  detail::read_key(j, "zones_per_cluster", p.zones_per_cluster, "synthetic");
  p.validate();
  return p;
}

inline json to_json(const BlockSchedule& b) {
  json out = json::array();
  for (const auto& blk : b.blocks)
    out.push_back({{"start", format_clock(blk.start_minutes)},
                   {"end", format_clock(blk.end_minutes)},
                   {"fwd", blk.fwd},
                   {"rev", blk.rev}});
  return out;
}

inline BlockSchedule blocks_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("blocks must be a list of {start, end, fwd, rev}");
  BlockSchedule out;
  for (const auto& e : j) {
    detail::require_keys(e, {"start", "end", "fwd", "rev"}, "blocks");
    if (!e.contains("start") || !e.contains("end") || !e.contains("fwd") || !e.contains("rev"))
      throw ConfigError("each block needs start, end, fwd and rev");
    LaneBlock b;
    b.start_minutes = detail::clock_or_minutes(e.at("start"), "blocks.start");
    b.end_minutes = detail::clock_or_minutes(e.at("end"), "blocks.end");
    detail::read_key(e, "fwd", b.fwd, "blocks");
    detail::read_key(e, "rev", b.rev, "blocks");
    out.blocks.push_back(b);
  }
  return out;
}

inline json to_json(const SolverConfig& s) {
  return json{{"method", s.method == SolverMethod::exact_dp ? "exact_dp" : "brute_force"},
              {"brute_force_bound", s.brute_force_bound}};
}

inline SolverConfig solver_from_json(const json& j) {
  detail::require_keys(j, {"method", "brute_force_bound"}, "solver");
  SolverConfig s;
  if (j.contains("method")) {
    const auto m = j.at("method");
    if (m == "exact_dp") {
      s.method = SolverMethod::exact_dp;
    } else if (m == "brute_force") {
      s.method = SolverMethod::brute_force;
    } else {
      throw ConfigError("solver.method must be exact_dp or brute_force");
    }
  }
  detail::read_key(j, "brute_force_bound", s.brute_force_bound, "solver");
  return s;
}

inline json to_json(const InitialState& s) {
  return json{{"y0_fwd", s.y0_fwd}, {"y0_rev", s.y0_rev}, {"v_history_fwd", s.v_history_fwd},
              {"v_history_rev", s.v_history_rev}};
}

inline InitialState initial_from_json(const json& j) {
  detail::require_keys(j, {"y0_fwd", "y0_rev", "v_history_fwd", "v_history_rev"}, "initial");
  InitialState s;
  detail::read_key(j, "y0_fwd", s.y0_fwd, "initial");
  detail::read_key(j, "y0_rev", s.y0_rev, "initial");
  detail::read_key(j, "v_history_fwd", s.v_history_fwd, "initial");
  detail::read_key(j, "v_history_rev", s.v_history_rev, "initial");
  return s;
}

inline json to_json(const SweepGrid& g) { return json{{"lane_counts", g.lane_counts}, {"capture_rates", g.capture_rates}}; }

inline SweepGrid sweep_from_json(const json& j) {
  detail::require_keys(j, {"lane_counts", "capture_rates"}, "sweep");
  SweepGrid g;
  detail::read_key(j, "lane_counts", g.lane_counts, "sweep");
  detail::read_key(j, "capture_rates", g.capture_rates, "sweep");
  g.validate();
  return g;
}

/// Fully resolved configuration, every key explicit.
inline json to_json(const RunConfig& c) {
  return json{{"corridor", to_json(c.scenario.corridor)},
              {"dispatch", to_json(c.scenario.dispatch)},
              {"weights", to_json(c.scenario.weights)},
              {"initial", to_json(c.scenario.initial)},
              {"blocks", to_json(c.scenario.blocks)},
              {"solver", to_json(c.scenario.solver)},
              {"synthetic", to_json(c.synthetic)},
              {"sweep", to_json(c.sweep)},
              {"seed", c.seed},
              {"output_dir", c.output_dir}};
}

inline RunConfig config_from_json(const json& j) {
  detail::require_keys(j, {"corridor", "dispatch", "weights", "initial", "blocks", "solver", "synthetic", "sweep",
                           "seed", "output_dir"},
                       "<root>");
  RunConfig c;
  if (j.contains("corridor")) c.scenario.corridor = corridor_from_json(j.at("corridor"));
  if (j.contains("dispatch")) c.scenario.dispatch = dispatch_from_json(j.at("dispatch"));
  if (j.contains("weights")) c.scenario.weights = weights_from_json(j.at("weights"));
  if (j.contains("initial")) c.scenario.initial = initial_from_json(j.at("initial"));
  if (j.contains("blocks")) c.scenario.blocks = blocks_from_json(j.at("blocks"));
  if (j.contains("solver")) c.scenario.solver = solver_from_json(j.at("solver"));
  if (j.contains("synthetic")) c.synthetic = synthetic_from_json(j.at("synthetic"));
  if (j.contains("sweep")) c.sweep = sweep_from_json(j.at("sweep"));
  detail::read_key(j, "seed", c.seed, "<root>");
  detail::read_key(j, "output_dir", c.output_dir, "<root>");
  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  const std::string text = csv::read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

/// FNV-1a over the resolved configuration text, output_dir excluded.
inline std::uint64_t config_hash(const RunConfig& c) {
  json j = to_json(c);
  j.erase("output_dir");
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace uamlanes
