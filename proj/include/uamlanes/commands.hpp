#pragma once

// Command implementations behind the uamlanes CLI. Each command writes its
// artifacts under an output directory and returns the line it prints.

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "uamlanes/config.hpp"
#include "uamlanes/evaluator.hpp"
#include "uamlanes/io.hpp"
#include "uamlanes/pipeline.hpp"
#include "uamlanes/solver.hpp"
#include "uamlanes/sweep.hpp"
#include "uamlanes/trips.hpp"

namespace uamlanes {

namespace detail {

inline std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return std::filesystem::path(dir);
}

inline void write(const std::filesystem::path& p, const std::string& contents) { csv::write_file(p.string(), contents); }

}  // namespace detail

/// Trips from a CSV file, or the config's synthetic population when no path is given.
inline TripCollection obtain_trips(const RunConfig& config, const std::string& trips_path) {
  if (trips_path.empty()) return generate_synthetic_trips(config.synthetic, config.seed, config.scenario.corridor);
  return load_trips(trips_path, config.scenario.corridor);
}

inline std::string cmd_gen_trips(const RunConfig& config, const std::string& out_path) {
  const TripCollection trips = generate_synthetic_trips(config.synthetic, config.seed, config.scenario.corridor);
  const auto parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) detail::prepare_dir(parent.string());
  save_trips(trips, out_path);
  return "generated " + std::to_string(trips.size()) + " trips -> " + out_path;
}

inline std::string summary_line(const PolicyRun& run) {
  const auto& r = run.report;
  return std::string(to_string(run.policy)) + ": served=" + format_number(r.total_served) +
         " shortfall=" + format_number(r.total_shortfall) + " rate=" + format_fixed(r.shortfall_rate, 4) +
         " waste=" + format_number(r.total_waste) + " deactivations=" + std::to_string(r.total_deactivations) +
         " utilization=" + format_fixed(r.mean_utilization, 4) + " Z=" + format_number(r.objective_z) +
         " person_hours_saved=" + format_fixed(run.impact.person_hours_saved, 2);
}

/// Writes demand.csv, schedule.csv/.json, evaluation.json/.csv,
/// outcomes.csv and travel_impact.json; the dynamic policy also writes
/// timing.json (wall-clock, not reproducible).
inline PolicyRun cmd_run(const RunConfig& config, const std::string& trips_path, Policy policy,
                         const std::string& out_dir, std::ostream* log = nullptr) {
  const auto dir = detail::prepare_dir(out_dir);
  const TripCollection trips = obtain_trips(config, trips_path);
  const auto& sc = config.scenario;
  const DispatchResult dispatched = build_demand(trips, sc.dispatch, sc.corridor);
  if (log)
    for (const auto& w : dispatched.warnings) *log << "warning: " << w << "\n";
  PolicyRun run = run_policy(policy, sc, trips, dispatched);

  detail::write(dir / "demand.csv", demand_to_csv(dispatched.demand, sc.corridor));
  detail::write(dir / "schedule.csv", schedule_to_csv(run.schedule, sc.corridor));
  detail::write(dir / "schedule.json", dump(schedule_to_json(run.schedule, sc.corridor)));
  json eval = to_json(run.report);
  eval["policy"] = to_string(policy);
  detail::write(dir / "evaluation.json", dump(eval));
  detail::write(dir / "evaluation.csv", report_to_csv(run.report));
  detail::write(dir / "outcomes.csv", outcomes_to_csv(run.outcomes));
  detail::write(dir / "travel_impact.json", dump(to_json(run.impact)));
  if (run.solution)
    detail::write(dir / "timing.json",
                  dump(json{{"policy", to_string(policy)}, {"solve_millis", run.solution->solve_millis}}));
  return run;
}

inline const char* kCompareCsvHeader = "policy,served,shortfall,shortfall_rate,waste,deactivations,utilization,Z";

/// Runs all four policies on one demand realization. Writes compare.csv,
/// compare_schedules.csv (per-slot allocations) and demand.csv.
inline std::vector<PolicyRun> cmd_compare(const RunConfig& config, const std::string& trips_path,
                                          const std::string& out_dir) {
  const auto dir = detail::prepare_dir(out_dir);
  const TripCollection trips = obtain_trips(config, trips_path);
  const auto& sc = config.scenario;
  const DispatchResult dispatched = build_demand(trips, sc.dispatch, sc.corridor);

  std::vector<PolicyRun> runs;
  std::string table = std::string(kCompareCsvHeader) + "\n";
  std::string schedules = "slot,clock_time,policy,fwd,rev,F_fwd,F_rev\n";
  for (Policy p : {Policy::dynamic, Policy::fixed5050, Policy::fixed_asym, Policy::greedy}) {
    runs.push_back(run_policy(p, sc, trips, dispatched));
    const auto& r = runs.back().report;
    csv::append_row(table, std::string(to_string(p)), format_number(r.total_served), format_number(r.total_shortfall),
                    format_number(r.shortfall_rate), format_number(r.total_waste),
                    std::to_string(r.total_deactivations), format_number(r.mean_utilization),
                    format_number(r.objective_z));
    for (int t = 0; t < sc.corridor.horizon; ++t)
      csv::append_row(schedules, std::to_string(t), format_clock(sc.corridor.slot_begin(t)), std::string(to_string(p)),
                      std::to_string(runs.back().schedule.fwd[t]), std::to_string(runs.back().schedule.rev[t]),
                      std::to_string(dispatched.demand.fwd[t]), std::to_string(dispatched.demand.rev[t]));
  }
  detail::write(dir / "compare.csv", table);
  detail::write(dir / "compare_schedules.csv", schedules);
  detail::write(dir / "demand.csv", demand_to_csv(dispatched.demand, sc.corridor));
  return runs;
}

/// Writes sweep.csv and sweep_manifest.json.
inline std::vector<SweepRow> cmd_sweep(const RunConfig& config, const std::string& trips_path,
                                       const std::string& out_dir, unsigned threads = 0) {
  const auto dir = detail::prepare_dir(out_dir);
  const TripCollection trips = obtain_trips(config, trips_path);
  std::vector<SweepRow> rows = run_sweep(config.sweep, trips, config.scenario, threads);
  detail::write(dir / "sweep.csv", sweep_to_csv(rows));

  double baseline = 0.0;
  for (const auto& t : trips.trips) baseline += t.drive_minutes;
  if (!trips.empty()) baseline /= static_cast<double>(trips.size());
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(config_hash(config)));
  json manifest{{"config_hash", hash},
                {"seed", config.seed},
                {"trips", trips_path.empty() ? json("synthetic") : json(std::filesystem::path(trips_path).filename().string())},
                {"population", trips.size()},
                {"baseline_mean_trip_minutes", baseline},
                {"grid", to_json(config.sweep)},
                {"rows", rows.size()}};
  detail::write(dir / "sweep_manifest.json", dump(manifest));
  return rows;
}

inline Solution cmd_export_lp(const RunConfig& config, const std::string& trips_path, const std::string& out_path) {
  const TripCollection trips = obtain_trips(config, trips_path);
  const auto& sc = config.scenario;
  const DispatchResult dispatched = build_demand(trips, sc.dispatch, sc.corridor);
  const auto parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) detail::prepare_dir(parent.string());
  export_lp(sc.corridor, dispatched.demand, sc.weights, sc.initial, out_path);
  return solve_dynamic(sc.corridor, dispatched.demand, sc.weights, sc.initial, sc.solver);
}

}  // namespace uamlanes
