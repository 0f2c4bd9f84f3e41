#pragma once

// Lane-count x capture-rate sensitivity grid under the dynamic policy.

#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "uamlanes/format.hpp"
#include "uamlanes/pipeline.hpp"

namespace uamlanes {

struct SweepGrid {
  std::vector<int> lane_counts{2, 4, 6, 8, 10};
  std::vector<double> capture_rates{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};

  void validate() const {
    if (lane_counts.empty() || capture_rates.empty()) throw ConfigError("sweep grid lists must be non-empty");
    for (int l : lane_counts)
      if (l < 1) throw ConfigError("sweep lane counts must be >= 1");
    for (double p : capture_rates)
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sweep capture rates must lie in [0, 1]");
  }

  std::size_t cells() const { return lane_counts.size() * capture_rates.size(); }
};

struct SweepRow {
  int lane_count = 0;
  double capture_rate = 0.0;
  long long throughput_passengers = 0;
  double total_shortfall = 0.0;
  double mean_utilization = 0.0;
  double total_waste = 0.0;
  double person_hours_saved = 0.0;
  double mean_trip_minutes = 0.0;
  double solve_millis = 0.0;
  double objective_z = 0.0;
};

inline SweepRow run_sweep_cell(int lane_count, double capture_rate, const TripCollection& trips,
                               const Scenario& base) {
  Scenario sc = base;
  sc.corridor.lane_count = lane_count;
  sc.dispatch.capture_rate = capture_rate;
  sc.validate();
  const DispatchResult dispatched = build_demand(trips, sc.dispatch, sc.corridor);
  const PolicyRun run = run_policy(Policy::dynamic, sc, trips, dispatched);

  SweepRow row;
  row.lane_count = lane_count;
  row.capture_rate = capture_rate;
  row.throughput_passengers = run.impact.served_uam;
  row.total_shortfall = run.report.total_shortfall;
  row.mean_utilization = run.report.mean_utilization;
  row.total_waste = run.report.total_waste;
  row.person_hours_saved = run.impact.person_hours_saved;
  row.mean_trip_minutes = run.impact.mean_trip_minutes;
  row.solve_millis = run.solution ? run.solution->solve_millis : 0.0;
  row.objective_z = run.report.objective_z;
  return row;
}

/// Rows in row-major order (lane count outer, capture rate inner). Cells are
/// independent and run on up to `threads` workers (0 = hardware concurrency).
inline std::vector<SweepRow> run_sweep(const SweepGrid& grid, const TripCollection& trips, const Scenario& base,
                                       unsigned threads = 0) {
  grid.validate();
  const std::size_t n = grid.cells();
  std::vector<SweepRow> rows(n);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::string failed_cell;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const int lanes = grid.lane_counts[i / grid.capture_rates.size()];
      const double rate = grid.capture_rates[i % grid.capture_rates.size()];
      try {
        rows[i] = run_sweep_cell(lanes, rate, trips, base);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) {
          first_error = std::current_exception();
          failed_cell = "L=" + std::to_string(lanes) + ", p_c=" + format_number(rate);
        }
        next = n;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  if (first_error) {
    const std::string where = "sweep cell " + failed_cell + " failed: ";
    try {
      std::rethrow_exception(first_error);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(where + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(where + e.what());
    }
  }
  return rows;
}

inline const char* kSweepCsvHeader =
    "lane_count,capture_rate,throughput_passengers,total_shortfall,mean_utilization,total_waste,"
    "person_hours_saved,mean_trip_minutes,solve_millis,objective_z";

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto& r : rows)
    csv::append_row(out, std::to_string(r.lane_count), format_number(r.capture_rate),
                    std::to_string(r.throughput_passengers), format_number(r.total_shortfall),
                    format_number(r.mean_utilization), format_number(r.total_waste),
                    format_number(r.person_hours_saved), format_number(r.mean_trip_minutes),
                    format_fixed(r.solve_millis, 3), format_number(r.objective_z));
  return out;
}

}  // namespace uamlanes
