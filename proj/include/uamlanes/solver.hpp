#pragma once

// Exact lane-allocation optimizer.
//
// The integer program (weighted shortfall/deactivation/waste penalty, lane
// budget with flush windows, lane-count evolution, goal-programming balance)
// is solved by dynamic programming over the corridor configuration. A state
// is the pair of active lane counts plus the total deactivations in each of
// the last flush_slots-1 slots; that is exactly the information the lane
// budget constraint of the next slot depends on, and demand is exogenous, so
// the stage costs separate.

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uamlanes/corridor.hpp"
#include "uamlanes/format.hpp"

namespace uamlanes {

enum class SolverMethod { exact_dp, brute_force };
enum class SolveStatus { optimal, infeasible };

inline const char* to_string(SolveStatus s) { return s == SolveStatus::optimal ? "optimal" : "infeasible"; }

struct SolverConfig {
  SolverMethod method = SolverMethod::exact_dp;
  /// Largest number of raw schedules ((L+1)^2)^T brute force will enumerate.
  std::uint64_t brute_force_bound = std::uint64_t{1} << 32;
};

struct Solution {
  LaneSchedule schedule;
  ScheduleEvents events;
  std::vector<SlotOutcome> outcomes_fwd;
  std::vector<SlotOutcome> outcomes_rev;
  double objective_z = 0.0;
  std::int64_t objective_units = 0;
  SolveStatus status = SolveStatus::infeasible;
  double solve_millis = 0.0;
};

namespace detail {

/// Ordering among schedules: objective first, then fewer deactivations, then
/// fewer active lane-slots. Remaining ties resolve to the lexicographically
/// smallest (y_fwd[0], y_rev[0], y_fwd[1], ...) sequence.
struct RankKey {
  std::int64_t units = 0;
  long long deactivations = 0;
  long long lane_slots = 0;

  auto operator<=>(const RankKey&) const = default;
  RankKey operator+(const RankKey& o) const {
    return {units + o.units, deactivations + o.deactivations, lane_slots + o.lane_slots};
  }
};

inline RankKey stage_key(int demand_f, int demand_r, int yf, int yr, int vf, int vr, int lane_throughput,
                         const CostWeights& w) {
  const SlotOutcome of = slot_outcome(demand_f, yf, lane_throughput);
  const SlotOutcome orv = slot_outcome(demand_r, yr, lane_throughput);
  const auto shortfall = static_cast<std::int64_t>(of.shortfall + orv.shortfall);
  const auto waste = static_cast<std::int64_t>(of.waste + orv.waste);
  RankKey k;
  k.units = w.unserved_units() * shortfall + w.waste_units() * waste + w.switch_units() * (vf + vr);
  k.deactivations = vf + vr;
  k.lane_slots = yf + yr;
  return k;
}

/// Enumerates the configuration states whose lane usage fits the corridor.
class StateSpace {
 public:
  StateSpace(int lane_count, int flush_slots)
      : lanes_(lane_count), ages_(std::max(flush_slots - 1, 0)), dims_(2 + ages_) {
    std::size_t dense = 1;
    for (int i = 0; i < dims_; ++i) dense *= static_cast<std::size_t>(lanes_ + 1);
    index_.assign(dense, -1);
    std::vector<int> digits(dims_, 0);
    for (std::size_t code = 0; code < dense; ++code) {
      std::size_t rest = code;
      int sum = 0;
      for (int i = 0; i < dims_; ++i) {
        digits[i] = static_cast<int>(rest % (lanes_ + 1));
        rest /= (lanes_ + 1);
        sum += digits[i];
      }
      if (sum <= lanes_) {
        index_[code] = static_cast<int>(states_.size());
        states_.push_back(digits);
      }
    }
  }

  int size() const { return static_cast<int>(states_.size()); }
  int ages() const { return ages_; }
  const std::vector<int>& state(int idx) const { return states_[idx]; }

  /// digits: [yf, yr, v(t-ages+1) .. v(t)], oldest flush age first.
  int find(const std::vector<int>& digits) const {
    std::size_t code = 0;
    for (int i = dims_ - 1; i >= 0; --i) {
      if (digits[i] < 0 || digits[i] > lanes_) return -1;
      code = code * (lanes_ + 1) + static_cast<std::size_t>(digits[i]);
    }
    return index_[code];
  }

 private:
  int lanes_;
  int ages_;
  int dims_;
  std::vector<int> index_;
  std::vector<std::vector<int>> states_;
};

inline void finish_solution(Solution& sol, const CorridorSpec& spec, const DemandSeries& demand,
                            const CostWeights& weights, const InitialState& init) {
  sol.events = derive_events(sol.schedule, init, spec);
  sol.outcomes_fwd.clear();
  sol.outcomes_rev.clear();
  for (int t = 0; t < spec.horizon; ++t) {
    sol.outcomes_fwd.push_back(slot_outcome(demand.fwd[t], sol.schedule.fwd[t], spec.lane_throughput));
    sol.outcomes_rev.push_back(slot_outcome(demand.rev[t], sol.schedule.rev[t], spec.lane_throughput));
  }
  sol.objective_units = objective_units(sol.schedule, demand, weights, spec, init);
  sol.objective_z = units_to_z(sol.objective_units);
  sol.status = SolveStatus::optimal;
}

inline double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Solves the lane-allocation program to global optimality with deterministic tie-breaking.
inline Solution solve_dynamic_program(const CorridorSpec& spec, const DemandSeries& demand,
                                      const CostWeights& weights, const InitialState& init) {
  using detail::RankKey;
  const auto started = std::chrono::steady_clock::now();
  spec.validate();
  demand.validate(spec);
  weights.validate();

  Solution sol;
  const int L = spec.lane_count;
  const int T = spec.horizon;
  const int tau = spec.flush_slots;
  const detail::StateSpace space(L, tau);
  const int ages = space.ages();

  std::vector<int> start_digits = {init.y0_fwd, init.y0_rev};
  for (int k = -ages; k <= -1; ++k) start_digits.push_back(init.history_at(k, tau));
  const int start = space.find(start_digits);
  if (start < 0) {
    sol.solve_millis = detail::millis_since(started);
    return sol;
  }

  constexpr RankKey kUnreachable{std::numeric_limits<std::int64_t>::max(), 0, 0};
  const int n = space.size();
  // cost_to_go[t][s]: best key from slot t onward given state s after slot t-1.
  std::vector<std::vector<RankKey>> cost_to_go(T + 1, std::vector<RankKey>(n, kUnreachable));
  std::fill(cost_to_go[T].begin(), cost_to_go[T].end(), RankKey{});

  // Transition: returns successor index or -1 if the lane budget is broken.
  std::vector<int> next(2 + ages);
  auto step = [&](const std::vector<int>& s, int yf, int yr, int& vf, int& vr) {
    vf = std::max(0, s[0] - yf);
    vr = std::max(0, s[1] - yr);
    int flushing = 0;
    for (int i = 0; i < ages; ++i) flushing += s[2 + i];
    if (tau >= 1) flushing += vf + vr;
    if (yf + yr + flushing > L) return -1;
    next[0] = yf;
    next[1] = yr;
    for (int i = 0; i + 1 < ages; ++i) next[2 + i] = s[3 + i];
    if (ages > 0) next[1 + ages] = vf + vr;
    return space.find(next);
  };

  for (int t = T - 1; t >= 0; --t) {
    const auto& after = cost_to_go[t + 1];
    auto& here = cost_to_go[t];
    for (int si = 0; si < n; ++si) {
      const auto& s = space.state(si);
      RankKey best = kUnreachable;
      for (int yf = 0; yf <= L; ++yf) {
        for (int yr = 0; yf + yr <= L; ++yr) {
          int vf = 0, vr = 0;
          const int ni = step(s, yf, yr, vf, vr);
          if (ni < 0 || after[ni].units == kUnreachable.units) continue;
          const RankKey k = detail::stage_key(demand.fwd[t], demand.rev[t], yf, yr, vf, vr,
                                              spec.lane_throughput, weights) +
                            after[ni];
          if (k < best) best = k;
        }
      }
      here[si] = best;
    }
  }

  if (cost_to_go[0][start].units == kUnreachable.units) {
    sol.solve_millis = detail::millis_since(started);
    return sol;
  }

  // Forward pass picks the smallest (yf, yr) among optimal continuations.
  sol.schedule = LaneSchedule::constant(T, 0, 0);
  int cur = start;
  for (int t = 0; t < T; ++t) {
    const auto& s = space.state(cur);
    bool found = false;
    for (int yf = 0; yf <= L && !found; ++yf) {
      for (int yr = 0; yf + yr <= L && !found; ++yr) {
        int vf = 0, vr = 0;
        const int ni = step(s, yf, yr, vf, vr);
        if (ni < 0 || cost_to_go[t + 1][ni].units == kUnreachable.units) continue;
        const RankKey k =
            detail::stage_key(demand.fwd[t], demand.rev[t], yf, yr, vf, vr, spec.lane_throughput, weights) +
            cost_to_go[t + 1][ni];
        if (k == cost_to_go[t][cur]) {
          sol.schedule.fwd[t] = yf;
          sol.schedule.rev[t] = yr;
          cur = ni;
          found = true;
        }
      }
    }
    if (!found) throw std::logic_error("dynamic program reconstruction lost the optimal path");
  }

  detail::finish_solution(sol, spec, demand, weights, init);
  if (sol.objective_units != cost_to_go[0][start].units)
    throw std::logic_error("dynamic program objective disagrees with recomputed objective");
  sol.solve_millis = detail::millis_since(started);
  return sol;
}

/// Enumerates every schedule and keeps the best under the same ordering as
/// the dynamic program. Intended as an oracle for small instances.
inline Solution brute_force_solve(const CorridorSpec& spec, const DemandSeries& demand,
                                  const CostWeights& weights, const InitialState& init,
                                  std::uint64_t bound = SolverConfig{}.brute_force_bound) {
  const auto started = std::chrono::steady_clock::now();
  spec.validate();
  demand.validate(spec);
  weights.validate();

  const int L = spec.lane_count;
  const int T = spec.horizon;
  const int tau = spec.flush_slots;
  const auto per_slot = static_cast<std::uint64_t>(L + 1) * static_cast<std::uint64_t>(L + 1);
  std::uint64_t raw = 1;
  for (int t = 0; t < T; ++t) {
    if (raw > bound / per_slot) throw SizeBoundError("brute force refused: instance exceeds enumeration bound");
    raw *= per_slot;
  }

  std::vector<int> yf(T), yr(T), v(T);
  std::optional<detail::RankKey> best_key;
  LaneSchedule best;

  // Eq. budget at slot t given the prefix; flush window reads history for k < 0.
  auto flushing = [&](int t) {
    int total = 0;
    for (int k = t - tau + 1; k <= t; ++k) total += k < 0 ? init.history_at(k, tau) : v[k];
    return total;
  };

  auto recurse = [&](auto&& self, int t, detail::RankKey acc) -> void {
    if (t == T) {
      if (!best_key || acc < *best_key) {
        best_key = acc;
        best = LaneSchedule(yf, yr);
      }
      return;
    }
    const int pf = t == 0 ? init.y0_fwd : yf[t - 1];
    const int pr = t == 0 ? init.y0_rev : yr[t - 1];
    for (int f = 0; f <= L; ++f) {
      for (int r = 0; r <= L; ++r) {
        const int vf = std::max(0, pf - f);
        const int vr = std::max(0, pr - r);
        yf[t] = f;
        yr[t] = r;
        v[t] = vf + vr;
        if (f + r + flushing(t) > L) continue;
        self(self, t + 1,
             acc + detail::stage_key(demand.fwd[t], demand.rev[t], f, r, vf, vr, spec.lane_throughput, weights));
      }
    }
  };
  recurse(recurse, 0, detail::RankKey{});

  Solution sol;
  if (best_key) {
    sol.schedule = best;
    detail::finish_solution(sol, spec, demand, weights, init);
    if (!check_feasibility(sol.schedule, spec, init).empty())
      throw std::logic_error("brute force produced an infeasible schedule");
  }
  sol.solve_millis = detail::millis_since(started);
  return sol;
}

inline Solution solve_dynamic(const CorridorSpec& spec, const DemandSeries& demand, const CostWeights& weights,
                              const InitialState& init, const SolverConfig& config = {}) {
  if (config.method == SolverMethod::brute_force)
    return brute_force_solve(spec, demand, weights, init, config.brute_force_bound);
  return solve_dynamic_program(spec, demand, weights, init);
}

/// Writes the integer program in CPLEX LP format for external solvers.
///
/// Variables per slot t and direction d in {f, r}: y_d_t, v_d_t, a_d_t
/// (general integers) and s_d_t, w_d_t (continuous, >= 0).
inline void write_lp(std::ostream& os, const CorridorSpec& spec, const DemandSeries& demand,
                     const CostWeights& weights, const InitialState& init) {
  spec.validate();
  demand.validate(spec);
  weights.validate();
  const int T = spec.horizon;
  const int tau = spec.flush_slots;
  const std::array<char, 2> dirs = {'f', 'r'};
  auto var = [](const char* kind, char d, int t) { return std::string(kind) + "_" + d + "_" + std::to_string(t); };

  os << "\\ Directional lane allocation, corridor " << spec.node_i << "-" << spec.node_j << "\n";
  os << "Minimize\n obj:";
  for (int t = 0; t < T; ++t) {
    for (char d : dirs) {
      os << " + " << format_number(weights.c_unserved) << " " << var("s", d, t);
      os << " + " << format_number(weights.c_switch) << " " << var("v", d, t);
      os << " + " << format_number(weights.c_waste) << " " << var("w", d, t);
    }
    os << "\n";
  }
  os << "Subject To\n";
  for (int t = 0; t < T; ++t) {
    int history = 0;
    os << " cap_" << t << ": " << var("y", 'f', t) << " + " << var("y", 'r', t);
    for (int k = t - tau + 1; k <= t; ++k) {
      if (k < 0) {
        history += init.history_at(k, tau);
      } else {
        os << " + " << var("v", 'f', k) << " + " << var("v", 'r', k);
      }
    }
    os << " <= " << spec.lane_count - history << "\n";
  }
  for (int t = 0; t < T; ++t) {
    for (char d : dirs) {
      const int y0 = d == 'f' ? init.y0_fwd : init.y0_rev;
      os << " evo_" << d << "_" << t << ": " << var("y", d, t);
      if (t > 0) os << " - " << var("y", d, t - 1);
      os << " + " << var("v", d, t) << " - " << var("a", d, t) << " = " << (t == 0 ? y0 : 0) << "\n";
    }
  }
  for (int t = 0; t < T; ++t) {
    for (char d : dirs) {
      const int f = d == 'f' ? demand.fwd[t] : demand.rev[t];
      os << " bal_" << d << "_" << t << ": " << spec.lane_throughput << " " << var("y", d, t) << " - "
         << var("w", d, t) << " + " << var("s", d, t) << " = " << f << "\n";
    }
  }
  os << "Bounds\n";
  for (int t = 0; t < T; ++t) {
    for (char d : dirs) {
      os << " 0 <= " << var("y", d, t) << " <= " << spec.lane_count << "\n";
      os << " 0 <= " << var("v", d, t) << " <= " << spec.lane_count << "\n";
      os << " 0 <= " << var("a", d, t) << " <= " << spec.lane_count << "\n";
      os << " " << var("s", d, t) << " >= 0\n";
      os << " " << var("w", d, t) << " >= 0\n";
    }
  }
  os << "General\n";
  for (int t = 0; t < T; ++t)
    for (char d : dirs) os << " " << var("y", d, t) << " " << var("v", d, t) << " " << var("a", d, t) << "\n";
  os << "End\n";
}

inline void export_lp(const CorridorSpec& spec, const DemandSeries& demand, const CostWeights& weights,
                      const InitialState& init, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open LP output file: " + path);
  write_lp(out, spec, demand, weights, init);
  if (!out) throw IoError("failed writing LP file: " + path);
}

}  // namespace uamlanes
