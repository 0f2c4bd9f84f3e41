#pragma once

// Independent reference implementations for the test suites. Nothing here
// calls into the solver or the objective code under test; only plain data
// types are shared.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "uamlanes/corridor.hpp"

namespace oracle {

using uamlanes::CorridorSpec;
using uamlanes::CostWeights;
using uamlanes::DemandSeries;
using uamlanes::InitialState;
using uamlanes::LaneSchedule;

/// Objective in micro-units, straight from the definitions:
/// shortfall = max(0, F - K y), waste = max(0, K y - F), v = max(0, y_prev - y).
inline std::int64_t recount_units(const LaneSchedule& y, const DemandSeries& F, const CostWeights& w,
                                    const CorridorSpec& spec, const InitialState& init) {
  const std::int64_t cu = std::llround(w.c_unserved * 1e6);
  const std::int64_t cs = std::llround(w.c_switch * 1e6);
  const std::int64_t cw = std::llround(w.c_waste * 1e6);
  std::int64_t total = 0;
  int pf = init.y0_fwd, pr = init.y0_rev;
  for (int t = 0; t < spec.horizon; ++t) {
    const std::int64_t capf = std::int64_t{spec.lane_throughput} * y.fwd[t];
    const std::int64_t capr = std::int64_t{spec.lane_throughput} * y.rev[t];
    total += cu * (std::max<std::int64_t>(0, F.fwd[t] - capf) + std::max<std::int64_t>(0, F.rev[t] - capr));
    total += cw * (std::max<std::int64_t>(0, capf - F.fwd[t]) + std::max<std::int64_t>(0, capr - F.rev[t]));
    total += cs * (std::max(0, pf - y.fwd[t]) + std::max(0, pr - y.rev[t]));
    pf = y.fwd[t];
    pr = y.rev[t];
  }
  return total;
}

/// Lane budget: y_f + y_r + deactivations in slots t-tau+1..t (history for
/// negative slots, read as v_history[k + tau]) never exceeds L.
inline bool budget_feasible(const LaneSchedule& y, const CorridorSpec& spec, const InitialState& init) {
  const int tau = spec.flush_slots;
  std::vector<int> v(spec.horizon);
  int pf = init.y0_fwd, pr = init.y0_rev;
  for (int t = 0; t < spec.horizon; ++t) {
    v[t] = std::max(0, pf - y.fwd[t]) + std::max(0, pr - y.rev[t]);
    pf = y.fwd[t];
    pr = y.rev[t];
  }
  auto hist = [&](int k) {
    int h = 0;
    const int idx = k + tau;
    if (idx >= 0 && idx < static_cast<int>(init.v_history_fwd.size())) h += init.v_history_fwd[idx];
    if (idx >= 0 && idx < static_cast<int>(init.v_history_rev.size())) h += init.v_history_rev[idx];
    return h;
  };
  for (int t = 0; t < spec.horizon; ++t) {
    int used = y.fwd[t] + y.rev[t];
    for (int k = t - tau + 1; k <= t; ++k) used += k < 0 ? hist(k) : v[k];
    if (used > spec.lane_count) return false;
  }
  return true;
}

struct Enumerated {
  std::optional<std::int64_t> best_units;
  std::size_t feasible = 0;
};

/// Exhaustive optimum over every schedule in {0..L}^(2T), odometer order,
/// no pruning. Only for tiny instances.
inline Enumerated enumerate_optimum(const CorridorSpec& spec, const DemandSeries& F, const CostWeights& w,
                                    const InitialState& init) {
  const int n = 2 * spec.horizon;
  std::vector<int> digits(n, 0);
  Enumerated out;
  for (;;) {
    LaneSchedule y(std::vector<int>(digits.begin(), digits.begin() + spec.horizon),
                   std::vector<int>(digits.begin() + spec.horizon, digits.end()));
    if (budget_feasible(y, spec, init)) {
      ++out.feasible;
      const auto units = recount_units(y, F, w, spec, init);
      if (!out.best_units || units < *out.best_units) out.best_units = units;
    }
    int i = 0;
    while (i < n && ++digits[i] > spec.lane_count) digits[i++] = 0;
    if (i == n) break;
  }
  return out;
}

/// Random small instance for oracle cross-checks.
struct Instance {
  CorridorSpec spec;
  DemandSeries demand;
  CostWeights weights;
  InitialState init;
};

inline Instance random_instance(std::mt19937_64& rng, int max_T, int max_L, int max_tau, int max_K,
                                bool random_weights = true) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Instance in;
  in.spec.horizon = uni(1, max_T);
  in.spec.lane_count = uni(1, max_L);
  in.spec.flush_slots = uni(0, max_tau);
  in.spec.lane_throughput = uni(1, max_K);
  in.demand = DemandSeries::zeros(in.spec.horizon);
  const int fmax = in.spec.lane_count * in.spec.lane_throughput + 2;
  for (int t = 0; t < in.spec.horizon; ++t) {
    in.demand.fwd[t] = uni(0, fmax);
    in.demand.rev[t] = uni(0, fmax);
  }
  if (random_weights) {
    // Weights on a 0.01 grid keep the micro-unit scale exact.
    in.weights.c_unserved = uni(0, 200) / 100.0;
    in.weights.c_switch = uni(0, 100) / 100.0;
    in.weights.c_waste = uni(0, 20) / 100.0;
  }
  // Random start state that fits inside the lane budget.
  const int L = in.spec.lane_count;
  const int tau = in.spec.flush_slots;
  int left = L;
  auto take = [&](int cap) {
    const int x = uni(0, std::min(cap, left));
    left -= x;
    return x;
  };
  in.init.y0_fwd = take(L);
  in.init.y0_rev = take(L);
  if (tau > 0 && uni(0, 1) == 1) {
    in.init.v_history_fwd.assign(tau, 0);
    in.init.v_history_rev.assign(tau, 0);
    // Only the last tau-1 history slots still occupy flush capacity at t=0.
    for (int i = 1; i < tau; ++i) {
      in.init.v_history_fwd[i] = take(1);
      in.init.v_history_rev[i] = take(1);
    }
  }
  return in;
}

}  // namespace oracle
