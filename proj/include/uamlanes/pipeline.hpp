#pragma once

// End-to-end scenario wiring: demand realization -> policy schedule ->
// evaluation -> passenger attribution -> travel impact.

#include <optional>
#include <string>
#include <vector>

#include "uamlanes/corridor.hpp"
#include "uamlanes/dispatch.hpp"
#include "uamlanes/evaluator.hpp"
#include "uamlanes/policies.hpp"
#include "uamlanes/solver.hpp"
#include "uamlanes/trips.hpp"

namespace uamlanes {

struct Scenario {
  CorridorSpec corridor;
  DispatchParams dispatch;
  CostWeights weights;
  InitialState initial;
  BlockSchedule blocks = BlockSchedule::reference();
  SolverConfig solver;

  void validate() const {
    corridor.validate();
    dispatch.validate();
    weights.validate();
    initial.validate(corridor);
  }
};

struct PolicyRun {
  Policy policy = Policy::dynamic;
  LaneSchedule schedule;
  EvaluationReport report;
  std::vector<PassengerOutcome> outcomes;
  TravelImpact impact;
  std::optional<Solution> solution;  // dynamic policy only
};

/// Lane schedule a policy produces for the given demand.
inline LaneSchedule policy_schedule(Policy policy, const Scenario& sc, const DemandSeries& demand,
                                    std::optional<Solution>* solution_out = nullptr) {
  switch (policy) {
    case Policy::fixed5050: return fixed_split_schedule(sc.corridor);
    case Policy::fixed_asym: return fixed_asymmetric_schedule(sc.corridor, sc.blocks);
    case Policy::greedy: return greedy_reactive_schedule(sc.corridor, demand);
    case Policy::dynamic: break;
  }
  Solution sol = solve_dynamic(sc.corridor, demand, sc.weights, sc.initial, sc.solver);
  if (sol.status != SolveStatus::optimal)
    throw InfeasibleError("no feasible lane schedule: initial state ties up " +
                          std::to_string(sc.initial.budget_at_start(sc.corridor.flush_slots)) + " lanes entering slot 0, corridor has " +
                          std::to_string(sc.corridor.lane_count));
  LaneSchedule schedule = sol.schedule;
  if (solution_out) *solution_out = std::move(sol);
  return schedule;
}

inline PolicyRun run_policy(Policy policy, const Scenario& sc, const TripCollection& trips,
                            const DispatchResult& dispatched) {
  PolicyRun run;
  run.policy = policy;
  run.schedule = policy_schedule(policy, sc, dispatched.demand, &run.solution);
  run.report = evaluate(run.schedule, dispatched.demand, sc.corridor, sc.initial, sc.weights, true);
  run.outcomes = attribute_rejections(run.report, dispatched.outcomes, dispatched.provenance);
  run.impact = travel_impact(run.outcomes, trips, sc.corridor);
  return run;
}

}  // namespace uamlanes
