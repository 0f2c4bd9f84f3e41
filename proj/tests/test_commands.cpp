#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "uamlanes/commands.hpp"

using namespace uamlanes;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("uamlanes_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return csv::read_text(p.string()); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UAMLANES_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(CmdGenTrips, ZeroPopulationWritesHeaderOnly) {
  const auto dir = scratch("gen0");
  RunConfig c;
  c.synthetic.population = 0;
  cmd_gen_trips(c, (dir / "trips.csv").string());
  EXPECT_EQ(slurp(dir / "trips.csv"), std::string(kTripCsvHeader) + "\n");
}

TEST(CmdGenTrips, ReferenceTripsReproduceGoldenDemand) {
  const auto dir = scratch("gen_ref");
  const RunConfig c;
  cmd_gen_trips(c, (dir / "trips.csv").string());
  cmd_run(c, (dir / "trips.csv").string(), Policy::fixed5050, (dir / "run").string());
  EXPECT_EQ(slurp(dir / "run" / "demand.csv"), slurp(fs::path(UAMLANES_GOLDEN_DIR) / "reference_demand.csv"));
}

TEST(CmdRun, FixedSplitScheduleFile) {
  const auto dir = scratch("run5050");
  const auto run = cmd_run(RunConfig{}, "", Policy::fixed5050, dir.string());
  const auto table = csv::read_file((dir / "schedule.csv").string());
  ASSERT_EQ(table.rows.size(), 120u);
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.fields[2], "3");
    EXPECT_EQ(row.fields[3], "3");
  }
  EXPECT_FALSE(run.solution.has_value());
  EXPECT_FALSE(fs::exists(dir / "timing.json"));
  for (const char* f : {"demand.csv", "schedule.json", "evaluation.json", "evaluation.csv", "outcomes.csv",
                        "travel_impact.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
}

TEST(CmdRun, DynamicOnZeroDemand) {
  const auto dir = scratch("run_zero");
  write_text(dir / "trips.csv", std::string(kTripCsvHeader) + "\n");
  const auto run = cmd_run(RunConfig{}, (dir / "trips.csv").string(), Policy::dynamic, (dir / "out").string());
  EXPECT_EQ(run.schedule, LaneSchedule::constant(120, 0, 0));
  const auto eval = json::parse(slurp(dir / "out" / "evaluation.json"));
  EXPECT_EQ(eval["objective_z"], 0.0);
}

TEST(CmdRun, DynamicReferenceRecordsSolveTime) {
  const auto dir = scratch("run_dyn");
  const auto run = cmd_run(RunConfig{}, "", Policy::dynamic, dir.string());
  ASSERT_TRUE(run.solution.has_value());
  const auto timing = json::parse(slurp(dir / "timing.json"));
  EXPECT_LT(timing["solve_millis"].get<double>(), 1000.0);
  EXPECT_TRUE(run.report.violations.empty());
}

TEST(CmdRun, RejectionsMatchShortfallLoads) {
  const RunConfig c;
  const auto trips = obtain_trips(c, "");
  const auto dispatched = build_demand(trips, c.scenario.dispatch, c.scenario.corridor);
  const auto run = run_policy(Policy::dynamic, c.scenario, trips, dispatched);
  long long expected = 0;
  for (const auto& rec : run.report.slots) {
    const auto& aircraft = dispatched.provenance.at(rec.dir)[rec.slot];
    const auto k = static_cast<std::size_t>(std::ceil(rec.shortfall));
    for (std::size_t i = aircraft.size() - k; i < aircraft.size(); ++i) expected += aircraft[i].size();
  }
  EXPECT_EQ(run.impact.rejected_capacity, expected);
  EXPECT_GT(expected, 0);
}

TEST(CmdCompare, MatchesGoldenTable) {
  const auto dir = scratch("compare");
  const auto runs = cmd_compare(RunConfig{}, "", dir.string());
  EXPECT_EQ(runs.size(), 4u);
  EXPECT_EQ(slurp(dir / "compare.csv"), slurp(fs::path(UAMLANES_GOLDEN_DIR) / "reference_compare.csv"));
}

TEST(CmdExportLp, WritesFileAndReturnsOptimum) {
  const auto dir = scratch("lp");
  RunConfig c;
  c.synthetic.population = 0;
  const auto sol = cmd_export_lp(c, "", (dir / "model.lp").string());
  EXPECT_EQ(sol.objective_z, 0.0);
  EXPECT_NE(slurp(dir / "model.lp").find("Subject To"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  const std::string out = " --out-dir " + (dir / "o").string();
  EXPECT_EQ(run_cli("run --policy fixed5050" + out), 0);
  EXPECT_EQ(run_cli("run --policy sideways" + out), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);

  write_text(dir / "bad.json", R"({"corridor": {"lane_count": -1}})");
  EXPECT_EQ(run_cli("run --config " + (dir / "bad.json").string() + out), 2);
  write_text(dir / "typo.json", R"({"dispatch": {"capture": 0.3}})");
  EXPECT_EQ(run_cli("compare --config " + (dir / "typo.json").string() + out), 2);

  write_text(dir / "bad_trips.csv", std::string(kTripCsvHeader) + "\nT1,CC-1,SV-1,fwd,452,-5,11,13,18\n");
  EXPECT_EQ(run_cli("run --trips " + (dir / "bad_trips.csv").string() + out), 2);
  EXPECT_EQ(run_cli("run --trips " + (dir / "missing.csv").string() + out), 4);
  EXPECT_EQ(run_cli("run --config " + (dir / "missing.json").string() + out), 4);

  // One lane still flushing from slot -1 plus two active lanes: nothing fits at slot 0.
  write_text(dir / "stuck.json", R"({"corridor": {"lane_count": 2},
    "initial": {"y0_fwd": 2, "y0_rev": 0, "v_history_fwd": [0, 1], "v_history_rev": [0, 0]}})");
  EXPECT_EQ(run_cli("run --config " + (dir / "stuck.json").string() + out), 3);
  EXPECT_EQ(run_cli("run --policy greedy --config " + (dir / "stuck.json").string() + out), 0);
  write_text(dir / "tight.json", R"({"corridor": {"lane_count": 2},
    "initial": {"y0_fwd": 1, "y0_rev": 0, "v_history_fwd": [0, 1], "v_history_rev": [0, 0]}})");
  EXPECT_EQ(run_cli("run --config " + (dir / "tight.json").string() + out), 0);

  EXPECT_EQ(run_cli("run --seed abc" + out), 2);
}

TEST(Cli, SeedPrecedence) {
  const auto dir = scratch("cli_seed");
  RunConfig c;
  c.synthetic.population = 50;
  write_text(dir / "c.json", dump(to_json(c)));
  const std::string cfg = " --config " + (dir / "c.json").string();
  ASSERT_EQ(run_cli("gen-trips" + cfg + " --seed 9 --out " + (dir / "flag.csv").string()), 0);
  ASSERT_EQ(run_cli("gen-trips" + cfg + " --out " + (dir / "conf.csv").string()), 0);
  ASSERT_EQ(::setenv("UAMLANES_SEED", "9", 1), 0);
  ASSERT_EQ(run_cli("gen-trips" + cfg + " --out " + (dir / "env.csv").string()), 0);
  ASSERT_EQ(run_cli("gen-trips" + cfg + " --seed 10 --out " + (dir / "both.csv").string()), 0);
  ::unsetenv("UAMLANES_SEED");

  const auto seed9 = trips_to_csv(generate_synthetic_trips(c.synthetic, 9, c.scenario.corridor));
  const auto seed10 = trips_to_csv(generate_synthetic_trips(c.synthetic, 10, c.scenario.corridor));
  const auto seed_default = trips_to_csv(generate_synthetic_trips(c.synthetic, RunConfig{}.seed, c.scenario.corridor));
  EXPECT_EQ(slurp(dir / "flag.csv"), seed9);
  EXPECT_EQ(slurp(dir / "conf.csv"), seed_default);
  EXPECT_EQ(slurp(dir / "env.csv"), seed9);
  EXPECT_EQ(slurp(dir / "both.csv"), seed10);
}

TEST(Cli, OutDirFromEnvironment) {
  const auto dir = scratch("cli_env");
  RunConfig c;
  c.synthetic.population = 30;
  write_text(dir / "c.json", dump(to_json(c)));
  ASSERT_EQ(::setenv("UAMLANES_OUT_DIR", (dir / "from_env").c_str(), 1), 0);
  EXPECT_EQ(run_cli("run --policy greedy --config " + (dir / "c.json").string()), 0);
  ::unsetenv("UAMLANES_OUT_DIR");
  EXPECT_TRUE(fs::exists(dir / "from_env" / "evaluation.json"));
}
