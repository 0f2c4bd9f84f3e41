#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "uamlanes/config.hpp"
#include "uamlanes/io.hpp"

using namespace uamlanes;

namespace {

csv::Table table_of(const std::string& text) {
  std::istringstream in(text);
  return csv::parse(in);
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> x(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = x(rng);
    EXPECT_EQ(*parse_number(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_FALSE(parse_number("1.5x"));
  EXPECT_FALSE(parse_number(""));
}

TEST(Format, Clock) {
  EXPECT_EQ(format_clock(240.0), "04:00");
  EXPECT_EQ(format_clock(1440.0), "24:00");
  EXPECT_EQ(*parse_clock("16:15"), 975.0);
  EXPECT_EQ(*parse_clock("24:00"), 1440.0);
  EXPECT_FALSE(parse_clock("7:5"));
  EXPECT_FALSE(parse_clock("12:60"));
  for (int m = 0; m <= 1440; m += 10) EXPECT_EQ(*parse_clock(format_clock(m)), m);
}

TEST(Csv, RejectsQuotesAndRaggedRows) {
  EXPECT_THROW(table_of("a,b\n\"x\",1\n"), SchemaError);
  EXPECT_THROW(table_of("a,b\n1\n"), SchemaError);
  EXPECT_THROW(table_of("a,b\n1,2\n").column("c"), SchemaError);
  const auto t = table_of("a,b\r\n1,2\r\n\r\n3,4\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1].line, 4);
}

TEST(SeriesIo, DemandCsvRoundTrip) {
  CorridorSpec spec;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> f(0, 60);
  DemandSeries d = DemandSeries::zeros(spec.horizon);
  for (int t = 0; t < spec.horizon; ++t) {
    d.fwd[t] = f(rng);
    d.rev[t] = f(rng);
  }
  EXPECT_EQ(demand_from_csv(table_of(demand_to_csv(d, spec)), spec), d);
  const auto [back, back_spec] = demand_from_json(json::parse(dump(demand_to_json(d, spec))));
  EXPECT_EQ(back, d);
  EXPECT_EQ(to_json(back_spec), to_json(spec));
}

TEST(SeriesIo, ScheduleRoundTripAndValidation) {
  CorridorSpec spec;
  spec.horizon = 3;
  spec.lane_count = 4;
  const LaneSchedule s({1, 2, 3}, {3, 2, 0});
  EXPECT_EQ(schedule_from_csv(table_of(schedule_to_csv(s, spec)), spec), s);
  EXPECT_EQ(schedule_from_json(schedule_to_json(s, spec)).first, s);
  EXPECT_THROW(schedule_from_csv(table_of("slot,clock_time,fwd,rev\n0,04:00,1,1\n"), spec), DimensionError);
  EXPECT_THROW(schedule_from_csv(table_of("slot,clock_time,fwd,rev\n0,04:00,3,3\n1,04:10,0,0\n2,04:20,0,0\n"), spec),
               ConfigError);
  EXPECT_THROW(schedule_from_json(demand_to_json(DemandSeries::zeros(3), spec)), SchemaError);
  json broken = schedule_to_json(s, spec);
  broken["fwd"] = "nope";
  EXPECT_THROW(schedule_from_json(broken), SchemaError);
}

TEST(Config, DefaultsRoundTrip) {
  const RunConfig c;
  const RunConfig back = config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(Config, PartialSectionsKeepDefaults) {
  const auto c = config_from_json(json::parse(R"({"corridor": {"lane_count": 8}, "seed": 5})"));
  EXPECT_EQ(c.scenario.corridor.lane_count, 8);
  EXPECT_EQ(c.scenario.corridor.lane_throughput, 6);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.scenario.dispatch.capture_rate, 0.3);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_THROW(config_from_json(json::parse(R"({"corridr": {}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"corridor": {"lanes": 3}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"synthetic": {"drive": {"median": 3}}})")), ConfigError);
}

TEST(Config, BadValuesRejected) {
  EXPECT_THROW(config_from_json(json::parse(R"({"corridor": {"lane_count": "six"}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"corridor": {"horizon_start": "4am"}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"dispatch": {"min_load": 5}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"weights": {"c_waste": -1}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"solver": {"method": "simplex"}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"sweep": {"lane_counts": []}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"initial": {"y0_fwd": 9}})")), ConfigError);
}

TEST(Config, HashIgnoresOutputDirOnly) {
  RunConfig a;
  RunConfig b;
  b.output_dir = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = a.seed + 1;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Config, ReferenceFileIsTheDefault) {
  const RunConfig file = load_config(UAMLANES_CONFIG_DIR "/reference.json");
  EXPECT_EQ(to_json(file), to_json(RunConfig{}));
}

TEST(Config, MalformedFile) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}
