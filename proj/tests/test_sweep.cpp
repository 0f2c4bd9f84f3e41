#include <gtest/gtest.h>

#include "uamlanes/config.hpp"
#include "uamlanes/sweep.hpp"

using namespace uamlanes;

namespace {

const TripCollection& reference_trips() {
  static const TripCollection trips =
      generate_synthetic_trips(SyntheticProfile{}, RunConfig{}.seed, CorridorSpec{});
  return trips;
}

}  // namespace

TEST(Sweep, ZeroCaptureCell) {
  SweepGrid grid{{6}, {0.0}};
  const auto rows = run_sweep(grid, reference_trips(), Scenario{});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].throughput_passengers, 0);
  EXPECT_EQ(rows[0].total_shortfall, 0.0);
  EXPECT_EQ(rows[0].person_hours_saved, 0.0);
  EXPECT_EQ(rows[0].objective_z, 0.0);
}

TEST(Sweep, InvalidGridRejected) {
  EXPECT_THROW(run_sweep(SweepGrid{{}, {0.3}}, reference_trips(), Scenario{}), ConfigError);
  EXPECT_THROW(run_sweep(SweepGrid{{0}, {0.3}}, reference_trips(), Scenario{}), ConfigError);
  EXPECT_THROW(run_sweep(SweepGrid{{2}, {1.3}}, reference_trips(), Scenario{}), ConfigError);
}

TEST(Sweep, CellErrorsNameTheCell) {
  Scenario sc;
  sc.initial.y0_fwd = 3;
  sc.initial.y0_rev = 3;
  try {
    run_sweep(SweepGrid{{2}, {0.1}}, reference_trips(), sc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("L=2"), std::string::npos) << e.what();
  }
}

TEST(Sweep, ReferenceGridShape) {
  const auto rows = run_sweep(SweepGrid{}, reference_trips(), Scenario{}, 2);
  ASSERT_EQ(rows.size(), 40u);
  const SweepGrid grid;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].lane_count, grid.lane_counts[i / 8]);
    EXPECT_EQ(rows[i].capture_rate, grid.capture_rates[i % 8]);
  }
  // Along L at fixed capture rate: shortfall never rises, throughput never falls.
  for (std::size_t p = 0; p < 8; ++p) {
    for (std::size_t l = 1; l < 5; ++l) {
      const auto& lo = rows[(l - 1) * 8 + p];
      const auto& hi = rows[l * 8 + p];
      EXPECT_LE(hi.total_shortfall, lo.total_shortfall) << "p_c=" << hi.capture_rate << " L=" << hi.lane_count;
      EXPECT_GE(hi.throughput_passengers, lo.throughput_passengers) << "p_c=" << hi.capture_rate;
      EXPECT_LE(hi.objective_z, lo.objective_z);
    }
  }
  const std::string text = sweep_to_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 41);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SweepGrid grid{{2, 6}, {0.2, 0.5}};
  auto a = run_sweep(grid, reference_trips(), Scenario{}, 1);
  auto b = run_sweep(grid, reference_trips(), Scenario{}, 4);
  for (auto* rows : {&a, &b})
    for (auto& r : *rows) r.solve_millis = 0.0;
  EXPECT_EQ(sweep_to_csv(a), sweep_to_csv(b));
}
