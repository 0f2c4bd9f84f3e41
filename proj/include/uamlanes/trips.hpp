#pragma once

// Disaggregate door-to-door trips: CSV ingestion and a seeded synthetic
// population with a two-peak commute profile per direction.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "uamlanes/corridor.hpp"
#include "uamlanes/csv.hpp"
#include "uamlanes/format.hpp"

namespace uamlanes {

struct TripRecord {
  std::string trip_id;
  std::string origin_zone;
  std::string dest_zone;
  Direction direction = Direction::fwd;
  double depart_minutes = 0.0;
  double drive_minutes = 0.0;
  double fm_minutes = 0.0;
  double lm_minutes = 0.0;
  double flight_minutes = 0.0;

  /// Door-to-door minutes saved by flying the middle mile (before any wait).
  double uam_advantage() const { return drive_minutes - (fm_minutes + flight_minutes + lm_minutes); }

  bool operator==(const TripRecord&) const = default;
};

/// Zone -> vertiport cluster. Zones without an explicit entry map to the
/// prefix before their first '-' ("CC-014" -> "CC").
struct ZoneMap {
  std::map<std::string, std::string> explicit_clusters;

  std::string cluster_of(const std::string& zone) const {
    if (auto it = explicit_clusters.find(zone); it != explicit_clusters.end()) return it->second;
    const auto dash = zone.find('-');
    return dash == std::string::npos ? std::string{} : zone.substr(0, dash);
  }

  bool operator==(const ZoneMap&) const = default;
};

struct TripCollection {
  std::vector<TripRecord> trips;
  ZoneMap zones;

  std::size_t size() const { return trips.size(); }
  bool empty() const { return trips.empty(); }

  bool operator==(const TripCollection&) const = default;
};

inline const char* kTripCsvHeader =
    "trip_id,origin_zone,dest_zone,direction,depart_minutes,drive_minutes,fm_minutes,lm_minutes,flight_minutes";

/// Direction implied by the zones, or nullopt when a zone is unknown or both
/// ends fall in the same cluster.
inline std::optional<Direction> direction_of(const std::string& origin, const std::string& dest,
                                             const ZoneMap& zones, const CorridorSpec& spec) {
  const auto o = zones.cluster_of(origin);
  const auto d = zones.cluster_of(dest);
  if (o == spec.node_i && d == spec.node_j) return Direction::fwd;
  if (o == spec.node_j && d == spec.node_i) return Direction::rev;
  return std::nullopt;
}

inline std::string trips_to_csv(const TripCollection& trips) {
  std::string out = std::string(kTripCsvHeader) + "\n";
  for (const auto& t : trips.trips)
    csv::append_row(out, t.trip_id, t.origin_zone, t.dest_zone, std::string(to_string(t.direction)),
                    format_number(t.depart_minutes), format_number(t.drive_minutes), format_number(t.fm_minutes),
                    format_number(t.lm_minutes), format_number(t.flight_minutes));
  return out;
}

inline TripCollection trips_from_table(const csv::Table& table, const CorridorSpec& spec, const ZoneMap& zones = {}) {
  const auto expected = csv::split(kTripCsvHeader);
  for (const auto& name : expected) table.column(name);

  TripCollection out;
  out.zones = zones;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    auto fail = [&](const std::string& why) -> SchemaError {
      return SchemaError("trip CSV line " + std::to_string(row.line) + ": " + why);
    };
    auto field = [&](const char* name) -> const std::string& { return row.fields[table.column(name)]; };
    auto number = [&](const char* name) {
      const auto v = parse_number(field(name));
      if (!v) throw fail(std::string("non-numeric ") + name);
      if (*v < 0.0) throw fail(std::string("negative ") + name);
      return *v;
    };

    TripRecord t;
    t.trip_id = field("trip_id");
    if (t.trip_id.empty()) throw fail("empty trip_id");
    if (!seen.insert(t.trip_id).second) throw fail("duplicate trip_id " + t.trip_id);
    t.origin_zone = field("origin_zone");
    t.dest_zone = field("dest_zone");
    const auto& dir = field("direction");
    if (dir == "fwd") {
      t.direction = Direction::fwd;
    } else if (dir == "rev") {
      t.direction = Direction::rev;
    } else {
      throw fail("direction must be fwd or rev");
    }
    t.depart_minutes = number("depart_minutes");
    t.drive_minutes = number("drive_minutes");
    t.fm_minutes = number("fm_minutes");
    t.lm_minutes = number("lm_minutes");
    t.flight_minutes = number("flight_minutes");
    if (!(t.drive_minutes > 0.0)) throw fail("drive_minutes must be positive");

    const auto implied = direction_of(t.origin_zone, t.dest_zone, zones, spec);
    if (!implied) throw fail("unknown zone or zone pair " + t.origin_zone + " -> " + t.dest_zone);
    if (*implied != t.direction) throw fail("direction inconsistent with zone mapping");
    out.trips.push_back(std::move(t));
  }
  return out;
}

/// Reads the trip CSV; rejects malformed rows with their line number.
inline TripCollection load_trips(const std::string& path, const CorridorSpec& spec, const ZoneMap& zones = {}) {
  return trips_from_table(csv::read_file(path), spec, zones);
}

inline void save_trips(const TripCollection& trips, const std::string& path) {
  csv::write_file(path, trips_to_csv(trips));
}

struct DeparturePeak {
  double center_minutes = 0.0;
  double width_minutes = 60.0;  // standard deviation
  double weight = 0.5;
};

struct TimeDraw {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
};

/// Parameters of the synthetic commuting population.
struct SyntheticProfile {
  int population = 18000;
  double fwd_share = 0.43;
  std::array<DeparturePeak, 2> fwd_peaks{{{450.0, 45.0, 0.8}, {1020.0, 80.0, 0.2}}};
  std::array<DeparturePeak, 2> rev_peaks{{{480.0, 60.0, 0.15}, {975.0, 65.0, 0.85}}};
  TimeDraw drive{88.0, 18.0, 35.0};
  TimeDraw first_mile{12.0, 4.0, 3.0};
  TimeDraw last_mile{12.0, 4.0, 3.0};
  TimeDraw flight{18.0, 3.0, 8.0};
  int zones_per_cluster = 40;

  void validate() const {
    if (population < 0) throw ConfigError("synthetic.population must be >= 0");
    if (!(fwd_share >= 0.0 && fwd_share <= 1.0)) throw ConfigError("synthetic.fwd_share must lie in [0, 1]");
    for (const auto* peaks : {&fwd_peaks, &rev_peaks}) {
      double total = 0.0;
      for (const auto& p : *peaks) {
        if (!(p.width_minutes > 0.0) || !(p.weight >= 0.0) || !std::isfinite(p.center_minutes))
          throw ConfigError("synthetic peak needs width > 0, weight >= 0 and a finite center");
        total += p.weight;
      }
      if (!(total > 0.0)) throw ConfigError("synthetic peak weights must not all be zero");
    }
    for (const auto* d : {&drive, &first_mile, &last_mile, &flight})
      if (!(d->sd >= 0.0) || !(d->min >= 0.0) || !std::isfinite(d->mean))
        throw ConfigError("synthetic time draws need sd >= 0 and min >= 0");
    if (!(drive.min > 0.0)) throw ConfigError("synthetic.drive.min must be > 0");
    if (zones_per_cluster < 1) throw ConfigError("synthetic.zones_per_cluster must be >= 1");
  }
};

/// Seeded synthetic population. Deterministic for a fixed (profile, seed),
/// independent of platform: draws use Boost.Random distributions.
inline TripCollection generate_synthetic_trips(const SyntheticProfile& profile, std::uint64_t seed,
                                               const CorridorSpec& spec) {
  profile.validate();
  spec.validate();
  boost::random::mt19937_64 rng(seed);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  boost::random::normal_distribution<double> gauss(0.0, 1.0);
  boost::random::uniform_int_distribution<int> zone_pick(0, profile.zones_per_cluster - 1);

  const double lo = spec.horizon_start;
  const double hi = spec.window_end();
  auto round2 = [](double x) { return std::round(x * 100.0) / 100.0; };
  auto draw_time = [&](const TimeDraw& d) { return round2(std::max(d.min, d.mean + d.sd * gauss(rng))); };
  auto zone = [&](const std::string& cluster) {
    const int z = zone_pick(rng);
    return cluster + "-" + (z < 10 ? "00" : z < 100 ? "0" : "") + std::to_string(z);
  };

  TripCollection out;
  out.trips.reserve(static_cast<std::size_t>(profile.population));
  for (int n = 0; n < profile.population; ++n) {
    TripRecord t;
    std::string id = std::to_string(n);
    t.trip_id = "T" + std::string(id.size() < 6 ? 6 - id.size() : 0, '0') + id;
    t.direction = unit(rng) < profile.fwd_share ? Direction::fwd : Direction::rev;
    const auto& peaks = t.direction == Direction::fwd ? profile.fwd_peaks : profile.rev_peaks;
    const double w0 = peaks[0].weight / (peaks[0].weight + peaks[1].weight);
    const auto& peak = unit(rng) < w0 ? peaks[0] : peaks[1];
    double depart = 0.0;
    // Redraw until the departure falls inside the operating window.
    for (int attempt = 0;; ++attempt) {
      depart = round2(peak.center_minutes + peak.width_minutes * gauss(rng));
      if (depart >= lo && depart < hi) break;
      if (attempt > 10000) throw ConfigError("synthetic peak lies outside the operating window");
    }
    t.depart_minutes = depart;
    t.drive_minutes = draw_time(profile.drive);
    t.fm_minutes = draw_time(profile.first_mile);
    t.flight_minutes = draw_time(profile.flight);
    t.lm_minutes = draw_time(profile.last_mile);
    const bool fwd = t.direction == Direction::fwd;
    t.origin_zone = zone(fwd ? spec.node_i : spec.node_j);
    t.dest_zone = zone(fwd ? spec.node_j : spec.node_i);
    out.trips.push_back(std::move(t));
  }
  return out;
}

}  // namespace uamlanes
