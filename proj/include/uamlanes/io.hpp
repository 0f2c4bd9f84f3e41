#pragma once

// CSV and JSON encodings of corridor specs, demand series and lane schedules.

#include <set>
#include <string>

#include <json.hpp>

#include "uamlanes/corridor.hpp"
#include "uamlanes/csv.hpp"
#include "uamlanes/format.hpp"

namespace uamlanes {

using json = nlohmann::ordered_json;

namespace detail {

/// Rejects keys outside `allowed` in a JSON object section.
inline void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& section) {
  if (!obj.is_object()) throw ConfigError("section '" + section + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in section '" + section + "'");
}

template <typename T>
void read_key(const json& obj, const char* key, T& target, const std::string& section) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("invalid value for '" + section + "." + key + "'");
  }
}

inline std::string series_kind_check(const json& doc, const char* kind) {
  if (!doc.is_object() || !doc.contains("kind") || doc.at("kind") != kind)
    throw SchemaError(std::string("expected a JSON document of kind '") + kind + "'");
  return kind;
}

}  // namespace detail

inline json to_json(const CorridorSpec& s) {
  return json{{"node_i", s.node_i},
              {"node_j", s.node_j},
              {"lane_count", s.lane_count},
              {"lane_throughput", s.lane_throughput},
              {"flush_slots", s.flush_slots},
              {"slot_minutes", s.slot_minutes},
              {"horizon", s.horizon},
              {"horizon_start", format_clock(s.horizon_start)}};
}

inline CorridorSpec corridor_from_json(const json& j) {
  detail::require_keys(j, {"node_i", "node_j", "lane_count", "lane_throughput", "flush_slots", "slot_minutes",
                           "horizon", "horizon_start"},
                       "corridor");
  CorridorSpec s;
  detail::read_key(j, "node_i", s.node_i, "corridor");
  detail::read_key(j, "node_j", s.node_j, "corridor");
  detail::read_key(j, "lane_count", s.lane_count, "corridor");
  detail::read_key(j, "lane_throughput", s.lane_throughput, "corridor");
  detail::read_key(j, "flush_slots", s.flush_slots, "corridor");
  detail::read_key(j, "slot_minutes", s.slot_minutes, "corridor");
  detail::read_key(j, "horizon", s.horizon, "corridor");
  if (j.contains("horizon_start")) {
    const auto& v = j.at("horizon_start");
    if (v.is_string()) {
      const auto m = parse_clock(v.get<std::string>());
      if (!m) throw ConfigError("corridor.horizon_start must be HH:MM");
      s.horizon_start = *m;
    } else if (v.is_number()) {
      s.horizon_start = v.get<double>();
    } else {
      throw ConfigError("corridor.horizon_start must be HH:MM or minutes");
    }
  }
  s.validate();
  return s;
}

inline json to_json(const CostWeights& w) {
  return json{{"c_unserved", w.c_unserved}, {"c_switch", w.c_switch}, {"c_waste", w.c_waste}};
}

inline CostWeights weights_from_json(const json& j) {
  detail::require_keys(j, {"c_unserved", "c_switch", "c_waste"}, "weights");
  CostWeights w;
  detail::read_key(j, "c_unserved", w.c_unserved, "weights");
  detail::read_key(j, "c_switch", w.c_switch, "weights");
  detail::read_key(j, "c_waste", w.c_waste, "weights");
  w.validate();
  return w;
}

namespace detail {

inline std::string series_csv(const CorridorSpec& spec, const std::vector<int>& fwd, const std::vector<int>& rev) {
  std::string out = "slot,clock_time,fwd,rev\n";
  for (int t = 0; t < static_cast<int>(fwd.size()); ++t)
    csv::append_row(out, std::to_string(t), format_clock(spec.slot_begin(t)), std::to_string(fwd[t]),
                    std::to_string(rev[t]));
  return out;
}

inline std::pair<std::vector<int>, std::vector<int>> series_from_csv(const csv::Table& table,
                                                                     const CorridorSpec& spec) {
  const auto slot_col = table.column("slot");
  const auto fwd_col = table.column("fwd");
  const auto rev_col = table.column("rev");
  table.column("clock_time");
  if (static_cast<int>(table.rows.size()) != spec.horizon)
    throw DimensionError("series CSV has " + std::to_string(table.rows.size()) + " rows, horizon is " +
                         std::to_string(spec.horizon));
  std::vector<int> fwd(spec.horizon), rev(spec.horizon);
  for (int t = 0; t < spec.horizon; ++t) {
    const auto& row = table.rows[t];
    const auto slot = parse_integer(row.fields[slot_col]);
    const auto f = parse_integer(row.fields[fwd_col]);
    const auto r = parse_integer(row.fields[rev_col]);
    if (!slot || *slot != t || !f || !r || *f < 0 || *r < 0)
      throw SchemaError("line " + std::to_string(row.line) + ": malformed series row");
    fwd[t] = static_cast<int>(*f);
    rev[t] = static_cast<int>(*r);
  }
  return {fwd, rev};
}

}  // namespace detail

inline std::string demand_to_csv(const DemandSeries& d, const CorridorSpec& spec) {
  return detail::series_csv(spec, d.fwd, d.rev);
}

inline std::string schedule_to_csv(const LaneSchedule& s, const CorridorSpec& spec) {
  return detail::series_csv(spec, s.fwd, s.rev);
}

inline DemandSeries demand_from_csv(const csv::Table& table, const CorridorSpec& spec) {
  auto [f, r] = detail::series_from_csv(table, spec);
  DemandSeries d(std::move(f), std::move(r));
  d.validate(spec);
  return d;
}

inline LaneSchedule schedule_from_csv(const csv::Table& table, const CorridorSpec& spec) {
  auto [f, r] = detail::series_from_csv(table, spec);
  LaneSchedule s(std::move(f), std::move(r));
  s.validate(spec);
  return s;
}

inline json demand_to_json(const DemandSeries& d, const CorridorSpec& spec) {
  return json{{"kind", "demand_series"}, {"corridor", to_json(spec)}, {"fwd", d.fwd}, {"rev", d.rev}};
}

inline json schedule_to_json(const LaneSchedule& s, const CorridorSpec& spec) {
  return json{{"kind", "lane_schedule"}, {"corridor", to_json(spec)}, {"fwd", s.fwd}, {"rev", s.rev}};
}

namespace detail {

template <typename Series>
std::pair<Series, CorridorSpec> series_from_json(const json& doc, const char* kind) {
  series_kind_check(doc, kind);
  require_keys(doc, {"kind", "corridor", "fwd", "rev"}, kind);
  std::vector<int> fwd, rev;
  try {
    fwd = doc.at("fwd").get<std::vector<int>>();
    rev = doc.at("rev").get<std::vector<int>>();
  } catch (const json::exception&) {
    throw SchemaError(std::string(kind) + " needs integer lists 'fwd' and 'rev'");
  }
  if (!doc.contains("corridor")) throw SchemaError(std::string(kind) + " needs a 'corridor' object");
  const CorridorSpec spec = corridor_from_json(doc.at("corridor"));
  Series s(std::move(fwd), std::move(rev));
  s.validate(spec);
  return {s, spec};
}

}  // namespace detail

inline std::pair<DemandSeries, CorridorSpec> demand_from_json(const json& doc) {
  return detail::series_from_json<DemandSeries>(doc, "demand_series");
}

inline std::pair<LaneSchedule, CorridorSpec> schedule_from_json(const json& doc) {
  return detail::series_from_json<LaneSchedule>(doc, "lane_schedule");
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace uamlanes
