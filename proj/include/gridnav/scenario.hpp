#pragma once
// Scenario files bundle everything one mission needs: the map, key
// points, bearings, obstacle schedule, and model/config sections. The
// format is line-oriented text with [section] headers, `key = value`
// entries, and '#' comments; the [map] section holds raw 0/1 rows.
//
// Omitted sections and keys fall back to defaults; every default applied
// is recorded so the CLI can echo it.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridnav/control.hpp"
#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/obstacles.hpp"
#include "gridnav/robot_model.hpp"
#include "gridnav/tour.hpp"

namespace gridnav {

struct Scenario {
  GridMap map;
  KeyPointSet keypoints;
  BearingConfig bearings;
  ObstacleSchedule schedule;
  SaConfig sa;
  ControlConfig control;
  UltrasonicModel ultrasonic;
  EncoderSpec encoder;
  DriftModel drift;
  double compass_noise_sd_deg = 0;
  long tick_budget = 0;  // 0 = auto: 500 ticks per map cell
  long wait_timeout_ticks = 10;
  double detection_threshold_cm = 100;
  std::vector<std::string> defaults_applied;  // "section.key = value" lines
};

inline long effective_tick_budget(const Scenario& sc) {
  return sc.tick_budget > 0 ? sc.tick_budget : 500L * sc.map.cell_count();
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("InvalidNumber: '" + text + "'", line);
  return v;
}

inline long parse_long(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ParseError("InvalidInteger: '" + text + "'", line);
  return v;
}

inline uint64_t parse_u64(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || text[0] == '-')
    throw ParseError("InvalidInteger: '" + text + "'", line);
  return static_cast<uint64_t>(v);
}

inline bool parse_bool(const std::string& text, int line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ParseError("InvalidBool: '" + text + "', expected true or false", line);
}

// "R,C" with optional spaces around the comma.
inline Cell parse_cell_text(const std::string& text, int line) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ParseError("InvalidCell: '" + text + "', expected row,col", line);
  const std::string r = trim(text.substr(0, comma));
  const std::string c = trim(text.substr(comma + 1));
  return Cell{static_cast<int>(parse_long(r, line)), static_cast<int>(parse_long(c, line))};
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Shortest decimal text that parses back to exactly the same double.
inline std::string format_double(double v) {
  if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15)
    return std::to_string(static_cast<long long>(v));
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

// Tracks which "section.key" entries the file set explicitly, so every
// default that kicks in can be echoed.
struct SeenKeys {
  std::set<std::string> seen;
  void mark(const std::string& section, const std::string& key) {
    seen.insert(section + "." + key);
  }
  bool has(const std::string& section, const std::string& key) const {
    return seen.count(section + "." + key) > 0;
  }
};

inline void echo_default(Scenario& sc, const SeenKeys& keys, const std::string& section,
                         const std::string& key, const std::string& value) {
  if (!keys.has(section, key))
    sc.defaults_applied.push_back(section + "." + key + " = " + value);
}

// "R,C appear A [disappear B|never]"
inline TimedObstacle parse_timed(const std::string& text, int line) {
  const auto toks = split_ws(text);
  if (toks.size() != 3 && toks.size() != 5)
    throw ParseError("InvalidObstacle: expected 'r,c appear N [disappear N|never]'", line);
  if (toks[1] != "appear")
    throw ParseError("InvalidObstacle: expected 'appear', got '" + toks[1] + "'", line);
  TimedObstacle t;
  t.cell = parse_cell_text(toks[0], line);
  t.appear_tick = parse_long(toks[2], line);
  if (toks.size() == 5) {
    if (toks[3] != "disappear")
      throw ParseError("InvalidObstacle: expected 'disappear', got '" + toks[3] + "'", line);
    if (toks[4] != "never") t.disappear_tick = parse_long(toks[4], line);
  }
  return t;
}

// "R,C@T R,C@T ... [vanish V]"
inline MovingObstacle parse_moving(const std::string& text, int line) {
  const auto toks = split_ws(text);
  MovingObstacle m;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] == "vanish") {
      if (i + 1 != toks.size() - 1)
        throw ParseError("InvalidObstacle: 'vanish V' must end the line", line);
      m.vanish_tick = parse_long(toks[i + 1], line);
      break;
    }
    const auto at = toks[i].find('@');
    if (at == std::string::npos)
      throw ParseError("InvalidObstacle: waypoint '" + toks[i] + "' needs r,c@tick", line);
    m.waypoints.emplace_back(parse_cell_text(toks[i].substr(0, at), line),
                             parse_long(toks[i].substr(at + 1), line));
  }
  if (m.waypoints.empty())
    throw ParseError("InvalidObstacle: moving obstacle needs waypoints", line);
  return m;
}

}  // namespace detail

// Parse the text of a scenario file. Throws ParseError with the line
// number for anything structurally wrong; semantic checks happen in
// validate_scenario.
inline Scenario parse_scenario(const std::string& text) {
  using namespace detail;
  Scenario sc;
  SeenKeys keys;

  std::vector<std::string> map_rows;
  int map_line = 0;
  bool have_origin = false;

  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("UnterminatedSection: '" + s + "'", line);
      section = s.substr(1, s.size() - 2);
      static const std::set<std::string> known{
          "map",        "keypoints", "bearings", "obstacles", "sa",
          "control",    "ultrasonic", "encoder",  "compass",   "drift",
          "sim"};
      if (!known.count(section))
        throw ParseError("UnknownSection: [" + section + "]", line);
      if (section == "map" && map_line == 0) map_line = line;
      continue;
    }
    if (section.empty())
      throw ParseError("StrayContent: '" + s + "' before any [section]", line);

    if (section == "map") {
      for (char ch : s)
        if (ch != '0' && ch != '1')
          throw ParseError(std::string("InvalidChar: '") + ch + "' in map row", line);
      if (!map_rows.empty() && s.size() != map_rows.front().size())
        throw ParseError("RaggedRows: map row width " + std::to_string(s.size()) +
                             " differs from " + std::to_string(map_rows.front().size()),
                         line);
      map_rows.push_back(s);
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("InvalidEntry: expected 'key = value' in [" + section + "]", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("InvalidEntry: empty key or value", line);

    if (section == "keypoints") {
      if (key == "origin") {
        if (have_origin) throw ParseError("DuplicateOrigin: origin already set", line);
        sc.keypoints.origin = parse_cell_text(value, line);
        have_origin = true;
      } else if (key == "point") {
        sc.keypoints.others.push_back(parse_cell_text(value, line));
      } else {
        throw ParseError("UnknownKey: keypoints." + key, line);
      }
    } else if (section == "bearings") {
      int move = -1;
      for (int m = 0; m < 4; ++m)
        if (key == kMoveNames[static_cast<size_t>(m)]) move = m;
      if (move < 0) throw ParseError("UnknownKey: bearings." + key, line);
      sc.bearings.bearing_deg[static_cast<size_t>(move)] = parse_double(value, line);
      keys.mark("bearings", key);
    } else if (section == "obstacles") {
      if (key == "timed") sc.schedule.timed.push_back(parse_timed(value, line));
      else if (key == "moving") sc.schedule.moving.push_back(parse_moving(value, line));
      else throw ParseError("UnknownKey: obstacles." + key, line);
    } else if (section == "sa") {
      if (key == "initial_temperature") sc.sa.initial_temperature = parse_double(value, line);
      else if (key == "cooling_rate") sc.sa.cooling_rate = parse_double(value, line);
      else if (key == "iterations_per_temperature")
        sc.sa.iterations_per_temperature = static_cast<int>(parse_long(value, line));
      else if (key == "minimum_temperature") sc.sa.minimum_temperature = parse_double(value, line);
      else if (key == "seed") sc.sa.rng_seed = parse_u64(value, line);
      else throw ParseError("UnknownKey: sa." + key, line);
      keys.mark("sa", key);
    } else if (section == "control") {
      if (key == "bearing_tolerance_deg") sc.control.bearing_tolerance_deg = parse_double(value, line);
      else if (key == "turn_step_deg") sc.control.turn_step_deg = parse_double(value, line);
      else if (key == "max_turn_ticks") sc.control.max_turn_ticks = static_cast<int>(parse_long(value, line));
      else throw ParseError("UnknownKey: control." + key, line);
      keys.mark("control", key);
    } else if (section == "ultrasonic") {
      if (key == "speed_of_sound_cm_s") sc.ultrasonic.speed_of_sound_cm_s = parse_double(value, line);
      else if (key == "reliable_range_cm") sc.ultrasonic.reliable_range_cm = parse_double(value, line);
      else if (key == "max_range_cm") sc.ultrasonic.max_range_cm = parse_double(value, line);
      else if (key == "beyond_range_noise_cm") sc.ultrasonic.beyond_range_noise_cm = parse_double(value, line);
      else if (key == "within_range_noise_cm") sc.ultrasonic.within_range_noise_cm = parse_double(value, line);
      else throw ParseError("UnknownKey: ultrasonic." + key, line);
      keys.mark("ultrasonic", key);
    } else if (section == "encoder") {
      if (key == "wheel_circumference_cm") sc.encoder.wheel_circumference_cm = parse_double(value, line);
      else if (key == "counts_per_revolution") sc.encoder.counts_per_revolution = static_cast<int>(parse_long(value, line));
      else throw ParseError("UnknownKey: encoder." + key, line);
      keys.mark("encoder", key);
    } else if (section == "compass") {
      if (key == "noise_sd_deg") sc.compass_noise_sd_deg = parse_double(value, line);
      else throw ParseError("UnknownKey: compass." + key, line);
      keys.mark("compass", key);
    } else if (section == "drift") {
      if (key == "min_cm") sc.drift.min_cm = parse_double(value, line);
      else if (key == "max_cm") sc.drift.max_cm = parse_double(value, line);
      else if (key == "recenter") sc.drift.recenter_on_arrival = parse_bool(value, line);
      else throw ParseError("UnknownKey: drift." + key, line);
      keys.mark("drift", key);
    } else if (section == "sim") {
      if (key == "cell_size_cm") sc.map.cell_size_cm = parse_double(value, line);
      else if (key == "tick_budget") sc.tick_budget = parse_long(value, line);
      else if (key == "wait_timeout_ticks") sc.wait_timeout_ticks = parse_long(value, line);
      else if (key == "detection_threshold_cm") sc.detection_threshold_cm = parse_double(value, line);
      else throw ParseError("UnknownKey: sim." + key, line);
      keys.mark("sim", key);
    }
  }

  if (map_rows.empty()) throw ParseError("MissingMap: no [map] section with rows", map_line);
  std::string joined;
  for (const auto& r : map_rows) {
    joined += r;
    joined += '\n';
  }
  const double cell_size = sc.map.cell_size_cm;
  sc.map = parse_map(joined);
  sc.map.cell_size_cm = cell_size;

  if (!have_origin) throw ParseError("MissingOrigin: [keypoints] must set origin", 0);

  // Echo every default the file relied on, in a fixed order.
  echo_default(sc, keys, "bearings", "forward", format_double(sc.bearings.bearing_deg[0]));
  echo_default(sc, keys, "bearings", "left", format_double(sc.bearings.bearing_deg[1]));
  echo_default(sc, keys, "bearings", "backward", format_double(sc.bearings.bearing_deg[2]));
  echo_default(sc, keys, "bearings", "right", format_double(sc.bearings.bearing_deg[3]));
  echo_default(sc, keys, "sa", "initial_temperature", format_double(sc.sa.initial_temperature) + " (auto)");
  echo_default(sc, keys, "sa", "cooling_rate", format_double(sc.sa.cooling_rate));
  echo_default(sc, keys, "sa", "iterations_per_temperature",
               std::to_string(sc.sa.iterations_per_temperature) + " (auto)");
  echo_default(sc, keys, "sa", "minimum_temperature", format_double(sc.sa.minimum_temperature));
  echo_default(sc, keys, "sa", "seed", std::to_string(sc.sa.rng_seed));
  echo_default(sc, keys, "control", "bearing_tolerance_deg", format_double(sc.control.bearing_tolerance_deg));
  echo_default(sc, keys, "control", "turn_step_deg", format_double(sc.control.turn_step_deg));
  echo_default(sc, keys, "control", "max_turn_ticks", std::to_string(sc.control.max_turn_ticks));
  echo_default(sc, keys, "ultrasonic", "speed_of_sound_cm_s", format_double(sc.ultrasonic.speed_of_sound_cm_s));
  echo_default(sc, keys, "ultrasonic", "reliable_range_cm", format_double(sc.ultrasonic.reliable_range_cm));
  echo_default(sc, keys, "ultrasonic", "max_range_cm", format_double(sc.ultrasonic.max_range_cm));
  echo_default(sc, keys, "ultrasonic", "beyond_range_noise_cm", format_double(sc.ultrasonic.beyond_range_noise_cm));
  echo_default(sc, keys, "ultrasonic", "within_range_noise_cm", format_double(sc.ultrasonic.within_range_noise_cm));
  echo_default(sc, keys, "encoder", "wheel_circumference_cm", format_double(sc.encoder.wheel_circumference_cm));
  echo_default(sc, keys, "encoder", "counts_per_revolution", std::to_string(sc.encoder.counts_per_revolution));
  echo_default(sc, keys, "compass", "noise_sd_deg", format_double(sc.compass_noise_sd_deg));
  echo_default(sc, keys, "drift", "min_cm", format_double(sc.drift.min_cm));
  echo_default(sc, keys, "drift", "max_cm", format_double(sc.drift.max_cm));
  echo_default(sc, keys, "drift", "recenter", sc.drift.recenter_on_arrival ? "true" : "false");
  echo_default(sc, keys, "sim", "cell_size_cm", format_double(sc.map.cell_size_cm));
  echo_default(sc, keys, "sim", "tick_budget", std::to_string(sc.tick_budget) + " (auto)");
  echo_default(sc, keys, "sim", "wait_timeout_ticks", std::to_string(sc.wait_timeout_ticks));
  echo_default(sc, keys, "sim", "detection_threshold_cm", format_double(sc.detection_threshold_cm));
  return sc;
}

// Semantic checks over a parsed scenario; throws ValidationError naming
// the offending entity.
inline void validate_scenario(const Scenario& sc) {
  if (!(sc.map.cell_size_cm > 0))
    throw ValidationError("sim.cell_size_cm must be > 0");
  if (sc.tick_budget < 0)
    throw ValidationError("sim.tick_budget must be >= 0 (0 = auto)");
  if (sc.wait_timeout_ticks <= 0)
    throw ValidationError("sim.wait_timeout_ticks must be > 0");
  if (!(sc.detection_threshold_cm > 0))
    throw ValidationError("sim.detection_threshold_cm must be > 0");
  if (sc.compass_noise_sd_deg < 0)
    throw ValidationError("compass.noise_sd_deg must be >= 0");
  validate_keypoints(sc.map, sc.keypoints);
  validate_bearings(sc.bearings);
  validate_schedule(sc.schedule, sc.map);
  validate_sa(sc.sa);
  validate_control(sc.control);
  validate_ultrasonic(sc.ultrasonic);
  validate_encoder(sc.encoder);
  validate_drift(sc.drift);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str());
  validate_scenario(sc);
  return sc;
}

// Write a scenario back out as file text. Parsing the result yields the
// same validated scenario (the round-trip property the tests pin down).
inline std::string render_scenario(const Scenario& sc) {
  using detail::format_double;
  std::ostringstream out;
  out << "[map]\n" << render_map(sc.map);
  out << "\n[keypoints]\n";
  out << "origin = " << sc.keypoints.origin.row << "," << sc.keypoints.origin.col << "\n";
  for (const auto& p : sc.keypoints.others)
    out << "point = " << p.row << "," << p.col << "\n";
  out << "\n[bearings]\n";
  for (int m = 0; m < 4; ++m)
    out << kMoveNames[static_cast<size_t>(m)] << " = "
        << format_double(sc.bearings.bearing_deg[static_cast<size_t>(m)]) << "\n";
  if (!sc.schedule.empty()) {
    out << "\n[obstacles]\n";
    for (const auto& t : sc.schedule.timed) {
      out << "timed = " << t.cell.row << "," << t.cell.col << " appear " << t.appear_tick;
      if (t.disappear_tick) out << " disappear " << *t.disappear_tick;
      out << "\n";
    }
    for (const auto& mv : sc.schedule.moving) {
      out << "moving =";
      for (const auto& [cell, tick] : mv.waypoints)
        out << " " << cell.row << "," << cell.col << "@" << tick;
      if (mv.vanish_tick) out << " vanish " << *mv.vanish_tick;
      out << "\n";
    }
  }
  out << "\n[sa]\n";
  out << "initial_temperature = " << format_double(sc.sa.initial_temperature) << "\n";
  out << "cooling_rate = " << format_double(sc.sa.cooling_rate) << "\n";
  out << "iterations_per_temperature = " << sc.sa.iterations_per_temperature << "\n";
  out << "minimum_temperature = " << format_double(sc.sa.minimum_temperature) << "\n";
  out << "seed = " << sc.sa.rng_seed << "\n";
  out << "\n[control]\n";
  out << "bearing_tolerance_deg = " << format_double(sc.control.bearing_tolerance_deg) << "\n";
  out << "turn_step_deg = " << format_double(sc.control.turn_step_deg) << "\n";
  out << "max_turn_ticks = " << sc.control.max_turn_ticks << "\n";
  out << "\n[ultrasonic]\n";
  out << "speed_of_sound_cm_s = " << format_double(sc.ultrasonic.speed_of_sound_cm_s) << "\n";
  out << "reliable_range_cm = " << format_double(sc.ultrasonic.reliable_range_cm) << "\n";
  out << "max_range_cm = " << format_double(sc.ultrasonic.max_range_cm) << "\n";
  out << "beyond_range_noise_cm = " << format_double(sc.ultrasonic.beyond_range_noise_cm) << "\n";
  out << "within_range_noise_cm = " << format_double(sc.ultrasonic.within_range_noise_cm) << "\n";
  out << "\n[encoder]\n";
  out << "wheel_circumference_cm = " << format_double(sc.encoder.wheel_circumference_cm) << "\n";
  out << "counts_per_revolution = " << sc.encoder.counts_per_revolution << "\n";
  out << "\n[compass]\n";
  out << "noise_sd_deg = " << format_double(sc.compass_noise_sd_deg) << "\n";
  out << "\n[drift]\n";
  out << "min_cm = " << format_double(sc.drift.min_cm) << "\n";
  out << "max_cm = " << format_double(sc.drift.max_cm) << "\n";
  out << "recenter = " << (sc.drift.recenter_on_arrival ? "true" : "false") << "\n";
  out << "\n[sim]\n";
  out << "cell_size_cm = " << format_double(sc.map.cell_size_cm) << "\n";
  out << "tick_budget = " << sc.tick_budget << "\n";
  out << "wait_timeout_ticks = " << sc.wait_timeout_ticks << "\n";
  out << "detection_threshold_cm = " << format_double(sc.detection_threshold_cm) << "\n";
  return out.str();
}

// Human-readable load report: dimensions, counts, and every default the
// file left to us.
inline std::string describe_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "map: " << sc.map.rows << "x" << sc.map.cols << " cells, cell size "
      << detail::format_double(sc.map.cell_size_cm) << " cm\n";
  out << "key points: " << sc.keypoints.size() << " (origin "
      << to_string(sc.keypoints.origin) << ")\n";
  out << "obstacles: " << sc.schedule.timed.size() << " timed, "
      << sc.schedule.moving.size() << " moving\n";
  out << "tick budget: " << effective_tick_budget(sc)
      << (sc.tick_budget > 0 ? "" : " (auto)") << "\n";
  if (!sc.defaults_applied.empty()) {
    out << "defaults applied:\n";
    for (const auto& d : sc.defaults_applied) out << "  " << d << "\n";
  }
  return out.str();
}

}  // namespace gridnav
