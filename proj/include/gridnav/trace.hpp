#pragma once
// Mission traces: one CSV record per tick plus a key=value summary
// block. Field order and float formatting are fixed so identical runs
// produce byte-identical files and goldens diff cleanly.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gridnav/avoidance.hpp"
#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

inline constexpr const char* kTraceMagic = "# gridnav trace v1";
inline constexpr const char* kTraceColumns =
    "tick,row,col,heading,offset,sensor,hit,reliable,phase,command,covered,replans";

struct TickRecord {
  long tick = 0;
  Cell cell{0, 0};
  double heading_deg = 0;
  double offset_cm = 0;       // lateral drift experienced this tick
  double sensor_cm = 0;       // reported ultrasonic distance
  bool sensor_hit = false;
  bool sensor_reliable = false;
  AvoidPhase phase = AvoidPhase::Cruising;
  std::string command;        // forward, turn_left, halt, probe_right, ...
  int covered = 0;            // key points covered so far
  int replans = 0;            // replans performed so far
};

enum class FailureReason { None, Disconnected, TickBudget };

inline const char* failure_name(FailureReason f) {
  switch (f) {
    case FailureReason::None: return "none";
    case FailureReason::Disconnected: return "disconnected_keypoint";
    default: return "tick_budget";
  }
}

struct MissionResult {
  bool success = false;
  std::vector<int> covered_order;  // key point indices, coverage order
  Cell ended_at{0, 0};
  int planned_cost = 0;   // initial tour cost in cells
  int executed_cost = 0;  // forward moves actually taken
  long ticks = 0;
  int replans = 0;
  FailureReason failure = FailureReason::None;
};

struct MissionTrace {
  std::string rng_algorithm = kRngAlgorithm;
  std::vector<TickRecord> records;
  MissionResult result;
};

inline std::string serialize_trace(const MissionTrace& t) {
  std::ostringstream out;
  out << kTraceMagic << " rng=" << t.rng_algorithm << "\n";
  out << kTraceColumns << "\n";
  char num[64];
  for (const auto& r : t.records) {
    std::snprintf(num, sizeof num, "%.2f,%.3f,%.2f", r.heading_deg, r.offset_cm, r.sensor_cm);
    out << r.tick << "," << r.cell.row << "," << r.cell.col << "," << num << ","
        << (r.sensor_hit ? 1 : 0) << "," << (r.sensor_reliable ? 1 : 0) << ","
        << phase_name(r.phase) << "," << r.command << "," << r.covered << ","
        << r.replans << "\n";
  }
  out << "= summary\n";
  out << "success=" << (t.result.success ? 1 : 0) << "\n";
  out << "covered_order=";
  for (size_t i = 0; i < t.result.covered_order.size(); ++i) {
    if (i) out << ";";
    out << t.result.covered_order[i];
  }
  out << "\n";
  out << "planned_cost=" << t.result.planned_cost << "\n";
  out << "executed_cost=" << t.result.executed_cost << "\n";
  out << "ticks=" << t.result.ticks << "\n";
  out << "replans=" << t.result.replans << "\n";
  out << "end=" << t.result.ended_at.row << "," << t.result.ended_at.col << "\n";
  out << "failure=" << failure_name(t.result.failure) << "\n";
  out << "rng=" << t.rng_algorithm << "\n";
  return out.str();
}

namespace detail {

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline AvoidPhase phase_from_name(const std::string& name, int line) {
  for (AvoidPhase p : {AvoidPhase::Cruising, AvoidPhase::Waiting, AvoidPhase::ProbingRight,
                       AvoidPhase::ProbingLeft, AvoidPhase::ProbingBack, AvoidPhase::Replanning})
    if (name == phase_name(p)) return p;
  throw ParseError("InconsistentTrace: unknown phase '" + name + "'", line);
}

}  // namespace detail

// Parse a serialized trace back into memory (enough to re-render and
// cross-check without re-simulating).
inline MissionTrace parse_trace(const std::string& text) {
  MissionTrace t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line) || line.rfind(kTraceMagic, 0) != 0)
    throw ParseError("InconsistentTrace: missing trace header", 1);
  ++lineno;
  const auto rng_at = line.find("rng=");
  if (rng_at != std::string::npos) t.rng_algorithm = line.substr(rng_at + 4);

  bool in_summary = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line == kTraceColumns) continue;
    if (line == "= summary") {
      in_summary = true;
      continue;
    }
    if (!in_summary) {
      const auto f = detail::split_on(line, ',');
      if (f.size() != 12)
        throw ParseError("InconsistentTrace: expected 12 fields, got " +
                             std::to_string(f.size()),
                         lineno);
      TickRecord r;
      try {
        r.tick = std::stol(f[0]);
        r.cell = Cell{std::stoi(f[1]), std::stoi(f[2])};
        r.heading_deg = std::stod(f[3]);
        r.offset_cm = std::stod(f[4]);
        r.sensor_cm = std::stod(f[5]);
        r.sensor_hit = f[6] == "1";
        r.sensor_reliable = f[7] == "1";
        r.phase = detail::phase_from_name(f[8], lineno);
        r.command = f[9];
        r.covered = std::stoi(f[10]);
        r.replans = std::stoi(f[11]);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("InconsistentTrace: bad record '" + line + "'", lineno);
      }
      if (!t.records.empty() && r.tick != t.records.back().tick + 1)
        throw ParseError("InconsistentTrace: ticks must increase by one", lineno);
      t.records.push_back(std::move(r));
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("InconsistentTrace: bad summary line '" + line + "'", lineno);
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      try {
        if (key == "success") t.result.success = value == "1";
        else if (key == "covered_order") {
          if (!value.empty())
            for (const auto& tok : detail::split_on(value, ';'))
              t.result.covered_order.push_back(std::stoi(tok));
        } else if (key == "planned_cost") t.result.planned_cost = std::stoi(value);
        else if (key == "executed_cost") t.result.executed_cost = std::stoi(value);
        else if (key == "ticks") t.result.ticks = std::stol(value);
        else if (key == "replans") t.result.replans = std::stoi(value);
        else if (key == "end") {
          const auto comma = value.find(',');
          if (comma == std::string::npos) throw ParseError("InconsistentTrace: bad end cell", lineno);
          t.result.ended_at = Cell{std::stoi(value.substr(0, comma)),
                                   std::stoi(value.substr(comma + 1))};
        } else if (key == "failure") {
          if (value == "none") t.result.failure = FailureReason::None;
          else if (value == "disconnected_keypoint") t.result.failure = FailureReason::Disconnected;
          else if (value == "tick_budget") t.result.failure = FailureReason::TickBudget;
          else throw ParseError("InconsistentTrace: unknown failure '" + value + "'", lineno);
        } else if (key == "rng") t.rng_algorithm = value;
        else throw ParseError("InconsistentTrace: unknown summary key '" + key + "'", lineno);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("InconsistentTrace: bad summary value '" + line + "'", lineno);
      }
    }
  }
  if (!in_summary)
    throw ParseError("InconsistentTrace: missing summary block", lineno);
  return t;
}

}  // namespace gridnav
