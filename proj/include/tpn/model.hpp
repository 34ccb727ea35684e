#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Core value types for passing data: pass events, possessions, games.
// Timecodes are stored as integer milliseconds to keep window arithmetic
// exact; input files carry decimal seconds.

namespace tpn {

using Millis = std::int64_t;

struct PassEvent {
  std::string game_id;
  std::string possession_id;
  Millis time_ms = 0;
  std::string passer;
  std::string receiver;

  bool operator==(const PassEvent&) const = default;
};

struct Possession {
  std::string game_id;
  std::string possession_id;
  std::string team;
  Millis start_ms = 0;
  Millis end_ms = 0;
  int relative_score = 0;  // offense score minus defense score at start
  int points_scored = 0;
  std::vector<PassEvent> events;  // ascending by time_ms

  Millis duration_ms() const { return end_ms - start_ms; }

  bool operator==(const Possession&) const = default;
};

struct GameRecord {
  std::string game_id;
  std::string team_a;
  std::string team_b;
  int final_score_a = 0;
  int final_score_b = 0;
  std::vector<Possession> possessions;  // ascending by start_ms

  bool operator==(const GameRecord&) const = default;
};

struct Dataset {
  std::vector<GameRecord> games;  // ascending by game_id

  std::size_t possession_count() const {
    std::size_t n = 0;
    for (const auto& g : games) n += g.possessions.size();
    return n;
  }

  std::size_t event_count() const {
    std::size_t n = 0;
    for (const auto& g : games)
      for (const auto& p : g.possessions) n += p.events.size();
    return n;
  }

  bool operator==(const Dataset&) const = default;
};

// Parses a non-negative decimal seconds literal ("12", "12.3", "12.34")
// into milliseconds. At most three fractional digits are accepted; data
// files use at most two (centisecond precision). Returns nullopt on any
// malformed input.
inline std::optional<Millis> parse_time_ms(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 3) return std::nullopt;
  }
  if (whole.empty()) return std::nullopt;
  std::int64_t secs = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
  if (ec != std::errc() || p != whole.data() + whole.size() || secs < 0)
    return std::nullopt;
  Millis ms = secs * 1000;
  Millis scale = 100;
  for (char c : frac) {
    if (c < '0' || c > '9') return std::nullopt;
    ms += (c - '0') * scale;
    scale /= 10;
  }
  return ms;
}

// Formats milliseconds as decimal seconds with trailing zeros trimmed:
// 6000 -> "6", 6250 -> "6.25", 10 -> "0.01".
inline std::string format_time_ms(Millis ms) {
  if (ms < 0) return "-" + format_time_ms(-ms);
  std::string out = std::to_string(ms / 1000);
  Millis rem = ms % 1000;
  if (rem == 0) return out;
  char buf[8];
  std::snprintf(buf, sizeof(buf), ".%03lld", static_cast<long long>(rem));
  std::string frac(buf);
  while (frac.back() == '0') frac.pop_back();
  return out + frac;
}

}  // namespace tpn
