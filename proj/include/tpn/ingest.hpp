#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "tpn/model.hpp"

// Loading, validation and serialization of the two input files:
//
//   events.csv:      game_id,possession_id,time_s,passer,receiver
//   possessions.csv: game_id,possession_id,team,start_s,end_s,relative_score,points_scored
//
// Structural problems (missing file, bad header, malformed row, duplicate
// possession, event referencing an unknown possession) throw IngestError
// immediately with file/line/column context. Model-level invariants are
// collected by validate(); load_dataset() runs both and throws when any
// error-severity entry is present. load_dataset_unchecked() skips the
// invariant pass so callers can inspect a dirty dataset.

namespace tpn {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string game_id;
  std::string possession_id;  // empty for game-level entries
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> entries;

  std::size_t error_count() const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [](const Violation& v) {
          return v.severity == Violation::Severity::error;
        }));
  }
  std::size_t warning_count() const { return entries.size() - error_count(); }
  bool clean() const { return error_count() == 0; }
};

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(begin));
      return out;
    }
    out.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

[[noreturn]] inline void row_error(const std::string& path, std::size_t line,
                                   std::size_t column, const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": column " << column << ": " << what;
  throw IngestError(os.str());
}

inline std::optional<std::int64_t> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p != text.data() + text.size()) return std::nullopt;
  return value;
}

struct CsvReader {
  std::string path;
  std::ifstream in;
  std::size_t line_no = 0;

  explicit CsvReader(const std::string& file) : path(file), in(file) {
    if (!in) throw IngestError("cannot open " + file);
  }

  bool next(std::vector<std::string_view>& fields, std::string& storage) {
    while (std::getline(in, storage)) {
      ++line_no;
      if (!storage.empty() && storage.back() == '\r') storage.pop_back();
      if (storage.empty()) continue;
      fields = split_csv_line(storage);
      return true;
    }
    return false;
  }

  void expect_header(std::string_view expected) {
    std::vector<std::string_view> fields;
    std::string storage;
    if (!next(fields, storage) || storage != expected)
      throw IngestError(path + ":1: expected header '" + std::string(expected) + "'");
  }
};

}  // namespace detail

// Reads both files and assembles games without checking model invariants.
inline Dataset load_dataset_unchecked(const std::string& events_path,
                                      const std::string& possessions_path) {
  // key: (game_id, possession_id)
  std::map<std::pair<std::string, std::string>, Possession> possessions;

  {
    detail::CsvReader reader(possessions_path);
    reader.expect_header(
        "game_id,possession_id,team,start_s,end_s,relative_score,points_scored");
    std::vector<std::string_view> f;
    std::string storage;
    while (reader.next(f, storage)) {
      if (f.size() != 7)
        detail::row_error(reader.path, reader.line_no, f.size(),
                          "expected 7 fields, got " + std::to_string(f.size()));
      Possession p;
      p.game_id = std::string(f[0]);
      p.possession_id = std::string(f[1]);
      p.team = std::string(f[2]);
      if (p.game_id.empty()) detail::row_error(reader.path, reader.line_no, 1, "empty game_id");
      if (p.possession_id.empty())
        detail::row_error(reader.path, reader.line_no, 2, "empty possession_id");
      if (p.team.empty()) detail::row_error(reader.path, reader.line_no, 3, "empty team");
      auto start = parse_time_ms(f[3]);
      if (!start) detail::row_error(reader.path, reader.line_no, 4, "bad start_s");
      auto end = parse_time_ms(f[4]);
      if (!end) detail::row_error(reader.path, reader.line_no, 5, "bad end_s");
      auto rel = detail::parse_int(f[5]);
      if (!rel) detail::row_error(reader.path, reader.line_no, 6, "bad relative_score");
      auto pts = detail::parse_int(f[6]);
      if (!pts || *pts < 0)
        detail::row_error(reader.path, reader.line_no, 7, "bad points_scored");
      p.start_ms = *start;
      p.end_ms = *end;
      p.relative_score = static_cast<int>(*rel);
      p.points_scored = static_cast<int>(*pts);
      auto key = std::make_pair(p.game_id, p.possession_id);
      if (!possessions.emplace(key, std::move(p)).second)
        detail::row_error(reader.path, reader.line_no, 2,
                          "duplicate possession_id '" + std::string(f[1]) +
                              "' in game '" + std::string(f[0]) + "'");
    }
  }

  {
    detail::CsvReader reader(events_path);
    reader.expect_header("game_id,possession_id,time_s,passer,receiver");
    std::vector<std::string_view> f;
    std::string storage;
    while (reader.next(f, storage)) {
      if (f.size() != 5)
        detail::row_error(reader.path, reader.line_no, f.size(),
                          "expected 5 fields, got " + std::to_string(f.size()));
      PassEvent ev;
      ev.game_id = std::string(f[0]);
      ev.possession_id = std::string(f[1]);
      auto t = parse_time_ms(f[2]);
      if (!t) detail::row_error(reader.path, reader.line_no, 3, "bad time_s");
      ev.time_ms = *t;
      ev.passer = std::string(f[3]);
      ev.receiver = std::string(f[4]);
      if (ev.passer.empty()) detail::row_error(reader.path, reader.line_no, 4, "empty passer");
      if (ev.receiver.empty())
        detail::row_error(reader.path, reader.line_no, 5, "empty receiver");
      auto it = possessions.find({ev.game_id, ev.possession_id});
      if (it == possessions.end())
        detail::row_error(reader.path, reader.line_no, 2,
                          "event references unknown possession '" +
                              std::string(f[1]) + "' in game '" +
                              std::string(f[0]) + "'");
      it->second.events.push_back(std::move(ev));
    }
  }

  std::map<std::string, GameRecord> games;
  for (auto& [key, poss] : possessions) {
    std::stable_sort(poss.events.begin(), poss.events.end(),
                     [](const PassEvent& a, const PassEvent& b) {
                       return a.time_ms < b.time_ms;
                     });
    GameRecord& game = games[key.first];
    if (game.game_id.empty()) game.game_id = key.first;
    if (game.team_a.empty()) {
      game.team_a = poss.team;
    } else if (game.team_b.empty() && poss.team != game.team_a) {
      game.team_b = poss.team;
    }
    game.possessions.push_back(std::move(poss));
  }

  Dataset ds;
  for (auto& [id, game] : games) {
    std::stable_sort(game.possessions.begin(), game.possessions.end(),
                     [](const Possession& a, const Possession& b) {
                       if (a.start_ms != b.start_ms) return a.start_ms < b.start_ms;
                       return a.possession_id < b.possession_id;
                     });
    for (const auto& p : game.possessions) {
      if (p.team == game.team_a) game.final_score_a += p.points_scored;
      if (p.team == game.team_b) game.final_score_b += p.points_scored;
    }
    ds.games.push_back(std::move(game));
  }
  return ds;
}

// Checks model invariants and collects one entry per violation. The
// relative_score cross-check against cumulative points is a warning:
// free throws and annotation offsets legitimately desynchronize it.
inline ValidationReport validate(const Dataset& ds) {
  ValidationReport report;
  auto error = [&](std::string game, std::string poss, std::string msg) {
    report.entries.push_back({Violation::Severity::error, std::move(game),
                              std::move(poss), std::move(msg)});
  };
  auto warning = [&](std::string game, std::string poss, std::string msg) {
    report.entries.push_back({Violation::Severity::warning, std::move(game),
                              std::move(poss), std::move(msg)});
  };

  for (const auto& game : ds.games) {
    int sum_a = 0;
    int sum_b = 0;
    for (const auto& p : game.possessions) {
      if (p.team == game.team_a)
        sum_a += p.points_scored;
      else if (p.team == game.team_b)
        sum_b += p.points_scored;
      else
        error(game.game_id, p.possession_id,
              "team '" + p.team + "' is neither '" + game.team_a + "' nor '" +
                  game.team_b + "'");

      if (p.start_ms >= p.end_ms)
        error(game.game_id, p.possession_id,
              "start_s " + format_time_ms(p.start_ms) + " is not before end_s " +
                  format_time_ms(p.end_ms));
      for (std::size_t i = 0; i < p.events.size(); ++i) {
        const PassEvent& ev = p.events[i];
        if (ev.time_ms < p.start_ms || ev.time_ms > p.end_ms)
          error(game.game_id, p.possession_id,
                "event at " + format_time_ms(ev.time_ms) +
                    " outside possession bounds [" + format_time_ms(p.start_ms) +
                    ", " + format_time_ms(p.end_ms) + "]");
        if (ev.passer == ev.receiver)
          error(game.game_id, p.possession_id,
                "self-pass by '" + ev.passer + "' at " + format_time_ms(ev.time_ms));
        if (i > 0) {
          if (p.events[i - 1].time_ms >= ev.time_ms)
            error(game.game_id, p.possession_id,
                  "events not strictly ascending at " + format_time_ms(ev.time_ms));
          if (p.events[i - 1].receiver != ev.passer)
            error(game.game_id, p.possession_id,
                  "pass chain broken at " + format_time_ms(ev.time_ms) + ": '" +
                      p.events[i - 1].receiver + "' received but '" + ev.passer +
                      "' passed next");
        }
      }
    }
    if (sum_a != game.final_score_a)
      error(game.game_id, "",
            "final score " + std::to_string(game.final_score_a) + " for '" +
                game.team_a + "' does not equal possession points sum " +
                std::to_string(sum_a));
    if (!game.team_b.empty() && sum_b != game.final_score_b)
      error(game.game_id, "",
            "final score " + std::to_string(game.final_score_b) + " for '" +
                game.team_b + "' does not equal possession points sum " +
                std::to_string(sum_b));

    // Cross-check recorded relative_score against the running score.
    int score_a = 0;
    int score_b = 0;
    for (const auto& p : game.possessions) {
      if (p.team != game.team_a && p.team != game.team_b) continue;
      bool offense_a = p.team == game.team_a;
      int expected = offense_a ? score_a - score_b : score_b - score_a;
      if (p.relative_score != expected)
        warning(game.game_id, p.possession_id,
                "relative_score " + std::to_string(p.relative_score) +
                    " differs from running score " + std::to_string(expected));
      (offense_a ? score_a : score_b) += p.points_scored;
    }
  }
  return report;
}

// Load with full validation; throws IngestError when any error entry exists.
inline Dataset load_dataset(const std::string& events_path,
                            const std::string& possessions_path) {
  Dataset ds = load_dataset_unchecked(events_path, possessions_path);
  ValidationReport report = validate(ds);
  if (!report.clean()) {
    std::ostringstream os;
    os << report.error_count() << " validation error(s); first:";
    std::size_t shown = 0;
    for (const auto& v : report.entries) {
      if (v.severity != Violation::Severity::error) continue;
      os << "\n  " << v.game_id;
      if (!v.possession_id.empty()) os << "/" << v.possession_id;
      os << ": " << v.message;
      if (++shown == 5) break;
    }
    throw IngestError(os.str());
  }
  return ds;
}

inline void write_events_csv(std::ostream& out, const Dataset& ds) {
  out << "game_id,possession_id,time_s,passer,receiver\n";
  for (const auto& g : ds.games)
    for (const auto& p : g.possessions)
      for (const auto& ev : p.events)
        out << ev.game_id << ',' << ev.possession_id << ','
            << format_time_ms(ev.time_ms) << ',' << ev.passer << ','
            << ev.receiver << '\n';
}

inline void write_possessions_csv(std::ostream& out, const Dataset& ds) {
  out << "game_id,possession_id,team,start_s,end_s,relative_score,points_scored\n";
  for (const auto& g : ds.games)
    for (const auto& p : g.possessions)
      out << p.game_id << ',' << p.possession_id << ',' << p.team << ','
          << format_time_ms(p.start_ms) << ',' << format_time_ms(p.end_ms) << ','
          << p.relative_score << ',' << p.points_scored << '\n';
}

}  // namespace tpn
