// tpn: temporal passing-network graphlet analysis.
//
// Subcommands cover the full pipeline: validate raw files, generate
// synthetic data, dump window state sequences, compute profiles and
// entropies, search score partitions, run the statistical protocol, and
// write the complete report directory.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tpn/entropy.hpp"
#include "tpn/ingest.hpp"
#include "tpn/report.hpp"
#include "tpn/scorepart.hpp"
#include "tpn/stats.hpp"
#include "tpn/synth.hpp"

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tpn::Millis parse_seconds(const std::string& text, const char* what) {
  auto ms = tpn::parse_time_ms(text);
  if (!ms) throw UsageError(std::string("bad ") + what + " value: " + text);
  return *ms;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

struct IoOptions {
  std::string events;
  std::string possessions;
};

struct WindowOptions {
  std::string delta = "6";
  std::string tau = "0.25";

  tpn::WindowParams params() const {
    tpn::WindowParams wp;
    wp.delta_ms = parse_seconds(delta, "--delta");
    wp.tau_ms = parse_seconds(tau, "--tau");
    try {
      tpn::check_window_params(wp);
    } catch (const tpn::WindowingError& e) {
      // Bad flag values are a usage error, not a data failure.
      throw UsageError(e.what());
    }
    return wp;
  }
};

void add_io(CLI::App* cmd, IoOptions& io) {
  cmd->add_option("-e,--events", io.events, "pass events CSV")->required();
  cmd->add_option("-p,--possessions", io.possessions, "possessions CSV")
      ->required();
}

void add_window(CLI::App* cmd, WindowOptions& win) {
  cmd->add_option("--delta", win.delta, "window length in seconds");
  cmd->add_option("--tau", win.tau, "window stride in seconds");
}

enum class Format { table, csv, json_fmt };

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "table, csv, or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
}

Format parse_format(const std::string& format) {
  if (format == "csv") return Format::csv;
  if (format == "json") return Format::json_fmt;
  return Format::table;
}

// A tiny row renderer: same cells, three skins.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(Format format) const {
    if (format == Format::json_fmt) {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < header.size(); ++c)
          obj[header[c]] = c < row.size() ? row[c] : "";
        arr.push_back(std::move(obj));
      }
      std::cout << arr.dump(2) << "\n";
      return;
    }
    if (format == Format::csv) {
      for (std::size_t c = 0; c < header.size(); ++c)
        std::cout << (c ? "," : "") << header[c];
      std::cout << "\n";
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
          std::cout << (c ? "," : "") << row[c];
        std::cout << "\n";
      }
      return;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) std::cout << "  ";
        std::cout << cells[c];
        if (c + 1 < cells.size())
          std::cout << std::string(width[c] - cells[c].size(), ' ');
      }
      std::cout << "\n";
    };
    line(header);
    for (const auto& row : rows) line(row);
  }
};

std::string num(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string opt_num(const std::optional<double>& v, int prec = 6) {
  return v ? num(*v, prec) : std::string();
}

tpn::Dataset load(const IoOptions& io) {
  return tpn::load_dataset(io.events, io.possessions);
}

tpn::Metric parse_metric(const std::string& name) {
  auto metric = tpn::metric_from_string(name);
  if (!metric) throw UsageError("unknown metric: " + name);
  return *metric;
}

// Units of aggregation shared by profile/entropy commands.
struct Unit {
  std::string name;
  std::vector<tpn::Possession> possessions;
};

std::vector<Unit> collect_units(const tpn::Dataset& ds, const std::string& by) {
  std::map<std::string, Unit> units;
  for (const tpn::GameRecord& game : ds.games) {
    for (const tpn::Possession& poss : game.possessions) {
      std::string key;
      if (by == "team")
        key = poss.team;
      else if (by == "game")
        key = game.game_id;
      else
        key = game.game_id + "/" + poss.team;
      Unit& unit = units[key];
      unit.name = key;
      unit.possessions.push_back(poss);
    }
  }
  std::vector<Unit> out;
  for (auto& [key, unit] : units) {
    (void)key;
    out.push_back(std::move(unit));
  }
  return out;
}

// ---- subcommand bodies -------------------------------------------------------

int run_validate(const IoOptions& io) {
  tpn::Dataset ds = tpn::load_dataset_unchecked(io.events, io.possessions);
  tpn::ValidationReport report = tpn::validate(ds);
  for (const tpn::Violation& v : report.entries) {
    std::cout << (v.severity == tpn::Violation::Severity::error ? "error"
                                                                : "warning")
              << " [" << v.game_id
              << (v.possession_id.empty() ? "" : "/" + v.possession_id)
              << "] " << v.message << "\n";
  }
  std::cout << report.error_count() << " errors, " << report.warning_count()
            << " warnings in " << ds.games.size() << " games / "
            << ds.possession_count() << " possessions\n";
  return report.error_count() == 0 ? 0 : 1;
}

struct SynthOptions {
  std::string out_dir;
  std::uint64_t seed = 42;
  int games = 2;
  std::string teams;
  int possessions = 110;
  bool planted = false;
  std::string target;
  WindowOptions win;
  std::string len_min = "2";
  std::string len_max = "16";
  std::string gap_min = "0.3";
};

int run_synth(const SynthOptions& so) {
  tpn::SynthSpec spec = so.planted ? tpn::planted_spec() : tpn::demo_spec();
  spec.seed = so.seed;
  if (!so.planted) {
    spec.n_games = so.games;
    if (!so.teams.empty()) spec.teams = split_list(so.teams);
    spec.possessions_per_game = so.possessions;
    spec.params = so.win.params();
    spec.len_min_ms = parse_seconds(so.len_min, "--len-min");
    spec.len_max_ms = parse_seconds(so.len_max, "--len-max");
    spec.gap_min_ms = parse_seconds(so.gap_min, "--gap-min");
    if (!so.target.empty()) {
      const std::vector<std::string> parts = split_list(so.target);
      if (parts.size() != static_cast<std::size_t>(tpn::kStateCount))
        throw UsageError("--target needs exactly 10 comma-separated shares");
      std::array<double, tpn::kStateCount> shares{};
      for (std::size_t i = 0; i < parts.size(); ++i) {
        try {
          shares[i] = std::stod(parts[i]);
        } catch (const std::exception&) {
          throw UsageError("bad --target share: " + parts[i]);
        }
      }
      spec.target_profile = shares;
    }
  }
  tpn::SynthResult result = tpn::generate(spec);
  std::filesystem::create_directories(so.out_dir);
  auto write_file = [&](const std::string& name, auto&& fill) {
    std::ofstream f(so.out_dir + "/" + name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + so.out_dir + "/" + name);
    fill(f);
  };
  write_file("events.csv",
             [&](std::ostream& f) { tpn::write_events_csv(f, result.dataset); });
  write_file("possessions.csv", [&](std::ostream& f) {
    tpn::write_possessions_csv(f, result.dataset);
  });
  write_file("manifest.txt", [&](std::ostream& f) { f << result.manifest; });
  std::cout << "wrote " << so.out_dir << "/events.csv, possessions.csv, "
            << "manifest.txt (" << result.truth.possessions << " possessions, "
            << result.truth.retained << " retained)\n";
  return 0;
}

int run_graphlets_dump(const IoOptions& io, const WindowOptions& win) {
  tpn::Dataset ds = load(io);
  const tpn::WindowParams wp = win.params();
  for (const tpn::GameRecord& game : ds.games) {
    for (const tpn::Possession& poss : game.possessions) {
      const auto states = tpn::state_sequence(poss, wp);
      if (states.empty()) continue;
      std::cout << game.game_id << "," << poss.possession_id << ",";
      for (std::size_t i = 0; i < states.size(); ++i)
        std::cout << (i ? " " : "") << tpn::label_of(states[i]);
      std::cout << "\n";
    }
  }
  return 0;
}

int run_profile(const IoOptions& io, const WindowOptions& win,
                const std::string& by, const std::string& format,
                bool transitions) {
  tpn::Dataset ds = load(io);
  const tpn::WindowParams wp = win.params();
  const Format fmt = parse_format(format);
  if (fmt == Format::json_fmt) {
    json root = json::object();
    for (const Unit& unit : collect_units(ds, by)) {
      tpn::Profile prof = tpn::profile_of(unit.possessions, wp, unit.name);
      json obj = json::object();
      obj["possessions"] = prof.n_possessions;
      obj["windowed"] = prof.n_windowed_possessions;
      obj["windows"] = prof.n_windows;
      json states = json::object();
      for (int i = 0; i < tpn::kStateCount; ++i)
        states[tpn::kStateLabels[static_cast<std::size_t>(i)]] =
            prof.state_counts[static_cast<std::size_t>(i)];
      obj["states"] = std::move(states);
      json trans = json::array();
      for (int i = 0; i < tpn::kStateCount; ++i) {
        json row = json::array();
        for (int j = 0; j < tpn::kStateCount; ++j)
          row.push_back(prof.transition_counts[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(j)]);
        trans.push_back(std::move(row));
      }
      obj["transitions"] = std::move(trans);
      root[unit.name] = std::move(obj);
    }
    std::cout << root.dump(2) << "\n";
    return 0;
  }
  Table table;
  table.header = {"unit", "possessions", "windowed", "windows"};
  for (int i = 0; i < tpn::kStateCount; ++i)
    table.header.push_back(std::string("share_") +
                           tpn::kStateLabels[static_cast<std::size_t>(i)]);
  for (const Unit& unit : collect_units(ds, by)) {
    tpn::Profile prof = tpn::profile_of(unit.possessions, wp, unit.name);
    std::vector<std::string> row = {unit.name,
                                    std::to_string(prof.n_possessions),
                                    std::to_string(prof.n_windowed_possessions),
                                    std::to_string(prof.n_windows)};
    for (int i = 0; i < tpn::kStateCount; ++i)
      row.push_back(prof.n_windows
                        ? num(static_cast<double>(prof.state_counts
                                                      [static_cast<std::size_t>(i)]) /
                              static_cast<double>(prof.n_windows))
                        : "");
    table.rows.push_back(std::move(row));
  }
  table.print(fmt);
  if (transitions && fmt == Format::table) {
    for (const Unit& unit : collect_units(ds, by)) {
      tpn::Profile prof = tpn::profile_of(unit.possessions, wp, unit.name);
      std::cout << "\ntransition counts for " << unit.name << "\n";
      for (int i = 0; i < tpn::kStateCount; ++i) {
        for (int j = 0; j < tpn::kStateCount; ++j)
          std::cout << (j ? " " : "")
                    << prof.transition_counts[static_cast<std::size_t>(i)]
                                             [static_cast<std::size_t>(j)];
        std::cout << "\n";
      }
    }
  }
  return 0;
}

int run_entropy(const IoOptions& io, const WindowOptions& win,
                const std::string& by, const std::string& format) {
  tpn::Dataset ds = load(io);
  const tpn::WindowParams wp = win.params();
  Table table;
  table.header = {"unit", "possessions", "windows", "se",     "te",
                  "rte",  "se_pct",      "te_pct",  "rte_pct"};
  for (const Unit& unit : collect_units(ds, by)) {
    tpn::Profile prof = tpn::profile_of(unit.possessions, wp, unit.name);
    std::vector<std::string> row = {unit.name,
                                    std::to_string(prof.n_possessions),
                                    std::to_string(prof.n_windows)};
    if (prof.n_windows > 0) {
      tpn::EntropyReport rep =
          tpn::normalized(tpn::entropies(tpn::stochastic_view(prof)));
      row.insert(row.end(),
                 {num(rep.se), num(rep.te), num(rep.rte), num(rep.se_norm_pct),
                  num(rep.te_norm_pct), num(rep.rte_norm_pct)});
    } else {
      row.insert(row.end(), {"", "", "", "", "", ""});
    }
    table.rows.push_back(std::move(row));
  }
  table.print(parse_format(format));
  return 0;
}

json partition_to_json(const std::string& unit,
                       const tpn::PartitionChoice& choice) {
  json obj = json::object();
  obj["unit"] = unit;
  obj["f1"] = choice.partition.f1;
  obj["f2"] = choice.partition.f2;
  obj["metric"] = tpn::to_string(choice.metric);
  obj["objective"] = choice.objective;
  obj["candidates_evaluated"] = choice.candidates_evaluated;
  json classes = json::array();
  for (int c = 0; c < 3; ++c) {
    const tpn::ScoreClass& cls =
        choice.partition.classes[static_cast<std::size_t>(c)];
    json entry = json::object();
    entry["label"] = cls.label;
    if (cls.lo != tpn::kScoreOpenLow) entry["lo"] = cls.lo;
    if (cls.hi != tpn::kScoreOpenHigh) entry["hi"] = cls.hi;
    entry["possessions"] =
        choice.partition.possession_counts[static_cast<std::size_t>(c)];
    entry["entropy"] = choice.class_entropy[static_cast<std::size_t>(c)];
    classes.push_back(std::move(entry));
  }
  obj["classes"] = std::move(classes);
  return obj;
}

int run_classify(const IoOptions& io, const WindowOptions& win,
                 double min_share, const std::string& metric_name,
                 bool per_team, const std::string& format) {
  tpn::Dataset ds = load(io);
  const tpn::WindowParams wp = win.params();
  const tpn::Metric metric = parse_metric(metric_name);
  std::vector<std::pair<std::string, std::vector<tpn::Possession>>> units;
  if (per_team) {
    std::map<std::string, std::vector<tpn::Possession>> by_team;
    for (const tpn::GameRecord& game : ds.games)
      for (const tpn::Possession& poss : game.possessions)
        by_team[poss.team].push_back(poss);
    for (auto& [team, possessions] : by_team)
      units.emplace_back(team, std::move(possessions));
  } else {
    std::vector<tpn::Possession> all;
    for (const tpn::GameRecord& game : ds.games)
      for (const tpn::Possession& poss : game.possessions) all.push_back(poss);
    units.emplace_back("ALL", std::move(all));
  }

  const Format fmt = parse_format(format);
  if (fmt == Format::json_fmt) {
    json root = json::object();
    root["min_share"] = min_share;
    root["metric"] = tpn::to_string(metric);
    json parts = json::array();
    for (const auto& [name, possessions] : units) {
      auto choice = tpn::best_partition(possessions, wp, metric, min_share);
      if (choice)
        parts.push_back(partition_to_json(name, *choice));
      else
        parts.push_back(json{{"unit", name}, {"error", "no valid partition"}});
    }
    root["partitions"] = std::move(parts);
    std::cout << root.dump(2) << "\n";
    return 0;
  }
  Table table;
  table.header = {"unit",    "possessions", "f1",        "f2",
                  "lower_n", "middle_n",    "upper_n",   "lower_h",
                  "middle_h", "upper_h",    "objective", "candidates"};
  for (const auto& [name, possessions] : units) {
    auto choice = tpn::best_partition(possessions, wp, metric, min_share);
    std::vector<std::string> row = {name, std::to_string(possessions.size())};
    if (choice) {
      row.push_back(std::to_string(choice->partition.f1));
      row.push_back(std::to_string(choice->partition.f2));
      for (int c = 0; c < 3; ++c)
        row.push_back(std::to_string(
            choice->partition.possession_counts[static_cast<std::size_t>(c)]));
      for (int c = 0; c < 3; ++c)
        row.push_back(num(choice->class_entropy[static_cast<std::size_t>(c)]));
      row.push_back(num(choice->objective));
      row.push_back(std::to_string(choice->candidates_evaluated));
    } else {
      row.insert(row.end(), 10, "");
    }
    table.rows.push_back(std::move(row));
  }
  table.print(fmt);
  return 0;
}

// Observations shared by the stats subcommands: one row per game and team.
struct Observation {
  std::string game_id;
  std::string team;
  std::int64_t points = 0;
  std::int64_t possessions = 0;
  tpn::EntropyReport entropy;
};

std::vector<Observation> observations(const tpn::Dataset& ds,
                                      const tpn::WindowParams& wp) {
  std::vector<Observation> out;
  for (const tpn::GameRecord& game : ds.games) {
    for (const std::string& team : {game.team_a, game.team_b}) {
      Observation obs;
      obs.game_id = game.game_id;
      obs.team = team;
      std::vector<tpn::Possession> mine;
      for (const tpn::Possession& poss : game.possessions) {
        if (poss.team != team) continue;
        ++obs.possessions;
        obs.points += poss.points_scored;
        mine.push_back(poss);
      }
      tpn::Profile prof = tpn::profile_of(mine, wp, team);
      if (prof.n_windows == 0) continue;
      obs.entropy = tpn::entropies(tpn::stochastic_view(prof));
      out.push_back(std::move(obs));
    }
  }
  return out;
}

int run_stats_correlation(const IoOptions& io, const WindowOptions& win,
                          const std::string& target,
                          const std::string& format) {
  tpn::Dataset ds = load(io);
  const auto obs = observations(ds, win.params());
  Table table;
  table.header = {"target", "metric", "n", "rho", "p_value", "method"};
  for (tpn::Metric metric : {tpn::Metric::se, tpn::Metric::te, tpn::Metric::rte}) {
    std::vector<double> x;
    std::vector<double> y;
    for (const Observation& o : obs) {
      x.push_back(tpn::metric_value(o.entropy, metric));
      y.push_back(target == "pts-per-poss"
                      ? static_cast<double>(o.points) /
                            static_cast<double>(o.possessions)
                      : static_cast<double>(o.points));
    }
    tpn::TestResult r = tpn::spearman(x, y, tpn::Alternative::two_sided);
    table.rows.push_back({target, tpn::to_string(metric), std::to_string(r.n),
                          opt_num(r.statistic), opt_num(r.p_value),
                          tpn::to_string(r.method)});
  }
  table.print(parse_format(format));
  return 0;
}

int run_stats_winner_loser(const IoOptions& io, const WindowOptions& win,
                           const std::string& format) {
  tpn::Dataset ds = load(io);
  const auto obs = observations(ds, win.params());
  Table table;
  table.header = {"metric", "pairs", "ties_excluded", "w", "z", "p_value",
                  "method"};
  for (tpn::Metric metric : {tpn::Metric::se, tpn::Metric::te, tpn::Metric::rte}) {
    std::vector<double> winners;
    std::vector<double> losers;
    std::int64_t ties = 0;
    for (const tpn::GameRecord& game : ds.games) {
      if (game.final_score_a == game.final_score_b) {
        ++ties;
        continue;
      }
      const std::string& win_team =
          game.final_score_a > game.final_score_b ? game.team_a : game.team_b;
      std::optional<double> w, l;
      for (const Observation& o : obs) {
        if (o.game_id != game.game_id) continue;
        (o.team == win_team ? w : l) = tpn::metric_value(o.entropy, metric);
      }
      if (w && l) {
        winners.push_back(*w);
        losers.push_back(*l);
      }
    }
    tpn::TestResult r =
        tpn::wilcoxon_signed_rank(winners, losers, tpn::Alternative::two_sided);
    table.rows.push_back({tpn::to_string(metric), std::to_string(winners.size()),
                          std::to_string(ties), opt_num(r.statistic),
                          opt_num(r.z_approx), opt_num(r.p_value),
                          tpn::to_string(r.method)});
  }
  table.print(parse_format(format));
  return 0;
}

int run_stats_class_compare(const IoOptions& io, const WindowOptions& win,
                            double min_share, const std::string& metric_name,
                            const std::string& from,
                            const std::string& format) {
  tpn::Dataset ds = load(io);
  const tpn::WindowParams wp = win.params();
  const tpn::Metric metric = parse_metric(metric_name);

  // team -> class boundaries, either recomputed or read from classify output
  std::map<std::string, std::pair<int, int>> boundaries;
  std::map<std::string, std::vector<tpn::Possession>> by_team;
  for (const tpn::GameRecord& game : ds.games)
    for (const tpn::Possession& poss : game.possessions)
      by_team[poss.team].push_back(poss);
  if (!from.empty()) {
    std::ifstream f(from);
    if (!f) throw std::runtime_error("cannot read " + from);
    json root = json::parse(f);
    for (const json& part : root.at("partitions")) {
      if (part.contains("error")) continue;
      boundaries[part.at("unit").get<std::string>()] = {
          part.at("f1").get<int>(), part.at("f2").get<int>()};
    }
  } else {
    for (const auto& [team, possessions] : by_team) {
      auto choice = tpn::best_partition(possessions, wp, metric, min_share);
      if (choice)
        boundaries[team] = {choice->partition.f1, choice->partition.f2};
    }
  }

  Table table;
  table.header = {"team",    "class",   "lo",      "hi",
                  "possessions", "windows", "entropy", "pts_per_poss"};
  // per class across teams, for the paired comparisons below
  std::map<std::string, std::vector<double>> class_entropy;
  std::map<std::string, std::vector<double>> class_ppp;
  for (const auto& [team, bounds] : boundaries) {
    auto it = by_team.find(team);
    if (it == by_team.end()) continue;
    const auto& [f1, f2] = bounds;
    const tpn::ScoreClass classes[3] = {
        {"lower", tpn::kScoreOpenLow, f1 - 1},
        {"middle", f1, f2 - 1},
        {"upper", f2, tpn::kScoreOpenHigh}};
    for (const tpn::ScoreClass& cls : classes) {
      std::vector<tpn::Possession> mine;
      std::int64_t points = 0;
      for (const tpn::Possession& poss : it->second) {
        if (!cls.contains(poss.relative_score)) continue;
        points += poss.points_scored;
        mine.push_back(poss);
      }
      tpn::Profile prof = tpn::profile_of(mine, wp, cls.label);
      std::string entropy_cell;
      if (prof.n_windows > 0) {
        tpn::EntropyReport rep = tpn::entropies(tpn::stochastic_view(prof));
        const double value = tpn::metric_value(rep, metric);
        entropy_cell = num(value);
        class_entropy[cls.label].push_back(value);
        class_ppp[cls.label].push_back(
            mine.empty() ? 0.0
                         : static_cast<double>(points) /
                               static_cast<double>(mine.size()));
      }
      table.rows.push_back(
          {team, cls.label,
           cls.lo == tpn::kScoreOpenLow ? "" : std::to_string(cls.lo),
           cls.hi == tpn::kScoreOpenHigh ? "" : std::to_string(cls.hi),
           std::to_string(mine.size()), std::to_string(prof.n_windows),
           entropy_cell,
           mine.empty() ? ""
                        : num(static_cast<double>(points) /
                              static_cast<double>(mine.size()))});
    }
  }
  table.print(parse_format(format));

  // paired comparisons across teams (teams with all three classes defined)
  const char* kPairs[3][2] = {
      {"lower", "middle"}, {"lower", "upper"}, {"middle", "upper"}};
  Table tests;
  tests.header = {"comparison", "quantity", "n", "w", "z", "p_value", "method"};
  for (const auto& [label, values] : std::map<std::string, int>{
           {"entropy", 0}, {"pts_per_poss", 1}}) {
    const auto& source = values == 0 ? class_entropy : class_ppp;
    for (const auto& pair : kPairs) {
      const auto a = source.find(pair[0]);
      const auto b = source.find(pair[1]);
      if (a == source.end() || b == source.end() ||
          a->second.size() != b->second.size())
        continue;
      tpn::TestResult r = tpn::wilcoxon_signed_rank(a->second, b->second,
                                                    tpn::Alternative::two_sided);
      tests.rows.push_back({std::string(pair[0]) + "-vs-" + pair[1], label,
                            std::to_string(a->second.size()),
                            opt_num(r.statistic), opt_num(r.z_approx),
                            opt_num(r.p_value), tpn::to_string(r.method)});
    }
  }
  if (!tests.rows.empty()) {
    std::cout << "\n";
    tests.print(parse_format(format));
  }
  return 0;
}

int run_stats_profile_chisq(const IoOptions& io, const WindowOptions& win,
                            const std::string& format) {
  tpn::Dataset ds = load(io);
  const tpn::WindowParams wp = win.params();
  std::vector<tpn::Possession> all;
  for (const tpn::GameRecord& game : ds.games)
    for (const tpn::Possession& poss : game.possessions) all.push_back(poss);
  std::vector<std::pair<std::string, tpn::Profile>> classes;
  for (const tpn::ScoreClass& cls : tpn::supervised_classes()) {
    std::vector<tpn::Possession> mine;
    for (const tpn::Possession& poss : all)
      if (cls.contains(poss.relative_score)) mine.push_back(poss);
    classes.emplace_back(cls.label, tpn::profile_of(mine, wp, cls.label));
  }
  Table table;
  table.header = {"class_a", "class_b", "n", "df", "chisq", "p_value", "method"};
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (classes[i].second.n_windows == 0 || classes[j].second.n_windows == 0)
        continue;
      std::vector<std::int64_t> a(classes[i].second.state_counts.begin(),
                                  classes[i].second.state_counts.end());
      std::vector<std::int64_t> b(classes[j].second.state_counts.begin(),
                                  classes[j].second.state_counts.end());
      tpn::TestResult r = tpn::chisq_independence(a, b);
      table.rows.push_back({classes[i].first, classes[j].first,
                            std::to_string(r.n),
                            r.df ? std::to_string(*r.df) : "",
                            opt_num(r.statistic), opt_num(r.p_value),
                            tpn::to_string(r.method)});
    }
  }
  table.print(parse_format(format));
  return 0;
}

int run_report(const IoOptions& io, const WindowOptions& win, double min_share,
               const std::string& metric_name, bool portable,
               const std::string& out_dir) {
  tpn::Dataset ds = load(io);
  tpn::ReportOptions opt;
  opt.params = win.params();
  opt.min_share = min_share;
  opt.metric = parse_metric(metric_name);
  opt.portable = portable;
  opt.events_path = io.events;
  opt.possessions_path = io.possessions;
  tpn::ReportOutputs outputs = tpn::build_report(ds, opt);
  tpn::write_report(outputs, out_dir);
  std::cout << "wrote " << outputs.files.size() << " files to " << out_dir
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal passing-network graphlet analysis"};
  app.require_subcommand(1);
  std::function<int()> action;

  // validate
  {
    CLI::App* cmd = app.add_subcommand("validate", "check input files");
    auto io = std::make_shared<IoOptions>();
    add_io(cmd, *io);
    cmd->callback([&action, io] { action = [io] { return run_validate(*io); }; });
  }

  // synth
  {
    CLI::App* cmd = app.add_subcommand("synth", "generate synthetic data");
    auto so = std::make_shared<SynthOptions>();
    cmd->add_option("-o,--out", so->out_dir, "output directory")->required();
    cmd->add_option("--seed", so->seed, "RNG seed");
    cmd->add_option("--games", so->games, "number of games");
    cmd->add_option("--teams", so->teams, "comma-separated team names");
    cmd->add_option("--possessions", so->possessions,
                    "possessions per game (plus coverage block)");
    cmd->add_flag("--planted", so->planted,
                  "planted-signal dataset (ignores the shape options)");
    cmd->add_option("--target", so->target,
                    "10 comma-separated state shares to hit");
    add_window(cmd, so->win);
    cmd->add_option("--len-min", so->len_min, "min possession length, seconds");
    cmd->add_option("--len-max", so->len_max, "max possession length, seconds");
    cmd->add_option("--gap-min", so->gap_min, "min gap between passes, seconds");
    cmd->callback([&action, so] { action = [so] { return run_synth(*so); }; });
  }

  // graphlets dump
  {
    CLI::App* cmd = app.add_subcommand("graphlets", "window state sequences");
    CLI::App* dump = cmd->add_subcommand("dump", "one line per kept possession");
    auto io = std::make_shared<IoOptions>();
    auto win = std::make_shared<WindowOptions>();
    add_io(dump, *io);
    add_window(dump, *win);
    dump->callback([&action, io, win] {
      action = [io, win] { return run_graphlets_dump(*io, *win); };
    });
    cmd->require_subcommand(1);
  }

  // profile
  {
    CLI::App* cmd = app.add_subcommand("profile", "graphlet state profiles");
    auto io = std::make_shared<IoOptions>();
    auto win = std::make_shared<WindowOptions>();
    auto by = std::make_shared<std::string>("team");
    auto format = std::make_shared<std::string>("table");
    auto transitions = std::make_shared<bool>(false);
    add_io(cmd, *io);
    add_window(cmd, *win);
    cmd->add_option("--group-by", *by, "team, game, or game-team")
        ->check(CLI::IsMember({"team", "game", "game-team"}));
    add_format(cmd, *format);
    cmd->add_flag("--transitions", *transitions, "also dump transition counts");
    cmd->callback([&action, io, win, by, format, transitions] {
      action = [io, win, by, format, transitions] {
        return run_profile(*io, *win, *by, *format, *transitions);
      };
    });
  }

  // entropy
  {
    CLI::App* cmd = app.add_subcommand("entropy", "entropy measures");
    auto io = std::make_shared<IoOptions>();
    auto win = std::make_shared<WindowOptions>();
    auto by = std::make_shared<std::string>("team");
    auto format = std::make_shared<std::string>("table");
    add_io(cmd, *io);
    add_window(cmd, *win);
    cmd->add_option("--group-by", *by, "team, game, or game-team")
        ->check(CLI::IsMember({"team", "game", "game-team"}));
    add_format(cmd, *format);
    cmd->callback([&action, io, win, by, format] {
      action = [io, win, by, format] {
        return run_entropy(*io, *win, *by, *format);
      };
    });
  }

  // classify
  {
    CLI::App* cmd =
        app.add_subcommand("classify", "data-driven score partitions");
    auto io = std::make_shared<IoOptions>();
    auto win = std::make_shared<WindowOptions>();
    auto min_share = std::make_shared<double>(0.10);
    auto metric = std::make_shared<std::string>("se");
    auto per_team = std::make_shared<bool>(false);
    auto format = std::make_shared<std::string>("table");
    add_io(cmd, *io);
    add_window(cmd, *win);
    cmd->add_option("--min-share", *min_share, "minimum class share");
    cmd->add_option("--metric", *metric, "se, te, or rte")
        ->check(CLI::IsMember({"se", "te", "rte"}));
    cmd->add_flag("--per-team", *per_team, "one partition per team");
    add_format(cmd, *format);
    cmd->callback([&action, io, win, min_share, metric, per_team, format] {
      action = [io, win, min_share, metric, per_team, format] {
        return run_classify(*io, *win, *min_share, *metric, *per_team, *format);
      };
    });
  }

  // stats
  {
    CLI::App* cmd = app.add_subcommand("stats", "statistical protocol pieces");
    cmd->require_subcommand(1);

    CLI::App* corr =
        cmd->add_subcommand("correlation", "Spearman entropy vs points");
    {
      auto io = std::make_shared<IoOptions>();
      auto win = std::make_shared<WindowOptions>();
      auto target = std::make_shared<std::string>("points");
      auto format = std::make_shared<std::string>("table");
      add_io(corr, *io);
      add_window(corr, *win);
      corr->add_option("--target", *target, "points or pts-per-poss")
          ->check(CLI::IsMember({"points", "pts-per-poss"}));
      add_format(corr, *format);
      corr->callback([&action, io, win, target, format] {
        action = [io, win, target, format] {
          return run_stats_correlation(*io, *win, *target, *format);
        };
      });
    }

    CLI::App* wl =
        cmd->add_subcommand("winner-loser", "paired winner/loser entropies");
    {
      auto io = std::make_shared<IoOptions>();
      auto win = std::make_shared<WindowOptions>();
      auto format = std::make_shared<std::string>("table");
      add_io(wl, *io);
      add_window(wl, *win);
      add_format(wl, *format);
      wl->callback([&action, io, win, format] {
        action = [io, win, format] {
          return run_stats_winner_loser(*io, *win, *format);
        };
      });
    }

    CLI::App* cc = cmd->add_subcommand(
        "class-compare", "per-team class entropies and points per possession");
    {
      auto io = std::make_shared<IoOptions>();
      auto win = std::make_shared<WindowOptions>();
      auto min_share = std::make_shared<double>(0.10);
      auto metric = std::make_shared<std::string>("se");
      auto from = std::make_shared<std::string>();
      auto format = std::make_shared<std::string>("table");
      add_io(cc, *io);
      add_window(cc, *win);
      cc->add_option("--min-share", *min_share, "minimum class share");
      cc->add_option("--metric", *metric, "se, te, or rte")
          ->check(CLI::IsMember({"se", "te", "rte"}));
      cc->add_option("--from", *from, "classify --format json output to reuse");
      add_format(cc, *format);
      cc->callback([&action, io, win, min_share, metric, from, format] {
        action = [io, win, min_share, metric, from, format] {
          return run_stats_class_compare(*io, *win, *min_share, *metric, *from,
                                         *format);
        };
      });
    }

    CLI::App* chi = cmd->add_subcommand(
        "profile-chisq", "profile independence across fixed score classes");
    {
      auto io = std::make_shared<IoOptions>();
      auto win = std::make_shared<WindowOptions>();
      auto format = std::make_shared<std::string>("table");
      add_io(chi, *io);
      add_window(chi, *win);
      add_format(chi, *format);
      chi->callback([&action, io, win, format] {
        action = [io, win, format] {
          return run_stats_profile_chisq(*io, *win, *format);
        };
      });
    }
  }

  // report
  {
    CLI::App* cmd = app.add_subcommand("report", "full analysis directory");
    auto io = std::make_shared<IoOptions>();
    auto win = std::make_shared<WindowOptions>();
    auto min_share = std::make_shared<double>(0.10);
    auto metric = std::make_shared<std::string>("se");
    auto portable = std::make_shared<bool>(false);
    auto out_dir = std::make_shared<std::string>();
    add_io(cmd, *io);
    add_window(cmd, *win);
    cmd->add_option("-o,--out", *out_dir, "output directory")->required();
    cmd->add_option("--min-share", *min_share, "minimum class share");
    cmd->add_option("--metric", *metric, "se, te, or rte")
        ->check(CLI::IsMember({"se", "te", "rte"}));
    cmd->add_flag("--portable", *portable,
                  "record only file names, not full paths");
    cmd->callback([&action, io, win, min_share, metric, portable, out_dir] {
      action = [io, win, min_share, metric, portable, out_dir] {
        return run_report(*io, *win, *min_share, *metric, *portable, *out_dir);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
