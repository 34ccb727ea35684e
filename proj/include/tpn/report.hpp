#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "tpn/entropy.hpp"
#include "tpn/scorepart.hpp"
#include "tpn/stats.hpp"

// Full analysis run over one dataset, rendered into a fixed set of text and
// CSV files. Output is byte-deterministic for a given dataset and options:
// iteration orders are pinned, all numbers go through fixed printf formats,
// and nothing depends on locale or pointer order.

namespace tpn {

struct ReportOptions {
  WindowParams params{};
  double min_share = 0.10;
  Metric metric = Metric::se;
  bool portable = false;  // strip directories from recorded input paths
  std::string events_path;
  std::string possessions_path;
};

struct ReportOutputs {
  // file name -> file content, e.g. "report.txt", "game_entropy.csv"
  std::map<std::string, std::string> files;
};

namespace report_detail {

inline std::string num(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

inline std::string opt_num(const std::optional<double>& v, int prec = 6) {
  return v ? num(*v, prec) : std::string();
}

inline std::string path_leaf(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

inline std::string bound_str(int v) {
  if (v == kScoreOpenLow || v == kScoreOpenHigh) return std::string();
  return std::to_string(v);
}

// One team's numbers within one game, the base observation of the protocol.
struct GameTeam {
  std::string game_id;
  std::string team;
  std::int64_t possessions = 0;
  std::int64_t windowed = 0;
  std::int64_t windows = 0;
  std::int64_t points = 0;
  std::optional<EntropyReport> entropy;
};

inline std::vector<GameTeam> game_teams(const Dataset& ds,
                                        const ReportOptions& opt) {
  std::vector<GameTeam> out;
  for (const GameRecord& game : ds.games) {
    for (const std::string& team : {game.team_a, game.team_b}) {
      GameTeam gt;
      gt.game_id = game.game_id;
      gt.team = team;
      std::vector<Possession> mine;
      for (const Possession& poss : game.possessions) {
        if (poss.team != team) continue;
        ++gt.possessions;
        gt.points += poss.points_scored;
        mine.push_back(poss);
      }
      Profile prof = profile_of(mine, opt.params, game.game_id + "/" + team);
      gt.windowed = prof.n_windowed_possessions;
      gt.windows = prof.n_windows;
      if (prof.n_windows > 0) {
        EntropyReport rep = entropies(stochastic_view(prof));
        gt.entropy = normalized(rep);
      }
      out.push_back(std::move(gt));
    }
  }
  return out;
}

struct ClassStats {
  std::string label;
  int lo = 0;
  int hi = 0;
  std::int64_t possessions = 0;
  std::int64_t windowed = 0;
  std::int64_t windows = 0;
  std::int64_t points = 0;
  Profile profile;
  std::optional<EntropyReport> entropy;
};

template <typename PossessionRange>
ClassStats class_stats(const ScoreClass& cls, const PossessionRange& range,
                       const WindowParams& wp) {
  ClassStats st;
  st.label = cls.label;
  st.lo = cls.lo;
  st.hi = cls.hi;
  std::vector<Possession> mine;
  for (const Possession& poss : range) {
    if (!cls.contains(poss.relative_score)) continue;
    ++st.possessions;
    st.points += poss.points_scored;
    mine.push_back(poss);
  }
  st.profile = profile_of(mine, wp, cls.label);
  st.windowed = st.profile.n_windowed_possessions;
  st.windows = st.profile.n_windows;
  if (st.profile.n_windows > 0)
    st.entropy = normalized(entropies(stochastic_view(st.profile)));
  return st;
}

inline double metric_of(const EntropyReport& rep, Metric metric) {
  switch (metric) {
    case Metric::se: return rep.se;
    case Metric::te: return rep.te;
    case Metric::rte: return rep.rte;
  }
  return rep.se;
}

}  // namespace report_detail

inline ReportOutputs build_report(const Dataset& ds, const ReportOptions& opt) {
  using namespace report_detail;
  check_window_params(opt.params);
  ReportOutputs out;

  const std::vector<GameTeam> teams = game_teams(ds, opt);
  const FeasibilityMatrix& feas = feasibility_matrix();
  const EntropyMaxima uniform_max = theoretical_maxima(feas);
  const EntropyMaxima stationary_max = theoretical_maxima_stationary(feas);
  const std::optional<double> retained = retained_fraction(ds, opt.params);
  const std::int64_t gaps = gap_violations(ds, opt.params);

  // ---- config.txt
  {
    std::ostringstream s;
    const std::string ev =
        opt.portable ? path_leaf(opt.events_path) : opt.events_path;
    const std::string po =
        opt.portable ? path_leaf(opt.possessions_path) : opt.possessions_path;
    s << "tool=tpn report\n";
    s << "events=" << ev << "\n";
    s << "possessions=" << po << "\n";
    s << "delta_ms=" << opt.params.delta_ms << "\n";
    s << "tau_ms=" << opt.params.tau_ms << "\n";
    s << "min_share=" << num(opt.min_share) << "\n";
    s << "metric=" << to_string(opt.metric) << "\n";
    s << "games=" << ds.games.size() << "\n";
    s << "possessions_total=" << ds.possession_count() << "\n";
    s << "events_total=" << ds.event_count() << "\n";
    s << "retained_fraction=" << (retained ? num(*retained) : "") << "\n";
    s << "gap_violations=" << gaps << "\n";
    out.files["config.txt"] = s.str();
  }

  // ---- game_entropy.csv
  {
    std::ostringstream s;
    s << "game_id,team,possessions,windowed,windows,points,pts_per_poss,"
         "se,te,rte,se_pct,te_pct,rte_pct\n";
    for (const GameTeam& gt : teams) {
      s << gt.game_id << "," << gt.team << "," << gt.possessions << ","
        << gt.windowed << "," << gt.windows << "," << gt.points << ",";
      s << (gt.possessions
                ? num(static_cast<double>(gt.points) /
                      static_cast<double>(gt.possessions))
                : "");
      if (gt.entropy) {
        s << "," << num(gt.entropy->se) << "," << num(gt.entropy->te) << ","
          << num(gt.entropy->rte) << "," << num(gt.entropy->se_norm_pct) << ","
          << num(gt.entropy->te_norm_pct) << "," << num(gt.entropy->rte_norm_pct);
      } else {
        s << ",,,,,,";
      }
      s << "\n";
    }
    out.files["game_entropy.csv"] = s.str();
  }

  // ---- correlations.csv
  std::map<std::pair<std::string, Metric>, TestResult> correlations;
  {
    std::ostringstream s;
    s << "target,metric,n,rho,p_value,method\n";
    for (const char* target : {"points", "pts_per_poss"}) {
      for (Metric metric : {Metric::se, Metric::te, Metric::rte}) {
        std::vector<double> x;
        std::vector<double> y;
        for (const GameTeam& gt : teams) {
          if (!gt.entropy || gt.possessions == 0) continue;
          x.push_back(metric_of(*gt.entropy, metric));
          y.push_back(std::string(target) == "points"
                          ? static_cast<double>(gt.points)
                          : static_cast<double>(gt.points) /
                                static_cast<double>(gt.possessions));
        }
        TestResult r = spearman(x, y, Alternative::two_sided);
        correlations.emplace(std::make_pair(std::string(target), metric), r);
        s << target << "," << to_string(metric) << "," << r.n << ","
          << opt_num(r.statistic) << "," << opt_num(r.p_value) << ","
          << to_string(r.method) << "\n";
      }
    }
    out.files["correlations.csv"] = s.str();
  }

  // ---- winner_loser.csv
  std::map<Metric, TestResult> winner_loser;
  std::int64_t tied_games = 0;
  {
    std::ostringstream s;
    s << "metric,pairs,ties_excluded,w,z,p_value,method\n";
    for (Metric metric : {Metric::se, Metric::te, Metric::rte}) {
      std::vector<double> winners;
      std::vector<double> losers;
      std::int64_t ties = 0;
      for (const GameRecord& game : ds.games) {
        if (game.final_score_a == game.final_score_b) {
          ++ties;
          continue;
        }
        const std::string& win_team = game.final_score_a > game.final_score_b
                                          ? game.team_a
                                          : game.team_b;
        std::optional<double> win, lose;
        for (const GameTeam& gt : teams) {
          if (gt.game_id != game.game_id || !gt.entropy) continue;
          (gt.team == win_team ? win : lose) = metric_of(*gt.entropy, metric);
        }
        if (win && lose) {
          winners.push_back(*win);
          losers.push_back(*lose);
        }
      }
      tied_games = ties;
      TestResult r =
          wilcoxon_signed_rank(winners, losers, Alternative::two_sided);
      winner_loser.emplace(metric, r);
      s << to_string(metric) << "," << winners.size() << "," << ties << ","
        << opt_num(r.statistic) << "," << opt_num(r.z_approx) << ","
        << opt_num(r.p_value) << "," << to_string(r.method) << "\n";
    }
    out.files["winner_loser.csv"] = s.str();
  }

  // ---- supervised_classes.csv
  std::vector<Possession> all;
  for (const GameRecord& game : ds.games)
    for (const Possession& poss : game.possessions) all.push_back(poss);
  std::vector<ClassStats> supervised;
  {
    std::ostringstream s;
    s << "class,lo,hi,possessions,windowed,windows,points,pts_per_poss,"
         "se,te,rte\n";
    for (const ScoreClass& cls : supervised_classes()) {
      ClassStats st = class_stats(cls, all, opt.params);
      s << st.label << "," << bound_str(st.lo) << "," << bound_str(st.hi)
        << "," << st.possessions << "," << st.windowed << "," << st.windows
        << "," << st.points << ",";
      s << (st.possessions
                ? num(static_cast<double>(st.points) /
                      static_cast<double>(st.possessions))
                : "");
      if (st.entropy) {
        s << "," << num(st.entropy->se) << "," << num(st.entropy->te) << ","
          << num(st.entropy->rte);
      } else {
        s << ",,,";
      }
      s << "\n";
      supervised.push_back(std::move(st));
    }
    out.files["supervised_classes.csv"] = s.str();
  }

  // ---- supervised_chisq.csv
  {
    std::ostringstream s;
    s << "class_a,class_b,n,df,chisq,p_value,method\n";
    for (std::size_t i = 0; i < supervised.size(); ++i) {
      for (std::size_t j = i + 1; j < supervised.size(); ++j) {
        s << supervised[i].label << "," << supervised[j].label << ",";
        if (supervised[i].windows == 0 || supervised[j].windows == 0) {
          s << ",,,,no data\n";
          continue;
        }
        std::vector<std::int64_t> a(supervised[i].profile.state_counts.begin(),
                                    supervised[i].profile.state_counts.end());
        std::vector<std::int64_t> b(supervised[j].profile.state_counts.begin(),
                                    supervised[j].profile.state_counts.end());
        TestResult r = chisq_independence(a, b);
        s << r.n << "," << (r.df ? std::to_string(*r.df) : "") << ","
          << opt_num(r.statistic) << "," << opt_num(r.p_value) << ","
          << to_string(r.method) << "\n";
      }
    }
    out.files["supervised_chisq.csv"] = s.str();
  }

  // ---- graphlet_profiles.csv
  std::map<std::string, Profile> team_profiles;
  for (const GameRecord& game : ds.games) {
    for (const std::string& team : {game.team_a, game.team_b}) {
      std::vector<Possession> mine;
      for (const Possession& poss : game.possessions)
        if (poss.team == team) mine.push_back(poss);
      Profile prof = profile_of(mine, opt.params, team);
      auto it = team_profiles.find(team);
      if (it == team_profiles.end())
        team_profiles.emplace(team, std::move(prof));
      else
        it->second = merge(it->second, prof);
    }
  }
  {
    std::ostringstream s;
    s << "team,windows";
    for (int i = 0; i < kStateCount; ++i)
      s << ",share_" << kStateLabels[static_cast<std::size_t>(i)];
    s << "\n";
    for (const auto& [team, prof] : team_profiles) {
      s << team << "," << prof.n_windows;
      for (int i = 0; i < kStateCount; ++i) {
        if (prof.n_windows > 0)
          s << ","
            << num(static_cast<double>(
                       prof.state_counts[static_cast<std::size_t>(i)]) /
                   static_cast<double>(prof.n_windows));
        else
          s << ",";
      }
      s << "\n";
    }
    out.files["graphlet_profiles.csv"] = s.str();
  }

  // ---- team_partitions.csv + class_compare.csv
  std::map<std::string, std::optional<PartitionChoice>> team_partitions;
  {
    std::ostringstream parts;
    std::ostringstream compare;
    parts << "team,possessions,f1,f2,lower_n,middle_n,upper_n,"
             "lower_h,middle_h,upper_h,objective,candidates\n";
    compare << "team,class,lo,hi,possessions,windowed,windows,points,"
               "pts_per_poss,entropy\n";
    std::map<std::string, std::vector<Possession>> by_team;
    for (const GameRecord& game : ds.games)
      for (const Possession& poss : game.possessions)
        by_team[poss.team].push_back(poss);
    for (const auto& [team, mine] : by_team) {
      std::optional<PartitionChoice> choice =
          best_partition(mine, opt.params, opt.metric, opt.min_share);
      parts << team << "," << mine.size();
      if (choice) {
        parts << "," << choice->partition.f1 << "," << choice->partition.f2;
        for (int c = 0; c < 3; ++c)
          parts << ","
                << choice->partition.possession_counts[static_cast<std::size_t>(c)];
        for (int c = 0; c < 3; ++c)
          parts << "," << num(choice->class_entropy[static_cast<std::size_t>(c)]);
        parts << "," << num(choice->objective) << ","
              << choice->candidates_evaluated;
        for (int c = 0; c < 3; ++c) {
          const ScoreClass& cls =
              choice->partition.classes[static_cast<std::size_t>(c)];
          ClassStats st = class_stats(cls, mine, opt.params);
          compare << team << "," << st.label << "," << bound_str(st.lo) << ","
                  << bound_str(st.hi) << "," << st.possessions << ","
                  << st.windowed << "," << st.windows << "," << st.points
                  << ",";
          compare << (st.possessions
                          ? num(static_cast<double>(st.points) /
                                static_cast<double>(st.possessions))
                          : "");
          compare << ","
                  << (st.entropy ? num(metric_of(*st.entropy, opt.metric))
                                 : "");
          compare << "\n";
        }
      } else {
        parts << ",,,,,,,,,,";
      }
      parts << "\n";
      team_partitions.emplace(team, std::move(choice));
    }
    out.files["team_partitions.csv"] = parts.str();
    out.files["class_compare.csv"] = compare.str();
  }

  // ---- report.txt
  {
    std::ostringstream s;
    s << "passing network temporal graphlet report\n";
    s << "=========================================\n\n";

    s << "dataset\n-------\n";
    s << "events: "
      << (opt.portable ? path_leaf(opt.events_path) : opt.events_path) << "\n";
    s << "possessions: "
      << (opt.portable ? path_leaf(opt.possessions_path) : opt.possessions_path)
      << "\n";
    s << "games: " << ds.games.size() << "  possessions: "
      << ds.possession_count() << "  events: " << ds.event_count() << "\n";
    s << "window: " << num(opt.params.delta_ms / 1000.0, 2) << " s, stride "
      << num(opt.params.tau_ms / 1000.0, 2) << " s\n";
    if (retained)
      s << "possessions kept (length >= window): "
        << num(*retained * 100.0, 2) << "%\n";
    s << "inter-pass gaps at or below the stride: " << gaps;
    if (gaps > 0)
      s << "  (warning: such passes can enter and leave adjacent windows in "
           "groups)";
    s << "\n\n";

    s << "state space and feasible transitions\n";
    s << "------------------------------------\n";
    s << "rows are the current window state, columns the next; 'x' marks a\n";
    s << "pair reachable by sliding one stride (drop the oldest pass, append\n";
    s << "a new one, both, or neither).\n\n";
    s << "        ";
    for (int j = 0; j < kStateCount; ++j)
      s << " " << kStateLabels[static_cast<std::size_t>(j)];
    s << "\n";
    for (int i = 0; i < kStateCount; ++i) {
      char row[16];
      std::snprintf(row, sizeof(row), "%8s",
                    kStateLabels[static_cast<std::size_t>(i)]);
      s << row;
      for (int j = 0; j < kStateCount; ++j) {
        const std::size_t width =
            std::string(kStateLabels[static_cast<std::size_t>(j)]).size();
        s << " " << std::string(width - 1, ' ')
          << (feas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                  ? 'x'
                  : '.');
      }
      s << "\n";
    }
    s << "\n";
    s << "entropy ceilings used for normalization\n";
    s << "  se_max  = log2(" << kStateCount
      << ") = " << num(uniform_max.se_max, 3) << " bits\n";
    s << "  uniform state weights:    te_max = " << num(uniform_max.te_max, 3)
      << " bits, rte_max = " << num(uniform_max.rte_max, 3) << " bits\n";
    s << "  stationary state weights: te_max = " << num(stationary_max.te_max, 3)
      << " bits, rte_max = " << num(stationary_max.rte_max, 3) << " bits\n\n";

    s << "per game and team\n-----------------\n";
    s << "game    team            poss  win'd  windows  points   se      te      rte     se%     te%     rte%\n";
    for (const GameTeam& gt : teams) {
      char line[256];
      if (gt.entropy) {
        std::snprintf(line, sizeof(line),
                      "%-7s %-15s %5lld %6lld %8lld %7lld %7.3f %7.3f %7.3f %7.2f %7.2f %7.2f\n",
                      gt.game_id.c_str(), gt.team.c_str(),
                      static_cast<long long>(gt.possessions),
                      static_cast<long long>(gt.windowed),
                      static_cast<long long>(gt.windows),
                      static_cast<long long>(gt.points), gt.entropy->se,
                      gt.entropy->te, gt.entropy->rte, gt.entropy->se_norm_pct,
                      gt.entropy->te_norm_pct, gt.entropy->rte_norm_pct);
      } else {
        std::snprintf(line, sizeof(line),
                      "%-7s %-15s %5lld %6lld %8lld %7lld %7s %7s %7s %7s %7s %7s\n",
                      gt.game_id.c_str(), gt.team.c_str(),
                      static_cast<long long>(gt.possessions),
                      static_cast<long long>(gt.windowed),
                      static_cast<long long>(gt.windows),
                      static_cast<long long>(gt.points), "-", "-", "-", "-",
                      "-", "-");
      }
      s << line;
    }
    s << "\n";

    s << "correlation with points (Spearman, two-sided)\n";
    s << "---------------------------------------------\n";
    for (const char* target : {"points", "pts_per_poss"}) {
      for (Metric metric : {Metric::se, Metric::te, Metric::rte}) {
        const TestResult& r =
            correlations.at(std::make_pair(std::string(target), metric));
        char line[160];
        std::snprintf(line, sizeof(line), "%-13s vs %-4s  n=%2zu  rho=%s  p=%s  (%s)\n",
                      target, to_string(metric), r.n,
                      r.statistic ? num(*r.statistic, 3).c_str() : "-",
                      r.p_value ? num(*r.p_value, 4).c_str() : "-",
                      to_string(r.method));
        s << line;
      }
    }
    s << "\n";

    s << "winners vs losers (Wilcoxon signed rank, two-sided)\n";
    s << "---------------------------------------------------\n";
    if (tied_games > 0)
      s << "tied games excluded: " << tied_games << "\n";
    for (Metric metric : {Metric::se, Metric::te, Metric::rte}) {
      const TestResult& r = winner_loser.at(metric);
      char line[160];
      std::snprintf(line, sizeof(line), "%-4s  n=%2zu  W=%s  z=%s  p=%s  (%s)\n",
                    to_string(metric), r.n,
                    r.statistic ? num(*r.statistic, 3).c_str() : "-",
                    r.z_approx ? num(*r.z_approx, 3).c_str() : "-",
                    r.p_value ? num(*r.p_value, 4).c_str() : "-",
                    to_string(r.method));
      s << line;
    }
    s << "\n";

    s << "fixed score classes (relative score at possession start)\n";
    s << "---------------------------------------------------------\n";
    s << "class        range        poss  windows   se      te      rte    pts/poss\n";
    for (const ClassStats& st : supervised) {
      std::string range;
      if (st.lo == kScoreOpenLow)
        range = "<= " + std::to_string(st.hi);
      else if (st.hi == kScoreOpenHigh)
        range = ">= " + std::to_string(st.lo);
      else
        range = std::to_string(st.lo) + " .. " + std::to_string(st.hi);
      char line[200];
      std::snprintf(
          line, sizeof(line), "%-12s %-12s %5lld %8lld %7s %7s %7s %9s\n",
          st.label.c_str(), range.c_str(),
          static_cast<long long>(st.possessions),
          static_cast<long long>(st.windows),
          st.entropy ? num(st.entropy->se, 3).c_str() : "-",
          st.entropy ? num(st.entropy->te, 3).c_str() : "-",
          st.entropy ? num(st.entropy->rte, 3).c_str() : "-",
          st.possessions ? num(static_cast<double>(st.points) /
                               static_cast<double>(st.possessions), 3)
                               .c_str()
                         : "-");
      s << line;
    }
    s << "\nprofile independence between classes (chi-squared on state counts)\n";
    for (std::size_t i = 0; i < supervised.size(); ++i) {
      for (std::size_t j = i + 1; j < supervised.size(); ++j) {
        if (supervised[i].windows == 0 || supervised[j].windows == 0) continue;
        std::vector<std::int64_t> a(supervised[i].profile.state_counts.begin(),
                                    supervised[i].profile.state_counts.end());
        std::vector<std::int64_t> b(supervised[j].profile.state_counts.begin(),
                                    supervised[j].profile.state_counts.end());
        TestResult r = chisq_independence(a, b);
        char line[200];
        std::snprintf(line, sizeof(line),
                      "  %-12s vs %-12s chi2=%s  df=%zu  p=%s\n",
                      supervised[i].label.c_str(), supervised[j].label.c_str(),
                      r.statistic ? num(*r.statistic, 3).c_str() : "-",
                      r.df ? *r.df : std::size_t{0},
                      r.p_value ? num(*r.p_value, 4).c_str() : "-");
        s << line;
      }
    }
    s << "\n";

    s << "data-driven score classes per team (metric: " << to_string(opt.metric)
      << ", min share: " << num(opt.min_share, 2) << ")\n";
    s << "--------------------------------------------------------------\n";
    for (const auto& [team, choice] : team_partitions) {
      if (!choice) {
        s << team << ": no valid partition\n";
        continue;
      }
      char line[256];
      std::snprintf(line, sizeof(line),
                    "%-15s f1=%d f2=%d  classes %lld/%lld/%lld  H=[%s %s %s]  spread=%s\n",
                    team.c_str(), choice->partition.f1, choice->partition.f2,
                    static_cast<long long>(choice->partition.possession_counts[0]),
                    static_cast<long long>(choice->partition.possession_counts[1]),
                    static_cast<long long>(choice->partition.possession_counts[2]),
                    num(choice->class_entropy[0], 3).c_str(),
                    num(choice->class_entropy[1], 3).c_str(),
                    num(choice->class_entropy[2], 3).c_str(),
                    num(choice->objective, 3).c_str());
      s << line;
    }
    out.files["report.txt"] = s.str();
  }

  return out;
}

inline void write_report(const ReportOutputs& outputs, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : outputs.files) {
    std::ofstream f(dir + "/" + name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + dir + "/" + name);
    f << content;
  }
}

}  // namespace tpn
