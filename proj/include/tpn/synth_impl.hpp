#pragma once

// Implementation half of tpn/synth.hpp. Kept separate so the interface stays
// readable; include tpn/synth.hpp, never this file.

#include <cstdio>

namespace tpn {
namespace synth_detail {

struct PossPlan {
  enum class Kind { single, pair, filler };
  Kind kind = Kind::filler;
  std::string label;  // single
  EditPlan edit;      // pair
  bool fixed_score = false;
  int relative_score = 0;
  int points = 0;
};

inline Possession realize(const PossPlan& plan, const std::string& team,
                          const SynthSpec& spec, Rng& rng) {
  Possession poss;
  switch (plan.kind) {
    case PossPlan::Kind::single: {
      Possession built;
      built.team = team;
      built.end_ms = spec.params.delta_ms;
      std::vector<int> holders;
      if (plan.label == "other") {
        holders = {1, 2, 3, 4, 5};
      } else {
        for (char c : plan.label) holders.push_back(c - '0');
      }
      for (std::size_t k = 1; k < holders.size(); ++k)
        push_pass(built, static_cast<Millis>(k) * 2 * spec.params.tau_ms,
                  holders[k - 1], holders[k]);
      poss = std::move(built);
      break;
    }
    case PossPlan::Kind::pair: {
      poss.team = team;
      poss.end_ms = spec.params.delta_ms + spec.params.tau_ms;
      const Millis tau = spec.params.tau_ms;
      const Millis inset = (2 * tau / 5) / 10 * 10;
      std::size_t k = 0;
      for (std::size_t i = 1; i < plan.edit.first.size(); ++i) {
        Millis t;
        if (plan.edit.drop && i == 1) {
          t = inset;
        } else {
          ++k;
          t = static_cast<Millis>(k) * 2 * tau;
        }
        push_pass(poss, t, plan.edit.first[i - 1], plan.edit.first[i]);
      }
      if (plan.edit.append_to != 0)
        push_pass(poss, spec.params.delta_ms + inset, plan.edit.first.back(),
                  plan.edit.append_to);
      break;
    }
    case PossPlan::Kind::filler: {
      poss.team = team;
      const Millis len =
          rng.between(spec.len_min_ms / 10, spec.len_max_ms / 10) * 10;
      poss.end_ms = len;
      int holder = 1 + static_cast<int>(rng.between(0, 4));
      const bool stall = rng.below(100) < 12;  // one-man show, no passes
      Millis t = stall ? len : rng.between(30, 250) * 10;
      const Millis gap_lo = std::max(spec.gap_min_ms, spec.params.tau_ms + 10);
      int passes = 0;
      while (t <= len - 100 && passes < 40) {
        int next = 1 + static_cast<int>(rng.between(0, 3));
        if (next >= holder) ++next;  // uniform over the other four players
        push_pass(poss, t, holder, next);
        holder = next;
        t += rng.between(gap_lo / 10, 400) * 10;
        ++passes;
      }
      break;
    }
  }
  return poss;
}

inline int sample_points(Rng& rng) {
  const std::uint64_t u = rng.below(100);
  if (u < 55) return 0;
  if (u < 61) return 1;
  if (u < 85) return 2;
  return 3;
}

// Shift a built possession onto the game timeline and stamp identifiers.
inline void place(Possession& poss, const std::string& game_id, int index,
                  Millis start) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%s-%03d", game_id.c_str(), index);
  const Millis length = poss.end_ms;
  poss.game_id = game_id;
  poss.possession_id = buf;
  poss.start_ms = start;
  poss.end_ms = start + length;
  for (PassEvent& ev : poss.events) {
    ev.game_id = game_id;
    ev.possession_id = poss.possession_id;
    ev.time_ms += start;
  }
}

inline void pair_of_teams(const SynthSpec& spec, int game,
                          std::string& team_a, std::string& team_b) {
  const int t = static_cast<int>(spec.teams.size());
  team_a = spec.teams[static_cast<std::size_t>((2 * game) % t)];
  team_b = spec.teams[static_cast<std::size_t>((2 * game + 1) % t)];
}

inline GameRecord finish_game(std::string game_id, std::string team_a,
                              std::string team_b,
                              std::vector<Possession> possessions) {
  GameRecord game;
  game.game_id = std::move(game_id);
  game.team_a = std::move(team_a);
  game.team_b = std::move(team_b);
  for (const Possession& poss : possessions) {
    if (poss.team == game.team_a) game.final_score_a += poss.points_scored;
    if (poss.team == game.team_b) game.final_score_b += poss.points_scored;
  }
  game.possessions = std::move(possessions);
  return game;
}

inline std::string format_fraction(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline SynthResult finalize(const SynthSpec& spec, const std::string& mode,
                            bool coverage, std::vector<GameRecord> games,
                            const std::string& extra) {
  SynthResult result;
  result.truth.coverage_block = coverage;
  for (GameRecord& game : games) {
    for (const Possession& poss : game.possessions) {
      SynthTeamTruth& team = result.truth.teams[poss.team];
      ++team.possessions;
      count_states(poss, spec.params, team);
    }
    result.dataset.games.push_back(std::move(game));
  }
  for (const auto& [name, team] : result.truth.teams) {
    (void)name;
    result.truth.possessions += team.possessions;
    result.truth.retained += team.retained;
  }

  std::ostringstream out;
  out << "tpn synthetic dataset\n";
  out << "mode=" << mode << "\n";
  out << "seed=" << spec.seed << "\n";
  out << "games=" << spec.n_games << "\n";
  out << "teams=";
  for (std::size_t i = 0; i < spec.teams.size(); ++i)
    out << (i ? "," : "") << spec.teams[i];
  out << "\n";
  out << "delta_ms=" << spec.params.delta_ms << "\n";
  out << "tau_ms=" << spec.params.tau_ms << "\n";
  out << "gap_min_ms=" << spec.gap_min_ms << "\n";
  out << "length_ms=" << spec.len_min_ms << ".." << spec.len_max_ms << "\n";
  out << "coverage_block=" << (coverage ? "yes" : "no") << "\n";
  out << "possessions=" << result.truth.possessions << "\n";
  out << "retained=" << result.truth.retained << "\n";
  const double fraction =
      result.truth.possessions
          ? static_cast<double>(result.truth.retained) /
                static_cast<double>(result.truth.possessions)
          : 0.0;
  out << "retained_fraction=" << format_fraction(fraction) << "\n";
  for (const auto& [name, team] : result.truth.teams) {
    out << "team=" << name << " possessions=" << team.possessions
        << " retained=" << team.retained << " windows=" << team.windows
        << " states=";
    for (int i = 0; i < kStateCount; ++i)
      out << (i ? "," : "") << team.state_counts[static_cast<std::size_t>(i)];
    out << "\n";
  }
  out << extra;
  result.manifest = out.str();
  return result;
}

// --- standard mode -----------------------------------------------------------

inline SynthResult generate_standard(const SynthSpec& spec) {
  Rng rng(spec.seed);
  const bool coverage = pair_construction_fits(spec);
  std::vector<std::vector<EditPlan>> queue(static_cast<std::size_t>(spec.n_games));
  if (coverage) {
    int i = 0;
    for (const auto& [key, plan] : transition_plans()) {
      (void)key;
      queue[static_cast<std::size_t>(i % spec.n_games)].push_back(plan);
      ++i;
    }
  }

  std::vector<GameRecord> games;
  for (int g = 0; g < spec.n_games; ++g) {
    std::string team_a, team_b;
    pair_of_teams(spec, g, team_a, team_b);
    char gid[16];
    std::snprintf(gid, sizeof(gid), "G%02d", g + 1);
    const std::string game_id = gid;
    auto& plans = queue[static_cast<std::size_t>(g)];
    const int total = spec.possessions_per_game + static_cast<int>(plans.size());
    std::size_t next_plan = 0;
    int score_a = 0;
    int score_b = 0;
    Millis t = rng.between(0, 300) * 10;
    std::vector<Possession> possessions;
    for (int s = 0; s < total; ++s) {
      const bool side_a = (s % 2 == 0);
      const std::string& team = side_a ? team_a : team_b;
      PossPlan plan;
      if (next_plan < plans.size()) {
        plan.kind = PossPlan::Kind::pair;
        plan.edit = plans[next_plan++];
      }
      Possession poss = realize(plan, team, spec, rng);
      poss.relative_score = side_a ? score_a - score_b : score_b - score_a;
      poss.points_scored = sample_points(rng);
      place(poss, game_id, s + 1, t);
      t = poss.end_ms + rng.between(200, 800) * 10;
      (side_a ? score_a : score_b) += poss.points_scored;
      possessions.push_back(std::move(poss));
    }
    games.push_back(finish_game(game_id, team_a, team_b, std::move(possessions)));
  }
  return finalize(spec, "standard", coverage, std::move(games), "");
}

// --- target-profile mode ------------------------------------------------------

inline std::array<int, kStateCount> apportion(
    const std::array<double, kStateCount>& shares, int n) {
  std::array<int, kStateCount> counts{};
  std::array<double, kStateCount> frac{};
  int assigned = 0;
  for (int i = 0; i < kStateCount; ++i) {
    const double exact = shares[static_cast<std::size_t>(i)] * n;
    counts[static_cast<std::size_t>(i)] = static_cast<int>(exact + 1e-9);
    frac[static_cast<std::size_t>(i)] =
        exact - counts[static_cast<std::size_t>(i)];
    assigned += counts[static_cast<std::size_t>(i)];
  }
  std::array<int, kStateCount> order{};
  for (int i = 0; i < kStateCount; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return frac[static_cast<std::size_t>(a)] > frac[static_cast<std::size_t>(b)];
  });
  for (int k = 0; k < n - assigned; ++k)
    ++counts[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  return counts;
}

inline SynthResult generate_target(const SynthSpec& spec) {
  const auto& target = *spec.target_profile;
  double sum = 0.0;
  for (double v : target) {
    if (v < -1e-12) throw SynthError("target profile has a negative share");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw SynthError("target profile shares must sum to 1");
  if (spec.params.delta_ms < spec.len_min_ms ||
      spec.params.delta_ms > spec.len_max_ms)
    throw SynthError(
        "target profile mode needs the window span inside the possession "
        "length range");
  if (8 * spec.params.tau_ms > spec.params.delta_ms ||
      2 * spec.params.tau_ms < spec.gap_min_ms)
    throw SynthError(
        "target profile mode cannot place four passes on the stride grid "
        "under these parameters");

  Rng rng(spec.seed);
  const auto counts = apportion(target, spec.possessions_per_game);
  std::vector<std::string> labels;
  for (int i = 0; i < kStateCount; ++i)
    for (int c = 0; c < counts[static_cast<std::size_t>(i)]; ++c)
      labels.push_back(label_table()[static_cast<std::size_t>(i)]);

  std::vector<GameRecord> games;
  for (int g = 0; g < spec.n_games; ++g) {
    std::string team_a, team_b;
    pair_of_teams(spec, g, team_a, team_b);
    char gid[16];
    std::snprintf(gid, sizeof(gid), "G%02d", g + 1);
    const std::string game_id = gid;
    int score_a = 0;
    int score_b = 0;
    Millis t = rng.between(0, 300) * 10;
    std::vector<Possession> possessions;
    const int total = 2 * static_cast<int>(labels.size());
    for (int s = 0; s < total; ++s) {
      const bool side_a = (s % 2 == 0);
      PossPlan plan;
      plan.kind = PossPlan::Kind::single;
      plan.label = labels[static_cast<std::size_t>(s / 2)];
      Possession poss = realize(plan, side_a ? team_a : team_b, spec, rng);
      poss.relative_score = side_a ? score_a - score_b : score_b - score_a;
      poss.points_scored = sample_points(rng);
      place(poss, game_id, s + 1, t);
      t = poss.end_ms + rng.between(200, 800) * 10;
      (side_a ? score_a : score_b) += poss.points_scored;
      possessions.push_back(std::move(poss));
    }
    games.push_back(finish_game(game_id, team_a, team_b, std::move(possessions)));
  }

  std::ostringstream extra;
  extra << "target=";
  for (int i = 0; i < kStateCount; ++i)
    extra << (i ? "," : "") << format_fraction(target[static_cast<std::size_t>(i)]);
  extra << "\n";
  extra << "target_counts=";
  for (int i = 0; i < kStateCount; ++i)
    extra << (i ? "," : "") << counts[static_cast<std::size_t>(i)];
  extra << "\n";
  return finalize(spec, "target-profile", false, std::move(games), extra.str());
}

// --- planted mode --------------------------------------------------------------

// Weighted per-team transition lists. Sources sit in rows with enough
// distinct feasible targets inside each team's pool; richer teams get wider
// target fans, second appearances get denser pair slots, so all three
// entropies order the six team-games the same way the points do.
inline const std::vector<std::pair<int, int>>& planted_pairs(int team_index) {
  static const std::vector<std::pair<int, int>> lists[3] = {
      {{2, 1}, {2, 3}},
      {{2, 1}, {2, 3}, {2, 4}},
      {{3, 1}, {3, 2}, {3, 6}, {3, 7}, {3, 8}},
  };
  return lists[static_cast<std::size_t>(team_index)];
}

inline std::vector<int> mid_pattern(int mid_size) {
  std::vector<int> pattern;
  for (int s = 0; s < mid_size; ++s)
    for (int w = 0; w < mid_size - s; ++w) pattern.push_back(s);
  return pattern;
}

inline std::vector<PossPlan> planted_plans(
    const PlantedTeam& pt, int team_index, int appearance, int points_total,
    const std::map<std::pair<std::string, std::string>, EditPlan>& edits) {
  // 6 + 6 + 48 possessions per appearance: the two narrow classes hold an
  // exact 10% share each, so shrinking either planted class breaks the share
  // floor. The upper class pools to uniform state counts across both games
  // (offset cycling), so widening it can only dilute its entropy.
  const int n1 = 6;
  const int n2 = 6;
  const int n3 = 48;
  const auto& pairs = planted_pairs(team_index);
  for (const auto& [from, to] : pairs)
    if (from >= pt.pool_size || to >= pt.pool_size)
      throw SynthError("planted pool too small for team " + pt.name);
  const std::vector<int> pattern = mid_pattern(pt.mid_size);
  const int high_span = pt.f2 - pt.f1;

  std::vector<PossPlan> plans;
  auto single = [&](int state, int score) {
    PossPlan plan;
    plan.kind = PossPlan::Kind::single;
    plan.label = label_table()[static_cast<std::size_t>(state)];
    plan.fixed_score = true;
    plan.relative_score = score;
    plans.push_back(std::move(plan));
  };
  for (int i = 0; i < n1; ++i) single(0, pt.f1 - 1 - (i % 4));
  for (int i = 0; i < n2; ++i)
    single((appearance * 6 + i) % pt.pool_size,
           pt.f1 + ((appearance * 6 + i) % high_span));
  int singles = 0;
  int paired = 0;
  const int slot_mod = appearance == 0 ? 4 : 3;
  for (int i = 0; i < n3; ++i) {
    const int score = pt.f2 + (i % 6);
    if (i % slot_mod == slot_mod - 1) {
      const auto& [from, to] = pairs[static_cast<std::size_t>(paired++) % pairs.size()];
      PossPlan plan;
      plan.kind = PossPlan::Kind::pair;
      plan.edit = edits.at({label_table()[static_cast<std::size_t>(from)],
                            label_table()[static_cast<std::size_t>(to)]});
      plan.fixed_score = true;
      plan.relative_score = score;
      plans.push_back(std::move(plan));
    } else {
      single(pattern[static_cast<std::size_t>(singles++) %
                     pattern.size()],
             score);
    }
  }

  int left = points_total;
  for (PossPlan& plan : plans) {
    plan.points = std::min(3, left);
    left -= plan.points;
  }
  if (left != 0) throw SynthError("planted points total does not fit");
  return plans;
}

inline SynthResult generate_planted(const SynthSpec& spec) {
  if (spec.teams.size() != 3 || spec.n_games != 3 ||
      spec.planted_teams.size() != 3)
    throw SynthError("planted mode expects three teams and three games");
  for (std::size_t i = 0; i < 3; ++i) {
    const PlantedTeam& pt = spec.planted_teams[i];
    if (pt.name != spec.teams[i])
      throw SynthError("planted team order must match the team list");
    if (pt.f2 < pt.f1 + 2)
      throw SynthError("planted boundaries must leave a middle class");
    if (pt.pool_size < 1 || pt.pool_size > kStateCount ||
        pt.mid_size < 1 || pt.mid_size > pt.pool_size)
      throw SynthError("planted pool sizes out of range");
  }
  if (!pair_construction_fits(spec))
    throw SynthError("planted mode cannot realize transitions under these parameters");

  static const int kPoints[3][2] = {{52, 55}, {73, 76}, {96, 99}};
  const auto edits = transition_plans();
  Rng rng(spec.seed);

  std::array<int, 3> appearances{};
  std::vector<GameRecord> games;
  for (int g = 0; g < spec.n_games; ++g) {
    std::string team_a, team_b;
    pair_of_teams(spec, g, team_a, team_b);
    char gid[16];
    std::snprintf(gid, sizeof(gid), "G%02d", g + 1);
    const std::string game_id = gid;
    auto plans_for = [&](const std::string& team) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (spec.teams[k] != team) continue;
        const int q = appearances[k]++;
        return planted_plans(spec.planted_teams[k], static_cast<int>(k), q,
                             kPoints[k][q], edits);
      }
      throw SynthError("unknown planted team " + team);
    };
    std::vector<PossPlan> plan_a = plans_for(team_a);
    std::vector<PossPlan> plan_b = plans_for(team_b);

    std::vector<Possession> possessions;
    Millis t = 500;
    std::size_t ia = 0;
    std::size_t ib = 0;
    int index = 0;
    while (ia < plan_a.size() || ib < plan_b.size()) {
      const bool side_a =
          (ib >= plan_b.size()) || (ia < plan_a.size() && index % 2 == 0);
      const PossPlan& plan = side_a ? plan_a[ia++] : plan_b[ib++];
      Possession poss = realize(plan, side_a ? team_a : team_b, spec, rng);
      poss.relative_score = plan.relative_score;
      poss.points_scored = plan.points;
      place(poss, game_id, ++index, t);
      t = poss.end_ms + 3000;
      possessions.push_back(std::move(poss));
    }
    games.push_back(finish_game(game_id, team_a, team_b, std::move(possessions)));
  }

  std::ostringstream extra;
  for (std::size_t k = 0; k < 3; ++k) {
    const PlantedTeam& pt = spec.planted_teams[k];
    extra << "planted=" << pt.name << " f1=" << pt.f1 << " f2=" << pt.f2
          << " low=12 high=12 mid=96 points=" << kPoints[k][0] << "+"
          << kPoints[k][1] << "\n";
  }
  return finalize(spec, "planted", false, std::move(games), extra.str());
}

}  // namespace synth_detail

inline SynthResult generate(const SynthSpec& spec) {
  if (spec.teams.size() < 2) throw SynthError("need at least two teams");
  {
    std::vector<std::string> names = spec.teams;
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      throw SynthError("team names must be distinct");
  }
  if (spec.n_games < 1 || spec.n_games > 99)
    throw SynthError("game count must be between 1 and 99");
  if (spec.possessions_per_game < 1)
    throw SynthError("need at least one possession per game");
  check_window_params(spec.params);
  if (spec.len_min_ms <= 0 || spec.len_min_ms > spec.len_max_ms)
    throw SynthError("bad possession length range");
  if (spec.gap_min_ms <= 0) throw SynthError("bad minimum pass gap");
  if (spec.len_min_ms % 10 || spec.len_max_ms % 10 || spec.gap_min_ms % 10 ||
      spec.params.delta_ms % 10 || spec.params.tau_ms % 10)
    throw SynthError("synthetic timing works on a 10 ms grid");
  if (spec.planted) return synth_detail::generate_planted(spec);
  if (spec.target_profile) return synth_detail::generate_target(spec);
  return synth_detail::generate_standard(spec);
}

}  // namespace tpn
