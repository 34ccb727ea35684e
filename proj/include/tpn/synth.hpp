#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "tpn/graphlets.hpp"
#include "tpn/ingest.hpp"
#include "tpn/windowing.hpp"

// Deterministic synthetic data generator with a ground-truth manifest.
//
// Everything here is computed independently of the analysis modules: the
// generator carries its own window walk and walk-labeling code so the
// manifest can serve as an oracle for the pipeline under test. Randomness
// is drawn from mt19937_64 through hand-rolled samplers, which keeps output
// byte-identical across platforms and standard libraries.

namespace tpn {

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlantedTeam {
  std::string name;
  int f1 = 0;          // planted middle-class lower bound
  int f2 = 0;          // planted upper-class lower bound
  int pool_size = 10;  // distinct states used by the team's widest class
  int mid_size = 2;    // distinct states used by the narrow class
};

struct SynthSpec {
  std::uint64_t seed = 42;
  int n_games = 2;
  std::vector<std::string> teams;  // consumed pairwise per game
  WindowParams params{};           // retention/shape ground truth
  Millis len_min_ms = 2000;
  Millis len_max_ms = 16000;
  Millis gap_min_ms = 300;  // minimum inter-pass gap; must exceed tau
  int possessions_per_game = 110;
  std::optional<std::array<double, kStateCount>> target_profile;
  bool planted = false;             // planted relative-score signal mode
  std::vector<PlantedTeam> planted_teams;
};

struct SynthTeamTruth {
  std::int64_t possessions = 0;
  std::int64_t retained = 0;
  std::int64_t windows = 0;
  std::array<std::int64_t, kStateCount> state_counts{};
};

struct SynthTruth {
  std::int64_t possessions = 0;
  std::int64_t retained = 0;
  bool coverage_block = false;
  std::map<std::string, SynthTeamTruth> teams;
};

struct SynthResult {
  Dataset dataset;
  SynthTruth truth;
  std::string manifest;
};

namespace synth_detail {

// --- deterministic sampling ------------------------------------------------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::uint64_t next() { return gen(); }

  // Uniform on [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// --- generator-side walk labeling (kept separate from the checked modules) --

inline std::string walk_label(const std::vector<int>& holders) {
  if (holders.size() <= 1) return "1";
  if (holders.size() > 4) return "other";
  std::string label;
  std::vector<int> order;
  for (int h : holders) {
    std::size_t rank = 0;
    while (rank < order.size() && order[rank] != h) ++rank;
    if (rank == order.size()) order.push_back(h);
    label.push_back(static_cast<char>('1' + rank));
  }
  return label;
}

inline const std::array<std::string, kStateCount>& label_table() {
  static const std::array<std::string, kStateCount> t = {
      "1", "12", "121", "123", "1212", "1213", "1231", "1232", "1234", "other"};
  return t;
}

inline int label_index(const std::string& label) {
  const auto& t = label_table();
  for (int i = 0; i < kStateCount; ++i)
    if (t[i] == label) return i;
  throw SynthError("unknown label " + label);
}

// Naive window walk for ground truth: scans the full event list per window.
inline void count_states(const Possession& poss, const WindowParams& wp,
                         SynthTeamTruth& truth) {
  const Millis length = poss.duration_ms();
  if (length < wp.delta_ms) return;
  ++truth.retained;
  for (Millis begin = 0; begin + wp.delta_ms <= length; begin += wp.tau_ms) {
    std::vector<int> holders;
    std::vector<std::string> names;
    auto id_of = [&](const std::string& nm) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == nm) return static_cast<int>(i);
      names.push_back(nm);
      return static_cast<int>(names.size() - 1);
    };
    for (const PassEvent& ev : poss.events) {
      const Millis t = ev.time_ms - poss.start_ms;
      if (t < begin || t > begin + wp.delta_ms) continue;
      if (holders.empty()) holders.push_back(id_of(ev.passer));
      holders.push_back(id_of(ev.receiver));
    }
    ++truth.windows;
    ++truth.state_counts[label_index(walk_label(holders))];
  }
}

// --- slide-edit plans -------------------------------------------------------

// A two-window possession realizing one state transition: the first window
// holds `first`; sliding one stride optionally drops the oldest pass and
// optionally appends a pass to holder `append_to` (0 = none).
struct EditPlan {
  std::vector<int> first;
  bool drop = false;
  int append_to = 0;
};

inline void canonical_walks(std::size_t passes, std::vector<int>& seq,
                            std::vector<std::vector<int>>& out) {
  if (seq.size() == passes + 1) {
    out.push_back(seq);
    return;
  }
  int max_seen = 0;
  for (int h : seq) max_seen = std::max(max_seen, h);
  for (int next = 1; next <= max_seen + 1; ++next) {
    if (next == seq.back()) continue;
    seq.push_back(next);
    canonical_walks(passes, seq, out);
    seq.pop_back();
  }
}

inline std::vector<std::vector<int>> representative_walks() {
  std::vector<std::vector<int>> reps;
  for (const auto& label : label_table()) {
    if (label == "other") continue;
    std::vector<int> rep;
    for (char c : label) rep.push_back(c - '0');
    reps.push_back(std::move(rep));
  }
  for (std::size_t passes : {std::size_t{4}, std::size_t{5}}) {
    std::vector<int> seq{1};
    canonical_walks(passes, seq, reps);
  }
  return reps;
}

inline std::string plan_second_label(const EditPlan& plan) {
  std::vector<int> holders = plan.first;
  if (plan.drop) holders.erase(holders.begin());
  if (plan.append_to != 0) holders.push_back(plan.append_to);
  return walk_label(holders);
}

// One realizable plan per feasible (from, to) label pair, keyed by labels,
// first construction wins. Iteration order is deterministic.
inline std::map<std::pair<std::string, std::string>, EditPlan> transition_plans() {
  std::map<std::pair<std::string, std::string>, EditPlan> plans;
  auto offer = [&](EditPlan plan) {
    auto key = std::make_pair(walk_label(plan.first), plan_second_label(plan));
    plans.try_emplace(key, std::move(plan));
  };
  auto append_targets = [](const std::vector<int>& seq) {
    std::vector<int> targets;
    int fresh = 0;
    for (int h : seq) {
      fresh = std::max(fresh, h);
      if (h != seq.back() && std::find(targets.begin(), targets.end(), h) == targets.end())
        targets.push_back(h);
    }
    targets.push_back(fresh + 1);
    return targets;
  };
  for (const auto& rep : representative_walks()) {
    offer({rep, false, 0});
    for (int x : append_targets(rep)) offer({rep, false, x});
    if (rep.size() >= 2) {
      offer({rep, true, 0});
      std::vector<int> dropped(rep.begin() + 1, rep.end());
      for (int x : append_targets(dropped)) offer({rep, true, x});
    }
  }
  return plans;
}

// --- possession builders ----------------------------------------------------

inline std::string player_name(const std::string& team, int holder) {
  return team + "_p" + std::to_string(holder);
}

inline void push_pass(Possession& poss, Millis rel_ms, int from, int to) {
  PassEvent ev;
  ev.game_id = poss.game_id;
  ev.possession_id = poss.possession_id;
  ev.time_ms = poss.start_ms + rel_ms;
  ev.passer = player_name(poss.team, from);
  ev.receiver = player_name(poss.team, to);
  poss.events.push_back(std::move(ev));
}

// The pair construction needs a positive in-window inset and gaps above
// both tau and the configured minimum.
inline bool pair_construction_fits(const SynthSpec& spec) {
  const Millis tau = spec.params.tau_ms;
  const Millis inset = (2 * tau / 5) / 10 * 10;
  if (inset <= 0 || inset >= tau) return false;
  if (2 * tau - inset <= spec.params.tau_ms) return false;
  if (2 * tau - inset < spec.gap_min_ms) return false;
  if (2 * tau < spec.gap_min_ms) return false;
  return spec.len_max_ms >= spec.params.delta_ms + tau;
}

}  // namespace synth_detail

SynthResult generate(const SynthSpec& spec);

// Bundled demo configuration: two games, four teams, full coverage block.
inline SynthSpec demo_spec() {
  SynthSpec spec;
  spec.seed = 42;
  spec.n_games = 2;
  spec.teams = {"Lions", "Sharks", "Eagles", "Wolves"};
  spec.possessions_per_game = 110;
  return spec;
}

// Planted-signal configuration: three teams with increasing state diversity,
// team points tied to that ordering, and per-team score classes whose
// boundaries the partition search must recover.
inline SynthSpec planted_spec() {
  SynthSpec spec;
  spec.seed = 7;
  spec.n_games = 3;
  spec.teams = {"Ants", "Bison", "Cranes"};
  spec.planted = true;
  spec.planted_teams = {
      {"Ants", -4, 2, 4, 2},
      {"Bison", -2, 3, 7, 3},
      {"Cranes", -3, 4, 10, 4},
  };
  return spec;
}

}  // namespace tpn

#include "tpn/synth_impl.hpp"
