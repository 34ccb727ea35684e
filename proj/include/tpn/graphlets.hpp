#pragma once

#include <array>
#include <set>
#include <string>

#include "tpn/windowing.hpp"

// Graphlet state space for a rolling window's pass sequence. A window's
// holders (passer of the first pass, then each receiver) are relabeled by
// order of first appearance, giving a canonical walk label. Windows with no
// passes are "1"; windows with one to three passes map onto one of the eight
// explicit labels; anything longer is pooled into "other".

namespace tpn {

enum class GraphletState : int {
  s1 = 0,
  s12 = 1,
  s121 = 2,
  s123 = 3,
  s1212 = 4,
  s1213 = 5,
  s1231 = 6,
  s1232 = 7,
  s1234 = 8,
  other = 9,
};

inline constexpr int kStateCount = 10;

inline constexpr std::array<const char*, kStateCount> kStateLabels = {
    "1", "12", "121", "123", "1212", "1213", "1231", "1232", "1234", "other"};

inline const char* label_of(GraphletState s) {
  return kStateLabels[static_cast<int>(s)];
}

inline std::optional<GraphletState> state_from_label(std::string_view label) {
  for (int i = 0; i < kStateCount; ++i)
    if (label == kStateLabels[i]) return static_cast<GraphletState>(i);
  return std::nullopt;
}

class GraphletError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Canonical relabeling of a holder sequence: holders become 1, 2, ... in
// order of first appearance. Sequences with more than four holders (four
// passes and up) are all "other", so relabeling stops being needed there.
inline GraphletState state_of_holders(const std::vector<int>& holders) {
  const std::size_t passes = holders.empty() ? 0 : holders.size() - 1;
  if (passes == 0) return GraphletState::s1;
  if (passes > 3) return GraphletState::other;
  std::array<int, 8> seen{};
  std::size_t seen_n = 0;
  std::string label;
  for (int h : holders) {
    std::size_t rank = 0;
    while (rank < seen_n && seen[rank] != h) ++rank;
    if (rank == seen_n) seen[seen_n++] = h;
    label.push_back(static_cast<char>('1' + rank));
  }
  auto state = state_from_label(label);
  if (!state) throw GraphletError("unclassifiable holder sequence " + label);
  return *state;
}

}  // namespace detail

// Classifies one window of a possession. The pass chain inside the window
// must be consistent (each receiver passes next); a break means the
// possession data is corrupt.
inline GraphletState classify(const Possession& poss, const TimeWindow& win) {
  if (win.event_count() == 0) return GraphletState::s1;
  std::vector<int> holders;
  holders.reserve(win.event_count() + 1);
  std::vector<std::string_view> players;
  auto holder_id = [&](std::string_view name) {
    for (std::size_t i = 0; i < players.size(); ++i)
      if (players[i] == name) return static_cast<int>(i);
    players.push_back(name);
    return static_cast<int>(players.size() - 1);
  };
  for (std::size_t i = win.first_event; i < win.last_event; ++i) {
    const PassEvent& ev = poss.events[i];
    if (i == win.first_event) {
      holders.push_back(holder_id(ev.passer));
    } else if (poss.events[i - 1].receiver != ev.passer) {
      throw GraphletError("pass chain broken inside window [" +
                          format_time_ms(win.begin_ms) + ", " +
                          format_time_ms(win.end_ms) + "] of possession '" +
                          poss.possession_id + "'");
    }
    if (ev.passer == ev.receiver)
      throw GraphletError("self-pass in possession '" + poss.possession_id + "'");
    holders.push_back(holder_id(ev.receiver));
  }
  return detail::state_of_holders(holders);
}

// One state per window, in window order. Possessions shorter than delta
// yield an empty sequence.
inline std::vector<GraphletState> state_sequence(const Possession& poss,
                                                 const WindowParams& wp) {
  std::vector<GraphletState> out;
  for (const TimeWindow& win : windows_of(poss, wp)) out.push_back(classify(poss, win));
  return out;
}

using FeasibilityMatrix = std::array<std::array<bool, kStateCount>, kStateCount>;

namespace detail {

// All canonical holder sequences with the given pass count: first holder is
// 1, consecutive holders differ, and a holder may exceed the running maximum
// by at most one (first-appearance numbering).
inline void canonical_sequences(std::size_t passes, std::vector<std::vector<int>>& out) {
  std::vector<int> seq{1};
  auto extend = [&](auto&& self) -> void {
    if (seq.size() == passes + 1) {
      out.push_back(seq);
      return;
    }
    int max_seen = 0;
    for (int h : seq) max_seen = std::max(max_seen, h);
    for (int next = 1; next <= max_seen + 1; ++next) {
      if (next == seq.back()) continue;
      seq.push_back(next);
      self(self);
      seq.pop_back();
    }
  };
  extend(extend);
  }

// States reachable from a concrete holder sequence when the window slides
// one stride: the oldest pass may leave the front, a new pass (to a player
// already in the window or a fresh one) may join the back, both, or
// neither. Gaps above tau guarantee at most one event per edge.
inline std::set<GraphletState> successor_states(const std::vector<int>& holders) {
  std::set<GraphletState> out;
  auto appends = [&](const std::vector<int>& seq) {
    if (seq.empty()) return;
    std::set<int> candidates(seq.begin(), seq.end());
    int fresh = 0;
    for (int h : seq) fresh = std::max(fresh, h);
    candidates.insert(fresh + 1);
    candidates.erase(seq.back());
    for (int next : candidates) {
      std::vector<int> grown = seq;
      grown.push_back(next);
      out.insert(state_of_holders(grown));
    }
  };
  out.insert(state_of_holders(holders));
  appends(holders);
  if (holders.size() >= 2) {
    std::vector<int> dropped(holders.begin() + 1, holders.end());
    out.insert(state_of_holders(dropped));
    appends(dropped);
  }
  return out;
}

// Union of successor states over every sequence carrying the given number
// of passes.
inline std::set<GraphletState> successors_for_length(std::size_t passes) {
  std::vector<std::vector<int>> seqs;
  canonical_sequences(passes, seqs);
  std::set<GraphletState> out;
  for (const auto& s : seqs) {
    auto succ = successor_states(s);
    out.insert(succ.begin(), succ.end());
  }
  return out;
}

inline FeasibilityMatrix build_feasibility_matrix() {
  FeasibilityMatrix m{};
  for (int i = 0; i < kStateCount; ++i) {
    auto state = static_cast<GraphletState>(i);
    std::set<GraphletState> succ;
    if (state == GraphletState::other) {
      // "other" pools every sequence of four or more passes; four and five
      // passes already exhaust the reachable labels (see
      // feasibility_closed_at()).
      succ = successors_for_length(4);
      auto five = successors_for_length(5);
      succ.insert(five.begin(), five.end());
    } else if (state == GraphletState::s1) {
      succ = successor_states({1});
    } else {
      std::vector<int> rep;
      for (const char* c = kStateLabels[i]; *c; ++c) rep.push_back(*c - '0');
      succ = successor_states(rep);
    }
    if (succ.empty())
      throw GraphletError(std::string("state ") + label_of(state) +
                          " has no feasible successors");
    for (GraphletState s : succ) m[i][static_cast<int>(s)] = true;
  }
  return m;
}

}  // namespace detail

// Feasible one-stride transitions between states, derived once from the
// slide-edit enumeration above.
inline const FeasibilityMatrix& feasibility_matrix() {
  static const FeasibilityMatrix m = detail::build_feasibility_matrix();
  return m;
}

inline std::vector<GraphletState> feasible_successors(GraphletState from) {
  const auto& m = feasibility_matrix();
  std::vector<GraphletState> out;
  for (int j = 0; j < kStateCount; ++j)
    if (m[static_cast<int>(from)][j]) out.push_back(static_cast<GraphletState>(j));
  return out;
}

inline bool transition_feasible(GraphletState from, GraphletState to) {
  return feasibility_matrix()[static_cast<int>(from)][static_cast<int>(to)];
}

// Confirms the "other" pool is closed: sequences of max_passes contribute no
// successor label beyond those of four- and five-pass sequences.
inline bool feasibility_closed_at(std::size_t max_passes) {
  auto base = detail::successors_for_length(4);
  auto five = detail::successors_for_length(5);
  base.insert(five.begin(), five.end());
  for (std::size_t p = 6; p <= max_passes; ++p) {
    auto more = detail::successors_for_length(p);
    for (GraphletState s : more)
      if (!base.count(s)) return false;
  }
  return true;
}

}  // namespace tpn
