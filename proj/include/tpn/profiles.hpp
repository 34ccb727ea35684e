#pragma once

#include "tpn/graphlets.hpp"

// Markov-chain profiles over the graphlet state space. A Profile holds exact
// integer occurrence and transition counts so aggregation is lossless;
// probabilities appear only in the derived StochasticView.

namespace tpn {

class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Profile {
  std::string key;  // aggregation key (team, game, class label, ...)
  WindowParams params;
  std::array<std::int64_t, kStateCount> state_counts{};
  std::array<std::array<std::int64_t, kStateCount>, kStateCount> transition_counts{};
  std::int64_t n_windows = 0;
  std::int64_t n_possessions = 0;           // possessions aggregated
  std::int64_t n_windowed_possessions = 0;  // of those, with >= 1 window

  void add_possession(const Possession& poss) {
    ++n_possessions;
    auto states = state_sequence(poss, params);
    if (states.empty()) return;
    ++n_windowed_possessions;
    n_windows += static_cast<std::int64_t>(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
      ++state_counts[static_cast<int>(states[k])];
      if (k > 0)
        ++transition_counts[static_cast<int>(states[k - 1])]
                           [static_cast<int>(states[k])];
    }
  }
};

// Element-wise sum; transitions never straddle the merge boundary, so
// merging equals profiling the union of the underlying possessions.
inline Profile merge(const Profile& a, const Profile& b) {
  if (!(a.params == b.params))
    throw ProfileError("cannot merge profiles with different window parameters");
  Profile out = a;
  if (out.key != b.key) out.key = a.key.empty() ? b.key : a.key + "+" + b.key;
  for (int i = 0; i < kStateCount; ++i) {
    out.state_counts[i] += b.state_counts[i];
    for (int j = 0; j < kStateCount; ++j)
      out.transition_counts[i][j] += b.transition_counts[i][j];
  }
  out.n_windows += b.n_windows;
  out.n_possessions += b.n_possessions;
  out.n_windowed_possessions += b.n_windowed_possessions;
  return out;
}

template <typename PossessionRange>
Profile profile_of(const PossessionRange& possessions, const WindowParams& wp,
                   std::string key = {}) {
  check_window_params(wp);
  Profile p;
  p.key = std::move(key);
  p.params = wp;
  for (const Possession& poss : possessions) p.add_possession(poss);
  return p;
}

// Row-normalized probabilistic view of a profile. M is row-stochastic over
// observed source rows; M_restricted additionally zeroes the diagonal and
// renormalizes, isolating genuine state changes.
struct StochasticView {
  enum class RowKind { observed, unobserved, absorbing_only };

  std::array<double, kStateCount> p{};  // state occurrence distribution
  std::array<std::array<double, kStateCount>, kStateCount> M{};
  std::array<std::array<double, kStateCount>, kStateCount> M_restricted{};
  std::array<RowKind, kStateCount> row_kind{};
  std::int64_t n_windows = 0;
};

inline StochasticView stochastic_view(const Profile& profile) {
  if (profile.n_windows <= 0)
    throw ProfileError("profile has no windows; stochastic view undefined");
  StochasticView v;
  v.n_windows = profile.n_windows;
  for (int i = 0; i < kStateCount; ++i)
    v.p[i] = static_cast<double>(profile.state_counts[i]) /
             static_cast<double>(profile.n_windows);

  for (int i = 0; i < kStateCount; ++i) {
    std::int64_t row_total = 0;
    for (int j = 0; j < kStateCount; ++j) row_total += profile.transition_counts[i][j];
    if (row_total == 0) {
      v.row_kind[i] = StochasticView::RowKind::unobserved;
      continue;
    }
    for (int j = 0; j < kStateCount; ++j)
      v.M[i][j] = static_cast<double>(profile.transition_counts[i][j]) /
                  static_cast<double>(row_total);
    const std::int64_t off_diagonal = row_total - profile.transition_counts[i][i];
    if (off_diagonal == 0) {
      // Only self-transitions observed; the restricted row stays zero.
      v.row_kind[i] = StochasticView::RowKind::absorbing_only;
      continue;
    }
    v.row_kind[i] = StochasticView::RowKind::observed;
    for (int j = 0; j < kStateCount; ++j) {
      if (j == i) continue;
      v.M_restricted[i][j] = static_cast<double>(profile.transition_counts[i][j]) /
                             static_cast<double>(off_diagonal);
    }
  }
  return v;
}

}  // namespace tpn
