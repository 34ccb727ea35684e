#pragma once

#include <functional>
#include <limits>
#include <map>

#include "tpn/entropy.hpp"

// Grouping possessions by the relative score at which they were played.
// Two layouts: a fixed five-class split (balanced / small / large gaps) and
// an exhaustive search over three-class splits that maximizes the spread of
// a chosen entropy metric between classes.

namespace tpn {

class ScorePartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kScoreOpenLow = std::numeric_limits<int>::min();
inline constexpr int kScoreOpenHigh = std::numeric_limits<int>::max();

struct ScoreClass {
  std::string label;
  int lo = 0;  // inclusive; kScoreOpenLow when unbounded below
  int hi = 0;  // inclusive; kScoreOpenHigh when unbounded above

  bool contains(int score) const { return score >= lo && score <= hi; }
};

// The fixed split used for profile comparison: far behind, slightly behind,
// balanced, slightly ahead, far ahead.
inline std::vector<ScoreClass> supervised_classes() {
  return {
      {"far-behind", kScoreOpenLow, -10},
      {"behind", -9, -3},
      {"balanced", -2, 2},
      {"ahead", 3, 9},
      {"far-ahead", 10, kScoreOpenHigh},
  };
}

enum class Metric { se, te, rte };

inline const char* to_string(Metric m) {
  switch (m) {
    case Metric::se: return "se";
    case Metric::te: return "te";
    case Metric::rte: return "rte";
  }
  return "?";
}

inline std::optional<Metric> metric_from_string(std::string_view name) {
  if (name == "se") return Metric::se;
  if (name == "te") return Metric::te;
  if (name == "rte") return Metric::rte;
  return std::nullopt;
}

inline double metric_value(const EntropyReport& r, Metric m) {
  switch (m) {
    case Metric::se: return r.se;
    case Metric::te: return r.te;
    case Metric::rte: return r.rte;
  }
  return 0.0;
}

// Mean points scored per possession; absent for an empty set.
template <typename PossessionRange>
std::optional<double> class_performance(const PossessionRange& possessions) {
  std::int64_t points = 0;
  std::int64_t count = 0;
  for (const Possession& p : possessions) {
    points += p.points_scored;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(points) / static_cast<double>(count);
}

struct Partition {
  int f1 = 0;  // lower bound of the middle class
  int f2 = 0;  // lower bound of the upper class
  std::array<ScoreClass, 3> classes{};
  std::array<std::int64_t, 3> possession_counts{};
};

// Exhaustive boundary enumeration over the integer score grid
// f[1] .. f[n] (every integer between the lowest and highest observed
// relative score). f1 sweeps the values at positions 3 .. n-3, f2 from
// f1+2 to the value at position n-1; classes are [f[1], f1-1],
// [f1, f2-1], [f2, f[n]]. On small grids (n < 6) that index arithmetic
// walks out of range and the ranges invert, so we clamp out-of-range
// positions to the grid and let inverted ranges still sweep the values
// between their endpoints; tiny grids then degrade to "every split with
// enough data" rather than erroring. Candidates where any class holds
// less than min_share of all possessions are discarded.
template <typename PossessionRange>
std::vector<Partition> enumerate_partitions(const PossessionRange& possessions,
                                            double min_share = 0.10) {
  if (min_share <= 0.0 || min_share > 1.0 / 3.0)
    throw ScorePartError("min_share must lie in (0, 1/3]");

  std::map<int, std::int64_t> by_score;
  std::int64_t total = 0;
  for (const Possession& p : possessions) {
    ++by_score[p.relative_score];
    ++total;
  }
  std::vector<Partition> out;
  if (total == 0) return out;

  const int lo = by_score.begin()->first;
  const int hi = by_score.rbegin()->first;
  const std::int64_t n = static_cast<std::int64_t>(hi) - lo + 1;
  auto value_at = [&](std::int64_t pos) {  // 1-based, clamped to the grid
    pos = std::clamp<std::int64_t>(pos, 1, n);
    return lo + static_cast<int>(pos - 1);
  };
  auto count_range = [&](int a, int b) {
    std::int64_t c = 0;
    for (auto it = by_score.lower_bound(a); it != by_score.end() && it->first <= b; ++it)
      c += it->second;
    return c;
  };
  auto meets_share = [&](std::int64_t count) {
    return static_cast<double>(count) / static_cast<double>(total) + 1e-12 >= min_share;
  };

  const auto [f1_lo, f1_hi] = std::minmax({value_at(3), value_at(n - 3)});
  for (int f1 = f1_lo; f1 <= f1_hi; ++f1) {
    const auto [f2_lo, f2_hi] = std::minmax({f1 + 2, value_at(n - 1)});
    for (int f2 = f2_lo; f2 <= f2_hi; ++f2) {
      Partition part;
      part.f1 = f1;
      part.f2 = f2;
      part.classes = {ScoreClass{"lower", lo, f1 - 1},
                      ScoreClass{"middle", f1, f2 - 1},
                      ScoreClass{"upper", f2, hi}};
      bool ok = true;
      for (int c = 0; c < 3; ++c) {
        part.possession_counts[c] =
            count_range(part.classes[c].lo, part.classes[c].hi);
        if (part.possession_counts[c] == 0 || !meets_share(part.possession_counts[c]))
          ok = false;
      }
      if (ok) out.push_back(part);
    }
  }
  return out;
}

struct PartitionChoice {
  Partition partition;
  Metric metric = Metric::se;
  double objective = 0.0;                    // max minus min class entropy
  std::array<double, 3> class_entropy{};     // chosen metric, per class
  std::array<EntropyReport, 3> class_report{};
  std::array<Profile, 3> class_profile{};
  std::array<std::optional<double>, 3> class_pts_per_poss{};
  std::size_t candidates_evaluated = 0;
  std::size_t candidates_skipped = 0;  // a class had no retained windows
};

// Evaluates every admissible partition and keeps the one with the widest
// entropy spread; ties resolve to the lexicographically smallest (f1, f2).
// Candidates where a class retains no window (every possession shorter than
// delta) cannot be scored and are skipped.
template <typename PossessionRange>
std::optional<PartitionChoice> best_partition(const PossessionRange& possessions,
                                              const WindowParams& wp,
                                              Metric metric = Metric::se,
                                              double min_share = 0.10) {
  check_window_params(wp);
  std::vector<Partition> candidates = enumerate_partitions(possessions, min_share);
  if (candidates.empty()) return std::nullopt;

  // Profiles are additive, so aggregate per score value once and merge per
  // candidate class instead of re-walking possessions.
  std::map<int, Profile> profile_by_score;
  std::map<int, std::pair<std::int64_t, std::int64_t>> points_by_score;  // count, points
  for (const Possession& p : possessions) {
    auto [it, fresh] = profile_by_score.try_emplace(p.relative_score);
    if (fresh) {
      it->second.params = wp;
      it->second.key = std::to_string(p.relative_score);
    }
    it->second.add_possession(p);
    auto& [cnt, pts] = points_by_score[p.relative_score];
    ++cnt;
    pts += p.points_scored;
  }
  auto class_profile = [&](const ScoreClass& cls) {
    Profile merged;
    bool first = true;
    for (auto it = profile_by_score.lower_bound(cls.lo);
         it != profile_by_score.end() && it->first <= cls.hi; ++it) {
      merged = first ? it->second : merge(merged, it->second);
      first = false;
    }
    merged.key = cls.label;
    if (first) merged.params = wp;
    return merged;
  };

  std::optional<PartitionChoice> best;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  for (const Partition& cand : candidates) {
    PartitionChoice choice;
    choice.partition = cand;
    choice.metric = metric;
    bool scoreable = true;
    for (int c = 0; c < 3; ++c) {
      choice.class_profile[c] = class_profile(cand.classes[c]);
      if (choice.class_profile[c].n_windows == 0) {
        scoreable = false;
        break;
      }
      choice.class_report[c] = entropies(stochastic_view(choice.class_profile[c]));
      choice.class_entropy[c] = metric_value(choice.class_report[c], metric);
      std::int64_t cnt = 0;
      std::int64_t pts = 0;
      for (auto it = points_by_score.lower_bound(cand.classes[c].lo);
           it != points_by_score.end() && it->first <= cand.classes[c].hi; ++it) {
        cnt += it->second.first;
        pts += it->second.second;
      }
      choice.class_pts_per_poss[c] =
          cnt > 0 ? std::optional<double>(static_cast<double>(pts) /
                                          static_cast<double>(cnt))
                  : std::nullopt;
    }
    if (!scoreable) {
      ++skipped;
      continue;
    }
    ++evaluated;
    const auto [mn, mx] =
        std::minmax_element(choice.class_entropy.begin(), choice.class_entropy.end());
    choice.objective = *mx - *mn;
    if (!best || choice.objective > best->objective + 1e-12) best = choice;
    // Equal objectives keep the earlier candidate: enumeration order is
    // lexicographic in (f1, f2).
  }
  if (!best) return std::nullopt;
  best->candidates_evaluated = evaluated;
  best->candidates_skipped = skipped;
  return best;
}

}  // namespace tpn
