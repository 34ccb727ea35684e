#pragma once

#include <optional>

#include "tpn/model.hpp"

// Rolling analysis windows over a possession. Window k (0-based) covers the
// possession-relative interval [k*tau, k*tau + delta], inclusive on both
// ends; windows are emitted while the right edge stays within the
// possession. Possessions shorter than delta yield no windows.

namespace tpn {

struct WindowParams {
  Millis delta_ms = 6000;  // window width
  Millis tau_ms = 250;     // stride

  bool operator==(const WindowParams&) const = default;
};

class WindowingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeWindow {
  Millis begin_ms = 0;  // possession-relative, inclusive
  Millis end_ms = 0;    // possession-relative, inclusive
  std::size_t first_event = 0;  // index range into Possession::events
  std::size_t last_event = 0;   // one past the end

  std::size_t event_count() const { return last_event - first_event; }
};

inline void check_window_params(const WindowParams& wp) {
  if (wp.delta_ms <= 0 || wp.tau_ms <= 0)
    throw WindowingError("window parameters must be positive");
  if (wp.tau_ms > wp.delta_ms)
    throw WindowingError("stride tau exceeds window width delta");
}

// Expected number of windows: floor((L - delta)/tau) + 1 for L >= delta.
inline std::size_t window_count(Millis duration_ms, const WindowParams& wp) {
  check_window_params(wp);
  if (duration_ms < wp.delta_ms) return 0;
  return static_cast<std::size_t>((duration_ms - wp.delta_ms) / wp.tau_ms) + 1;
}

inline std::vector<TimeWindow> windows_of(const Possession& poss,
                                          const WindowParams& wp) {
  check_window_params(wp);
  std::vector<TimeWindow> out;
  const Millis length = poss.duration_ms();
  if (length < wp.delta_ms) return out;
  out.reserve(window_count(length, wp));

  std::size_t lo = 0;  // first event with relative time >= window begin
  std::size_t hi = 0;  // one past last event with relative time <= window end
  const auto& events = poss.events;
  for (Millis begin = 0; begin + wp.delta_ms <= length; begin += wp.tau_ms) {
    const Millis end = begin + wp.delta_ms;
    while (lo < events.size() && events[lo].time_ms - poss.start_ms < begin) ++lo;
    if (hi < lo) hi = lo;
    while (hi < events.size() && events[hi].time_ms - poss.start_ms <= end) ++hi;
    out.push_back({begin, end, lo, hi});
  }
  return out;
}

// Share of possessions long enough to carry at least one window.
inline std::optional<double> retained_fraction(const Dataset& ds,
                                               const WindowParams& wp) {
  check_window_params(wp);
  std::size_t total = 0;
  std::size_t kept = 0;
  for (const auto& g : ds.games)
    for (const auto& p : g.possessions) {
      ++total;
      if (p.duration_ms() >= wp.delta_ms) ++kept;
    }
  if (total == 0) return std::nullopt;
  return static_cast<double>(kept) / static_cast<double>(total);
}

// The model premise that consecutive windows differ by at most one event on
// each edge requires every inter-pass gap to exceed tau. Returns the number
// of gaps at or below tau so callers can warn instead of silently
// proceeding.
inline std::size_t gap_violations(const Possession& poss, const WindowParams& wp) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < poss.events.size(); ++i)
    if (poss.events[i].time_ms - poss.events[i - 1].time_ms <= wp.tau_ms) ++n;
  return n;
}

inline std::size_t gap_violations(const Dataset& ds, const WindowParams& wp) {
  std::size_t n = 0;
  for (const auto& g : ds.games)
    for (const auto& p : g.possessions) n += gap_violations(p, wp);
  return n;
}

}  // namespace tpn
