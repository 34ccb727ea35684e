#pragma once

#include <cmath>

#include "tpn/profiles.hpp"

// Shannon entropy (SE) of the state distribution, transition entropy (TE)
// of the chain, and restricted transition entropy (RTE) over the
// zero-diagonal matrix. All logarithms are base 2 (bits) and 0*log2(0) is
// taken as 0, so unobserved rows and empty restricted rows contribute
// nothing beyond their weight.

namespace tpn {

namespace detail {

inline double plog2p(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace detail

struct EntropyReport {
  double se = 0.0;
  double te = 0.0;
  double rte = 0.0;
  double se_max = 0.0;
  double te_max = 0.0;
  double rte_max = 0.0;
  double se_norm_pct = 0.0;
  double te_norm_pct = 0.0;
  double rte_norm_pct = 0.0;
};

struct EntropyMaxima {
  double se_max = 0.0;
  double te_max = 0.0;
  double rte_max = 0.0;
};

// Maximal values under the construction quoted with the model: every state
// equally likely and every row uniform over its feasible successors
// (feasible non-self successors for RTE). States whose restricted successor
// set is empty contribute zero, mirroring the absorbing-row convention.
inline EntropyMaxima theoretical_maxima(const FeasibilityMatrix& feasible) {
  EntropyMaxima m;
  m.se_max = std::log2(static_cast<double>(kStateCount));
  for (int i = 0; i < kStateCount; ++i) {
    int succ = 0;
    int succ_off = 0;
    for (int j = 0; j < kStateCount; ++j) {
      if (!feasible[i][j]) continue;
      ++succ;
      if (j != i) ++succ_off;
    }
    if (succ == 0)
      throw GraphletError(std::string("state ") +
                          label_of(static_cast<GraphletState>(i)) +
                          " has no feasible successors");
    m.te_max += std::log2(static_cast<double>(succ));
    if (succ_off > 0) m.rte_max += std::log2(static_cast<double>(succ_off));
  }
  m.te_max /= kStateCount;
  m.rte_max /= kStateCount;
  return m;
}

// Alternative reading of the same construction: weight each row by the
// stationary distribution of the uniform-feasible chain instead of 1/N.
inline EntropyMaxima theoretical_maxima_stationary(const FeasibilityMatrix& feasible) {
  std::array<std::array<double, kStateCount>, kStateCount> M{};
  for (int i = 0; i < kStateCount; ++i) {
    int succ = 0;
    for (int j = 0; j < kStateCount; ++j) succ += feasible[i][j] ? 1 : 0;
    if (succ == 0)
      throw GraphletError(std::string("state ") +
                          label_of(static_cast<GraphletState>(i)) +
                          " has no feasible successors");
    for (int j = 0; j < kStateCount; ++j)
      if (feasible[i][j]) M[i][j] = 1.0 / succ;
  }
  std::array<double, kStateCount> pi{};
  pi.fill(1.0 / kStateCount);
  for (int iter = 0; iter < 20000; ++iter) {
    std::array<double, kStateCount> next{};
    for (int i = 0; i < kStateCount; ++i)
      for (int j = 0; j < kStateCount; ++j) next[j] += pi[i] * M[i][j];
    double delta = 0.0;
    for (int j = 0; j < kStateCount; ++j) delta = std::max(delta, std::abs(next[j] - pi[j]));
    pi = next;
    if (delta < 1e-15) break;
  }
  EntropyMaxima m;
  m.se_max = std::log2(static_cast<double>(kStateCount));
  for (int i = 0; i < kStateCount; ++i) {
    int succ = 0;
    int succ_off = 0;
    for (int j = 0; j < kStateCount; ++j) {
      if (!feasible[i][j]) continue;
      ++succ;
      if (j != i) ++succ_off;
    }
    m.te_max += pi[i] * std::log2(static_cast<double>(succ));
    if (succ_off > 0) m.rte_max += pi[i] * std::log2(static_cast<double>(succ_off));
  }
  return m;
}

inline const EntropyMaxima& default_maxima() {
  static const EntropyMaxima m = theoretical_maxima(feasibility_matrix());
  return m;
}

inline EntropyReport entropies(const StochasticView& view) {
  EntropyReport r;
  const EntropyMaxima& m = default_maxima();
  r.se_max = m.se_max;
  r.te_max = m.te_max;
  r.rte_max = m.rte_max;
  for (int i = 0; i < kStateCount; ++i) {
    r.se -= detail::plog2p(view.p[i]);
    double row = 0.0;
    double row_restricted = 0.0;
    for (int j = 0; j < kStateCount; ++j) {
      row += detail::plog2p(view.M[i][j]);
      row_restricted += detail::plog2p(view.M_restricted[i][j]);
    }
    r.te -= view.p[i] * row;
    r.rte -= view.p[i] * row_restricted;
  }
  // -0.0 results read poorly in output tables.
  if (r.se == 0.0) r.se = 0.0;
  if (r.te == 0.0) r.te = 0.0;
  if (r.rte == 0.0) r.rte = 0.0;
  return r;
}

// Percent-of-maximum view; requires strictly positive maxima.
inline EntropyReport normalized(EntropyReport r) {
  if (r.se_max <= 0.0 || r.te_max <= 0.0 || r.rte_max <= 0.0)
    throw GraphletError("entropy maxima must be positive for normalization");
  r.se_norm_pct = 100.0 * r.se / r.se_max;
  r.te_norm_pct = 100.0 * r.te / r.te_max;
  r.rte_norm_pct = 100.0 * r.rte / r.rte_max;
  return r;
}

}  // namespace tpn
