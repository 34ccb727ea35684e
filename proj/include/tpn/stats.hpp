#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

// Rank statistics used by the experimental protocol: Spearman correlation,
// Wilcoxon signed-rank for paired samples, and a chi-square independence
// test between two count profiles. Small samples get exact p-values
// (permutation / sign-assignment enumeration); larger ones fall back to the
// usual approximations. Ties always receive midranks.

namespace tpn {

class StatsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Alternative { two_sided, greater, less };

enum class Method { exact, approximate };

inline const char* to_string(Alternative a) {
  switch (a) {
    case Alternative::two_sided: return "two-sided";
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
  }
  return "?";
}

inline const char* to_string(Method m) {
  return m == Method::exact ? "exact" : "normal-approximation";
}

struct TestResult {
  std::optional<double> statistic;
  std::optional<double> z_approx;
  std::optional<double> p_value;
  std::optional<std::size_t> df;
  std::size_t n = 0;
  Method method = Method::exact;
  Alternative alternative = Alternative::two_sided;
  std::string notes;
};

namespace detail {

inline std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

inline double normal_sf(double z) {
  static const boost::math::normal_distribution<double> dist;
  return boost::math::cdf(boost::math::complement(dist, z));
}

inline double tail_p(Alternative alt, double p_le, double p_ge) {
  switch (alt) {
    case Alternative::greater: return p_ge;
    case Alternative::less: return p_le;
    case Alternative::two_sided: return std::min(1.0, 2.0 * std::min(p_le, p_ge));
  }
  return 1.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spearman rank correlation.
//
// rho is the Pearson correlation of the midrank vectors. For n at or below
// exact_threshold the p-value enumerates all permutations of one rank
// vector; above it the Student-t approximation
// t = rho * sqrt((n-2)/(1-rho^2)) with n-2 degrees of freedom is used.
// Constant inputs make rho undefined: statistic and p stay absent.
inline TestResult spearman(const std::vector<double>& x, const std::vector<double>& y,
                           Alternative alt = Alternative::two_sided,
                           std::size_t exact_threshold = 9) {
  if (x.size() != y.size()) throw StatsError("spearman: length mismatch");
  TestResult result;
  result.alternative = alt;
  result.n = x.size();
  const std::size_t n = x.size();
  if (n < 2) {
    result.method = Method::exact;
    result.notes = "fewer than two observations";
    return result;
  }
  std::vector<double> rx = detail::midranks(x);
  std::vector<double> ry = detail::midranks(y);
  const double rho = detail::pearson(rx, ry);
  if (std::isnan(rho)) {
    result.notes = "constant input vector; rho undefined";
    return result;
  }
  result.statistic = rho;

  if (n <= exact_threshold) {
    result.method = Method::exact;
    std::vector<double> perm = ry;
    std::sort(perm.begin(), perm.end());
    std::uint64_t total = 0;
    std::uint64_t at_least = 0;   // rho' >= rho
    std::uint64_t at_most = 0;    // rho' <= rho
    std::uint64_t abs_extreme = 0;
    const double eps = 1e-12;
    do {
      const double r = detail::pearson(rx, perm);
      ++total;
      if (r >= rho - eps) ++at_least;
      if (r <= rho + eps) ++at_most;
      if (std::abs(r) >= std::abs(rho) - eps) ++abs_extreme;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double p_ge = static_cast<double>(at_least) / static_cast<double>(total);
    const double p_le = static_cast<double>(at_most) / static_cast<double>(total);
    switch (alt) {
      case Alternative::greater: result.p_value = p_ge; break;
      case Alternative::less: result.p_value = p_le; break;
      case Alternative::two_sided:
        result.p_value = static_cast<double>(abs_extreme) / static_cast<double>(total);
        break;
    }
    return result;
  }

  result.method = Method::approximate;
  const double denom = 1.0 - rho * rho;
  if (denom < 1e-15) {
    result.p_value = 0.0;
    if ((alt == Alternative::greater && rho < 0) ||
        (alt == Alternative::less && rho > 0))
      result.p_value = 1.0;
    return result;
  }
  const double t = rho * std::sqrt((static_cast<double>(n) - 2.0) / denom);
  const boost::math::students_t_distribution<double> dist(static_cast<double>(n) - 2.0);
  const double p_ge = boost::math::cdf(boost::math::complement(dist, t));
  const double p_le = boost::math::cdf(dist, t);
  result.p_value = detail::tail_p(alt, p_le, p_ge);
  return result;
}

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank test for paired samples.
//
// Differences a[i]-b[i] equal to zero are dropped; the remaining absolute
// differences receive midranks and W is the sum of ranks of positive
// differences. For n at or below exact_threshold the p-value comes from the
// exact sign-assignment distribution (computed by convolution over the rank
// multiset); the normal approximation
// z = (W - n(n+1)/4) / sqrt(n(n+1)(2n+1)/24) is always reported alongside.
inline TestResult wilcoxon_signed_rank(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       Alternative alt = Alternative::two_sided,
                                       std::size_t exact_threshold = 20) {
  if (a.size() != b.size()) throw StatsError("wilcoxon: length mismatch");
  TestResult result;
  result.alternative = alt;

  std::vector<double> abs_diff;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d == 0.0) continue;
    abs_diff.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  const std::size_t n = abs_diff.size();
  result.n = n;
  if (n == 0) {
    result.notes = "all paired differences are zero";
    return result;
  }
  if (abs_diff.size() < a.size())
    result.notes = std::to_string(a.size() - abs_diff.size()) +
                   " zero difference(s) dropped";

  const std::vector<double> ranks = detail::midranks(abs_diff);
  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (positive[i]) w += ranks[i];
  result.statistic = w;

  const double dn = static_cast<double>(n);
  const double mean = dn * (dn + 1.0) / 4.0;
  // Variance from the observed midranks; equals n(n+1)(2n+1)/24 when no
  // magnitudes tie, and applies the usual tie correction when they do.
  double rank_sumsq = 0.0;
  for (double r : ranks) rank_sumsq += r * r;
  const double sd = std::sqrt(rank_sumsq / 4.0);
  const double z = (w - mean) / sd;
  result.z_approx = z;

  if (n <= exact_threshold) {
    result.method = Method::exact;
    // Midranks are multiples of 1/2; scale by 2 for an integer lattice.
    std::vector<std::int64_t> scaled(n);
    std::int64_t total_scaled = 0;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = std::llround(ranks[i] * 2.0);
      total_scaled += scaled[i];
    }
    // counts[s] = number of sign assignments with scaled positive-rank sum s.
    std::vector<double> counts(static_cast<std::size_t>(total_scaled) + 1, 0.0);
    counts[0] = 1.0;
    std::int64_t reached = 0;
    for (std::size_t i = 0; i < n; ++i) {
      reached += scaled[i];
      for (std::int64_t s = reached; s >= scaled[i]; --s)
        counts[static_cast<std::size_t>(s)] +=
            counts[static_cast<std::size_t>(s - scaled[i])];
    }
    const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n
    const std::int64_t w_scaled = std::llround(w * 2.0);
    double c_le = 0.0;
    double c_ge = 0.0;
    for (std::int64_t s = 0; s <= total_scaled; ++s) {
      const double c = counts[static_cast<std::size_t>(s)];
      if (s <= w_scaled) c_le += c;
      if (s >= w_scaled) c_ge += c;
    }
    result.p_value = detail::tail_p(alt, c_le / denom, c_ge / denom);
  } else {
    result.method = Method::approximate;
    const double p_ge = detail::normal_sf(z);
    const double p_le = 1.0 - p_ge;
    result.p_value = detail::tail_p(alt, p_le, p_ge);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Chi-square independence test between two count vectors over the same
// categories (a 2 x K contingency table). Categories empty in both vectors
// are dropped and the degrees of freedom reduced accordingly. n reports the
// grand total of both vectors.
inline TestResult chisq_independence(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) throw StatsError("chisq: length mismatch");
  TestResult result;
  result.alternative = Alternative::two_sided;

  std::int64_t row_a = 0;
  std::int64_t row_b = 0;
  std::size_t kept = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0 || b[j] < 0) throw StatsError("chisq: negative count");
    if (a[j] + b[j] > 0) ++kept;
    row_a += a[j];
    row_b += b[j];
  }
  if (row_a <= 0 || row_b <= 0)
    throw StatsError("chisq: each profile needs a positive total");
  const double grand = static_cast<double>(row_a + row_b);
  result.n = static_cast<std::size_t>(row_a + row_b);

  if (kept < a.size())
    result.notes = std::to_string(a.size() - kept) +
                   " empty categor" + (a.size() - kept == 1 ? "y" : "ies") +
                   " dropped";

  double stat = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::int64_t col = a[j] + b[j];
    if (col == 0) continue;
    const double ea = static_cast<double>(row_a) * static_cast<double>(col) / grand;
    const double eb = static_cast<double>(row_b) * static_cast<double>(col) / grand;
    const double da = static_cast<double>(a[j]) - ea;
    const double db = static_cast<double>(b[j]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  result.statistic = stat;
  result.method = Method::approximate;

  const std::size_t df = kept > 0 ? kept - 1 : 0;
  result.df = df;
  if (df == 0) {
    result.p_value = 1.0;
    result.notes += result.notes.empty() ? "" : "; ";
    result.notes += "single category; test degenerate";
    return result;
  }
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(df));
  result.p_value = boost::math::cdf(boost::math::complement(dist, stat));
  return result;
}

}  // namespace tpn
