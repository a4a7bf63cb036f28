#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mxnh/distributions.hpp"

namespace mxnh {

/// Relative tolerance for declaring two pmf values equal.
inline constexpr double kModeEqualityTolerance = 1e-12;

struct ModeReport {
  std::vector<int> modes;  // ascending
  bool is_unimodal = true;
  double p0_over_p1 = std::numeric_limits<double>::quiet_NaN();  // NaN when y=1 is outside the support
};

namespace detail {

inline bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= kModeEqualityTolerance * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace detail

/// Local maxima of a finite table. A run of equal probabilities is treated as
/// one point: it is a mode when both outside neighbours are lower (or absent)
/// and is reported at its left end.
inline ModeReport local_modes(const PmfTable& table) {
  ModeReport report;
  const int top = table.max_y();
  int y = 0;
  while (y <= top) {
    int end = y;
    while (end < top && detail::nearly_equal(table.at(end + 1), table.at(y))) ++end;
    const bool left_lower = y == 0 || (table.at(y) > table.at(y - 1) && !detail::nearly_equal(table.at(y), table.at(y - 1)));
    const bool right_lower = end == top || table.at(end) > table.at(end + 1);
    if (left_lower && right_lower) report.modes.push_back(y);
    y = end + 1;
  }
  report.is_unimodal = report.modes.size() == 1;
  if (top >= 1 && table.at(1) > 0.0) report.p0_over_p1 = table.at(0) / table.at(1);
  return report;
}

/// Pr[Y=0] / Pr[Y=1] for the maximum negative hypergeometric; always (c+1)/c.
/// Throws std::domain_error when the support is {0}.
inline double p0_p1_ratio(const UrnParams& up) {
  if (maxnh_max_y(up) < 1) throw std::domain_error("p0_p1_ratio: support is {0}");
  return (log_maxnh_pmf(up, 0) / log_maxnh_pmf(up, 1)).to_real();
}

inline ModeReport maxnh_modes(const UrnParams& up) {
  return local_modes(pmf_table(Distribution::kMaxNegHypergeometric, up));
}

struct IntRange {
  int lo;
  int hi;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

inline std::string to_string(const IntRange& r) {
  return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

/// True when at least one m gives a valid urn for (N, c).
inline bool has_valid_m(int total, int required) { return required >= 1 && 2 * required <= total; }

/// Maximal runs of m in [c, N-c] whose maximum negative hypergeometric pmf is
/// unimodal. The degenerate urn c = m = N/2 is skipped, so the result can be
/// empty. Throws std::invalid_argument when no m is valid.
inline std::vector<IntRange> unimodal_m_range(int total, int required) {
  if (!has_valid_m(total, required)) {
    throw std::invalid_argument("unimodal_m_range: no valid m for N=" + std::to_string(total) +
                                ", c=" + std::to_string(required));
  }
  std::vector<IntRange> out;
  for (int m = required; m <= total - required; ++m) {
    const UrnParams up(total, m, required);
    if (up.degenerate() || !maxnh_modes(up).is_unimodal) continue;
    if (!out.empty() && out.back().hi == m - 1) {
      out.back().hi = m;
    } else {
      out.push_back({m, m});
    }
  }
  return out;
}

}  // namespace mxnh
