#pragma once

// Exact pmfs for the negative binomial family and its finite-urn analogues,
// plus support, tables, cdf, quantile and mean.
//
//   nb     C(c+y-1, c-1) p^c q^y                                      y >= 0
//   maxnb  C(2c+y-1, c-1) (p^y + q^y) (pq)^c                          y >= 0
//   minnb  C(c+y-1, c-1) (p^c q^y + p^y q^c)                          y < c
//   nh     C(c+y-1, c-1) C(N-c-y, m-c) / C(N, m)                      y <= N-m
//   minnh  C(c+y-1, c-1) {C(m,c)C(N-m,y) + C(m,y)C(N-m,c)}
//                        / {C(c+y,c) C(N,c+y)}                        y < c
//   maxnh  C(2c+y-1, c-1) {m^(c+y)(N-m)^(c) + m^(c)(N-m)^(c+y)}
//                        / N^(2c+y)                     y <= max(m-c, N-m-c)

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mxnh/kernel.hpp"
#include "mxnh/params.hpp"

namespace mxnh {

/// Tail mass left out when an infinite support is truncated.
inline constexpr double kTruncationTail = 1e-12;

/// Largest y the tail-mass search will scan before giving up.
inline constexpr int kMaxTruncatedSupport = 50'000'000;

// ---------------------------------------------------------------------------
// Log-space pmfs. Out-of-support y gives exact zero.

inline SignedLogValue log_nb_pmf(const BernoulliParams& bp, int y) {
  if (y < 0) return SignedLogValue::zero();
  const int c = bp.required();
  return log_binomial(c + y - 1, c - 1) *
         SignedLogValue{1, c * std::log(bp.success_prob()) + y * std::log(bp.failure_prob())};
}

inline SignedLogValue log_maxnb_pmf(const BernoulliParams& bp, int y) {
  if (y < 0) return SignedLogValue::zero();
  const int c = bp.required();
  const double lp = std::log(bp.success_prob());
  const double lq = std::log(bp.failure_prob());
  const SignedLogValue excess = SignedLogValue{1, y * lp} + SignedLogValue{1, y * lq};
  return log_binomial(2 * c + y - 1, c - 1) * excess * SignedLogValue{1, c * (lp + lq)};
}

inline SignedLogValue log_minnb_pmf(const BernoulliParams& bp, int y) {
  const int c = bp.required();
  if (y < 0 || y > c - 1) return SignedLogValue::zero();
  const double lp = std::log(bp.success_prob());
  const double lq = std::log(bp.failure_prob());
  const SignedLogValue tails = SignedLogValue{1, c * lp + y * lq} + SignedLogValue{1, y * lp + c * lq};
  return log_binomial(c + y - 1, c - 1) * tails;
}

inline SignedLogValue log_nh_pmf(const UrnParams& up, int y) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (y < 0 || y > n - m) return SignedLogValue::zero();
  return log_binomial(c + y - 1, c - 1) * log_binomial(n - c - y, m - c) / log_binomial(n, m);
}

inline SignedLogValue log_minnh_pmf(const UrnParams& up, int y) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (y < 0 || y > c - 1) return SignedLogValue::zero();
  const SignedLogValue ways = log_binomial(m, c) * log_binomial(n - m, y) +
                              log_binomial(m, y) * log_binomial(n - m, c);
  return log_binomial(c + y - 1, c - 1) * ways / (log_binomial(c + y, c) * log_binomial(n, c + y));
}

inline int maxnh_max_y(const UrnParams& up) {
  return std::max(up.first_color(), up.second_color()) - up.required();
}

/// Binomial-coefficient form of the maximum negative hypergeometric pmf:
/// {c/(2c+y)} {C(m,c+y)C(N-m,c) + C(m,c)C(N-m,c+y)} / C(N,2c+y).
/// Independent of the falling-factorial path; kept for cross-checking.
inline SignedLogValue log_maxnh_pmf_binomial_form(const UrnParams& up, int y) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (y < 0 || y > maxnh_max_y(up)) return SignedLogValue::zero();
  const SignedLogValue ways = log_binomial(m, c + y) * log_binomial(n - m, c) +
                              log_binomial(m, c) * log_binomial(n - m, c + y);
  const SignedLogValue lead{1, std::log(static_cast<double>(c)) - std::log(2.0 * c + y)};
  return lead * ways / log_binomial(n, 2 * c + y);
}

inline SignedLogValue log_maxnh_pmf(const UrnParams& up, int y) {
  const double n = up.total(), m = up.first_color();
  const int c = up.required();
  if (y < 0 || y > maxnh_max_y(up)) return SignedLogValue::zero();
  const SignedLogValue first_long = falling_factorial(m, c + y) * falling_factorial(n - m, c);
  const SignedLogValue second_long = falling_factorial(m, c) * falling_factorial(n - m, c + y);
  const SignedLogValue draws = falling_factorial(n, 2 * c + y);
  const SignedLogValue out = log_binomial(2 * c + y - 1, c - 1) * (first_long + second_long) / draws;
#ifndef NDEBUG
  {
    // Log-space rounding grows with the magnitude of the summed logs.
    const double tol = 1e-12 * std::max(1.0, draws.logmag / 100.0);
    const SignedLogValue check = log_maxnh_pmf_binomial_form(up, y);
    assert(check.sign == out.sign);
    assert(out.sign == 0 || std::fabs(std::expm1(check.logmag - out.logmag)) <= tol);
  }
#endif
  return out;
}

// ---------------------------------------------------------------------------
// Plain probabilities.

inline double nb_pmf(const BernoulliParams& bp, int y) { return log_nb_pmf(bp, y).to_real(); }
inline double maxnb_pmf(const BernoulliParams& bp, int y) { return log_maxnb_pmf(bp, y).to_real(); }
inline double minnb_pmf(const BernoulliParams& bp, int y) { return log_minnb_pmf(bp, y).to_real(); }
inline double nh_pmf(const UrnParams& up, int y) { return log_nh_pmf(up, y).to_real(); }
inline double minnh_pmf(const UrnParams& up, int y) { return log_minnh_pmf(up, y).to_real(); }
inline double maxnh_pmf(const UrnParams& up, int y) { return log_maxnh_pmf(up, y).to_real(); }

inline double maxnh_pmf_binomial_form(const UrnParams& up, int y) {
  return log_maxnh_pmf_binomial_form(up, y).to_real();
}

/// Pr[Y = 0] = C(N-2c, m-c) C(2c, c) / C(N, m).
inline double maxnh_p0(const UrnParams& up) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  return (log_binomial(n - 2 * c, m - c) * log_binomial(2 * c, c) / log_binomial(n, m)).to_real();
}

/// Dispatches on the distribution label; `params` must be of the matching kind.
inline double pmf(Distribution d, const Params& params, int y) {
  check_params_match(d, params);
  switch (d) {
    case Distribution::kNegBinomial: return nb_pmf(std::get<BernoulliParams>(params), y);
    case Distribution::kMaxNegBinomial: return maxnb_pmf(std::get<BernoulliParams>(params), y);
    case Distribution::kMinNegBinomial: return minnb_pmf(std::get<BernoulliParams>(params), y);
    case Distribution::kNegHypergeometric: return nh_pmf(std::get<UrnParams>(params), y);
    case Distribution::kMinNegHypergeometric: return minnh_pmf(std::get<UrnParams>(params), y);
    case Distribution::kMaxNegHypergeometric: return maxnh_pmf(std::get<UrnParams>(params), y);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Support.

/// Closed integer interval [lo, hi]. `truncated` marks an infinite support
/// cut where the remaining tail mass drops below kTruncationTail.
struct SupportRange {
  int lo = 0;
  int hi = 0;
  bool truncated = false;

  int size() const { return hi - lo + 1; }
  bool contains(int y) const { return lo <= y && y <= hi; }
};

namespace detail {

/// Smallest T with 1 - sum_{y<=T} pmf(y) < kTruncationTail.
template <typename Pmf>
int truncation_bound(Pmf&& pmf_at) {
  long double mass = 0.0L;
  for (int y = 0; y < kMaxTruncatedSupport; ++y) {
    mass += static_cast<long double>(pmf_at(y));
    if (1.0L - mass < static_cast<long double>(kTruncationTail)) return y;
  }
  throw std::runtime_error("truncation_bound: tail did not fall below 1e-12");
}

}  // namespace detail

inline SupportRange support(Distribution d, const Params& params) {
  check_params_match(d, params);
  switch (d) {
    case Distribution::kNegBinomial: {
      const auto& bp = std::get<BernoulliParams>(params);
      return {0, detail::truncation_bound([&](int y) { return nb_pmf(bp, y); }), true};
    }
    case Distribution::kMaxNegBinomial: {
      const auto& bp = std::get<BernoulliParams>(params);
      return {0, detail::truncation_bound([&](int y) { return maxnb_pmf(bp, y); }), true};
    }
    case Distribution::kMinNegBinomial:
      return {0, std::get<BernoulliParams>(params).required() - 1, false};
    case Distribution::kNegHypergeometric: {
      const auto& up = std::get<UrnParams>(params);
      return {0, up.second_color(), false};
    }
    case Distribution::kMinNegHypergeometric:
      return {0, std::get<UrnParams>(params).required() - 1, false};
    case Distribution::kMaxNegHypergeometric:
      return {0, maxnh_max_y(std::get<UrnParams>(params)), false};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Tables.

/// A pmf over the contiguous support 0..max_y(). For infinite-support
/// distributions `truncated_at` records the cut-off.
struct PmfTable {
  Distribution dist;
  Params params;
  std::vector<double> probs;
  std::optional<int> truncated_at;

  int max_y() const { return static_cast<int>(probs.size()) - 1; }

  /// Probability at y; zero outside the stored support.
  double at(int y) const {
    if (y < 0 || y > max_y()) return 0.0;
    return probs[static_cast<std::size_t>(y)];
  }

  double total_mass() const {
    long double s = 0.0L;
    for (double p : probs) s += p;
    return static_cast<double>(s);
  }
};

inline PmfTable pmf_table(Distribution d, const Params& params) {
  const SupportRange range = support(d, params);
  PmfTable table{d, params, {}, std::nullopt};
  table.probs.reserve(static_cast<std::size_t>(range.size()));
  for (int y = range.lo; y <= range.hi; ++y) table.probs.push_back(pmf(d, params, y));
  if (range.truncated) table.truncated_at = range.hi;
  return table;
}

/// Pr[Y <= y].
inline double cdf(const PmfTable& table, int y) {
  if (y < 0) return 0.0;
  const int top = std::min(y, table.max_y());
  long double s = 0.0L;
  for (int i = 0; i <= top; ++i) s += table.probs[static_cast<std::size_t>(i)];
  return static_cast<double>(s);
}

/// Smallest y with cdf(y) >= u. Throws std::domain_error for u outside [0, 1].
inline int quantile(const PmfTable& table, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u must lie in [0, 1]");
  long double s = 0.0L;
  for (int y = 0; y <= table.max_y(); ++y) {
    s += table.probs[static_cast<std::size_t>(y)];
    if (s >= u) return y;
  }
  // Rounding can leave the total a hair under 1.
  return table.max_y();
}

/// Sum of y p(y). For the negative hypergeometric this equals c(N-m)/(m+1).
inline double mean(const PmfTable& table) {
  long double s = 0.0L;
  for (int y = 0; y <= table.max_y(); ++y) s += static_cast<long double>(y) * table.probs[static_cast<std::size_t>(y)];
  return static_cast<double>(s);
}

}  // namespace mxnh
