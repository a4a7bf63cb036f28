#pragma once

// Maximum likelihood for the first-colour count m from one observed Y, with
// N and c known and m treated as continuous.
//
//   Lambda(m) = log{ (m^(c) (N-m)^(c+y) + m^(c+y) (N-m)^(c)) / N^(2c+y) }
//
// Lambda(m) = Lambda(N-m), so m = N/2 is always a critical point. It is the
// global maximum when phi(N, c, y) < 0 and a local minimum otherwise, in
// which case the maximisers come as a mirrored pair {m_hat, N - m_hat}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mxnh/kernel.hpp"

namespace mxnh {

namespace detail {

inline void check_likelihood_args(int total, int required, int observed) {
  if (required < 1 || 2 * required > total || observed < 0) {
    throw std::invalid_argument("likelihood: need c >= 1, N >= 2c and y >= 0 (got N=" +
                                std::to_string(total) + ", c=" + std::to_string(required) +
                                ", y=" + std::to_string(observed) + ")");
  }
}

/// m^(first_k) (N-m)^(second_k) with its first two log-derivatives.
struct LikelihoodTerm {
  SignedLogValue value;
  double d1 = 0.0;  // (d/dm) log|term|
  double d2 = 0.0;  // sum of squared reciprocals, so term''/term = d1^2 - d2
};

inline LikelihoodTerm likelihood_term(double m, double total, int first_k, int second_k,
                                      bool with_derivatives) {
  LikelihoodTerm t{falling_factorial(m, first_k) * falling_factorial(total - m, second_k)};
  if (!with_derivatives) return t;
  for (int i = 0; i < first_k; ++i) {
    const double f = m - i;
    if (f == 0.0) throw std::domain_error("likelihood derivative: pole at m = " + std::to_string(m));
    t.d1 += 1.0 / f;
    t.d2 += 1.0 / (f * f);
  }
  for (int j = 0; j < second_k; ++j) {
    const double f = total - m - j;
    if (f == 0.0) throw std::domain_error("likelihood derivative: pole at m = " + std::to_string(m));
    t.d1 -= 1.0 / f;
    t.d2 += 1.0 / (f * f);
  }
  return t;
}

struct KernelParts {
  LikelihoodTerm short_first;  // m^(c) (N-m)^(c+y)
  LikelihoodTerm long_first;   // m^(c+y) (N-m)^(c)
  SignedLogValue sum;
};

inline KernelParts kernel_parts(double m, int total, int required, int observed, bool with_derivatives) {
  check_likelihood_args(total, required, observed);
  const int c = required, y = observed;
  KernelParts parts{likelihood_term(m, total, c, c + y, with_derivatives),
                    likelihood_term(m, total, c + y, c, with_derivatives), {}};
  parts.sum = parts.short_first.value + parts.long_first.value;
  if (parts.sum.sign <= 0) {
    throw std::domain_error("loglik_kernel: likelihood is not positive at m = " + std::to_string(m));
  }
  return parts;
}

}  // namespace detail

/// Lambda(m). Throws std::domain_error where the bracketed sum is <= 0.
inline double loglik_kernel(double m, int total, int required, int observed) {
  const auto parts = detail::kernel_parts(m, total, required, observed, false);
  const SignedLogValue draws = falling_factorial(total, 2 * required + observed);
  if (draws.sign <= 0) throw std::domain_error("loglik_kernel: 2c + y exceeds N");
  return parts.sum.logmag - draws.logmag;
}

/// Lambda'(m) from the factorial-polynomial differentiation rules. Throws
/// std::domain_error at integer m where a harmonic sum has a pole.
inline double loglik_grad(double m, int total, int required, int observed) {
  const auto parts = detail::kernel_parts(m, total, required, observed, true);
  const double w_short = (parts.short_first.value / parts.sum).to_real();
  const double w_long = (parts.long_first.value / parts.sum).to_real();
  return w_short * parts.short_first.d1 + w_long * parts.long_first.d1;
}

/// Lambda''(m): full quotient rule over both terms of the sum.
inline double loglik_hess(double m, int total, int required, int observed) {
  const auto parts = detail::kernel_parts(m, total, required, observed, true);
  const auto& a = parts.short_first;
  const auto& b = parts.long_first;
  const double wa = (a.value / parts.sum).to_real();
  const double wb = (b.value / parts.sum).to_real();
  const double grad = wa * a.d1 + wb * b.d1;
  return wa * (a.d1 * a.d1 - a.d2) + wb * (b.d1 * b.d1 - b.d2) - grad * grad;
}

/// phi(N, c, y) = sum_{0<=k<k'<=y-1} 1/((N/2-c-k)(N/2-c-k')) - sum_{i<c} 1/(N/2-i)^2,
/// which has the sign of Lambda''(N/2). N/2 is taken as a real for odd N.
inline double phi(int total, int required, int observed) {
  detail::check_likelihood_args(total, required, observed);
  const double half = total / 2.0;
  std::vector<double> inv(static_cast<std::size_t>(observed));
  for (int k = 0; k < observed; ++k) {
    const double d = half - required - k;
    if (d == 0.0) throw std::domain_error("phi: zero denominator N/2 - c - k at k = " + std::to_string(k));
    inv[static_cast<std::size_t>(k)] = 1.0 / d;
  }
  double pairs = 0.0;
  for (std::size_t k = 0; k < inv.size(); ++k) {
    for (std::size_t k2 = k + 1; k2 < inv.size(); ++k2) pairs += inv[k] * inv[k2];
  }
  double squares = 0.0;
  for (int i = 0; i < required; ++i) {
    const double d = half - i;
    squares += 1.0 / (d * d);
  }
  return pairs - squares;
}

enum class CriticalPoint { kGlobalMaxAtHalf, kLocalMinAtHalf };

inline const char* to_string(CriticalPoint c) {
  return c == CriticalPoint::kGlobalMaxAtHalf ? "global_max_at_half" : "local_min_at_half";
}

struct CriticalPointReport {
  double phi_value;
  CriticalPoint classification;
};

inline CriticalPointReport classify_critical_point(int total, int required, int observed) {
  const double value = phi(total, required, observed);
  return {value, value < 0.0 ? CriticalPoint::kGlobalMaxAtHalf : CriticalPoint::kLocalMinAtHalf};
}

/// Inward margin from the ends of the search interval.
inline constexpr double kBracketMargin = 1e-6;
/// Target accuracy of a maximiser, in m.
inline constexpr double kMleTolerance = 1e-8;

namespace detail {

inline double loglik_or_minus_inf(double m, int total, int required, int observed) {
  try {
    return loglik_kernel(m, total, required, observed);
  } catch (const std::domain_error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

/// Lambda' with a tiny nudge off the removable poles at integer m.
inline double loglik_grad_off_pole(double m, int total, int required, int observed) {
  try {
    return loglik_grad(m, total, required, observed);
  } catch (const std::domain_error&) {
    return loglik_grad(m + 1e-9, total, required, observed);
  }
}

/// Golden-section search for the maximum of Lambda on [lo, hi].
inline double golden_section_max(double lo, double hi, int total, int required, int observed, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = loglik_or_minus_inf(x1, total, required, observed);
  double f2 = loglik_or_minus_inf(x2, total, required, observed);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = loglik_or_minus_inf(x2, total, required, observed);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = loglik_or_minus_inf(x1, total, required, observed);
    }
  }
  return 0.5 * (a + b);
}

/// Bisection on Lambda' around `guess`, assuming Lambda' goes from + to -.
/// Returns `guess` clamped to [lo, hi] when no sign change brackets it, which
/// happens when the maximum sits on the interval boundary.
inline double refine_by_gradient(double guess, double lo, double hi, int total, int required, int observed) {
  double step = 1e-4;
  double a = std::max(lo, guess - step), b = std::min(hi, guess + step);
  auto grad = [&](double m) { return loglik_grad_off_pole(m, total, required, observed); };
  while (!(grad(a) > 0.0 && grad(b) < 0.0)) {
    if (a <= lo && b >= hi) return guess;
    step *= 4.0;
    a = std::max(lo, guess - step);
    b = std::min(hi, guess + step);
  }
  while (b - a > 1e-3 * kMleTolerance) {
    const double mid = 0.5 * (a + b);
    (grad(mid) > 0.0 ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Maximisers of Lambda over continuous m. Either {N/2} or the mirrored pair
/// {N - m_hat, m_hat} in ascending order; never one arbitrary member.
inline std::vector<double> mle(int total, int required, int observed) {
  detail::check_likelihood_args(total, required, observed);
  const double half = total / 2.0;
  bool max_at_half = false;
  try {
    max_at_half = classify_critical_point(total, required, observed).classification ==
                  CriticalPoint::kGlobalMaxAtHalf;
  } catch (const std::domain_error&) {
    // Lambda vanishes at N/2, so N/2 cannot be the maximiser.
  }
  if (max_at_half) return {half};

  const double lo = half + kBracketMargin;
  const double hi = total - required - kBracketMargin;
  if (lo >= hi) return {half};
  const double coarse = detail::golden_section_max(lo, hi, total, required, observed, 1e-6);
  const double m_hat = detail::refine_by_gradient(coarse, lo, hi, total, required, observed);
  if (m_hat - half < kMleTolerance) return {half};
  return {total - m_hat, m_hat};
}

/// Evenly spaced grid lo, lo+step, ..., up to hi inclusive.
struct GridSpec {
  double lo;
  double hi;
  double step;

  std::vector<double> points() const {
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("GridSpec: need step > 0 and hi >= lo");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
    return out;
  }
};

struct LikelihoodProfile {
  int total;
  int required;
  int observed;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> maximizers;
};

/// Lambda over a grid plus the maximisers. Throws std::domain_error if a grid
/// point falls where Lambda is undefined.
inline LikelihoodProfile profile(int total, int required, int observed, const GridSpec& grid) {
  LikelihoodProfile out{total, required, observed, grid.points(), {}, mle(total, required, observed)};
  out.values.reserve(out.grid.size());
  for (double m : out.grid) out.values.push_back(loglik_kernel(m, total, required, observed));
  return out;
}

}  // namespace mxnh
