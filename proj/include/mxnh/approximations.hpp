#pragma once

// Limiting distributions of the maximum negative hypergeometric Y and
// machinery to measure how quickly the exact pmf approaches them.
//
//   maxnb_limit       m/N -> p fixed, c fixed:        Y ~ MxNB(c, p)
//   gamma_limit       m ~ theta sqrt(N), c fixed:     theta Y / sqrt(N) ~ Gamma(c, 1)
//   halfnormal_limit  m = N/2, c ~ sqrt(N):           Y / sqrt(2c) ~ |Z|
//   normal_limit      m = pN, p > 1/2, c ~ sqrt(N):   (Y - mu) / sigma ~ Z,
//                     mu = c(p-q)/q, sigma = sqrt(cp)/q
//
// Continuous densities are discretised by evaluating at integer y with the
// Jacobian of the scaling, then renormalised over the exact support before
// any distance is taken.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "mxnh/distributions.hpp"
#include "mxnh/simulator.hpp"

namespace mxnh {

enum class ApproxKind { kMaxNbLimit, kGammaLimit, kHalfNormalLimit, kNormalLimit };

inline const char* to_string(ApproxKind k) {
  switch (k) {
    case ApproxKind::kMaxNbLimit: return "maxnb_limit";
    case ApproxKind::kGammaLimit: return "gamma_limit";
    case ApproxKind::kHalfNormalLimit: return "halfnormal_limit";
    case ApproxKind::kNormalLimit: return "normal_limit";
  }
  return "?";
}

struct GammaLimit {
  double theta;  // m / sqrt(N)
  int shape;     // c
};

struct HalfNormalLimit {
  double scale;  // sqrt(2c)
};

struct NormalLimit {
  double mu;
  double sigma;
};

/// Kind-specific parameters of a limiting regime.
using ApproxSpec = std::variant<BernoulliParams, GammaLimit, HalfNormalLimit, NormalLimit>;

/// (c, p = m/N).
inline BernoulliParams maxnb_limit(const UrnParams& up) {
  return {up.required(), static_cast<double>(up.first_color()) / up.total()};
}

/// Erlang(c) density at x = theta y / sqrt(N), times the Jacobian theta/sqrt(N),
/// with theta = m / sqrt(N) read off the parameters.
inline double gamma_approx_density(const UrnParams& up, int y) {
  const double root_n = std::sqrt(static_cast<double>(up.total()));
  const double theta = up.first_color() / root_n;
  const double x = theta * y / root_n;
  const int c = up.required();
  if (x == 0.0) return c == 1 ? theta / root_n : 0.0;
  return (theta / root_n) * std::exp((c - 1) * std::log(x) - x - std::lgamma(static_cast<double>(c)));
}

/// Half-normal density of Y / sqrt(2c) at y, times the Jacobian 1/sqrt(2c).
inline double halfnormal_approx_density(int required, int y) {
  const double scale = std::sqrt(2.0 * required);
  const double x = y / scale;
  return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * x * x) / scale;
}

/// (mu, sigma) of the normal regime. The colours are swapped if needed so
/// that p = max(m, N-m)/N > 1/2. Throws std::domain_error when m = N/2.
inline std::pair<double, double> normal_approx_params(const UrnParams& up) {
  if (2 * up.first_color() == up.total()) {
    throw std::domain_error("normal_approx_params: m = N/2 is the half-normal regime");
  }
  const double p = static_cast<double>(std::max(up.first_color(), up.second_color())) / up.total();
  const double q = 1.0 - p;
  const int c = up.required();
  return {c * (p - q) / q, std::sqrt(c * p) / q};
}

inline double normal_approx_density(const UrnParams& up, int y) {
  const auto [mu, sigma] = normal_approx_params(up);
  const double z = (y - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

inline ApproxSpec approx_spec(ApproxKind kind, const UrnParams& up) {
  switch (kind) {
    case ApproxKind::kMaxNbLimit: return maxnb_limit(up);
    case ApproxKind::kGammaLimit:
      return GammaLimit{up.first_color() / std::sqrt(static_cast<double>(up.total())), up.required()};
    case ApproxKind::kHalfNormalLimit: return HalfNormalLimit{std::sqrt(2.0 * up.required())};
    case ApproxKind::kNormalLimit: {
      const auto [mu, sigma] = normal_approx_params(up);
      return NormalLimit{mu, sigma};
    }
  }
  throw std::invalid_argument("approx_spec: unknown kind");
}

/// Unnormalised approximation at each y of the exact support.
inline std::vector<double> discretized_density(ApproxKind kind, const UrnParams& up) {
  const int top = maxnh_max_y(up);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(top) + 1);
  for (int y = 0; y <= top; ++y) {
    switch (kind) {
      case ApproxKind::kMaxNbLimit: out.push_back(maxnb_pmf(maxnb_limit(up), y)); break;
      case ApproxKind::kGammaLimit: out.push_back(gamma_approx_density(up, y)); break;
      case ApproxKind::kHalfNormalLimit: out.push_back(halfnormal_approx_density(up.required(), y)); break;
      case ApproxKind::kNormalLimit: out.push_back(normal_approx_density(up, y)); break;
    }
  }
  return out;
}

/// Reference pmf for the TV comparison. The MxNB limit is already a pmf and
/// is used whole (truncated at the usual tail mass); the continuous limits
/// are discretised and renormalised over the exact support.
inline std::vector<double> approx_pmf(ApproxKind kind, const UrnParams& up) {
  if (kind == ApproxKind::kMaxNbLimit) {
    return pmf_table(Distribution::kMaxNegBinomial, maxnb_limit(up)).probs;
  }
  std::vector<double> out = discretized_density(kind, up);
  double mass = 0.0;
  for (double v : out) mass += v;
  if (!(mass > 0.0)) throw std::domain_error("approx_pmf: approximation has no mass on the support");
  for (double& v : out) v /= mass;
  return out;
}

struct SweepPoint {
  int size;
  double tv;
};

/// For each N in `sizes`, TV distance between the exact maximum negative
/// hypergeometric pmf at `regime(N)` and the chosen approximation.
inline std::vector<SweepPoint> convergence_sweep(ApproxKind kind,
                                                 const std::function<UrnParams(int)>& regime,
                                                 std::span<const int> sizes) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("convergence_sweep: sizes must increase");
  }
  std::vector<SweepPoint> out;
  out.reserve(sizes.size());
  for (int n : sizes) {
    const UrnParams up = regime(n);
    const PmfTable exact = pmf_table(Distribution::kMaxNegHypergeometric, up);
    out.push_back({n, tv_distance(exact.probs, approx_pmf(kind, up))});
  }
  return out;
}

}  // namespace mxnh
