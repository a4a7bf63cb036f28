#pragma once

// Stochastic simulation of the six stopping rules, histograms, total
// variation distance and a chi-square goodness-of-fit test.
//
// Urn draws track the two remaining colour counts and pick the first colour
// with probability remaining_first / remaining_total. That is equal in law
// to shuffling the urn and reading it front to back.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "mxnh/distributions.hpp"
#include "mxnh/params.hpp"
#include "mxnh/rng.hpp"

namespace mxnh {

enum class Color { kFirst, kSecond };

inline const char* to_string(Color c) { return c == Color::kFirst ? "first" : "second"; }

/// Result of one experiment. `y` is the number of draws beyond the scheme's
/// minimum; `terminal_color` is the colour whose draw stopped the experiment;
/// `counts` tallies balls (or Bernoulli successes/failures) of each colour.
struct DrawOutcome {
  int y = 0;
  Color terminal_color = Color::kFirst;
  std::pair<int, int> counts{0, 0};

  friend bool operator==(const DrawOutcome&, const DrawOutcome&) = default;
};

struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t trials = 1;
};

namespace detail {

struct UrnState {
  int remaining_first;
  int remaining_second;
  int drawn_first = 0;
  int drawn_second = 0;

  explicit UrnState(const UrnParams& up)
      : remaining_first(up.first_color()), remaining_second(up.second_color()) {}

  Color draw(Xoshiro256& rng) {
    const auto total = static_cast<std::uint64_t>(remaining_first + remaining_second);
    if (rng.below(total) < static_cast<std::uint64_t>(remaining_first)) {
      --remaining_first;
      ++drawn_first;
      return Color::kFirst;
    }
    --remaining_second;
    ++drawn_second;
    return Color::kSecond;
  }
};

}  // namespace detail

/// Draw without replacement until both colours reach c. y = draws - 2c.
inline DrawOutcome draw_until_both(const UrnParams& up, Xoshiro256& rng) {
  const int c = up.required();
  detail::UrnState urn(up);
  Color last = Color::kFirst;
  while (urn.drawn_first < c || urn.drawn_second < c) last = urn.draw(rng);
  return {urn.drawn_first + urn.drawn_second - 2 * c, last, {urn.drawn_first, urn.drawn_second}};
}

/// Draw without replacement until either colour reaches c. y = draws - c.
inline DrawOutcome draw_until_either(const UrnParams& up, Xoshiro256& rng) {
  const int c = up.required();
  detail::UrnState urn(up);
  Color last = Color::kFirst;
  while (urn.drawn_first < c && urn.drawn_second < c) last = urn.draw(rng);
  return {urn.drawn_first + urn.drawn_second - c, last, {urn.drawn_first, urn.drawn_second}};
}

/// Draw without replacement until c balls of the first colour; y counts the
/// second-colour balls drawn on the way.
inline DrawOutcome draw_until_c_successes(const UrnParams& up, Xoshiro256& rng) {
  const int c = up.required();
  detail::UrnState urn(up);
  while (urn.drawn_first < c) urn.draw(rng);
  return {urn.drawn_second, Color::kFirst, {urn.drawn_first, urn.drawn_second}};
}

inline DrawOutcome draw_until_both(const UrnParams& up, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return draw_until_both(up, rng);
}

inline DrawOutcome draw_until_either(const UrnParams& up, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return draw_until_either(up, rng);
}

inline DrawOutcome draw_until_c_successes(const UrnParams& up, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return draw_until_c_successes(up, rng);
}

/// The same three stopping rules on an i.i.d. Bernoulli(p) stream. Successes
/// are the first colour. `scheme` must be nb, maxnb or minnb.
inline DrawOutcome bernoulli_scheme(const BernoulliParams& bp, Distribution scheme, Xoshiro256& rng) {
  const int c = bp.required();
  const double p = bp.success_prob();
  int successes = 0, failures = 0;
  Color last = Color::kFirst;
  auto step = [&] {
    if (rng.uniform01() < p) {
      ++successes;
      last = Color::kFirst;
    } else {
      ++failures;
      last = Color::kSecond;
    }
  };
  switch (scheme) {
    case Distribution::kNegBinomial:
      while (successes < c) step();
      return {failures, Color::kFirst, {successes, failures}};
    case Distribution::kMaxNegBinomial:
      while (successes < c || failures < c) step();
      return {successes + failures - 2 * c, last, {successes, failures}};
    case Distribution::kMinNegBinomial:
      while (successes < c && failures < c) step();
      return {successes + failures - c, last, {successes, failures}};
    default:
      throw std::invalid_argument("bernoulli_scheme: scheme must be nb, maxnb or minnb");
  }
}

inline DrawOutcome bernoulli_scheme(const BernoulliParams& bp, Distribution scheme, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return bernoulli_scheme(bp, scheme, rng);
}

/// One experiment of the scheme whose law is `dist`.
inline DrawOutcome simulate_once(Distribution dist, const Params& params, Xoshiro256& rng) {
  check_params_match(dist, params);
  switch (dist) {
    case Distribution::kNegHypergeometric:
      return draw_until_c_successes(std::get<UrnParams>(params), rng);
    case Distribution::kMinNegHypergeometric:
      return draw_until_either(std::get<UrnParams>(params), rng);
    case Distribution::kMaxNegHypergeometric:
      return draw_until_both(std::get<UrnParams>(params), rng);
    default:
      return bernoulli_scheme(std::get<BernoulliParams>(params), dist, rng);
  }
}

/// Counts of simulated y values. Merging is associative and commutative.
struct Histogram {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  void add(int y) {
    if (y < 0) throw std::invalid_argument("Histogram: negative y");
    if (static_cast<std::size_t>(y) >= counts.size()) counts.resize(static_cast<std::size_t>(y) + 1, 0);
    ++counts[static_cast<std::size_t>(y)];
    ++total;
  }

  void merge(const Histogram& other) {
    if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
  }

  std::int64_t at(int y) const {
    if (y < 0 || static_cast<std::size_t>(y) >= counts.size()) return 0;
    return counts[static_cast<std::size_t>(y)];
  }

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

inline Histogram simulate_histogram(Distribution dist, const Params& params, const SimConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
  check_params_match(dist, params);
  Xoshiro256 rng(config.seed);
  Histogram h;
  for (std::int64_t t = 0; t < config.trials; ++t) h.add(simulate_once(dist, params, rng).y);
  return h;
}

inline PmfTable to_pmf_table(const Histogram& h, Distribution dist, const Params& params) {
  PmfTable table{dist, params, {}, std::nullopt};
  table.probs.reserve(h.counts.size());
  for (std::int64_t n : h.counts) {
    table.probs.push_back(static_cast<double>(n) / static_cast<double>(h.total));
  }
  return table;
}

/// Normalised histogram of `config.trials` simulated experiments.
inline PmfTable empirical_pmf(Distribution dist, const Params& params, const SimConfig& config) {
  return to_pmf_table(simulate_histogram(dist, params, config), dist, params);
}

/// Half the L1 distance; entries missing from the shorter side count as 0.
inline double tv_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = i < a.size() ? a[i] : 0.0;
    const double pb = i < b.size() ? b[i] : 0.0;
    sum += std::fabs(pa - pb);
  }
  return 0.5 * sum;
}

inline double tv_distance(const PmfTable& a, const PmfTable& b) { return tv_distance(a.probs, b.probs); }

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of observed counts against `expected`. Adjacent
/// bins are pooled left to right until each expects at least `min_expected`
/// observations; a leftover underfull group joins the last full one.
/// Observations outside the expected support give p = 0.
inline ChiSquareResult chi_square_gof(const Histogram& observed, const PmfTable& expected,
                                      double min_expected = 5.0) {
  const auto n = static_cast<double>(observed.total);
  for (std::size_t y = 0; y < observed.counts.size(); ++y) {
    if (observed.counts[y] > 0 && expected.at(static_cast<int>(y)) <= 0.0) {
      return {std::numeric_limits<double>::infinity(), 0, 0.0};
    }
  }
  std::vector<std::pair<double, double>> groups;  // (observed, expected)
  double obs = 0.0, exp = 0.0;
  for (int y = 0; y <= expected.max_y(); ++y) {
    obs += static_cast<double>(observed.at(y));
    exp += n * expected.at(y);
    if (exp >= min_expected) {
      groups.emplace_back(obs, exp);
      obs = exp = 0.0;
    }
  }
  if (exp > 0.0 || obs > 0.0) {
    if (groups.empty()) {
      groups.emplace_back(obs, exp);
    } else {
      groups.back().first += obs;
      groups.back().second += exp;
    }
  }
  ChiSquareResult r;
  for (const auto& [o, e] : groups) r.statistic += (o - e) * (o - e) / e;
  r.degrees_of_freedom = static_cast<int>(groups.size()) - 1;
  r.p_value = r.degrees_of_freedom > 0
                  ? boost::math::gamma_q(r.degrees_of_freedom / 2.0, r.statistic / 2.0)
                  : 1.0;
  return r;
}

}  // namespace mxnh
