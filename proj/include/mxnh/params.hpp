#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace mxnh {

/// Urn of `total` balls, `first_color` of which have the first colour, with
/// `required` balls of a colour needed to stop. Invalid triples throw.
class UrnParams {
 public:
  UrnParams(int total, int first_color, int required)
      : total_(total), first_(first_color), required_(required) {
    if (!(1 <= required && required <= first_color && first_color < total &&
          required <= total - first_color)) {
      throw std::invalid_argument(
          "UrnParams: need 1 <= c <= m < N and c <= N - m (got N=" + std::to_string(total) +
          ", m=" + std::to_string(first_color) + ", c=" + std::to_string(required) + ")");
    }
  }

  int total() const { return total_; }
  int first_color() const { return first_; }
  int second_color() const { return total_ - first_; }
  int required() const { return required_; }

  /// The same urn with the two colours swapped.
  UrnParams swapped() const { return {total_, total_ - first_, required_}; }

  /// c = m = N/2: every ball has to be drawn, Y is a point mass at 0.
  bool degenerate() const { return required_ == first_ && 2 * required_ == total_; }

  friend bool operator==(const UrnParams&, const UrnParams&) = default;

 private:
  int total_;
  int first_;
  int required_;
};

/// i.i.d. Bernoulli(p) population with stopping count c.
class BernoulliParams {
 public:
  BernoulliParams(int required, double success_prob) : required_(required), p_(success_prob) {
    if (required < 1) throw std::invalid_argument("BernoulliParams: c must be >= 1");
    if (!(success_prob > 0.0 && success_prob < 1.0)) {
      throw std::invalid_argument("BernoulliParams: p must lie strictly inside (0, 1)");
    }
  }

  int required() const { return required_; }
  double success_prob() const { return p_; }
  double failure_prob() const { return 1.0 - p_; }

  friend bool operator==(const BernoulliParams&, const BernoulliParams&) = default;

 private:
  int required_;
  double p_;
};

using Params = std::variant<UrnParams, BernoulliParams>;

/// The six sampling distributions: negative binomial, its max/min variants,
/// and their finite-urn counterparts.
enum class Distribution {
  kNegBinomial,
  kMaxNegBinomial,
  kMinNegBinomial,
  kNegHypergeometric,
  kMinNegHypergeometric,
  kMaxNegHypergeometric,
};

inline constexpr Distribution kAllDistributions[] = {
    Distribution::kNegBinomial,          Distribution::kMaxNegBinomial,
    Distribution::kMinNegBinomial,       Distribution::kNegHypergeometric,
    Distribution::kMinNegHypergeometric, Distribution::kMaxNegHypergeometric,
};

inline bool is_urn_distribution(Distribution d) {
  return d == Distribution::kNegHypergeometric || d == Distribution::kMinNegHypergeometric ||
         d == Distribution::kMaxNegHypergeometric;
}

inline std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kNegBinomial: return "nb";
    case Distribution::kMaxNegBinomial: return "maxnb";
    case Distribution::kMinNegBinomial: return "minnb";
    case Distribution::kNegHypergeometric: return "nh";
    case Distribution::kMinNegHypergeometric: return "minnh";
    case Distribution::kMaxNegHypergeometric: return "maxnh";
  }
  return "?";
}

inline Distribution parse_distribution(std::string_view name) {
  for (Distribution d : kAllDistributions) {
    if (to_string(d) == name) return d;
  }
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

/// Throws std::invalid_argument unless `params` holds the parameter kind `d` needs.
inline void check_params_match(Distribution d, const Params& params) {
  const bool urn = std::holds_alternative<UrnParams>(params);
  if (urn != is_urn_distribution(d)) {
    throw std::invalid_argument(std::string(to_string(d)) +
                                (urn ? " takes (c, p), not urn parameters"
                                     : " takes urn parameters (N, m, c)"));
  }
}

}  // namespace mxnh
