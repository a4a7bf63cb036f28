#pragma once

// Exact reference values for verification: the urn pmfs in rational
// arithmetic, and brute-force enumeration of every colour ordering of a
// small urn. Nothing in the floating-point library depends on this header.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mxnh/params.hpp"

namespace mxnh::oracle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt falling_factorial(int z, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= (z - i);
  return out;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return falling_factorial(n, k) / falling_factorial(k, k);
}

inline Rational maxnh_pmf(const UrnParams& up, int y) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (y < 0 || y > std::max(m, n - m) - c) return 0;
  const BigInt ways = falling_factorial(m, c + y) * falling_factorial(n - m, c) +
                      falling_factorial(m, c) * falling_factorial(n - m, c + y);
  return Rational(binomial(2 * c + y - 1, c - 1) * ways, falling_factorial(n, 2 * c + y));
}

inline Rational minnh_pmf(const UrnParams& up, int y) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (y < 0 || y > c - 1) return 0;
  const BigInt ways = binomial(m, c) * binomial(n - m, y) + binomial(m, y) * binomial(n - m, c);
  return Rational(binomial(c + y - 1, c - 1) * ways, binomial(c + y, c) * binomial(n, c + y));
}

inline Rational nh_pmf(const UrnParams& up, int y) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (y < 0 || y > n - m) return 0;
  return Rational(binomial(c + y - 1, c - 1) * binomial(n - c - y, m - c), binomial(n, m));
}

/// Number of orderings giving each y, for the three urn stopping rules.
struct EnumerationCounts {
  std::int64_t orderings = 0;
  std::vector<std::int64_t> until_both;       // maximum negative hypergeometric
  std::vector<std::int64_t> until_either;     // minimum negative hypergeometric
  std::vector<std::int64_t> until_successes;  // negative hypergeometric

  static Rational probability(const std::vector<std::int64_t>& counts, std::int64_t orderings, int y) {
    if (y < 0 || static_cast<std::size_t>(y) >= counts.size()) return 0;
    return Rational(counts[static_cast<std::size_t>(y)], orderings);
  }
};

/// Walks all C(N, m) placements of the first colour (each equally likely)
/// and applies each stopping rule to the ordering. Practical for N <= 20.
inline EnumerationCounts enumerate_orderings(const UrnParams& up) {
  const int n = up.total(), m = up.first_color(), c = up.required();
  if (n > 20) throw std::invalid_argument("enumerate_orderings: N must be <= 20");
  EnumerationCounts out;
  out.until_both.assign(static_cast<std::size_t>(n) + 1, 0);
  out.until_either.assign(static_cast<std::size_t>(n) + 1, 0);
  out.until_successes.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    ++out.orderings;
    int first = 0, second = 0;
    bool either_done = false, successes_done = false;
    for (int pos = 0; pos < n; ++pos) {
      ((mask >> pos) & 1u ? first : second) += 1;
      const int drawn = pos + 1;
      if (!either_done && (first == c || second == c)) {
        either_done = true;
        ++out.until_either[static_cast<std::size_t>(drawn - c)];
      }
      if (!successes_done && first == c) {
        successes_done = true;
        ++out.until_successes[static_cast<std::size_t>(second)];
      }
      if (first >= c && second >= c) {
        ++out.until_both[static_cast<std::size_t>(drawn - 2 * c)];
        break;
      }
    }
  }
  return out;
}

}  // namespace mxnh::oracle
