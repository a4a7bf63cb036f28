#pragma once

// Signed log-space arithmetic for falling factorials, factorials and
// binomial coefficients. Every pmf and likelihood in the library is built
// on these primitives so that products like N(N-1)...(N-2c-y+1) never
// overflow a double.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mxnh {

/// A real number stored as sign * exp(logmag). sign == 0 is exact zero and
/// logmag is then meaningless.
struct SignedLogValue {
  int sign = 0;
  double logmag = 0.0;

  static constexpr SignedLogValue zero() { return {0, 0.0}; }
  static constexpr SignedLogValue one() { return {1, 0.0}; }

  static SignedLogValue from_real(double x) {
    if (x == 0.0) return zero();
    return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
  }

  double to_real() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
  }

  bool is_zero() const { return sign == 0; }

  SignedLogValue operator-() const { return {-sign, logmag}; }
};

inline SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
  if (a.sign == 0 || b.sign == 0) return SignedLogValue::zero();
  return {a.sign * b.sign, a.logmag + b.logmag};
}

inline SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
  if (b.sign == 0) throw std::domain_error("SignedLogValue: division by zero");
  if (a.sign == 0) return SignedLogValue::zero();
  return {a.sign * b.sign, a.logmag - b.logmag};
}

/// Relative magnitude below which a two-term difference is declared zero.
inline constexpr double kCancellationThreshold = 1e-13;

/// Sign-exact sum with log-sum-exp stabilisation.
inline SignedLogValue signed_log_add(SignedLogValue a, SignedLogValue b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const SignedLogValue& big = a.logmag >= b.logmag ? a : b;
  const SignedLogValue& small = a.logmag >= b.logmag ? b : a;
  const double ratio = std::exp(small.logmag - big.logmag);
  if (big.sign == small.sign) return {big.sign, big.logmag + std::log1p(ratio)};
  if (1.0 - ratio < kCancellationThreshold) return SignedLogValue::zero();
  return {big.sign, big.logmag + std::log1p(-ratio)};
}

inline SignedLogValue operator+(SignedLogValue a, SignedLogValue b) {
  return signed_log_add(a, b);
}

inline SignedLogValue operator-(SignedLogValue a, SignedLogValue b) {
  return signed_log_add(a, -b);
}

/// Above this degree, falling factorials with all factors positive come from
/// lgamma instead of the k-term product.
inline constexpr int kDirectProductLimit = 256;

/// z(z-1)...(z-k+1) for real z, with z^(0) = 1. Evaluated as a product of k
/// signed factors, so it is defined for every real z.
inline SignedLogValue falling_factorial(double z, int k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: k must be >= 0");
  if (z >= 0.0 && z == std::floor(z) && k > z) return SignedLogValue::zero();
  if (k > kDirectProductLimit && z - k + 1 > 0.0) {
    return {1, std::lgamma(z + 1.0) - std::lgamma(z - k + 1.0)};
  }
  SignedLogValue out = SignedLogValue::one();
  for (int i = 0; i < k; ++i) {
    const double factor = z - i;
    if (factor == 0.0) return SignedLogValue::zero();
    if (factor < 0.0) out.sign = -out.sign;
    out.logmag += std::log(std::fabs(factor));
  }
  return out;
}

namespace detail {

inline constexpr int kExactFactorialLimit = 20;

inline const std::array<double, kExactFactorialLimit + 1>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kExactFactorialLimit + 1> t{};
    std::uint64_t f = 1;
    for (int n = 0; n <= kExactFactorialLimit; ++n) {
      if (n > 0) f *= static_cast<std::uint64_t>(n);
      t[n] = std::log(static_cast<double>(f));
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// ln(n!). Table lookup of exact integer factorials for n <= 20, lgamma above.
inline double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  if (n <= detail::kExactFactorialLimit) return detail::log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

/// C(n, k) in signed log form; exact zero when k < 0 or k > n.
inline SignedLogValue log_binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return SignedLogValue::zero();
  return {1, log_factorial(n) - log_factorial(k) - log_factorial(n - k)};
}

}  // namespace mxnh
