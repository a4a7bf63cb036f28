#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mxnh/distributions.hpp"
#include "mxnh/estimation.hpp"

namespace mxnh {
namespace {

struct RandomPoint {
  double m;
  int total, required, observed;
};

// Points in [c, N-c] kept at least 0.1 away from the integer poles.
std::vector<RandomPoint> random_points(std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::vector<RandomPoint> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = std::uniform_int_distribution<int>(12, 60)(gen);
    const int c = std::uniform_int_distribution<int>(1, 5)(gen);
    const int y = std::uniform_int_distribution<int>(0, 8)(gen);
    const double m = std::uniform_real_distribution<double>(c, n - c)(gen);
    if (std::fabs(m - std::round(m)) < 0.1) continue;
    try {
      loglik_kernel(m, n, c, y);
    } catch (const std::domain_error&) {
      continue;
    }
    out.push_back({m, n, c, y});
  }
  return out;
}

TEST(Loglik, Examples) {
  EXPECT_NEAR(loglik_kernel(10, 20, 3, 0), -3.292746, 5e-7);
  EXPECT_NEAR(loglik_kernel(3, 20, 3, 0), -6.345636, 5e-7);
  // the lowest curve printed through m=10 is y=6; y=7 leaves the plotted range
  EXPECT_NEAR(loglik_kernel(10, 20, 3, 6), -9.354203, 5e-7);
  EXPECT_LT(loglik_kernel(10, 20, 3, 7), -10.0);
  EXPECT_NEAR(loglik_kernel(4.25, 20, 3, 4), -6.063994, 5e-7);
  EXPECT_NEAR(loglik_kernel(6.25, 20, 3, 4), loglik_kernel(13.75, 20, 3, 4), 1e-12);
}

TEST(Loglik, MatchesLogOfPmfAtIntegers) {
  for (int m = 3; m <= 17; ++m)
    for (int y = 0; y <= 7; ++y) {
      const UrnParams up(20, m, 3);
      if (y > maxnh_max_y(up)) continue;
      const double log_coef = log_binomial(2 * 3 + y - 1, 3 - 1).logmag;
      EXPECT_NEAR(loglik_kernel(m, 20, 3, y) + log_coef, std::log(maxnh_pmf(up, y)), 1e-12);
    }
}

TEST(Loglik, Symmetry) {
  for (const auto& p : random_points(1, 200)) {
    EXPECT_NEAR(loglik_kernel(p.m, p.total, p.required, p.observed),
                loglik_kernel(p.total - p.m, p.total, p.required, p.observed), 1e-10);
  }
}

TEST(Loglik, DomainErrors) {
  EXPECT_THROW(loglik_kernel(1.5, 20, 3, 0), std::domain_error);
  EXPECT_THROW(loglik_grad(4.0, 20, 3, 5), std::domain_error);
  EXPECT_THROW(loglik_kernel(10, 20, 0, 0), std::invalid_argument);
}

TEST(Gradient, Examples) {
  EXPECT_NEAR(loglik_grad(10, 20, 3, 5), 0.0, 1e-12);
  const double h = 1e-5;
  const double fd = (loglik_kernel(8 + h, 20, 3, 0) - loglik_kernel(8 - h, 20, 3, 0)) / (2 * h);
  EXPECT_NEAR(loglik_grad(8, 20, 3, 0), fd, 1e-5);
  EXPECT_NEAR(loglik_grad(11.5, 20, 3, 4), -loglik_grad(8.5, 20, 3, 4), 1e-12);
}

TEST(Hessian, Examples) {
  EXPECT_LT(loglik_hess(10, 20, 3, 0), 0.0);
  EXPECT_GT(loglik_hess(10, 20, 3, 7), 0.0);
  const double h = 1e-4;
  const double fd = (loglik_grad(7.3 + h, 20, 3, 2) - loglik_grad(7.3 - h, 20, 3, 2)) / (2 * h);
  EXPECT_NEAR(loglik_hess(7.3, 20, 3, 2), fd, 1e-4);
}

TEST(Derivatives, MatchFiniteDifferences) {
  for (const auto& p : random_points(2, 100)) {
    const auto f = [&](double m) { return loglik_kernel(m, p.total, p.required, p.observed); };
    const auto g = [&](double m) { return loglik_grad(m, p.total, p.required, p.observed); };
    const double h1 = 1e-5, h2 = 1e-4;
    EXPECT_NEAR(g(p.m), (f(p.m + h1) - f(p.m - h1)) / (2 * h1), 1e-5)
        << p.m << " " << p.total << " " << p.required << " " << p.observed;
    EXPECT_NEAR(loglik_hess(p.m, p.total, p.required, p.observed), (g(p.m + h2) - g(p.m - h2)) / (2 * h2), 1e-3)
        << p.m << " " << p.total << " " << p.required << " " << p.observed;
  }
}

TEST(Gradient, StationaryAtHalf) {
  for (int n : {20, 30, 50})
    for (int c = 1; c <= 5; ++c)
      for (int y = 0; y <= 10; ++y) {
        if (y > n / 2 - c) continue;  // beyond this the kernel vanishes at N/2
        EXPECT_NEAR(loglik_grad(n / 2.0, n, c, y), 0.0, 1e-9) << n << " " << c << " " << y;
      }
}

TEST(Phi, Examples) {
  EXPECT_LT(phi(20, 3, 0), 0.0);
  EXPECT_EQ(phi(20, 3, 1), phi(20, 3, 0));
  for (int y = 0; y <= 7; ++y) {
    EXPECT_EQ(std::signbit(phi(20, 3, y)), std::signbit(loglik_hess(10, 20, 3, y))) << y;
    EXPECT_EQ(classify_critical_point(20, 3, y).classification,
              y < 3 ? CriticalPoint::kGlobalMaxAtHalf : CriticalPoint::kLocalMinAtHalf);
  }
  EXPECT_THROW(phi(20, 3, 9), std::domain_error);
}

TEST(Phi, IncreasingInY) {
  for (int n : {20, 30, 50, 51})
    for (int c = 1; c <= 5; ++c)
      for (int y = 0; y + 1 < n / 2 - c; ++y) EXPECT_GE(phi(n, c, y + 1), phi(n, c, y)) << n << " " << c << " " << y;
}

TEST(Mle, FrozenValues) {
  for (int y = 0; y <= 2; ++y) EXPECT_EQ(mle(20, 3, y), std::vector<double>{10.0});
  const double upper[] = {13.30106, 14.20982, 14.78638, 15.26721, 15.67491};
  for (int y = 3; y <= 7; ++y) {
    const auto r = mle(20, 3, y);
    ASSERT_EQ(r.size(), 2u) << y;
    EXPECT_NEAR(r[1], upper[y - 3], 1e-5) << y;
    EXPECT_NEAR(r[0] + r[1], 20.0, 1e-12);
    EXPECT_NEAR(loglik_grad(r[1], 20, 3, y), 0.0, 1e-6);
  }
}

TEST(Mle, TransitionMatchesPhiSignChange) {
  for (int n : {20, 30, 40})
    for (int c = 1; c <= 4; ++c) {
      int first_pair = -1, first_positive = -1;
      for (int y = 0; y <= n / 2 - c - 1; ++y) {
        if (first_pair < 0 && mle(n, c, y).size() == 2) first_pair = y;
        if (first_positive < 0 && phi(n, c, y) > 0) first_positive = y;
      }
      EXPECT_EQ(first_pair, first_positive) << n << " " << c;
    }
}

TEST(Mle, BeatsDenseGrid) {
  for (int y = 3; y <= 7; ++y) {
    const double m_hat = mle(20, 3, y)[1];
    const double best = loglik_kernel(m_hat, 20, 3, y);
    for (double m = 10.0; m <= 17.0; m += 0.001) EXPECT_GE(best + 1e-12, loglik_kernel(m, 20, 3, y));
  }
}

TEST(Profile, FigureGrid) {
  const auto p = profile(20, 3, 0, {3.0, 17.0, 0.25});
  ASSERT_EQ(p.grid.size(), 57u);
  EXPECT_NEAR(p.values[28], -3.292746, 5e-7);
  EXPECT_NEAR(p.values[0], -6.345636, 5e-7);
  for (std::size_t i = 0; i < p.values.size(); ++i) EXPECT_NEAR(p.values[i], p.values[56 - i], 1e-10);
  EXPECT_EQ(p.maximizers, std::vector<double>{10.0});
  const auto p5 = profile(20, 3, 4, {3.0, 17.0, 0.25});
  EXPECT_NEAR(p5.values[5], -6.063994, 5e-7);
  EXPECT_EQ(p5.maximizers.size(), 2u);
  EXPECT_THROW((GridSpec{3.0, 1.0, 0.25}.points()), std::invalid_argument);
}

}  // namespace
}  // namespace mxnh
