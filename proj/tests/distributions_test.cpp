#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mxnh/distributions.hpp"

namespace mxnh {
namespace {

TEST(NegBinomial, Examples) {
  EXPECT_NEAR(nb_pmf(BernoulliParams(1, 0.5), 2), 0.125, 1e-15);
  EXPECT_NEAR(nb_pmf(BernoulliParams(3, 0.4), 0), 0.064, 1e-15);
  EXPECT_NEAR(nb_pmf(BernoulliParams(2, 0.5), 1), 0.25, 1e-15);
}

TEST(MaxNegBinomial, Examples) {
  const BernoulliParams bp(3, 0.4);
  EXPECT_NEAR(maxnb_pmf(bp, 0), 0.276480, 1e-12);
  EXPECT_NEAR(maxnb_pmf(bp, 1), 0.207360, 1e-12);
  for (int c = 1; c <= 6; ++c)
    for (int y = 0; y <= 20; ++y)
      EXPECT_NEAR(maxnb_pmf(BernoulliParams(c, 0.3), y), maxnb_pmf(BernoulliParams(c, 0.7), y), 1e-15);
}

TEST(MinNegBinomial, Examples) {
  EXPECT_NEAR(minnb_pmf(BernoulliParams(1, 0.37), 0), 1.0, 1e-15);
  EXPECT_NEAR(minnb_pmf(BernoulliParams(2, 0.5), 0), 0.5, 1e-15);
  EXPECT_NEAR(minnb_pmf(BernoulliParams(2, 0.5), 1), 0.5, 1e-15);
  EXPECT_EQ(minnb_pmf(BernoulliParams(2, 0.5), 2), 0.0);
}

TEST(NegHypergeometric, Examples) {
  EXPECT_NEAR(nh_pmf(UrnParams(3, 2, 1), 0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(nh_pmf(UrnParams(3, 2, 1), 0) + nh_pmf(UrnParams(3, 2, 1), 1), 1.0, 1e-15);
  for (int y = 0; y <= 2; ++y) EXPECT_NEAR(nh_pmf(UrnParams(4, 2, 2), y), (y + 1) / 6.0, 1e-15);
}

TEST(MinNegHypergeometric, Examples) {
  EXPECT_NEAR(minnh_pmf(UrnParams(4, 2, 1), 0), 1.0, 1e-15);
  EXPECT_NEAR(minnh_pmf(UrnParams(5, 2, 2), 0), 0.4, 1e-15);
  EXPECT_NEAR(minnh_pmf(UrnParams(5, 2, 2), 1), 0.6, 1e-15);
}

TEST(MaxNegHypergeometric, Examples) {
  EXPECT_NEAR(maxnh_pmf(UrnParams(15, 6, 3), 0), 0.33566, 5e-6);
  EXPECT_NEAR(maxnh_p0(UrnParams(15, 6, 3)), 84.0 * 20.0 / 5005.0, 1e-14);
  EXPECT_NEAR(maxnh_p0(UrnParams(50, 25, 20)), 0.27479, 1e-5);  // printed truncated
  EXPECT_NEAR(maxnh_pmf(UrnParams(6, 3, 3), 0), 1.0, 1e-15);
  EXPECT_NEAR(maxnh_p0(UrnParams(6, 3, 3)), 1.0, 1e-15);
  const UrnParams single(5, 1, 1);
  EXPECT_NEAR(maxnh_pmf(single, 0), 0.4, 1e-15);
  for (int y = 1; y <= 3; ++y) EXPECT_NEAR(maxnh_pmf(single, y), 0.2, 1e-15);
  EXPECT_EQ(maxnh_pmf(single, 4), 0.0);
}

TEST(MaxNegHypergeometric, NormalizationAndDualForm) {
  for (int n = 2; n <= 40; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int c = 1; c <= std::min(m, n - m); ++c) {
        const UrnParams up(n, m, c);
        long double s = 0.0L;
        for (int y = 0; y <= maxnh_max_y(up); ++y) {
          const double a = maxnh_pmf(up, y);
          const double b = maxnh_pmf_binomial_form(up, y);
          EXPECT_NEAR(a, b, 1e-12) << n << " " << m << " " << c << " " << y;
          EXPECT_NEAR(a, maxnh_pmf(up.swapped(), y), 1e-13);
          s += a;
        }
        EXPECT_NEAR(static_cast<double>(s), 1.0, 1e-10) << n << " " << m << " " << c;
      }
    }
  }
}

TEST(UrnFamily, NormalizationSmallUrns) {
  for (int n = 2; n <= 40; ++n) {
    for (int m = 1; m < n; ++m) {
      for (int c = 1; c <= std::min(m, n - m); ++c) {
        const UrnParams up(n, m, c);
        for (Distribution d : {Distribution::kNegHypergeometric, Distribution::kMinNegHypergeometric}) {
          EXPECT_NEAR(pmf_table(d, up).total_mass(), 1.0, 1e-10) << to_string(d) << " " << n << " " << m << " " << c;
        }
      }
    }
  }
}

TEST(Support, Ranges) {
  const auto s = support(Distribution::kMaxNegHypergeometric, UrnParams(15, 6, 3));
  EXPECT_EQ(s.lo, 0);
  EXPECT_EQ(s.hi, 6);
  EXPECT_FALSE(s.truncated);
  EXPECT_EQ(support(Distribution::kMinNegHypergeometric, UrnParams(15, 6, 3)).hi, 2);
  EXPECT_EQ(support(Distribution::kMaxNegHypergeometric, UrnParams(8, 4, 4)).hi, 0);
  EXPECT_TRUE(support(Distribution::kMaxNegBinomial, BernoulliParams(3, 0.4)).truncated);
  EXPECT_THROW(support(Distribution::kMaxNegBinomial, UrnParams(15, 6, 3)), std::invalid_argument);
}

TEST(PmfTable, TablesAndTruncation) {
  const auto t = pmf_table(Distribution::kMaxNegHypergeometric, UrnParams(15, 6, 3));
  EXPECT_EQ(t.probs.size(), 7u);
  EXPECT_FALSE(t.truncated_at.has_value());
  const auto nb = pmf_table(Distribution::kMaxNegBinomial, BernoulliParams(3, 0.4));
  ASSERT_TRUE(nb.truncated_at.has_value());
  EXPECT_GE(nb.max_y(), 12);
  EXPECT_NEAR(nb.total_mass(), 1.0, 1e-11);
  for (int y = 0; y <= 12; ++y) EXPECT_NEAR(nb.at(y), maxnb_pmf(BernoulliParams(3, 0.4), y), 1e-15);
}

TEST(PmfTable, CdfQuantileMean) {
  const auto t = pmf_table(Distribution::kMaxNegHypergeometric, UrnParams(15, 6, 3));
  EXPECT_NEAR(cdf(t, t.max_y()), 1.0, 1e-10);
  EXPECT_EQ(cdf(t, -1), 0.0);
  EXPECT_EQ(quantile(t, 0.0), 0);
  EXPECT_EQ(quantile(t, 0.5), 1);
  EXPECT_EQ(quantile(t, 1.0), t.max_y());
  EXPECT_THROW(quantile(t, 1.5), std::domain_error);
  EXPECT_THROW(quantile(t, -0.1), std::domain_error);
  for (int y = 0; y <= t.max_y(); ++y) EXPECT_LE(quantile(t, cdf(t, y) - 1e-9), y);

  EXPECT_NEAR(mean(pmf_table(Distribution::kNegHypergeometric, UrnParams(3, 2, 1))), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(mean(pmf_table(Distribution::kMaxNegHypergeometric, UrnParams(6, 3, 3))), 0.0);
  EXPECT_NEAR(mean(pmf_table(Distribution::kNegBinomial, BernoulliParams(1, 0.5))), 1.0, 1e-10);
}

TEST(NegHypergeometric, MeanClosedForm) {
  for (int n = 2; n <= 40; ++n)
    for (int m = 1; m < n; ++m)
      for (int c = 1; c <= std::min(m, n - m); ++c) {
        const double want = static_cast<double>(c) * (n - m) / (m + 1);
        EXPECT_NEAR(mean(pmf_table(Distribution::kNegHypergeometric, UrnParams(n, m, c))), want, 1e-10);
      }
}

TEST(MaxNegHypergeometric, LargeUrnStaysFinite) {
  const UrnParams up(100000, 40000, 50);
  const auto t = pmf_table(Distribution::kMaxNegHypergeometric, up);
  EXPECT_NEAR(t.total_mass(), 1.0, 1e-8);
  for (double p : t.probs) EXPECT_TRUE(std::isfinite(p) && p >= 0.0);
}

TEST(Params, Validation) {
  EXPECT_THROW(UrnParams(10, 2, 3), std::invalid_argument);
  EXPECT_THROW(UrnParams(10, 0, 1), std::invalid_argument);
  EXPECT_THROW(UrnParams(10, 9, 2), std::invalid_argument);
  EXPECT_THROW(BernoulliParams(0, 0.5), std::invalid_argument);
  EXPECT_THROW(BernoulliParams(2, 1.0), std::invalid_argument);
  EXPECT_TRUE(UrnParams(6, 3, 3).degenerate());
  EXPECT_FALSE(UrnParams(6, 3, 2).degenerate());
  for (Distribution d : kAllDistributions) EXPECT_EQ(parse_distribution(to_string(d)), d);
  EXPECT_THROW(parse_distribution("binomial"), std::invalid_argument);
}

}  // namespace
}  // namespace mxnh
