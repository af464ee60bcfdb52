#include "aii/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "aii/error.hpp"
#include "test_util.hpp"

namespace aii {
namespace {

// Independent oracle: exact raw power sums in 128-bit integers, central
// moments by the binomial expansion, medians by nth_element.
struct NaiveStats {
  double mean, stddev, skew, kurt_excess, median;
};

NaiveStats naive(std::vector<Citations> v) {
  using i128 = __int128;
  i128 s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (auto x : v) {
    i128 X = x;
    s1 += X;
    s2 += X * X;
    s3 += X * X * X;
    s4 += X * X * X * X;
  }
  const i128 n = static_cast<i128>(v.size());
  // n^2 m2 = n s2 - s1^2, n^3 m3 = n^2 s3 - 3 n s1 s2 + 2 s1^3,
  // n^4 m4 = n^3 s4 - 4 n^2 s1 s3 + 6 n s1^2 s2 - 3 s1^4
  const i128 c2 = n * s2 - s1 * s1;
  const i128 c3 = n * n * s3 - 3 * n * s1 * s2 + 2 * s1 * s1 * s1;
  const i128 c4 = n * n * n * s4 - 4 * n * n * s1 * s3 + 6 * n * s1 * s1 * s2 - 3 * s1 * s1 * s1 * s1;
  const long double N = static_cast<long double>(v.size());
  const long double m2 = static_cast<long double>(c2) / (N * N);
  const long double m3 = static_cast<long double>(c3) / (N * N * N);
  const long double m4 = static_cast<long double>(c4) / (N * N * N * N);
  NaiveStats o;
  o.mean = static_cast<double>(static_cast<long double>(s1) / N);
  o.stddev = static_cast<double>(std::sqrt(m2 * N / (N - 1)));
  o.skew = static_cast<double>(std::sqrt(N * (N - 1)) / (N - 2) * m3 / std::pow(m2, 1.5L));
  o.kurt_excess = static_cast<double>((N - 1) / ((N - 2) * (N - 3)) * ((N + 1) * (m4 / (m2 * m2) - 3) + 6));
  const std::size_t k = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + k, v.end());
  const double hi = static_cast<double>(v[k]);
  if (v.size() % 2 == 1) {
    o.median = hi;
  } else {
    const double lo = static_cast<double>(*std::max_element(v.begin(), v.begin() + k));
    o.median = (lo + hi) / 2;
  }
  return o;
}

void expect_rel(double got, double want, double rel) {
  EXPECT_LE(std::fabs(got - want), rel * std::max(1.0, std::fabs(want))) << got << " vs " << want;
}

TEST(Describe, ConstantVector) {
  auto s = describe(std::vector<Citations>{5, 5, 5, 5});
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.median, 5.0);
  ASSERT_TRUE(s.stddev);
  EXPECT_EQ(*s.stddev, 0.0);
  EXPECT_FALSE(s.skewness);
  EXPECT_FALSE(s.kurtosis);
}

TEST(Describe, EmptyThrows) { EXPECT_THROW(describe(std::vector<Citations>{}), EmptyGroupError); }

TEST(Describe, SingleValueHasNoSpread) {
  auto s = describe(std::vector<Citations>{3});
  EXPECT_FALSE(s.stddev);
  EXPECT_FALSE(s.skewness);
  EXPECT_EQ(s.median, 3.0);
}

TEST(Describe, BiologyAggregateMean) {
  // 6,970 entries summing to 100,209
  std::vector<Citations> v(6970, 100209 / 6970);
  for (std::size_t i = 0; i < 100209 % 6970; ++i) ++v[i];
  auto s = describe(v);
  EXPECT_NEAR(s.mean, 14.377, 5e-4);
  EXPECT_DOUBLE_EQ(std::round(s.mean * 100) / 100, 14.38);
}

TEST(Describe, HandCheckedNonzeroContrast) {
  const std::vector<Citations> v = {0, 1, 2, 5, 12};
  auto s = describe(v);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_DOUBLE_EQ(*s.mean_nonzero, 5.0);
  EXPECT_DOUBLE_EQ(*s.median_nonzero, 3.5);
  EXPECT_EQ(s.n_nonzero, 4u);
  auto nz = describe_nonzero(v);
  ASSERT_TRUE(nz.stats);
  EXPECT_DOUBLE_EQ(nz.stats->mean, 5.0);
  EXPECT_DOUBLE_EQ(nz.stats->median, 3.5);
}

TEST(DescribeNonzero, AllZero) {
  auto nz = describe_nonzero(std::vector<Citations>{0, 0, 0});
  EXPECT_TRUE(nz.all_zero);
  EXPECT_FALSE(nz.stats);
  auto s = describe(std::vector<Citations>{0, 0, 0});
  EXPECT_FALSE(s.mean_nonzero);
  EXPECT_FALSE(s.median_nonzero);
}

// The Neuroimaging contrast: mean 4.14 with zeros, 13.83 without.
TEST(DescribeNonzero, NeuroimagingContrastFixture) {
  // 1,383 citations over 100 nonzero pubs (13.83) and 334 pubs overall:
  // 1383 / 334 = 4.1407
  std::vector<Citations> v(334, 0);
  for (int i = 0; i < 100; ++i) v[i] = 13 + (i < 83 ? 1 : 0);
  auto s = describe(v);
  EXPECT_NEAR(s.mean, 4.14, 0.005);
  EXPECT_NEAR(*s.mean_nonzero, 13.83, 1e-12);
  auto nz = describe_nonzero(v);
  EXPECT_NEAR(nz.stats->mean, 13.83, 1e-12);
  EXPECT_NEAR(*s.mean_nonzero / s.mean - 1.0, 2.34, 0.005);
}

TEST(Describe, MatchesNaiveOracleOnRandomVectors) {
  std::mt19937_64 rng(2011);
  std::uniform_int_distribution<std::size_t> len(4, 3000);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = test::random_counts(rng, len(rng), 0.1 + 0.004 * trial);
    v.push_back(1);  // guarantees spread
    v.push_back(0);
    const auto o = naive(v);
    const auto s = describe(v);
    expect_rel(s.mean, o.mean, 1e-12);
    expect_rel(s.median, o.median, 1e-12);
    expect_rel(*s.stddev, o.stddev, 1e-12);
    expect_rel(*s.skewness, o.skew, 1e-12);
    expect_rel(*s.kurtosis, o.kurt_excess, 1e-12);
    EXPECT_EQ(s.min, *std::min_element(v.begin(), v.end()));
    EXPECT_EQ(s.max, *std::max_element(v.begin(), v.end()));

    const auto p = describe(v, KurtosisConvention::Pearson);
    expect_rel(*p.kurtosis, o.kurt_excess + 3.0, 1e-12);

    std::vector<Citations> nz;
    std::copy_if(v.begin(), v.end(), std::back_inserter(nz), [](Citations c) { return c > 0; });
    const auto onz = naive(nz);
    expect_rel(*s.mean_nonzero, onz.mean, 1e-12);
    expect_rel(*s.median_nonzero, onz.median, 1e-12);
  }
}

TEST(DescribeProperty, InvariantsHold) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto v = test::random_counts(rng, 1 + trial % 60, 0.4);
    const auto s = describe(v);
    EXPECT_LE(s.n_nonzero, s.n);
    EXPECT_LE(static_cast<double>(s.min), s.median);
    EXPECT_LE(s.median, static_cast<double>(s.max));
    EXPECT_LE(static_cast<double>(s.min), s.mean + 1e-12);
    EXPECT_LE(s.mean, static_cast<double>(s.max) + 1e-12);
    if (s.n_nonzero > 0 && s.n_nonzero < s.n) EXPECT_GE(*s.mean_nonzero, s.mean);
    EXPECT_EQ(s.median_nonzero.has_value(), s.n_nonzero > 0);

    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto t = describe(shuffled);
    EXPECT_EQ(s.mean, t.mean);
    EXPECT_EQ(s.median, t.median);
    EXPECT_EQ(s.stddev, t.stddev);
    EXPECT_EQ(s.skewness, t.skewness);
    EXPECT_EQ(s.kurtosis, t.kurtosis);

    const Citations k = 1 + trial % 7;
    auto scaled = v;
    for (auto& c : scaled) c *= k;
    const auto u = describe(scaled);
    expect_rel(u.mean, k * s.mean, 1e-12);
    expect_rel(u.median, k * s.median, 1e-12);
    EXPECT_EQ(u.max, k * s.max);
    if (s.stddev) expect_rel(*u.stddev, k * *s.stddev, 1e-12);
    if (s.skewness) expect_rel(*u.skewness, *s.skewness, 1e-10);
    if (s.kurtosis) expect_rel(*u.kurtosis, *s.kurtosis, 1e-10);
  }
}

TEST(SortedMedian, LiesBetweenCentralOrderStatistics) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = test::random_counts(rng, 1 + trial);
    std::sort(v.begin(), v.end());
    const double m = sorted_median(std::span<const Citations>(v));
    const std::size_t n = v.size();
    EXPECT_GE(m, static_cast<double>(v[(n - 1) / 2]));
    EXPECT_LE(m, static_cast<double>(v[n / 2]));
  }
}

TEST(SortedQuantile, LinearInterpolation) {
  const std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(sorted_quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sorted_quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(sorted_quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(sorted_quantile(v, 1.0), 4.0);
}

TEST(Describe, UpperFenceFlagsOutliers) {
  // type-7 quartiles: Q1 = 2, Q3 = 4.25, fence 7.625
  auto s = describe(std::vector<Citations>{1, 2, 2, 3, 4, 4, 5, 740});
  EXPECT_GT(s.upper_fence, 5.0);
  EXPECT_EQ(s.n_upper_outliers, 1u);
}

}  // namespace
}  // namespace aii
