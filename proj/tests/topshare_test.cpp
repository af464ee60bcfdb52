#include "aii/topshare.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "aii/error.hpp"
#include "test_util.hpp"

namespace aii {
namespace {

TEST(TopShare, TotalTieMakesEverythingTop) {
  std::vector<ScoredRecord> s;
  for (int i = 0; i < 10; ++i) s.push_back({i < 4 ? "A" : "B", 2003, 1.0});
  auto r = top_share(s, 0.1, "raw");
  EXPECT_EQ(r.cutoff, 1.0);
  EXPECT_EQ(r.n_top, 10u);
  for (const auto& c : r.per_category) EXPECT_EQ(c.share, 1.0);
}

TEST(TopShare, BruteForceFortyRecords) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> score(0, 15);
  std::vector<ScoredRecord> s;
  for (int i = 0; i < 40; ++i) s.push_back({i % 3 == 0 ? "A" : "B", 2003, static_cast<double>(score(rng))});

  // Oracle: a record is top when fewer than 4 records score strictly higher.
  std::map<std::string, std::pair<int, int>> want;  // top, n
  for (const auto& x : s) {
    int higher = 0;
    for (const auto& y : s) higher += y.score > x.score;
    auto& w = want[x.category];
    w.first += higher < 4;
    ++w.second;
  }
  auto r = top_share(s, 0.1, "raw");
  ASSERT_EQ(r.per_category.size(), 2u);
  for (const auto& c : r.per_category) {
    EXPECT_EQ(static_cast<int>(c.top_count), want[c.category].first) << c.category;
    EXPECT_EQ(static_cast<int>(c.n), want[c.category].second);
    EXPECT_DOUBLE_EQ(c.share, static_cast<double>(want[c.category].first) / want[c.category].second);
  }
}

TEST(TopShare, ConservationAndCutoff) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ScoredRecord> s;
    auto a = test::random_counts(rng, 100 + trial * 13, 0.3);
    auto b = test::random_counts(rng, 80 + trial * 7, 0.1);
    for (auto x : a) s.push_back({"A", 2003, static_cast<double>(x)});
    for (auto x : b) s.push_back({"B", 2003, static_cast<double>(x)});
    for (double f : {0.01, 0.05, 0.1, 0.25}) {
      auto r = top_share(s, f, "raw");
      std::size_t sum = 0;
      for (const auto& c : r.per_category) sum += c.top_count;
      EXPECT_EQ(sum, r.n_top);
      EXPECT_GE(static_cast<double>(r.n_top), std::ceil(f * s.size() - 1e-9));
      std::size_t above = 0;
      for (const auto& x : s) above += x.score > r.cutoff;
      EXPECT_LT(static_cast<double>(above), std::ceil(f * s.size() - 1e-9));
    }
  }
}

TEST(TopShare, ExactCutoffCount) {
  std::vector<ScoredRecord> s;
  for (int i = 0; i < 100; ++i) s.push_back({"A", 2003, static_cast<double>(i)});
  auto r = top_share(s, 0.1, "raw");
  EXPECT_EQ(r.cutoff, 90.0);
  EXPECT_EQ(r.n_top, 10u);
  EXPECT_EQ(r.per_category[0].share, 0.1);
  EXPECT_TRUE(r.per_category[0].within_band);
}

TEST(TopShare, BandNarrowsWithSize) {
  double prev = 1.0;
  for (std::size_t n : {10u, 50u, 100u, 1000u, 10000u}) {
    const double h = band_halfwidth(0.1, n);
    EXPECT_LT(h, prev);
    prev = h;
  }
  EXPECT_DOUBLE_EQ(band_halfwidth(0.1, 100), 0.03);
}

TEST(TopShare, ParameterErrors) {
  std::vector<ScoredRecord> s = {{"A", 2003, 1.0}};
  EXPECT_THROW(top_share(s, 0.0, "raw"), ParameterError);
  EXPECT_THROW(top_share(s, 1.0, "raw"), ParameterError);
  EXPECT_THROW(top_share(s, -0.2, "raw"), ParameterError);
  EXPECT_THROW(top_share(s, std::nan(""), "raw"), ParameterError);
  EXPECT_THROW(top_share(std::span<const ScoredRecord>{}, 0.1, "raw"), ParameterError);
}

TEST(TopShare, SingleCategory) {
  std::mt19937_64 rng(1);
  std::vector<ScoredRecord> s;
  for (auto x : test::random_counts(rng, 500, 0.2)) s.push_back({"Only", 2003, static_cast<double>(x)});
  auto r = top_share(s, 0.1, "raw");
  ASSERT_EQ(r.per_category.size(), 1u);
  EXPECT_EQ(r.per_category[0].top_count, r.n_top);
  EXPECT_EQ(r.n_categories_evaluated, 1u);
}

TEST(TopShare, SkippedCategoriesAreFlagged) {
  auto c = test::corpus_from_groups({{{"A", 2003}, {0, 1, 2, 3, 4, 5}},
                                     {{"B", 2003}, {0, 0, 0, 7}},
                                     {{"B", 2007}, {1, 2, 3}},
                                     {{"C", 2003}, {0, 0, 0}}});
  auto scaled = scale_corpus(c, ScalingMethod::Median);
  auto r = top_share(scaled_scores(scaled), 0.1, "median", scaled.skipped);
  ASSERT_EQ(r.per_category.size(), 3u);
  EXPECT_TRUE(r.per_category[0].evaluated);
  EXPECT_FALSE(r.per_category[0].partially_skipped);
  EXPECT_TRUE(r.per_category[1].partially_skipped);
  EXPECT_EQ(r.per_category[1].n_skipped, 4u);
  EXPECT_FALSE(r.per_category[2].evaluated);
  EXPECT_EQ(r.n_categories_evaluated, 2u);

  std::ostringstream os;
  write_topshare_csv(r, os);
  EXPECT_NE(os.str().find("\nC,0,0,3,0,,,,\n"), std::string::npos);
}

TEST(TopShare, MethodComparisonOrderAndYearFilter) {
  auto c = test::corpus_from_groups({{{"A", 2003}, {0, 1, 2, 9}}, {{"A", 2007}, {1, 1, 5}}, {{"B", 2003}, {3, 4}}});
  const std::vector<ScalingMethod> m = {ScalingMethod::Mean, ScalingMethod::Median};
  auto reps = method_comparison(c, m, 0.25, 2003);
  ASSERT_EQ(reps.size(), 3u);
  EXPECT_EQ(reps[0].label, "raw");
  EXPECT_EQ(reps[1].label, "mean");
  EXPECT_EQ(reps[2].label, "median");
  EXPECT_EQ(reps[0].n_records, 6u);
  EXPECT_EQ(method_comparison(c, std::vector<ScalingMethod>{}, 0.1).size(), 1u);
}

TEST(TopShare, SingleCategoryShareIsTopFractionForEveryMethod) {
  std::mt19937_64 rng(6);
  std::vector<Citations> v(1000);
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  auto c = test::corpus_from_groups({{{"Only", 2003}, v}});
  for (const auto& r : method_comparison(c, kAllMethods, 0.1)) {
    ASSERT_EQ(r.per_category.size(), 1u) << r.label;
    EXPECT_NEAR(r.per_category[0].share, 0.1, 1e-12) << r.label;
  }
}

}  // namespace
}  // namespace aii
