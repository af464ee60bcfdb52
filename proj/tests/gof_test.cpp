#include "aii/gof.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "aii/error.hpp"
#include "test_util.hpp"

namespace aii {
namespace {

// Textbook form: A^2 = -n - (1/n) sum (2i - 1) [ln F(z_i) + ln(1 - F(z_{n+1-i}))].
double oracle_a2(std::vector<double> x) {
  for (auto& v : x) v = std::log(v);
  std::sort(x.begin(), x.end());
  const double n = x.size();
  double m = 0;
  for (double v : x) m += v / n;
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  const double s = std::sqrt(ss / (n - 1));
  auto F = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  double acc = 0;
  for (std::size_t i = 1; i <= x.size(); ++i)
    acc += (2.0 * i - 1) * (std::log(F((x[i - 1] - m) / s)) + std::log(1 - F((x[x.size() - i] - m) / s)));
  return -n - acc / n;
}

TEST(Gof, Brackets) {
  EXPECT_EQ(p_bracket(0.2), PBracket::Above25);
  EXPECT_EQ(p_bracket(0.5), PBracket::P10to25);
  EXPECT_EQ(p_bracket(0.7), PBracket::P05to10);
  EXPECT_EQ(p_bracket(0.8), PBracket::P025to05);
  EXPECT_EQ(p_bracket(0.9), PBracket::P01to025);
  EXPECT_EQ(p_bracket(1.1), PBracket::P005to01);
  EXPECT_EQ(p_bracket(3.291), PBracket::Below005);
  EXPECT_EQ(to_string(PBracket::Below005), "<0.005");
  EXPECT_EQ(to_string(PBracket::Above25), ">0.25");
}

TEST(Gof, BracketsAreMonotone) {
  PBracket prev = PBracket::Above25;
  for (double a = 0; a < 3; a += 0.001) {
    const auto b = p_bracket(a);
    EXPECT_GE(static_cast<int>(b), static_cast<int>(prev));
    prev = b;
  }
}

TEST(Gof, PinnedTenValuesMatchOracle) {
  const std::vector<double> v = {0.3, 0.55, 0.8, 1.0, 1.2, 1.7, 2.4, 3.1, 5.0, 9.5};
  auto r = ad_lognormal(v);
  const double want = oracle_a2(v);
  EXPECT_NEAR(r.a_squared, want, 1e-9);
  EXPECT_NEAR(r.a_squared_star, want * (1 + 0.75 / 10 + 2.25 / 100), 1e-9);
  EXPECT_EQ(r.n_used, 10u);
}

TEST(Gof, ThresholdDropsSmallValues) {
  const std::vector<double> v = {0, 0, 0.05, 0.3, 0.55, 0.8, 1.0, 1.2, 1.7, 2.4, 3.1, 5.0, 9.5};
  auto r = ad_lognormal(v, 0.1);
  EXPECT_EQ(r.n_used, 10u);
  EXPECT_EQ(r.a_squared, ad_lognormal(std::vector<double>(v.begin() + 3, v.end())).a_squared);
}

TEST(Gof, NominalRejectionUnderNull) {
  std::mt19937_64 rng(99);
  std::lognormal_distribution<double> ln(0.5, 0.8);
  int reject = 0;
  const int reps = 1000;
  for (int k = 0; k < reps; ++k) {
    std::vector<double> v(200);
    for (auto& x : v) x = ln(rng);
    reject += ad_lognormal(v, 0.0).a_squared_star >= 0.752;
  }
  const double rate = static_cast<double>(reject) / reps;
  EXPECT_GE(rate, 0.03);
  EXPECT_LE(rate, 0.08);
}

TEST(Gof, RejectsHeavierTails) {
  std::mt19937_64 rng(7);
  std::cauchy_distribution<double> cauchy(0, 1);
  std::vector<double> v(300);
  for (auto& x : v) x = std::exp(cauchy(rng) * 0.5);
  EXPECT_EQ(ad_lognormal(v, 1e-12).p_bracket, PBracket::Below005);
}

TEST(Gof, ScaleAndOrderInvariant) {
  std::mt19937_64 rng(5);
  std::lognormal_distribution<double> ln(1.0, 1.0);
  std::vector<double> v(200);
  for (auto& x : v) x = ln(rng);
  const auto base = ad_lognormal(v, 0.0);
  auto scaled = v;
  for (auto& x : scaled) x *= 7.5;
  EXPECT_NEAR(ad_lognormal(scaled, 0.0).a_squared, base.a_squared, 1e-9);
  const auto thr = ad_lognormal(v, 0.5);
  EXPECT_NEAR(ad_lognormal(scaled, 0.5 * 7.5).a_squared, thr.a_squared, 1e-9);
  EXPECT_EQ(ad_lognormal(scaled, 0.5 * 7.5).n_used, thr.n_used);
  auto shuffled = v;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  EXPECT_NEAR(ad_lognormal(shuffled, 0.0).a_squared, base.a_squared, 1e-12);
}

TEST(Gof, Errors) {
  EXPECT_THROW(ad_lognormal(std::vector<double>{1, 2, 3}), InsufficientSampleError);
  EXPECT_THROW(ad_lognormal(std::vector<double>(20, 4.0)), DomainError);
  EXPECT_THROW(ad_lognormal(std::vector<double>{-1, 1, 2, 3, 4, 5, 6, 7, 8}, -2.0), DomainError);
}

TEST(Gof, ByGroupReportsAndSkips) {
  std::mt19937_64 rng(21);
  auto big = test::random_counts(rng, 400, 0.2);
  auto c = test::corpus_from_groups({{{"A", 2003}, big}, {{"B", 2003}, {1, 2, 3}}});
  auto run = gof_by_group(scale_corpus(c, ScalingMethod::Mean), 0.1);
  ASSERT_EQ(run.reports.size(), 1u);
  ASSERT_EQ(run.skipped.size(), 1u);
  EXPECT_EQ(run.skipped[0].first, (GroupKey{"B", 2003}));
  std::ostringstream os;
  write_gof_csv(run, os);
  EXPECT_EQ(os.str().rfind("category,year,status,n_used,threshold,mu_hat,sigma_hat,a_squared,a_squared_star,p_bracket\n", 0), 0u);
}

}  // namespace
}  // namespace aii
