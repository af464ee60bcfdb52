#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aii/corpus.hpp"
#include "aii/scaling.hpp"

namespace aii {

// Significance brackets of the Anderson-Darling test with mean and variance
// estimated from the sample (Stephens' case 3), strongest evidence last.
enum class PBracket { Above25, P10to25, P05to10, P025to05, P01to025, P005to01, Below005 };

std::string_view to_string(PBracket b);

// Bracket for a small-sample adjusted statistic A*^2.
PBracket p_bracket(double a_squared_star);

double normal_cdf(double z);

struct GofReport {
  GroupKey group;
  std::size_t n_used = 0;
  double threshold = 0.1;
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  double a_squared = 0.0;
  double a_squared_star = 0.0;
  PBracket p_bracket = PBracket::Above25;
};

inline constexpr std::size_t kMinGofSample = 8;

// Anderson-Darling test of log(values) against the normal, on values >= threshold.
GofReport ad_lognormal(std::span<const double> values, double threshold = 0.1);

struct GofRun {
  std::string label;
  double threshold = 0.1;
  std::vector<GofReport> reports;
  std::vector<std::pair<GroupKey, std::string>> skipped;
};

// Per-group test of the scaled values of `result`.
GofRun gof_by_group(const ScaleResult& result, double threshold);

void write_gof_csv(const GofRun& run, std::ostream& out);

}  // namespace aii
