#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aii/corpus.hpp"

namespace aii {

enum class KurtosisConvention { Excess, Pearson };

std::string_view to_string(KurtosisConvention c);

// Reference statistics of one (category, year) citation distribution.
// Fields that do not exist for the data are nullopt, never zero.
struct GroupStats {
  std::size_t n = 0;
  std::size_t n_nonzero = 0;
  Citations min = 0;
  Citations max = 0;
  double mean = 0.0;
  std::optional<double> mean_nonzero;
  double median = 0.0;
  std::optional<double> median_nonzero;
  std::optional<double> stddev;    // sample (n-1); needs n >= 2
  std::optional<double> skewness;  // adjusted Fisher-Pearson G1; n >= 3
  std::optional<double> kurtosis;  // adjusted G2 (+3 for Pearson); n >= 4
  KurtosisConvention kurtosis_convention = KurtosisConvention::Excess;
  // Tukey upper fence Q3 + 1.5 IQR and the number of values above it.
  double upper_fence = 0.0;
  std::size_t n_upper_outliers = 0;
};

GroupStats describe(std::span<const Citations> values,
                    KurtosisConvention convention = KurtosisConvention::Excess);

struct NonzeroStats {
  bool all_zero = false;
  std::optional<GroupStats> stats;
};

NonzeroStats describe_nonzero(std::span<const Citations> values,
                              KurtosisConvention convention = KurtosisConvention::Excess);

// Midpoint median of an already sorted range.
double sorted_median(std::span<const double> sorted);
double sorted_median(std::span<const Citations> sorted);

// Linear-interpolation quantile (Hyndman-Fan type 7) of a sorted range.
double sorted_quantile(std::span<const double> sorted, double q);

}  // namespace aii
