#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aii/corpus.hpp"
#include "aii/scaling.hpp"

namespace aii {

struct SurvivalPoint {
  double value = 0.0;
  double prob = 0.0;  // Pr(X >= value)
  bool operator==(const SurvivalPoint&) const = default;
};

struct SurvivalCurve {
  GroupKey group;
  std::vector<SurvivalPoint> points;  // strictly increasing values
};

// One point per distinct value, prob = #{x >= v} / n.
std::vector<SurvivalPoint> survival_curve(std::span<const double> values);

// Right-continuous step evaluation of Pr(X >= t) from a curve.
double survival_at(std::span<const SurvivalPoint> points, double t);

// The values underlying one group's curve (raw citations or AII).
struct GroupSample {
  GroupKey group;
  std::vector<double> values;  // sorted ascending
};

std::vector<GroupSample> raw_samples(const Corpus& corpus);
std::vector<GroupSample> scaled_samples(const ScaleResult& result);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b| of sorted samples.
double ks_statistic(std::span<const double> sorted_a, std::span<const double> sorted_b);

inline constexpr std::array<double, 5> kCollapseQuantiles = {0.5, 0.75, 0.9, 0.95, 0.99};

struct QuantileSpread {
  double q = 0.0;
  double spread = 0.0;         // max - min of log10 quantile across groups
  std::size_t n_groups = 0;    // groups contributing
  std::size_t n_excluded = 0;  // groups whose q-quantile is 0
};

struct CollapseReport {
  std::string label;  // "raw" or a method name
  std::size_t n_groups = 0;
  double max_pairwise_ks = 0.0;
  std::vector<QuantileSpread> quantile_dispersion;
};

// Pairwise KS is evaluated in parallel over pairs; collapse_metrics_serial is
// the reference. Needs at least two samples.
CollapseReport collapse_metrics(std::span<const GroupSample> samples, std::string label);
CollapseReport collapse_metrics_serial(std::span<const GroupSample> samples, std::string label);

// 25 log-spaced thresholds between the smallest positive and largest value
// over all samples; empty when no positive value exists.
std::vector<double> log_thresholds(std::span<const GroupSample> samples, std::size_t count = 25);

// `category,year,value,prob` at the log thresholds, positive probs only.
void write_curve_csv(std::span<const GroupSample> samples, std::ostream& out);
void write_collapse_json(const CollapseReport& report, std::ostream& out);

}  // namespace aii
