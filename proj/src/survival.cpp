#include "aii/survival.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "aii/error.hpp"
#include "aii/format.hpp"
#include "aii/stats.hpp"

namespace aii {

std::vector<SurvivalPoint> survival_curve(std::span<const double> values) {
  if (values.empty()) throw EmptyGroupError();
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<SurvivalPoint> points;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    points.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
    i = j;
  }
  return points;
}

double survival_at(std::span<const SurvivalPoint> points, double t) {
  // first point with value >= t carries Pr(X >= t)
  auto it = std::lower_bound(points.begin(), points.end(), t,
                             [](const SurvivalPoint& p, double v) { return p.value < v; });
  return it == points.end() ? 0.0 : it->prob;
}

std::vector<GroupSample> raw_samples(const Corpus& corpus) {
  std::vector<GroupSample> out;
  for (auto& [key, values] : group(corpus)) {
    GroupSample s{key, std::vector<double>(values.begin(), values.end())};
    std::sort(s.values.begin(), s.values.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<GroupSample> scaled_samples(const ScaleResult& result) {
  std::vector<GroupSample> out;
  for (const auto& r : result.records) {
    GroupKey key{r.record.category, r.record.year};
    if (out.empty() || out.back().group != key) out.push_back(GroupSample{key, {}});
    out.back().values.push_back(r.aii);
  }
  for (auto& s : out) std::sort(s.values.begin(), s.values.end());
  return out;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptyGroupError();
  const auto na = static_cast<long long>(a.size());
  const auto nb = static_cast<long long>(b.size());
  long long i = 0, j = 0, best = 0;
  while (i < na && j < nb) {
    const double x = std::min(a[i], b[j]);
    while (i < na && a[i] <= x) ++i;
    while (j < nb && b[j] <= x) ++j;
    best = std::max(best, std::llabs(i * nb - j * na));
  }
  return static_cast<double>(best) / (static_cast<double>(na) * static_cast<double>(nb));
}

namespace {

std::vector<QuantileSpread> quantile_spreads(std::span<const GroupSample> samples) {
  std::vector<QuantileSpread> out;
  for (double q : kCollapseQuantiles) {
    QuantileSpread qs;
    qs.q = q;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : samples) {
      const double v = sorted_quantile(s.values, q);
      if (!(v > 0.0)) {
        ++qs.n_excluded;
        continue;
      }
      const double lv = std::log10(v);
      lo = std::min(lo, lv);
      hi = std::max(hi, lv);
      ++qs.n_groups;
    }
    qs.spread = qs.n_groups >= 2 ? hi - lo : 0.0;
    out.push_back(qs);
  }
  return out;
}

void check_arity(std::span<const GroupSample> samples) {
  if (samples.size() < 2)
    throw ParameterError("collapse metrics need at least 2 groups, got " + std::to_string(samples.size()));
  for (const auto& s : samples)
    if (s.values.empty()) throw EmptyGroupError();
}

}  // namespace

CollapseReport collapse_metrics(std::span<const GroupSample> samples, std::string label) {
  check_arity(samples);
  const auto g = static_cast<std::ptrdiff_t>(samples.size());
  const std::ptrdiff_t pairs = g * (g - 1) / 2;
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
  for (std::ptrdiff_t p = 0; p < pairs; ++p) {
    // unrank p into (a, b) with a < b
    std::ptrdiff_t a = 0, rem = p;
    while (rem >= g - 1 - a) {
      rem -= g - 1 - a;
      ++a;
    }
    const std::ptrdiff_t b = a + 1 + rem;
    worst = std::max(worst, ks_statistic(samples[a].values, samples[b].values));
  }
  return CollapseReport{std::move(label), samples.size(), worst, quantile_spreads(samples)};
}

CollapseReport collapse_metrics_serial(std::span<const GroupSample> samples, std::string label) {
  check_arity(samples);
  double worst = 0.0;
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = a + 1; b < samples.size(); ++b)
      worst = std::max(worst, ks_statistic(samples[a].values, samples[b].values));
  return CollapseReport{std::move(label), samples.size(), worst, quantile_spreads(samples)};
}

std::vector<double> log_thresholds(std::span<const GroupSample> samples, std::size_t count) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& s : samples) {
    auto pos = std::upper_bound(s.values.begin(), s.values.end(), 0.0);
    if (pos != s.values.end()) lo = std::min(lo, *pos);
    if (!s.values.empty()) hi = std::max(hi, s.values.back());
  }
  if (!(hi > 0.0) || count == 0) return {};
  if (lo == hi || count == 1) return {lo};
  std::vector<double> t(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t k = 0; k < count; ++k)
    t[k] = std::exp(llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(count - 1));
  t.front() = lo;
  t.back() = hi;
  return t;
}

void write_curve_csv(std::span<const GroupSample> samples, std::ostream& out) {
  const auto thresholds = log_thresholds(samples);
  out << "category,year,value,prob\n";
  for (const auto& s : samples) {
    const auto curve = survival_curve(s.values);
    for (double t : thresholds) {
      const double p = survival_at(curve, t);
      if (p <= 0.0) break;
      out << s.group.category << ',' << s.group.year << ',' << fmt_num(t) << ',' << fmt_num(p) << '\n';
    }
  }
}

void write_collapse_json(const CollapseReport& report, std::ostream& out) {
  nlohmann::json j;
  j["label"] = report.label;
  j["n_groups"] = report.n_groups;
  j["max_pairwise_ks"] = round_sig10(report.max_pairwise_ks);
  auto& qd = j["quantile_dispersion"] = nlohmann::json::array();
  for (const auto& q : report.quantile_dispersion)
    qd.push_back({{"q", q.q}, {"spread", round_sig10(q.spread)}, {"n_groups", q.n_groups},
                  {"n_excluded", q.n_excluded}});
  out << j.dump(2) << '\n';
}

}  // namespace aii
