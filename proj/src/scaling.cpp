#include "aii/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "aii/error.hpp"
#include "aii/format.hpp"
#include "aii/stats.hpp"

namespace aii {

std::string_view to_string(ScalingMethod m) {
  switch (m) {
    case ScalingMethod::MaxRange: return "max";
    case ScalingMethod::Mean: return "mean";
    case ScalingMethod::MeanNoZero: return "mean0";
    case ScalingMethod::BoxCoxMean: return "boxcox";
    case ScalingMethod::Median: return "median";
    case ScalingMethod::MedianNoZero: return "median0";
  }
  return "?";
}

std::optional<ScalingMethod> parse_method(std::string_view name) {
  for (auto m : kAllMethods)
    if (to_string(m) == name) return m;
  return std::nullopt;
}

double boxcox(double c, double lambda) {
  const double log_y = std::log1p(c);
  if (lambda == 0.0) return log_y;
  return std::expm1(lambda * log_y) / lambda;
}

namespace {

constexpr double kGridStep = 0.01;
constexpr int kGridPoints = 601;  // -3.00 .. 3.00
constexpr double kRefineTol = 1e-5;

struct LogValues {
  std::vector<double> log_y;  // ln(c + 1)
  long double sum_log = 0;
  double mean_log = 0;
};

LogValues prepare(std::span<const double> values) {
  if (values.size() < 3)
    throw DegenerateLikelihoodError("Box-Cox fit needs at least 3 values, got " +
                                    std::to_string(values.size()));
  LogValues lv;
  lv.log_y.reserve(values.size());
  bool distinct = false;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DomainError("Box-Cox fit needs finite non-negative values");
    if (v != values.front()) distinct = true;
    lv.log_y.push_back(std::log1p(v));
    lv.sum_log += lv.log_y.back();
  }
  if (!distinct) throw DegenerateLikelihoodError("Box-Cox fit on all-equal values");
  lv.mean_log = static_cast<double>(lv.sum_log / static_cast<long double>(values.size()));
  return lv;
}

// Variance of T_lambda is var(w) / lambda^2 for either w = y^lambda or
// w = y^lambda - 1; pick the form that is not close to 1 in magnitude.
double loglik(const LogValues& lv, double lambda) {
  const std::size_t n = lv.log_y.size();
  std::vector<long double> w(n);
  if (lambda == 0.0) {
    for (std::size_t i = 0; i < n; ++i) w[i] = lv.log_y[i];
  } else if (lambda < 0.0 && std::exp(lambda * lv.mean_log) < 0.5) {
    for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(static_cast<long double>(lambda) * lv.log_y[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) w[i] = std::expm1(static_cast<long double>(lambda) * lv.log_y[i]);
  }
  long double mean = 0;
  for (auto x : w) mean += x;
  mean /= static_cast<long double>(n);
  long double ss = 0;
  for (auto x : w) ss += (x - mean) * (x - mean);
  long double var = ss / static_cast<long double>(n);
  if (lambda != 0.0) var /= static_cast<long double>(lambda) * lambda;
  if (!(var > 0)) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(-0.5L * static_cast<long double>(n) * std::log(var) +
                             (static_cast<long double>(lambda) - 1.0L) * lv.sum_log);
}

double grid_lambda(int i) { return kLambdaMin + kGridStep * i; }

double refine(const LogValues& lv, double best_grid, double best_ll) {
  double lo = std::max(kLambdaMin, best_grid - kGridStep);
  double hi = std::min(kLambdaMax, best_grid + kGridStep);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = loglik(lv, x1);
  double f2 = loglik(lv, x2);
  while (hi - lo > kRefineTol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = loglik(lv, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = loglik(lv, x1);
    }
  }
  const double mid = std::clamp(0.5 * (lo + hi), kLambdaMin, kLambdaMax);
  return loglik(lv, mid) >= best_ll ? mid : best_grid;
}

double pick_best(const std::vector<double>& ll) {
  int best = 0;
  for (int i = 1; i < kGridPoints; ++i)
    if (ll[i] > ll[best]) best = i;
  return grid_lambda(best);
}

}  // namespace

double boxcox_loglik(std::span<const double> values, double lambda) {
  return loglik(prepare(values), lambda);
}

double fit_lambda(std::span<const double> values) {
  const LogValues lv = prepare(values);
  std::vector<double> ll(kGridPoints);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < kGridPoints; ++i) ll[i] = loglik(lv, grid_lambda(i));
  const double best = pick_best(ll);
  return refine(lv, best, loglik(lv, best));
}

double fit_lambda_serial(std::span<const double> values) {
  const LogValues lv = prepare(values);
  std::vector<double> ll(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) ll[i] = loglik(lv, grid_lambda(i));
  const double best = pick_best(ll);
  return refine(lv, best, loglik(lv, best));
}

double fit_lambda(std::span<const Citations> values) {
  std::vector<double> v(values.begin(), values.end());
  return fit_lambda(std::span<const double>(v));
}

ScalingFactorSet fit_factors(std::span<const Citations> values, ScalingMethod method, GroupKey group) {
  if (values.empty()) throw EmptyGroupError();
  ScalingFactorSet f;
  f.group = std::move(group);
  f.method = method;

  std::vector<Citations> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto first_nz = std::upper_bound(sorted.begin(), sorted.end(), Citations{0});
  const std::span<const Citations> nonzero(sorted.data() + (first_nz - sorted.begin()),
                                           static_cast<std::size_t>(sorted.end() - first_nz));
  const Citations sum = std::accumulate(sorted.begin(), sorted.end(), Citations{0});

  auto undefined = [&](std::string reason) {
    f.defined = false;
    f.undefined_reason = std::move(reason);
    return f;
  };
  auto ratio = [&](Citations total, Citations weight) {
    f.defined = true;
    f.total = total;
    f.weight = weight;
    f.denominator = static_cast<double>(total) / static_cast<double>(weight);
    return f;
  };
  auto median_ratio = [&](std::span<const Citations> s) {
    const std::size_t n = s.size();
    if (n % 2 == 1) return ratio(s[n / 2], 1);
    return ratio(s[n / 2 - 1] + s[n / 2], 2);
  };

  if (sum == 0) return undefined("all citations are zero");

  switch (method) {
    case ScalingMethod::MaxRange: {
      const Citations range = sorted.back() - sorted.front();
      if (range == 0) return undefined("max equals min");
      return ratio(range, 1);
    }
    case ScalingMethod::Mean:
      return ratio(sum, static_cast<Citations>(sorted.size()));
    case ScalingMethod::MeanNoZero:
      return ratio(sum, static_cast<Citations>(nonzero.size()));
    case ScalingMethod::Median: {
      auto r = median_ratio(sorted);
      if (r.total == 0) return undefined("median is zero (more than 50% uncited)");
      return r;
    }
    case ScalingMethod::MedianNoZero:
      return median_ratio(nonzero);
    case ScalingMethod::BoxCoxMean: {
      std::vector<double> v(sorted.begin(), sorted.end());
      double lambda = 0.0;
      try {
        lambda = fit_lambda(std::span<const double>(v));
      } catch (const DegenerateLikelihoodError& e) {
        return undefined(e.what());
      }
      long double t_sum = 0;
      for (double c : v) t_sum += boxcox(c, lambda);
      const double t_mean = static_cast<double>(t_sum / static_cast<long double>(v.size()));
      if (!(t_mean > 0.0)) return undefined("mean of transformed citations is not positive");
      f.defined = true;
      f.lambda = lambda;
      f.boxcox_mean = t_mean;
      f.denominator = t_mean;
      return f;
    }
  }
  return undefined("unknown method");
}

ScaledRecord scale(const PubRecord& record, const ScalingFactorSet& factors) {
  if (!factors.defined)
    throw UndefinedScalingError("scaling '" + std::string(to_string(factors.method)) +
                                "' undefined for group " + to_string(factors.group) +
                                (factors.undefined_reason.empty() ? "" : ": " + factors.undefined_reason));
  if (record.category != factors.group.category || record.year != factors.group.year)
    throw ContractError("record " + record.pub_id + " (" + to_string(GroupKey{record.category, record.year}) +
                        ") scaled with factors of group " + to_string(factors.group));
  ScaledRecord out{record, factors.method, 0.0};
  if (record.citations == 0) return out;
  if (factors.method == ScalingMethod::BoxCoxMean) {
    out.aii = boxcox(static_cast<double>(record.citations), *factors.lambda) / *factors.boxcox_mean;
  } else {
    out.aii = static_cast<double>(record.citations * factors.weight) / static_cast<double>(factors.total);
  }
  return out;
}

namespace {

struct GroupOutcome {
  std::vector<ScaledRecord> records;
  std::optional<SkippedGroup> skipped;
};

GroupOutcome scale_group(const Corpus& corpus, const GroupKey& key,
                         const std::vector<std::size_t>& indices, ScalingMethod method) {
  std::vector<Citations> values;
  values.reserve(indices.size());
  for (auto i : indices) values.push_back(corpus.records[i].citations);
  const auto factors = fit_factors(values, method, key);
  GroupOutcome out;
  if (!factors.defined) {
    out.skipped = SkippedGroup{key, indices.size(), factors.undefined_reason};
    return out;
  }
  out.records.reserve(indices.size());
  for (auto i : indices) out.records.push_back(scale(corpus.records[i], factors));
  std::sort(out.records.begin(), out.records.end(),
            [](const ScaledRecord& a, const ScaledRecord& b) { return a.record.pub_id < b.record.pub_id; });
  return out;
}

ScaleResult merge(ScalingMethod method, std::vector<GroupOutcome>& outcomes) {
  ScaleResult result;
  result.method = method;
  std::size_t total = 0;
  for (const auto& o : outcomes) total += o.records.size();
  result.records.reserve(total);
  for (auto& o : outcomes) {
    std::move(o.records.begin(), o.records.end(), std::back_inserter(result.records));
    if (o.skipped) result.skipped.push_back(std::move(*o.skipped));
  }
  return result;
}

}  // namespace

ScaleResult scale_corpus(const Corpus& corpus, ScalingMethod method) {
  const auto groups = group_indices(corpus);
  std::vector<std::pair<const GroupKey*, const std::vector<std::size_t>*>> work;
  work.reserve(groups.size());
  for (const auto& [key, idx] : groups) work.emplace_back(&key, &idx);

  std::vector<GroupOutcome> outcomes(work.size());
  const auto count = static_cast<std::ptrdiff_t>(work.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t g = 0; g < count; ++g)
    outcomes[g] = scale_group(corpus, *work[g].first, *work[g].second, method);
  return merge(method, outcomes);
}

ScaleResult scale_corpus_serial(const Corpus& corpus, ScalingMethod method) {
  std::vector<GroupOutcome> outcomes;
  for (const auto& [key, idx] : group_indices(corpus)) outcomes.push_back(scale_group(corpus, key, idx, method));
  return merge(method, outcomes);
}

void write_scaled_csv(const ScaleResult& result, std::ostream& out) {
  out << "pub_id,year,category,citations,method,aii\n";
  const auto name = to_string(result.method);
  for (const auto& s : result.records)
    out << s.record.pub_id << ',' << s.record.year << ',' << s.record.category << ','
        << s.record.citations << ',' << name << ',' << fmt_num(s.aii) << '\n';
}

void write_skipped_csv(const ScaleResult& result, std::ostream& out) {
  out << "category,year,n_records,reason\n";
  for (const auto& s : result.skipped)
    out << s.group.category << ',' << s.group.year << ',' << s.n_records << ',' << s.reason << '\n';
}

}  // namespace aii
