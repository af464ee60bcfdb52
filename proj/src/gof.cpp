#include "aii/gof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include "aii/error.hpp"
#include "aii/format.hpp"
#include "aii/survival.hpp"

namespace aii {

namespace {

// Upper-tail percentage points of A*^2 for the normal with both parameters
// estimated (D'Agostino & Stephens 1986, table 4.7).
constexpr std::array<double, 6> kCritical = {0.470, 0.631, 0.752, 0.873, 1.035, 1.159};

double log_normal_cdf(double z) { return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2)); }

}  // namespace

std::string_view to_string(PBracket b) {
  switch (b) {
    case PBracket::Above25: return ">0.25";
    case PBracket::P10to25: return "0.10-0.25";
    case PBracket::P05to10: return "0.05-0.10";
    case PBracket::P025to05: return "0.025-0.05";
    case PBracket::P01to025: return "0.01-0.025";
    case PBracket::P005to01: return "0.005-0.01";
    case PBracket::Below005: return "<0.005";
  }
  return "?";
}

PBracket p_bracket(double a_star) {
  std::size_t i = 0;
  while (i < kCritical.size() && a_star >= kCritical[i]) ++i;
  return static_cast<PBracket>(i);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

GofReport ad_lognormal(std::span<const double> values, double threshold) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v >= threshold)) continue;
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("value " + fmt_num(v) + " cannot be log-transformed");
    logs.push_back(std::log(v));
  }
  if (logs.size() < kMinGofSample)
    throw InsufficientSampleError("need at least " + std::to_string(kMinGofSample) + " values >= " +
                                  fmt_num(threshold) + " but have " + std::to_string(logs.size()));
  std::sort(logs.begin(), logs.end());

  const auto n = logs.size();
  const double nd = static_cast<double>(n);
  long double sum = 0;
  for (double x : logs) sum += x;
  const double mu = static_cast<double>(sum / n);
  long double ss = 0;
  for (double x : logs) ss += (x - mu) * static_cast<long double>(x - mu);
  const double sigma = std::sqrt(static_cast<double>(ss / (n - 1)));
  if (!(sigma > 0.0)) throw DomainError("log values have zero variance");

  long double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = (logs[i] - mu) / sigma;
    const double zr = (logs[n - 1 - i] - mu) / sigma;
    s += static_cast<long double>(2 * i + 1) * (log_normal_cdf(zi) + log_normal_cdf(-zr));
  }

  GofReport r;
  r.n_used = n;
  r.threshold = threshold;
  r.mu_hat = mu;
  r.sigma_hat = sigma;
  r.a_squared = static_cast<double>(-static_cast<long double>(nd) - s / nd);
  r.a_squared_star = r.a_squared * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
  r.p_bracket = p_bracket(r.a_squared_star);
  return r;
}

GofRun gof_by_group(const ScaleResult& result, double threshold) {
  GofRun run;
  run.label = std::string(to_string(result.method));
  run.threshold = threshold;
  for (const auto& s : scaled_samples(result)) {
    try {
      auto r = ad_lognormal(s.values, threshold);
      r.group = s.group;
      run.reports.push_back(std::move(r));
    } catch (const InsufficientSampleError& e) {
      run.skipped.emplace_back(s.group, e.what());
    } catch (const DomainError& e) {
      run.skipped.emplace_back(s.group, e.what());
    }
  }
  return run;
}

void write_gof_csv(const GofRun& run, std::ostream& out) {
  out << "category,year,status,n_used,threshold,mu_hat,sigma_hat,a_squared,a_squared_star,p_bracket\n";
  // reports and skipped are each in group order; interleave them
  std::size_t i = 0, j = 0;
  while (i < run.reports.size() || j < run.skipped.size()) {
    const bool take_report =
        j == run.skipped.size() || (i < run.reports.size() && run.reports[i].group < run.skipped[j].first);
    if (take_report) {
      const auto& r = run.reports[i++];
      out << r.group.category << ',' << r.group.year << ",ok," << r.n_used << ',' << fmt_num(r.threshold) << ','
          << fmt_num(r.mu_hat) << ',' << fmt_num(r.sigma_hat) << ',' << fmt_num(r.a_squared) << ','
          << fmt_num(r.a_squared_star) << ',' << to_string(r.p_bracket) << '\n';
    } else {
      const auto& [key, why] = run.skipped[j++];
      out << key.category << ',' << key.year << ',' << why << ",,,,,,,\n";
    }
  }
}

}  // namespace aii
