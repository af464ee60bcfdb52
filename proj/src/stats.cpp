#include "aii/stats.hpp"

#include <algorithm>
#include <cmath>

#include "aii/error.hpp"

namespace aii {

std::string_view to_string(KurtosisConvention c) {
  return c == KurtosisConvention::Excess ? "excess" : "pearson";
}

double sorted_median(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) throw EmptyGroupError();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

double sorted_median(std::span<const Citations> sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) throw EmptyGroupError();
  if (n % 2 == 1) return static_cast<double>(sorted[n / 2]);
  return (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw EmptyGroupError();
  q = std::clamp(q, 0.0, 1.0);
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

double quartile(std::span<const Citations> sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return static_cast<double>(sorted[lo]) +
         (h - static_cast<double>(lo)) * static_cast<double>(sorted[hi] - sorted[lo]);
}

}  // namespace

GroupStats describe(std::span<const Citations> values, KurtosisConvention convention) {
  if (values.empty()) throw EmptyGroupError();

  std::vector<Citations> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  GroupStats s;
  s.kurtosis_convention = convention;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();

  long double sum = 0;
  for (auto v : sorted) sum += static_cast<long double>(v);
  const double n = static_cast<double>(s.n);
  s.mean = static_cast<double>(sum / static_cast<long double>(s.n));
  s.median = sorted_median(std::span<const Citations>(sorted));

  auto first_nonzero = std::upper_bound(sorted.begin(), sorted.end(), Citations{0});
  s.n_nonzero = static_cast<std::size_t>(sorted.end() - first_nonzero);
  if (s.n_nonzero > 0) {
    long double nz_sum = 0;
    for (auto it = first_nonzero; it != sorted.end(); ++it) nz_sum += static_cast<long double>(*it);
    s.mean_nonzero = static_cast<double>(nz_sum / static_cast<long double>(s.n_nonzero));
    s.median_nonzero = sorted_median(std::span<const Citations>(&*first_nonzero, s.n_nonzero));
  }

  // Central moments, second pass.
  long double m2 = 0, m3 = 0, m4 = 0;
  const long double mean_l = sum / static_cast<long double>(s.n);
  for (auto v : sorted) {
    const long double d = static_cast<long double>(v) - mean_l;
    const long double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= s.n;
  m3 /= s.n;
  m4 /= s.n;

  if (s.n >= 2) s.stddev = std::sqrt(static_cast<double>(m2) * n / (n - 1.0));
  if (m2 > 0) {
    if (s.n >= 3) {
      const double g1 = static_cast<double>(m3 / std::pow(m2, 1.5L));
      s.skewness = std::sqrt(n * (n - 1.0)) / (n - 2.0) * g1;
    }
    if (s.n >= 4) {
      const double g2 = static_cast<double>(m4 / (m2 * m2)) - 3.0;
      double k = (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0);
      if (convention == KurtosisConvention::Pearson) k += 3.0;
      s.kurtosis = k;
    }
  }
  if (s.stddev && *s.stddev == 0.0) {
    s.skewness.reset();
    s.kurtosis.reset();
  }

  const double q1 = quartile(sorted, 0.25);
  const double q3 = quartile(sorted, 0.75);
  s.upper_fence = q3 + 1.5 * (q3 - q1);
  s.n_upper_outliers = static_cast<std::size_t>(
      sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), s.upper_fence,
                                      [](double f, Citations v) { return f < static_cast<double>(v); }));
  return s;
}

NonzeroStats describe_nonzero(std::span<const Citations> values, KurtosisConvention convention) {
  if (values.empty()) throw EmptyGroupError();
  std::vector<Citations> nz;
  nz.reserve(values.size());
  std::copy_if(values.begin(), values.end(), std::back_inserter(nz), [](Citations v) { return v > 0; });
  NonzeroStats out;
  if (nz.empty()) {
    out.all_zero = true;
    return out;
  }
  out.stats = describe(nz, convention);
  return out;
}

}  // namespace aii
