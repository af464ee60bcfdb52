#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aii/corpus.hpp"

namespace aii {

enum class ScalingMethod { MaxRange, Mean, MeanNoZero, BoxCoxMean, Median, MedianNoZero };

inline constexpr std::array<ScalingMethod, 6> kAllMethods = {
    ScalingMethod::MaxRange, ScalingMethod::Mean,   ScalingMethod::MeanNoZero,
    ScalingMethod::BoxCoxMean, ScalingMethod::Median, ScalingMethod::MedianNoZero};

// CLI names: max, mean, mean0, boxcox, median, median0.
std::string_view to_string(ScalingMethod m);
std::optional<ScalingMethod> parse_method(std::string_view name);

inline constexpr double kLambdaMin = -3.0;
inline constexpr double kLambdaMax = 3.0;

// Denominators of the ratio methods are kept as an exact rational
// `total / weight` of integers, so aii = (c * weight) / total is a single
// correctly rounded division. This makes k-fold rescaled groups produce
// bit-identical indices.
struct ScalingFactorSet {
  GroupKey group;
  ScalingMethod method = ScalingMethod::Mean;
  bool defined = false;
  double denominator = 0.0;
  Citations total = 0;
  Citations weight = 1;
  std::optional<double> lambda;
  std::optional<double> boxcox_mean;
  std::string undefined_reason;
};

struct ScaledRecord {
  PubRecord record;
  ScalingMethod method = ScalingMethod::Mean;
  double aii = 0.0;
};

ScalingFactorSet fit_factors(std::span<const Citations> values, ScalingMethod method,
                             GroupKey group = {});

ScaledRecord scale(const PubRecord& record, const ScalingFactorSet& factors);

// Box-Cox transform of c + 1.
double boxcox(double c, double lambda);

// Profile log-likelihood of lambda for the transformed values of c + 1,
// using the maximum-likelihood (n-denominator) variance.
double boxcox_loglik(std::span<const double> values, double lambda);

// Maximum-likelihood lambda over [-3, 3]: 0.01 grid, then golden-section
// refinement to 1e-5 around the best grid point. The grid pass runs in
// parallel; fit_lambda_serial is the single-threaded reference.
double fit_lambda(std::span<const double> values);
double fit_lambda(std::span<const Citations> values);
double fit_lambda_serial(std::span<const double> values);

struct SkippedGroup {
  GroupKey group;
  std::size_t n_records = 0;
  std::string reason;
};

struct ScaleResult {
  ScalingMethod method = ScalingMethod::Mean;
  std::vector<ScaledRecord> records;  // GroupKey order, then pub_id
  std::vector<SkippedGroup> skipped;  // GroupKey order
};

// Groups are fitted concurrently; output is identical to the serial path.
ScaleResult scale_corpus(const Corpus& corpus, ScalingMethod method);
ScaleResult scale_corpus_serial(const Corpus& corpus, ScalingMethod method);

void write_scaled_csv(const ScaleResult& result, std::ostream& out);
void write_skipped_csv(const ScaleResult& result, std::ostream& out);

}  // namespace aii
