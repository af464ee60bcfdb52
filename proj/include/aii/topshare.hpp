#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aii/corpus.hpp"
#include "aii/scaling.hpp"

namespace aii {

struct ScoredRecord {
  std::string category;
  int year = 0;
  double score = 0.0;
};

struct CategoryShare {
  std::string category;
  bool evaluated = true;  // false when every record was skipped by scaling
  bool partially_skipped = false;
  std::size_t n = 0;
  std::size_t n_skipped = 0;
  std::size_t top_count = 0;
  double share = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;
  bool within_band = false;
};

struct TopShareReport {
  std::string label;  // "raw" or a method name
  double top_fraction = 0.10;
  double cutoff = 0.0;
  std::size_t n_records = 0;
  std::size_t n_top = 0;
  std::vector<CategoryShare> per_category;  // sorted by category
  std::size_t n_within_band = 0;
  std::size_t n_categories_evaluated = 0;
};

// Half-width of the admissibility band: one binomial standard deviation.
double band_halfwidth(double top_fraction, std::size_t n);

// Pools every score into one ranking; the cutoff is the score of the
// ceil(f * N)-th best record and every record tied with it counts as top.
// `skipped` lists records removed by scaling, per category, so categories
// can be flagged as partially skipped or unevaluated.
TopShareReport top_share(std::span<const ScoredRecord> scored, double top_fraction,
                         std::string label,
                         std::span<const SkippedGroup> skipped = {});

std::vector<ScoredRecord> raw_scores(const Corpus& corpus, std::optional<int> year = {});
std::vector<ScoredRecord> scaled_scores(const ScaleResult& result, std::optional<int> year = {});

// Raw report first, then one report per method in the given order.
std::vector<TopShareReport> method_comparison(const Corpus& corpus,
                                              std::span<const ScalingMethod> methods,
                                              double top_fraction,
                                              std::optional<int> year = {});

void write_topshare_csv(const TopShareReport& report, std::ostream& out);
void write_topshare_summary_json(std::span<const TopShareReport> reports, std::ostream& out);

}  // namespace aii
