#include "aii/topshare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "aii/error.hpp"
#include "aii/format.hpp"

namespace aii {

double band_halfwidth(double top_fraction, std::size_t n) {
  return std::sqrt(top_fraction * (1.0 - top_fraction) / static_cast<double>(n));
}

TopShareReport top_share(std::span<const ScoredRecord> scored, double top_fraction, std::string label,
                         std::span<const SkippedGroup> skipped) {
  if (!(top_fraction > 0.0 && top_fraction < 1.0))
    throw ParameterError("top fraction must lie in (0, 1), got " + fmt_num(top_fraction));
  if (scored.empty() && skipped.empty()) throw ParameterError("top-share ranking needs at least one record");

  TopShareReport report;
  report.label = std::move(label);
  report.top_fraction = top_fraction;
  report.n_records = scored.size();

  std::map<std::string, CategoryShare> cats;
  for (const auto& s : skipped) {
    auto& c = cats[s.group.category];
    c.category = s.group.category;
    c.n_skipped += s.n_records;
  }

  if (!scored.empty()) {
    std::vector<double> desc;
    desc.reserve(scored.size());
    for (const auto& s : scored) desc.push_back(s.score);
    std::sort(desc.begin(), desc.end(), std::greater<>());
    // ceil(f * N) best records, guarding against f * N landing an ulp above an integer
    const double want = std::ceil(top_fraction * static_cast<double>(desc.size()) - 1e-9);
    const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, desc.size());
    report.cutoff = desc[k - 1];

    for (const auto& s : scored) {
      auto& c = cats[s.category];
      c.category = s.category;
      ++c.n;
      if (s.score >= report.cutoff) {
        ++c.top_count;
        ++report.n_top;
      }
    }
  }

  for (auto& [name, c] : cats) {
    c.evaluated = c.n > 0;
    c.partially_skipped = c.evaluated && c.n_skipped > 0;
    if (c.evaluated) {
      c.share = static_cast<double>(c.top_count) / static_cast<double>(c.n);
      const double h = band_halfwidth(top_fraction, c.n);
      c.band_low = top_fraction - h;
      c.band_high = top_fraction + h;
      c.within_band = c.share >= c.band_low && c.share <= c.band_high;
      ++report.n_categories_evaluated;
      if (c.within_band) ++report.n_within_band;
    }
    report.per_category.push_back(std::move(c));
  }
  return report;
}

std::vector<ScoredRecord> raw_scores(const Corpus& corpus, std::optional<int> year) {
  std::vector<ScoredRecord> out;
  out.reserve(corpus.records.size());
  for (const auto& r : corpus.records)
    if (!year || r.year == *year) out.push_back({r.category, r.year, static_cast<double>(r.citations)});
  return out;
}

std::vector<ScoredRecord> scaled_scores(const ScaleResult& result, std::optional<int> year) {
  std::vector<ScoredRecord> out;
  out.reserve(result.records.size());
  for (const auto& r : result.records)
    if (!year || r.record.year == *year) out.push_back({r.record.category, r.record.year, r.aii});
  return out;
}

namespace {

std::vector<SkippedGroup> skipped_in_year(const std::vector<SkippedGroup>& skipped, std::optional<int> year) {
  if (!year) return skipped;
  std::vector<SkippedGroup> out;
  std::copy_if(skipped.begin(), skipped.end(), std::back_inserter(out),
               [&](const SkippedGroup& s) { return s.group.year == *year; });
  return out;
}

}  // namespace

std::vector<TopShareReport> method_comparison(const Corpus& corpus, std::span<const ScalingMethod> methods,
                                              double top_fraction, std::optional<int> year) {
  std::vector<TopShareReport> reports;
  reports.push_back(top_share(raw_scores(corpus, year), top_fraction, "raw"));
  for (auto m : methods) {
    const auto scaled = scale_corpus(corpus, m);
    const auto skipped = skipped_in_year(scaled.skipped, year);
    reports.push_back(top_share(scaled_scores(scaled, year), top_fraction, std::string(to_string(m)), skipped));
  }
  return reports;
}

void write_topshare_csv(const TopShareReport& report, std::ostream& out) {
  out << "category,evaluated,n,n_skipped,top_count,share,band_low,band_high,within_band\n";
  for (const auto& c : report.per_category) {
    out << c.category << ',' << (c.evaluated ? 1 : 0) << ',' << c.n << ',' << c.n_skipped << ','
        << c.top_count << ',';
    if (c.evaluated)
      out << fmt_num(c.share) << ',' << fmt_num(c.band_low) << ',' << fmt_num(c.band_high) << ','
          << (c.within_band ? 1 : 0) << '\n';
    else
      out << ",,,\n";
  }
}

void write_topshare_summary_json(std::span<const TopShareReport> reports, std::ostream& out) {
  nlohmann::json j;
  j["band"] = "top_fraction +/- sqrt(top_fraction * (1 - top_fraction) / n)";
  j["ties"] = "inclusive";
  auto& arr = j["reports"] = nlohmann::json::array();
  for (const auto& r : reports)
    arr.push_back({{"label", r.label},
                   {"top_fraction", r.top_fraction},
                   {"cutoff", round_sig10(r.cutoff)},
                   {"n_records", r.n_records},
                   {"n_top", r.n_top},
                   {"n_categories_evaluated", r.n_categories_evaluated},
                   {"n_within_band", r.n_within_band}});
  out << j.dump(2) << '\n';
}

}  // namespace aii
