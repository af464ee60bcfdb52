#include "aii/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "aii/error.hpp"
#include "aii/format.hpp"
#include "aii/gof.hpp"
#include "aii/survival.hpp"
#include "aii/topshare.hpp"

namespace aii {

namespace {

std::string opt(const std::optional<double>& v) { return v ? fmt_num(*v) : std::string(); }

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

}  // namespace

Artifact write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
  return Artifact{name, sha256_hex(content), content.size()};
}

std::string stats_csv(const Corpus& corpus, KurtosisConvention convention) {
  std::ostringstream os;
  os << "category,year,n,mean,median,stddev,skewness,kurtosis,n_nonzero,mean_nonzero,median_nonzero,"
        "min,max,upper_fence,n_upper_outliers,kurtosis_convention\n";
  for (const auto& [key, values] : group(corpus)) {
    const auto s = describe(values, convention);
    os << key.category << ',' << key.year << ',' << s.n << ',' << fmt_num(s.mean) << ',' << fmt_num(s.median) << ','
       << opt(s.stddev) << ',' << opt(s.skewness) << ',' << opt(s.kurtosis) << ',' << s.n_nonzero << ','
       << opt(s.mean_nonzero) << ',' << opt(s.median_nonzero) << ',' << s.min << ',' << s.max << ','
       << fmt_num(s.upper_fence) << ',' << s.n_upper_outliers << ',' << to_string(convention) << '\n';
  }
  return os.str();
}

std::string manifest_digest(const nlohmann::json& manifest) {
  nlohmann::json copy = manifest;
  copy.erase("metadata");
  copy.erase("digest");
  return sha256_hex(copy.dump());
}

nlohmann::json run_report(const Corpus& corpus, const ReportOptions& options, const std::filesystem::path& out_dir) {
  if (corpus.empty()) throw EmptyCorpusError();
  std::filesystem::create_directories(out_dir);
  std::vector<Artifact> artifacts;
  auto emit = [&](const std::string& name, const std::string& content) {
    artifacts.push_back(write_artifact(out_dir, name, content));
  };

  emit("stats.csv", stats_csv(corpus, options.kurtosis));

  auto emit_collapse = [&](const std::vector<GroupSample>& samples, const std::string& label) {
    emit("survival_" + label + ".csv", render([&](std::ostream& os) { write_curve_csv(samples, os); }));
    std::string body;
    if (samples.size() >= 2) {
      body = render([&](std::ostream& os) { write_collapse_json(collapse_metrics(samples, label), os); });
    } else {
      nlohmann::json j{{"label", label}, {"n_groups", samples.size()}, {"max_pairwise_ks", nullptr},
                       {"quantile_dispersion", nlohmann::json::array()}};
      body = j.dump(2) + "\n";
    }
    emit("collapse_" + label + ".json", body);
  };

  std::vector<TopShareReport> shares;
  auto emit_topshare = [&](TopShareReport r) {
    emit("topshare_" + r.label + ".csv", render([&](std::ostream& os) { write_topshare_csv(r, os); }));
    shares.push_back(std::move(r));
  };

  emit_collapse(raw_samples(corpus), "raw");
  emit_topshare(top_share(raw_scores(corpus, options.year), options.top_fraction, "raw"));

  for (auto m : options.methods) {
    const std::string label(to_string(m));
    const auto scaled = scale_corpus(corpus, m);
    emit("scaled_" + label + ".csv", render([&](std::ostream& os) { write_scaled_csv(scaled, os); }));
    emit("skipped_" + label + ".csv", render([&](std::ostream& os) { write_skipped_csv(scaled, os); }));
    emit_collapse(scaled_samples(scaled), label);

    std::vector<SkippedGroup> skipped;
    for (const auto& s : scaled.skipped)
      if (!options.year || s.group.year == *options.year) skipped.push_back(s);
    if (auto scores = scaled_scores(scaled, options.year); !scores.empty() || !skipped.empty())
      emit_topshare(top_share(scores, options.top_fraction, label, skipped));

    const auto gof = gof_by_group(scaled, options.gof_threshold);
    emit("gof_" + label + ".csv", render([&](std::ostream& os) { write_gof_csv(gof, os); }));
  }

  emit("topshare_summary.json", render([&](std::ostream& os) { write_topshare_summary_json(shares, os); }));

  nlohmann::json manifest;
  manifest["tool"] = "aii";
  manifest["format_version"] = 1;
  nlohmann::json methods = nlohmann::json::array();
  for (auto m : options.methods) methods.push_back(std::string(to_string(m)));
  manifest["options"] = {{"methods", methods},
                         {"top_fraction", options.top_fraction},
                         {"gof_threshold", options.gof_threshold},
                         {"year", options.year ? nlohmann::json(*options.year) : nlohmann::json(nullptr)},
                         {"kurtosis_convention", std::string(to_string(options.kurtosis))}};
  manifest["records"] = corpus.size();
  auto& arr = manifest["artifacts"] = nlohmann::json::array();
  for (const auto& a : artifacts) arr.push_back({{"name", a.name}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  manifest["digest"] = manifest_digest(manifest);
  manifest["metadata"] = {{"generated_at", utc_now()},
                          {"source", options.source},
                          {"gof_caveat", "threshold filter applied before fitting; no truncation correction"}};

  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  if (!out) throw Error("cannot write manifest in " + out_dir.string());
  out << manifest.dump(2) << '\n';
  return manifest;
}

}  // namespace aii
