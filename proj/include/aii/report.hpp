#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aii/corpus.hpp"
#include "aii/scaling.hpp"
#include "aii/stats.hpp"

namespace aii {

struct ReportOptions {
  std::vector<ScalingMethod> methods{kAllMethods.begin(), kAllMethods.end()};
  double top_fraction = 0.10;
  double gof_threshold = 0.1;
  std::optional<int> year;
  KurtosisConvention kurtosis = KurtosisConvention::Excess;
  std::string source;  // input description, recorded in the manifest
};

struct Artifact {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

// Writes `content` to dir/name and returns its manifest entry.
Artifact write_artifact(const std::filesystem::path& dir, const std::string& name,
                        const std::string& content);

std::string stats_csv(const Corpus& corpus, KurtosisConvention convention);

// Full pipeline for raw plus every method: stats, scaled corpora, survival
// curves, collapse, top-share and goodness-of-fit artifacts, and
// manifest.json. Returns the manifest.
nlohmann::json run_report(const Corpus& corpus, const ReportOptions& options,
                          const std::filesystem::path& out_dir);

// SHA-256 of the manifest without its "metadata" block.
std::string manifest_digest(const nlohmann::json& manifest);

}  // namespace aii
