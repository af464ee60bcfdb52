#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace aii {

using Citations = std::int64_t;

// One publication-to-category assignment. A publication indexed under
// several subject categories appears once per category.
struct PubRecord {
  std::string pub_id;
  int year = 0;
  std::string category;
  Citations citations = 0;

  bool operator==(const PubRecord&) const = default;
};

struct GroupKey {
  std::string category;
  int year = 0;

  auto operator<=>(const GroupKey&) const = default;
  bool operator==(const GroupKey&) const = default;
};

std::string to_string(const GroupKey& key);

struct Corpus {
  std::vector<PubRecord> records;
  std::string census_date;  // ISO-8601, informational only

  bool empty() const noexcept { return records.empty(); }
  std::size_t size() const noexcept { return records.size(); }
};

struct IngestResult {
  Corpus corpus;
  std::size_t rows = 0;      // data rows read
  std::size_t warnings = 0;  // duplicates overwritten in lenient mode
};

// Reads `pub_id,year,category,citations`. In strict mode a repeated
// (pub_id, category) pair is an error; otherwise the later row replaces the
// earlier one in place and a warning is counted.
IngestResult ingest_csv(const std::filesystem::path& path, bool strict);
IngestResult ingest_csv(std::istream& in, bool strict);

// Canonical form: header, LF endings, rows sorted by (category, year, pub_id).
void write_csv(const Corpus& corpus, std::ostream& out);
void write_csv(const Corpus& corpus, const std::filesystem::path& path);

std::map<GroupKey, std::vector<Citations>> group(const Corpus& corpus);

// Record indices per group, in ingestion order.
std::map<GroupKey, std::vector<std::size_t>> group_indices(const Corpus& corpus);

struct Tally {
  std::size_t records = 0;
  Citations citations = 0;
  double mean() const { return records == 0 ? 0.0 : static_cast<double>(citations) / static_cast<double>(records); }
};

// Aggregate over every assignment record of `year` whose category is in
// `categories`; multi-category publications are counted once per category.
Tally tally(const Corpus& corpus, const std::vector<std::string>& categories, int year);

}  // namespace aii
