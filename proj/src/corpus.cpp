#include "aii/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "aii/error.hpp"

namespace aii {

namespace {

constexpr std::string_view kHeader = "pub_id,year,category,citations";

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct PairHash {
  std::size_t operator()(const std::pair<std::string, std::string>& p) const noexcept {
    return std::hash<std::string>{}(p.first) * 31 ^ std::hash<std::string>{}(p.second);
  }
};

}  // namespace

std::string to_string(const GroupKey& key) {
  return key.category + "/" + std::to_string(key.year);
}

IngestResult ingest_csv(std::istream& in, bool strict) {
  IngestResult result;
  std::unordered_map<std::pair<std::string, std::string>, std::size_t, PairHash> seen;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!have_header) {
      if (line.empty() && lineno == 1 && in.peek() == std::char_traits<char>::eof()) break;
      if (line != kHeader)
        throw FormatError("expected header '" + std::string(kHeader) + "'", lineno);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;

    auto fields = split_commas(line);
    if (fields.size() != 4)
      throw FormatError("expected 4 columns, found " + std::to_string(fields.size()), lineno);

    PubRecord rec;
    rec.pub_id = std::string(fields[0]);
    if (rec.pub_id.empty()) throw ValueError("empty pub_id", lineno);
    if (!parse_int(fields[1], rec.year))
      throw ValueError("year '" + std::string(fields[1]) + "' is not an integer", lineno);
    rec.category = std::string(fields[2]);
    if (rec.category.empty()) throw ValueError("empty category", lineno);
    if (!parse_int(fields[3], rec.citations))
      throw ValueError("citations '" + std::string(fields[3]) + "' is not an integer", lineno);
    if (rec.citations < 0)
      throw ValueError("citations must be non-negative, got " + std::string(fields[3]), lineno);

    ++result.rows;
    auto key = std::make_pair(rec.pub_id, rec.category);
    if (auto it = seen.find(key); it != seen.end()) {
      if (strict)
        throw DuplicateRecordError("line " + std::to_string(lineno) + ": duplicate (pub_id, category) (" +
                                   rec.pub_id + ", " + rec.category + ")");
      result.corpus.records[it->second] = std::move(rec);
      ++result.warnings;
      continue;
    }
    seen.emplace(std::move(key), result.corpus.records.size());
    result.corpus.records.push_back(std::move(rec));
  }

  if (result.corpus.records.empty()) throw EmptyCorpusError();
  return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return ingest_csv(in, strict);
  } catch (const EmptyCorpusError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_csv(const Corpus& corpus, std::ostream& out) {
  std::vector<const PubRecord*> order;
  order.reserve(corpus.records.size());
  for (const auto& r : corpus.records) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const PubRecord* a, const PubRecord* b) {
    return std::tie(a->category, a->year, a->pub_id) < std::tie(b->category, b->year, b->pub_id);
  });
  out << kHeader << '\n';
  for (const auto* r : order)
    out << r->pub_id << ',' << r->year << ',' << r->category << ',' << r->citations << '\n';
}

void write_csv(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(corpus, out);
}

std::map<GroupKey, std::vector<Citations>> group(const Corpus& corpus) {
  std::map<GroupKey, std::vector<Citations>> groups;
  for (const auto& r : corpus.records) groups[GroupKey{r.category, r.year}].push_back(r.citations);
  return groups;
}

std::map<GroupKey, std::vector<std::size_t>> group_indices(const Corpus& corpus) {
  std::map<GroupKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& r = corpus.records[i];
    groups[GroupKey{r.category, r.year}].push_back(i);
  }
  return groups;
}

Tally tally(const Corpus& corpus, const std::vector<std::string>& categories, int year) {
  Tally t;
  for (const auto& r : corpus.records) {
    if (r.year != year) continue;
    if (std::find(categories.begin(), categories.end(), r.category) == categories.end()) continue;
    ++t.records;
    t.citations += r.citations;
  }
  return t;
}

}  // namespace aii
