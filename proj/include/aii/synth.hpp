#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "aii/corpus.hpp"

namespace aii {

struct Lognormal {
  double mu = 0.0;
  double sigma = 1.0;
};

struct NegativeBinomial {
  double r = 1.0;
  double p = 0.5;  // success probability; mean r(1-p)/p
};

// P(c) proportional to (c + 1)^-alpha on c = 0..c_max.
struct ZipfCutoff {
  double alpha = 2.0;
  Citations c_max = 1000;
};

using Family = std::variant<Lognormal, NegativeBinomial, ZipfCutoff>;

struct CategorySpec {
  std::string category;
  int year = 0;
  std::size_t n = 1;
  Family family = Lognormal{};
  double zero_inflation = 0.0;
  // Optional: draw from another spec's stream (by index) and multiply every
  // count by `multiplier`. Used to build exact k-fold rescaled copies.
  std::optional<std::size_t> stream = std::nullopt;
  Citations multiplier = 1;
};

struct Scenario {
  std::uint64_t seed = 0;
  std::vector<CategorySpec> specs;
  std::string note;  // free-form provenance, echoed in metadata
};

inline constexpr const char* kGeneratorName =
    "std::mt19937_64 + libstdc++ distributions, per-stream std::seed_seq{seed_lo, seed_hi, stream}, v1";

void validate(const Scenario& scenario);

// Pure function of (seed, specs). Specs are drawn concurrently, each from its
// own derived stream; generate_serial is the reference.
Corpus generate(const Scenario& scenario);
Corpus generate_serial(const Scenario& scenario);

// Two categories: `base` and `<category>_x<k>`, whose counts are k times the
// base counts, draw by draw.
Scenario scaled_copy_scenario(const CategorySpec& base, Citations k, std::uint64_t seed = 1);

// The frozen 20-category, two-cohort scenario used for desk-scale checks.
Scenario reference_scenario();

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace aii
