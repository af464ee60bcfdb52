#include "aii/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "aii/error.hpp"

namespace aii {

namespace {

constexpr double kMaxDraw = 1e12;

// floor, absorbing representation error of draws that sit on an integer
Citations discretize(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<Citations>(std::floor(std::min(x, kMaxDraw) + 1e-6));
}

std::string spec_name(const CategorySpec& s, std::size_t i) {
  return "spec #" + std::to_string(i) + " (" + s.category + "/" + std::to_string(s.year) + ")";
}

class Sampler {
 public:
  explicit Sampler(const Family& family) : family_(family) {
    if (auto* z = std::get_if<ZipfCutoff>(&family_)) {
      std::vector<double> w(static_cast<std::size_t>(z->c_max) + 1);
      for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::pow(static_cast<double>(c + 1), -z->alpha);
      zipf_ = std::discrete_distribution<Citations>(w.begin(), w.end());
    }
  }

  Citations operator()(std::mt19937_64& rng) {
    return std::visit(
        [&](const auto& f) -> Citations {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, Lognormal>) {
            std::normal_distribution<double> z(f.mu, f.sigma);
            return discretize(std::exp(z(rng)));
          } else if constexpr (std::is_same_v<F, NegativeBinomial>) {
            if (f.p >= 1.0) return 0;
            std::gamma_distribution<double> g(f.r, (1.0 - f.p) / f.p);
            const double rate = g(rng);
            if (!(rate > 0.0)) return 0;
            std::poisson_distribution<Citations> pois(std::min(rate, kMaxDraw));
            return pois(rng);
          } else {
            return zipf_(rng);
          }
        },
        family_);
  }

 private:
  Family family_;
  std::discrete_distribution<Citations> zipf_;
};

std::mt19937_64 stream_rng(std::uint64_t seed, std::size_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::vector<PubRecord> draw_spec(const Scenario& scenario, std::size_t i) {
  const auto& spec = scenario.specs[i];
  auto rng = stream_rng(scenario.seed, spec.stream.value_or(i));
  Sampler sample(spec.family);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<PubRecord> out;
  out.reserve(spec.n);
  for (std::size_t k = 0; k < spec.n; ++k) {
    // both draws always consumed so streams stay aligned across copies
    const bool zero = unif(rng) < spec.zero_inflation;
    const Citations c = sample(rng);
    out.push_back(PubRecord{spec.category + "-" + std::to_string(spec.year) + "-" + std::to_string(k), spec.year,
                            spec.category, zero ? 0 : c * spec.multiplier});
  }
  return out;
}

Corpus concat(std::vector<std::vector<PubRecord>>& parts) {
  Corpus corpus;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  corpus.records.reserve(total);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(corpus.records));
  return corpus;
}

}  // namespace

void validate(const Scenario& scenario) {
  std::set<GroupKey> keys;
  for (std::size_t i = 0; i < scenario.specs.size(); ++i) {
    const auto& s = scenario.specs[i];
    auto fail = [&](const std::string& why) { throw SpecError(spec_name(s, i) + ": " + why); };
    if (s.category.empty()) fail("empty category");
    if (s.category.find(',') != std::string::npos) fail("category must not contain commas");
    if (s.n < 1) fail("n must be >= 1");
    if (!(s.zero_inflation >= 0.0 && s.zero_inflation < 1.0)) fail("zero_inflation must lie in [0, 1)");
    if (s.multiplier < 1) fail("multiplier must be >= 1");
    if (s.stream && *s.stream >= scenario.specs.size()) fail("stream index out of range");
    if (!keys.insert(GroupKey{s.category, s.year}).second) fail("duplicate category-year key");
    std::visit(
        [&](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, Lognormal>) {
            if (!std::isfinite(f.mu)) fail("lognormal mu must be finite");
            if (!(f.sigma > 0.0) || !std::isfinite(f.sigma)) fail("lognormal sigma must be > 0");
          } else if constexpr (std::is_same_v<F, NegativeBinomial>) {
            if (!(f.r > 0.0) || !std::isfinite(f.r)) fail("negative binomial r must be > 0");
            if (!(f.p > 0.0 && f.p <= 1.0)) fail("negative binomial p must lie in (0, 1]");
          } else {
            if (!(f.alpha >= 0.0) || !std::isfinite(f.alpha)) fail("zipf alpha must be >= 0");
            if (f.c_max < 0 || f.c_max > 100'000'000) fail("zipf c_max must lie in [0, 1e8]");
          }
        },
        s.family);
  }
}

Corpus generate(const Scenario& scenario) {
  validate(scenario);
  std::vector<std::vector<PubRecord>> parts(scenario.specs.size());
  const auto count = static_cast<std::ptrdiff_t>(parts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) parts[i] = draw_spec(scenario, static_cast<std::size_t>(i));
  return concat(parts);
}

Corpus generate_serial(const Scenario& scenario) {
  validate(scenario);
  std::vector<std::vector<PubRecord>> parts;
  for (std::size_t i = 0; i < scenario.specs.size(); ++i) parts.push_back(draw_spec(scenario, i));
  return concat(parts);
}

Scenario scaled_copy_scenario(const CategorySpec& base, Citations k, std::uint64_t seed) {
  if (k < 1) throw SpecError("scale factor k must be >= 1");
  Scenario s;
  s.seed = seed;
  CategorySpec a = base;
  a.stream.reset();
  a.multiplier = 1;
  CategorySpec b = a;
  b.category = base.category + "_x" + std::to_string(k);
  b.stream = 0;
  b.multiplier = k;
  s.specs = {a, b};
  s.note = "exact rescaling fixture, k = " + std::to_string(k);
  return s;
}

Scenario reference_scenario() {
  Scenario s;
  s.seed = 20081231;
  s.note =
      "frozen reference scenario: 20 categories x cohorts 2003/2007; zero-inflation shares are a "
      "modeling choice";
  for (int i = 0; i < 20; ++i) {
    const double t = i / 19.0;                   // field citation level
    const double u = ((i * 7) % 20) / 19.0;      // tail heaviness, decorrelated from level
    const double v = ((i * 13 + 5) % 20) / 19.0; // zero-inflation ordering
    const std::string cat = "C" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    const std::size_t n03 = 100 + static_cast<std::size_t>(((i * 11) % 20) / 19.0 * 1400);
    const std::size_t n07 = n03 + 50 + static_cast<std::size_t>(v * 450);
    const double mu03 = 1.3 + 1.3 * t;
    const double sigma = 1.0 + 0.5 * u;
    CategorySpec early;
    early.category = cat;
    early.year = 2003;
    early.n = n03;
    early.family = Lognormal{mu03, sigma};
    early.zero_inflation = 0.05 + 0.15 * v;
    CategorySpec late;
    late.category = cat;
    late.year = 2007;
    late.n = n07;
    late.family = Lognormal{std::max(0.5, mu03 - 1.0), sigma};
    late.zero_inflation = 0.30 + 0.25 * v;
    s.specs.push_back(std::move(early));
    s.specs.push_back(std::move(late));
  }
  return s;
}

namespace {

nlohmann::json family_to_json(const Family& family) {
  return std::visit(
      [](const auto& f) -> nlohmann::json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Lognormal>)
          return {{"type", "lognormal"}, {"mu", f.mu}, {"sigma", f.sigma}};
        else if constexpr (std::is_same_v<F, NegativeBinomial>)
          return {{"type", "negative_binomial"}, {"r", f.r}, {"p", f.p}};
        else
          return {{"type", "zipf_cutoff"}, {"alpha", f.alpha}, {"c_max", f.c_max}};
      },
      family);
}

Family family_from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "lognormal") return Lognormal{j.at("mu").get<double>(), j.at("sigma").get<double>()};
  if (type == "negative_binomial") return NegativeBinomial{j.at("r").get<double>(), j.at("p").get<double>()};
  if (type == "zipf_cutoff") return ZipfCutoff{j.at("alpha").get<double>(), j.at("c_max").get<Citations>()};
  throw SpecError("unknown family type '" + type + "'");
}

}  // namespace

nlohmann::json scenario_to_json(const Scenario& scenario) {
  nlohmann::json j;
  j["seed"] = scenario.seed;
  auto& specs = j["specs"] = nlohmann::json::array();
  for (const auto& s : scenario.specs) {
    nlohmann::json js{{"category", s.category},
                      {"year", s.year},
                      {"n", s.n},
                      {"family", family_to_json(s.family)},
                      {"zero_inflation", s.zero_inflation}};
    if (s.stream) js["stream"] = *s.stream;
    if (s.multiplier != 1) js["multiplier"] = s.multiplier;
    specs.push_back(std::move(js));
  }
  j["metadata"] = {{"generator", kGeneratorName}, {"discretization", "floor(x + 1e-6)"}};
  if (!scenario.note.empty()) j["metadata"]["note"] = scenario.note;
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  try {
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& js : j.at("specs")) {
      CategorySpec c;
      c.category = js.at("category").get<std::string>();
      c.year = js.at("year").get<int>();
      c.n = js.at("n").get<std::size_t>();
      c.family = family_from_json(js.at("family"));
      c.zero_inflation = js.value("zero_inflation", 0.0);
      if (js.contains("stream")) c.stream = js.at("stream").get<std::size_t>();
      c.multiplier = js.value("multiplier", Citations{1});
      s.specs.push_back(std::move(c));
    }
    if (j.contains("metadata") && j["metadata"].contains("note")) s.note = j["metadata"]["note"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("scenario: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace aii
