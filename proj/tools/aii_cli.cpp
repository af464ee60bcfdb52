// aii: citation normalization and evaluation reports.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aii/corpus.hpp"
#include "aii/error.hpp"
#include "aii/gof.hpp"
#include "aii/report.hpp"
#include "aii/scaling.hpp"
#include "aii/survival.hpp"
#include "aii/synth.hpp"
#include "aii/topshare.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kDataError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string scenario;
  std::vector<std::string> methods;
  double top_fraction = 0.10;
  double gof_threshold = 0.1;
  std::string out = ".";
  bool strict = false;
  std::optional<int> year;
  std::string kurtosis = "excess";
  int verbosity = 0;
};

std::vector<aii::ScalingMethod> resolve_methods(const RunConfig& cfg, bool default_all) {
  std::vector<aii::ScalingMethod> out;
  for (const auto& name : cfg.methods) {
    auto m = aii::parse_method(name);
    if (!m) throw UsageError("unknown method '" + name + "' (expected max, mean, mean0, boxcox, median, median0)");
    out.push_back(*m);
  }
  if (out.empty() && default_all) out.assign(aii::kAllMethods.begin(), aii::kAllMethods.end());
  return out;
}

aii::Corpus load_corpus(const RunConfig& cfg) {
  if (cfg.input.empty() == cfg.scenario.empty())
    throw UsageError("exactly one of --input or --scenario is required");
  if (!cfg.input.empty()) {
    auto res = aii::ingest_csv(fs::path(cfg.input), cfg.strict);
    if (res.warnings > 0)
      std::cerr << "warning: " << res.warnings << " duplicate (pub_id, category) rows replaced\n";
    return std::move(res.corpus);
  }
  auto corpus = aii::generate(aii::load_scenario(cfg.scenario));
  if (corpus.empty()) throw aii::EmptyCorpusError();
  return corpus;
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

void add_input_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "corpus CSV (pub_id,year,category,citations)");
  sub->add_option("--scenario", cfg.scenario, "synthetic scenario JSON");
  sub->add_flag("--strict", cfg.strict, "reject duplicate (pub_id, category) rows");
  sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
  sub->add_flag("-v,--verbose", cfg.verbosity, "verbose progress on stderr");
}

void add_method_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--method", cfg.methods, "max, mean, mean0, boxcox, median, median0 (repeatable)");
}

int cmd_ingest_check(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("ingest-check requires --input");
  auto res = aii::ingest_csv(fs::path(cfg.input), cfg.strict);
  std::cout << "rows " << res.rows << "\nrecords " << res.corpus.size() << "\nwarnings " << res.warnings
            << "\ngroups " << aii::group(res.corpus).size() << '\n';
  return 0;
}

int cmd_stats(const RunConfig& cfg) {
  const auto corpus = load_corpus(cfg);
  const auto conv = cfg.kurtosis == "pearson" ? aii::KurtosisConvention::Pearson : aii::KurtosisConvention::Excess;
  aii::write_artifact(out_dir(cfg), "stats.csv", aii::stats_csv(corpus, conv));
  return 0;
}

int cmd_scale(const RunConfig& cfg) {
  const auto methods = resolve_methods(cfg, false);
  if (methods.empty()) throw UsageError("scale requires --method");
  const auto corpus = load_corpus(cfg);
  const auto dir = out_dir(cfg);
  for (auto m : methods) {
    const auto res = aii::scale_corpus(corpus, m);
    const std::string label(aii::to_string(m));
    aii::write_artifact(dir, "scaled_" + label + ".csv", render([&](auto& os) { aii::write_scaled_csv(res, os); }));
    aii::write_artifact(dir, "skipped_" + label + ".csv", render([&](auto& os) { aii::write_skipped_csv(res, os); }));
    if (cfg.verbosity > 0)
      std::cerr << label << ": " << res.records.size() << " scaled, " << res.skipped.size() << " groups skipped\n";
  }
  return 0;
}

void survival_outputs(const fs::path& dir, const std::vector<aii::GroupSample>& samples, const std::string& label) {
  aii::write_artifact(dir, "survival_" + label + ".csv", render([&](auto& os) { aii::write_curve_csv(samples, os); }));
  if (samples.size() < 2) {
    std::cerr << "note: " << label << " has fewer than 2 groups, no collapse report\n";
    return;
  }
  const auto report = aii::collapse_metrics(samples, label);
  aii::write_artifact(dir, "collapse_" + label + ".json",
                      render([&](auto& os) { aii::write_collapse_json(report, os); }));
}

int cmd_survival(const RunConfig& cfg) {
  const auto methods = resolve_methods(cfg, true);
  const auto corpus = load_corpus(cfg);
  const auto dir = out_dir(cfg);
  survival_outputs(dir, aii::raw_samples(corpus), "raw");
  for (auto m : methods) survival_outputs(dir, aii::scaled_samples(aii::scale_corpus(corpus, m)), std::string(aii::to_string(m)));
  return 0;
}

int cmd_topshare(const RunConfig& cfg) {
  const auto methods = resolve_methods(cfg, true);
  const auto corpus = load_corpus(cfg);
  const auto dir = out_dir(cfg);
  const auto reports = aii::method_comparison(corpus, methods, cfg.top_fraction, cfg.year);
  for (const auto& r : reports)
    aii::write_artifact(dir, "topshare_" + r.label + ".csv", render([&](auto& os) { aii::write_topshare_csv(r, os); }));
  aii::write_artifact(dir, "topshare_summary.json",
                      render([&](auto& os) { aii::write_topshare_summary_json(reports, os); }));
  for (const auto& r : reports)
    std::cout << r.label << ' ' << r.n_within_band << '/' << r.n_categories_evaluated << '\n';
  return 0;
}

int cmd_gof(const RunConfig& cfg) {
  auto methods = resolve_methods(cfg, false);
  if (methods.empty()) methods.push_back(aii::ScalingMethod::Mean);
  const auto corpus = load_corpus(cfg);
  const auto dir = out_dir(cfg);
  for (auto m : methods) {
    const auto run = aii::gof_by_group(aii::scale_corpus(corpus, m), cfg.gof_threshold);
    aii::write_artifact(dir, "gof_" + run.label + ".csv", render([&](auto& os) { aii::write_gof_csv(run, os); }));
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.scenario.empty() || !cfg.input.empty()) throw UsageError("simulate requires --scenario and no --input");
  const auto scenario = aii::load_scenario(cfg.scenario);
  const auto corpus = aii::generate(scenario);
  const auto dir = out_dir(cfg);
  aii::write_artifact(dir, "corpus.csv", render([&](auto& os) { aii::write_csv(corpus, os); }));
  aii::write_artifact(dir, "scenario.json", aii::scenario_to_json(scenario).dump(2) + "\n");
  if (cfg.verbosity > 0) std::cerr << corpus.size() << " records\n";
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  aii::ReportOptions opts;
  opts.methods = resolve_methods(cfg, true);
  opts.top_fraction = cfg.top_fraction;
  opts.gof_threshold = cfg.gof_threshold;
  opts.year = cfg.year;
  opts.kurtosis = cfg.kurtosis == "pearson" ? aii::KurtosisConvention::Pearson : aii::KurtosisConvention::Excess;
  const auto corpus = load_corpus(cfg);
  opts.source = cfg.input.empty() ? "scenario:" + fs::path(cfg.scenario).filename().string()
                                  : "csv:" + fs::path(cfg.input).filename().string();
  const auto manifest = aii::run_report(corpus, opts, out_dir(cfg));
  std::cout << "manifest " << (fs::path(cfg.out) / "manifest.json").string() << "\ndigest "
            << manifest["digest"].get<std::string>() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aii - field-normalized citation indices and their evaluation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* ingest = app.add_subcommand("ingest-check", "validate a corpus CSV and print counts");
  add_input_options(ingest, cfg);

  auto* stats = app.add_subcommand("stats", "descriptive statistics per (category, year)");
  add_input_options(stats, cfg);
  stats->add_option("--kurtosis", cfg.kurtosis, "excess or pearson")
      ->check(CLI::IsMember({"excess", "pearson"}))
      ->capture_default_str();

  auto* scale = app.add_subcommand("scale", "compute Article Impact Index values");
  add_input_options(scale, cfg);
  add_method_option(scale, cfg);

  auto* survival = app.add_subcommand("survival", "survival curves and collapse metrics");
  add_input_options(survival, cfg);
  add_method_option(survival, cfg);

  auto* topshare = app.add_subcommand("topshare", "global top-share per category against the band");
  add_input_options(topshare, cfg);
  add_method_option(topshare, cfg);
  topshare->add_option("--top-fraction", cfg.top_fraction, "fraction of the global ranking")->capture_default_str();
  topshare->add_option("--year", cfg.year, "restrict the ranking to one publication year");

  auto* gof = app.add_subcommand("gof", "Anderson-Darling lognormal test per group");
  add_input_options(gof, cfg);
  add_method_option(gof, cfg);
  gof->add_option("--gof-threshold", cfg.gof_threshold, "only values >= threshold are tested")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic corpus from a scenario");
  add_input_options(simulate, cfg);

  auto* report = app.add_subcommand("report", "full pipeline for raw and all methods, with manifest");
  add_input_options(report, cfg);
  add_method_option(report, cfg);
  report->add_option("--top-fraction", cfg.top_fraction, "fraction of the global ranking")->capture_default_str();
  report->add_option("--gof-threshold", cfg.gof_threshold, "only values >= threshold are tested")->capture_default_str();
  report->add_option("--year", cfg.year, "restrict the ranking to one publication year");
  report->add_option("--kurtosis", cfg.kurtosis, "excess or pearson")
      ->check(CLI::IsMember({"excess", "pearson"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (!(cfg.top_fraction > 0.0 && cfg.top_fraction < 1.0)) throw UsageError("--top-fraction must lie in (0, 1)");
    if (*ingest) return cmd_ingest_check(cfg);
    if (*stats) return cmd_stats(cfg);
    if (*scale) return cmd_scale(cfg);
    if (*survival) return cmd_survival(cfg);
    if (*topshare) return cmd_topshare(cfg);
    if (*gof) return cmd_gof(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*report) return cmd_report(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const aii::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
