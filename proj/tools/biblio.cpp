#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "biblio/pipeline.hpp"
#include "biblio/synth.hpp"
#include "biblio/tables.hpp"

namespace {

using namespace biblio;

void announce(const RunConfig& cfg, const std::vector<std::string>& files) {
  for (const auto& f : files) {
    std::cout << "wrote " << (std::filesystem::path(cfg.out_dir) / f).string() << "\n";
  }
}

std::vector<Level> selected_levels(const std::optional<std::string>& level) {
  if (level) return {*parse_level(*level)};
  return {std::begin(kAllLevels), std::end(kAllLevels)};
}

int run_synth(const std::string& spec_path, const std::optional<std::uint64_t>& seed,
              const std::string& out_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(spec_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("synth spec " + spec_path + ": " + e.what());
  }
  SynthSpec spec = SynthSpec::from_json(doc);
  if (seed) spec.seed = *seed;
  const SynthResult r = generate_corpus(spec);
  std::filesystem::create_directories(out_dir);
  const auto write = [&](const std::string& name, const std::string& content) {
    const auto path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
  };
  write("synthetic_export.txt", r.export_text);
  nlohmann::ordered_json truth = truth_to_json(r.truth);
  truth["spec"] = spec.to_json();
  write("ground_truth.json", truth.dump(2) + "\n");
  write("synth_diagnostics.log", r.diagnostics.to_log());
  return r.diagnostics.has_warnings() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Highly cited corpus analysis: Y-index, collaboration networks, homogeneity"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<std::string> region_map, overrides, country_table, aliases;
  long long min_citations = cfg.filter.min_citations;
  long long min_j_author = 5, min_j_institution = 7, min_j_country = 7;
  std::optional<long long> min_edge_weight;
  std::vector<int> breakpoints = cfg.breakpoints;
  std::uint64_t seed = 42;

  app.add_option("--seed", seed, "Seed for Louvain, layout and synth")->capture_default_str();
  app.add_option("--region-map", region_map, "Region map file (country<TAB>region)");
  app.add_option("--author-overrides", overrides, "Author override file (raw<TAB>canonical)");
  app.add_option("--country-table", country_table, "Country normalization table");
  app.add_option("--institution-aliases", aliases, "Institution alias table");
  app.add_option("--min-citations", min_citations, "Keep records with TC >= N")
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  app.add_option("--min-j-author", min_j_author, "Author-level min j")->capture_default_str();
  app.add_option("--min-j-institution", min_j_institution, "Institution-level min j")
      ->capture_default_str();
  app.add_option("--min-j-country", min_j_country, "Country-level min j")->capture_default_str();
  app.add_option("--min-edge-weight", min_edge_weight, "Minimum collaboration frequency (default 2)");
  app.add_option("--breakpoints", breakpoints, "Timeline period boundaries")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--dominance-min", cfg.thresholds.dominance_min, "Verdict dominance threshold")
      ->capture_default_str();
  app.add_option("--tolerance-max", cfg.thresholds.tolerance_max, "Verdict tolerance threshold")
      ->capture_default_str();
  app.add_flag("--exclusive", "Rank only entities with j > min j");

  std::vector<std::string> inputs;
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("inputs", inputs, "WoS export files")->required();
    sub->fallthrough();
  };
  auto* parse = app.add_subcommand("parse", "Validate exports and dump normalized records");
  auto* filter = app.add_subcommand("filter", "Apply exclusions and summarize the corpus");
  auto* yindex = app.add_subcommand("yindex", "FP/RP tallies and Y-index ranking");
  auto* network = app.add_subcommand("network", "Collaboration networks, communities, layouts");
  auto* report = app.add_subcommand("report", "Dominance/tolerance report");
  auto* render = app.add_subcommand("render", "SVG figures");
  auto* run = app.add_subcommand("run", "Full pipeline");
  for (auto* sub : {parse, filter, yindex, network, report, render, run}) add_inputs(sub);

  std::optional<std::string> level;
  std::optional<long long> min_j;
  for (auto* sub : {yindex, network}) {
    sub->add_option("--level", level, "author | institution | country (default: all)")
        ->check(CLI::IsMember({"author", "institution", "country"}));
  }
  yindex->add_option("--min-j", min_j, "Min j for the selected level(s)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  std::string spec_path;
  synth->add_option("spec", spec_path, "SynthSpec JSON file")->required();
  synth->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      std::optional<std::uint64_t> seed_override;
      if (app.count("--seed") > 0) seed_override = seed;
      return run_synth(spec_path, seed_override, cfg.out_dir);
    }

    cfg.inputs = inputs;
    cfg.seed = seed;
    cfg.filter.min_citations = min_citations;
    cfg.region_map_path = region_map;
    cfg.author_overrides_path = overrides;
    cfg.country_table_path = country_table;
    cfg.institution_aliases_path = aliases;
    cfg.breakpoints = breakpoints;
    cfg.inclusive = app.count("--exclusive") == 0;
    cfg.min_j = {{Level::author, min_j_author},
                 {Level::institution, min_j_institution},
                 {Level::country, min_j_country}};
    if (min_edge_weight) {
      for (auto& [l, w] : cfg.min_edge_weight) w = *min_edge_weight;
    }
    const auto levels = selected_levels(level);
    if (min_j) {
      for (Level l : levels) cfg.min_j[l] = *min_j;
    }

    Analysis analysis(cfg);
    std::vector<std::string> written;
    if (parse->parsed()) written = write_parse(analysis);
    if (filter->parsed()) written = write_filter(analysis);
    if (yindex->parsed()) written = write_yindex(analysis, levels);
    if (network->parsed()) written = write_network(analysis, levels);
    if (report->parsed()) written = write_report(analysis);
    if (render->parsed()) written = write_render(analysis);
    if (run->parsed()) written = write_run(analysis);
    announce(cfg, written);
    const auto& d = analysis.diagnostics();
    std::cout << d.count(Severity::warning) + d.count(Severity::error) << " warnings, "
              << d.count(Severity::info) << " notes (see diagnostics.log)\n";
    return analysis.exit_code();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
