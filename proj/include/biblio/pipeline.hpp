#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "biblio/common.hpp"
#include "biblio/conetwork.hpp"
#include "biblio/corpus.hpp"
#include "biblio/homogeneity.hpp"
#include "biblio/render.hpp"
#include "biblio/yindex.hpp"

namespace biblio {

struct RunConfig {
  std::vector<std::string> inputs;
  FilterConfig filter;
  std::map<Level, long long> min_j{{Level::author, 5}, {Level::institution, 7}, {Level::country, 7}};
  bool inclusive = true;
  std::map<Level, long long> min_edge_weight{
      {Level::author, 2}, {Level::institution, 2}, {Level::country, 2}};
  std::uint64_t seed = 42;
  std::optional<std::string> region_map_path;
  std::optional<std::string> author_overrides_path;
  std::optional<std::string> country_table_path;
  std::optional<std::string> institution_aliases_path;
  std::string out_dir = "biblio_out";
  Thresholds thresholds;
  std::vector<int> breakpoints = default_breakpoints();
  PlotSpec plot;

  /// Throws ConfigError on bad values and InputError naming the first
  /// missing input or table path.
  void validate() const;
  nlohmann::ordered_json to_json(const RegionMap& regions) const;
};

struct LevelAnalysis {
  CreditLedger ledger;
  std::vector<YIndex> ranked;
  CoNetwork network;
  std::map<std::string, std::string> regions;
  std::optional<Partition> partition;
  std::optional<Layout> layout;
};

/// Loaded corpus plus lazily computed per-level results. Diagnostics cover
/// loading, credit tallies and network construction at every level and the
/// report, so every subcommand logs and exits the same way.
class Analysis {
public:
  explicit Analysis(RunConfig config);

  const RunConfig& config() const { return config_; }
  const std::vector<Publication>& parsed() const { return parsed_; }
  const Corpus& corpus() const { return corpus_; }
  const RegionMap& region_map() const { return region_map_; }
  const Diagnostics& diagnostics() const { return diags_; }

  LevelAnalysis& level(Level level);
  const Partition& partition(Level level);
  const Layout& layout(Level level);
  const HomogeneityReport& report();

  /// 0 clean, 1 when any warning was recorded.
  int exit_code() const { return diags_.has_warnings() ? 1 : 0; }

private:
  RunConfig config_;
  NormalizationTables tables_;
  RegionMap region_map_;
  std::vector<Publication> parsed_;
  Corpus corpus_;
  Diagnostics diags_;
  std::map<Level, LevelAnalysis> levels_;
  std::optional<HomogeneityReport> report_;
};

// Artifact writers; each returns the file names written under out_dir and
// also rewrites diagnostics.log.
std::vector<std::string> write_parse(Analysis& a);
std::vector<std::string> write_filter(Analysis& a);
std::vector<std::string> write_yindex(Analysis& a, const std::vector<Level>& levels);
std::vector<std::string> write_network(Analysis& a, const std::vector<Level>& levels);
std::vector<std::string> write_report(Analysis& a);
std::vector<std::string> write_render(Analysis& a);
std::vector<std::string> write_run(Analysis& a);

nlohmann::ordered_json publication_to_json(const Publication& pub);
std::string yindex_csv(const std::vector<YIndex>& ranked, Level level);
std::string csv_field(const std::string& value);

}  // namespace biblio
