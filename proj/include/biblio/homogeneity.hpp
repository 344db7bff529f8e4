#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "biblio/common.hpp"
#include "biblio/conetwork.hpp"
#include "biblio/corpus.hpp"
#include "biblio/tables.hpp"
#include "biblio/yindex.hpp"

namespace biblio {

inline constexpr std::string_view kUnclassified = "unclassified";
inline constexpr std::string_view kInternational = "international";

/// Country -> region labels. A '*' row replaces the default region for
/// unlisted countries; rows keyed "inst:<name>" assign institutions directly.
struct RegionMap {
  std::map<std::string, std::string> mapping;
  std::map<std::string, std::string> institutions;  // institution name as written in the map
  std::string default_region{kUnclassified};

  static RegionMap defaults();
  /// Throws ConfigError on an empty label or a repeated key with two labels.
  static RegionMap from_rows(const std::vector<TableRow>& rows);
  /// Stable hex digest over default region, countries and institutions.
  std::string digest() const;
};

std::string classify_region(const std::string& country, const RegionMap& map);

/// Region of every entity seen at `level`. Countries are classified directly.
/// Institutions listed in the map take that region, others the majority
/// country of their addresses. Authors take the majority country of the
/// publications they are credited on (FP affiliation, RP address), falling
/// back to their linked addresses. Ties go to the country first seen in the
/// earliest year, then the smallest name. No country -> "unclassified".
std::map<std::string, std::string> entity_regions(const Corpus& corpus, Level level,
                                                  const RegionMap& map,
                                                  const NormalizationTables& tables);

struct TopEntity {
  std::string entity;
  std::string region;
  long long j = 0;
};

struct DominanceStats {
  Level level = Level::author;
  long long total_j = 0;
  std::map<std::string, double> shares;                        // region -> j-mass share
  std::map<int, std::map<std::string, long long>> top_counts;  // k -> region -> count
  std::vector<TopEntity> top;                                  // first 20 ranked entities
  bool empty = true;

  double max_share() const;
  /// Region with the largest share (smallest label on ties); empty if none.
  std::string dominant_region() const;
};

inline constexpr int kTopK[] = {5, 10, 20};

/// Shares of j-mass per region over `ranked`. Entities missing from
/// `regions` count as unclassified. Empty input gives no shares and empty = true.
DominanceStats dominance(Level level, const std::vector<YIndex>& ranked,
                         const std::map<std::string, std::string>& regions);

struct CrossEdge {
  std::string u;
  std::string v;
  std::string region_u;
  std::string region_v;
  long long weight = 0;
};

struct ToleranceStats {
  Level level = Level::author;
  long long cross_weight = 0;
  long long total_weight = 0;  // international edges excluded
  double fraction = 0.0;       // cross / total, 0 when total is 0
  long long cross_link_count = 0;
  long long international_edges = 0;
  long long international_weight = 0;
  std::vector<CrossEdge> cross_edges;
};

/// Edges touching an "international" node are left out of both sums.
ToleranceStats tolerance(const CoNetwork& network,
                         const std::map<std::string, std::string>& regions);

enum class Verdict { homogeneous, mixed, heterogeneous };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

struct Thresholds {
  double dominance_min = 0.8;
  double tolerance_max = 0.1;
};

struct LevelStats {
  DominanceStats dominance;
  ToleranceStats tolerance;
};

/// homogeneous: every level has max share >= dominance_min and fraction <=
/// tolerance_max. heterogeneous: every level has max share < dominance_min
/// and fraction > tolerance_max. Otherwise mixed (also for no levels).
Verdict decide_verdict(const std::vector<LevelStats>& levels, const Thresholds& thresholds);

struct HomogeneityReport {
  std::vector<LevelStats> levels;
  Thresholds thresholds;
  Verdict verdict = Verdict::mixed;
  nlohmann::ordered_json config;  // echoed run configuration
};

/// Pairs dominance and tolerance stats by level. A level present in only
/// one map is skipped and fewer than three levels is reported as a warning.
HomogeneityReport homogeneity_report(const std::map<Level, DominanceStats>& dominance_stats,
                                     const std::map<Level, ToleranceStats>& tolerance_stats,
                                     const Thresholds& thresholds, Diagnostics& diags);

nlohmann::ordered_json report_to_json(const HomogeneityReport& report);
/// Recomputes the verdict from a serialized report's stats and thresholds.
Verdict verdict_from_json(const nlohmann::ordered_json& doc);
std::string report_to_text(const HomogeneityReport& report);

}  // namespace biblio
