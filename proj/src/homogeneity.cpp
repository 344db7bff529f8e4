#include "biblio/homogeneity.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace biblio {

RegionMap RegionMap::defaults() {
  return from_rows(parse_two_column(default_tables::regions(), "data/regions.tsv"));
}

RegionMap RegionMap::from_rows(const std::vector<TableRow>& rows) {
  RegionMap map;
  bool have_default = false;
  auto put = [](std::map<std::string, std::string>& target, const std::string& key,
                const std::string& value) {
    auto [it, inserted] = target.emplace(key, value);
    if (!inserted && it->second != value) {
      throw ConfigError("region map: '" + key + "' mapped to both '" + it->second + "' and '" +
                        value + "'");
    }
  };
  for (const auto& r : rows) {
    const std::string key = trim(r.key);
    const std::string label = trim(r.value);
    if (label.empty()) throw ConfigError("region map: empty label for '" + key + "'");
    if (key == "*") {
      if (have_default && map.default_region != label) {
        throw ConfigError("region map: two default rows");
      }
      map.default_region = label;
      have_default = true;
    } else if (starts_with_ci(key, "inst:")) {
      put(map.institutions, trim(key.substr(5)), label);
    } else {
      put(map.mapping, key, label);
    }
  }
  return map;
}

std::string RegionMap::digest() const {
  std::string text = "*\t" + default_region + "\n";
  for (const auto& [k, v] : mapping) text += k + "\t" + v + "\n";
  for (const auto& [k, v] : institutions) text += "inst:" + k + "\t" + v + "\n";
  return hex64(fnv1a64(text));
}

std::string classify_region(const std::string& country, const RegionMap& map) {
  if (country.empty() || country == kUnknownEntity) return std::string(kUnclassified);
  if (auto it = map.mapping.find(country); it != map.mapping.end()) return it->second;
  return map.default_region;
}

namespace {

struct Vote {
  long long count = 0;
  int earliest = INT_MAX;
};

using Ballot = std::map<std::string, Vote>;  // country -> vote

void cast(Ballot& ballot, const std::string& country, const Publication& pub) {
  if (country.empty() || country == kUnknownEntity) return;
  auto& v = ballot[country];
  ++v.count;
  if (pub.year) v.earliest = std::min(v.earliest, *pub.year);
}

std::string winner(const Ballot& ballot) {
  const std::pair<const std::string, Vote>* best = nullptr;
  for (const auto& entry : ballot) {
    if (best == nullptr || entry.second.count > best->second.count ||
        (entry.second.count == best->second.count &&
         entry.second.earliest < best->second.earliest)) {
      best = &entry;
    }
  }
  return best == nullptr ? std::string() : best->first;
}

std::string region_of_ballot(const Ballot& ballot, const RegionMap& map) {
  const std::string country = winner(ballot);
  return country.empty() ? std::string(kUnclassified) : classify_region(country, map);
}

}  // namespace

std::map<std::string, std::string> entity_regions(const Corpus& corpus, Level level,
                                                  const RegionMap& map,
                                                  const NormalizationTables& tables) {
  std::map<std::string, std::string> out;
  if (level == Level::country) {
    for (const auto& [raw, country] : corpus.countries) out[country] = classify_region(country, map);
    out[std::string(kUnknownEntity)] = std::string(kUnclassified);
    return out;
  }

  std::map<std::string, Ballot> ballots;
  if (level == Level::institution) {
    std::map<std::string, std::string> direct;
    for (const auto& [name, label] : map.institutions) {
      direct[normalize_institution(name, tables)] = label;
    }
    for (const auto& pub : corpus.publications) {
      std::set<std::pair<std::string, std::string>> seen;
      for (const auto& a : pub.addresses) {
        seen.insert({corpus.institution_of(a.institution_raw), corpus.country_of(a.country_raw)});
      }
      for (const auto& r : pub.reprint_entries) {
        seen.insert({corpus.institution_of(r.institution_raw), corpus.country_of(r.country_raw)});
      }
      for (const auto& [inst, country] : seen) {
        if (inst == kUnknownEntity) continue;
        auto& ballot = ballots[inst];
        cast(ballot, country, pub);
      }
    }
    for (const auto& [inst, ballot] : ballots) {
      auto it = direct.find(inst);
      out[inst] = it != direct.end() ? it->second : region_of_ballot(ballot, map);
    }
    out[std::string(kUnknownEntity)] = std::string(kUnclassified);
    return out;
  }

  // Author level: credited publications first.
  std::map<std::string, Ballot> fallback;
  for (const auto& pub : corpus.publications) {
    if (pub.authors.empty()) continue;
    std::map<std::string, std::set<std::string>> credited;
    credited[corpus.author_id(pub.authors.front())];
    for (const auto& c : first_author_entities(corpus, pub, Level::country)) {
      credited[corpus.author_id(pub.authors.front())].insert(c);
    }
    for (const auto& r : pub.reprint_entries) {
      credited[corpus.author_id(r.author)].insert(corpus.country_of(r.country_raw));
    }
    for (const auto& [id, countries] : credited) {
      auto& ballot = ballots[id];
      for (const auto& c : countries) cast(ballot, c, pub);
    }
    for (std::size_t i = 0; i < pub.authors.size(); ++i) {
      const std::string id = corpus.author_id(pub.authors[i]);
      auto& ballot = fallback[id];
      std::set<std::string> countries;
      for (auto idx : linked_addresses(pub, i)) {
        countries.insert(corpus.country_of(pub.addresses[idx].country_raw));
      }
      if (countries.empty() && !pub.addresses.empty()) {
        countries.insert(corpus.country_of(pub.addresses.front().country_raw));
      }
      for (const auto& c : countries) cast(ballot, c, pub);
    }
  }
  for (const auto& [id, ballot] : fallback) {
    auto it = ballots.find(id);
    const bool credited = it != ballots.end() && !winner(it->second).empty();
    out[id] = region_of_ballot(credited ? it->second : ballot, map);
  }
  for (const auto& [id, ballot] : ballots) {
    if (out.count(id) == 0) out[id] = region_of_ballot(ballot, map);
  }
  return out;
}

double DominanceStats::max_share() const {
  double m = 0.0;
  for (const auto& [r, s] : shares) m = std::max(m, s);
  return m;
}

std::string DominanceStats::dominant_region() const {
  std::string best;
  double m = -1.0;
  for (const auto& [r, s] : shares) {
    if (s > m) {
      m = s;
      best = r;
    }
  }
  return best;
}

namespace {

std::string region_lookup(const std::map<std::string, std::string>& regions,
                          const std::string& entity) {
  auto it = regions.find(entity);
  return it == regions.end() ? std::string(kUnclassified) : it->second;
}

}  // namespace

DominanceStats dominance(Level level, const std::vector<YIndex>& ranked,
                         const std::map<std::string, std::string>& regions) {
  DominanceStats s;
  s.level = level;
  for (int k : kTopK) s.top_counts[k];
  std::map<std::string, long long> mass;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& y = ranked[i];
    const std::string region = region_lookup(regions, y.entity);
    mass[region] += y.j;
    s.total_j += y.j;
    for (int k : kTopK) {
      if (i < static_cast<std::size_t>(k)) ++s.top_counts[k][region];
    }
    if (i < 20) s.top.push_back({y.entity, region, y.j});
  }
  s.empty = s.total_j == 0;
  if (!s.empty) {
    for (const auto& [region, j] : mass) {
      s.shares[region] = static_cast<double>(j) / static_cast<double>(s.total_j);
    }
  }
  return s;
}

ToleranceStats tolerance(const CoNetwork& network,
                         const std::map<std::string, std::string>& regions) {
  ToleranceStats t;
  t.level = network.level;
  for (const auto& e : network.edges) {
    const std::string& u = network.nodes[e.u];
    const std::string& v = network.nodes[e.v];
    const std::string ru = region_lookup(regions, u);
    const std::string rv = region_lookup(regions, v);
    if (ru == kInternational || rv == kInternational) {
      ++t.international_edges;
      t.international_weight += e.weight;
      continue;
    }
    t.total_weight += e.weight;
    if (ru != rv) {
      t.cross_weight += e.weight;
      ++t.cross_link_count;
      t.cross_edges.push_back({u, v, ru, rv, e.weight});
    }
  }
  if (t.total_weight > 0) {
    t.fraction = static_cast<double>(t.cross_weight) / static_cast<double>(t.total_weight);
  }
  return t;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::homogeneous: return "homogeneous";
    case Verdict::mixed: return "mixed";
    case Verdict::heterogeneous: return "heterogeneous";
  }
  return "mixed";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "homogeneous") return Verdict::homogeneous;
  if (text == "heterogeneous") return Verdict::heterogeneous;
  if (text == "mixed") return Verdict::mixed;
  throw std::invalid_argument("unknown verdict: " + std::string(text));
}

namespace {

Verdict verdict_of(const std::vector<std::pair<double, double>>& share_and_fraction,
                   const Thresholds& th) {
  if (share_and_fraction.empty()) return Verdict::mixed;
  bool homogeneous = true;
  bool heterogeneous = true;
  for (const auto& [share, fraction] : share_and_fraction) {
    homogeneous = homogeneous && share >= th.dominance_min && fraction <= th.tolerance_max;
    heterogeneous = heterogeneous && share < th.dominance_min && fraction > th.tolerance_max;
  }
  if (homogeneous) return Verdict::homogeneous;
  if (heterogeneous) return Verdict::heterogeneous;
  return Verdict::mixed;
}

}  // namespace

Verdict decide_verdict(const std::vector<LevelStats>& levels, const Thresholds& thresholds) {
  std::vector<std::pair<double, double>> v;
  for (const auto& l : levels) v.push_back({l.dominance.max_share(), l.tolerance.fraction});
  return verdict_of(v, thresholds);
}

HomogeneityReport homogeneity_report(const std::map<Level, DominanceStats>& dominance_stats,
                                     const std::map<Level, ToleranceStats>& tolerance_stats,
                                     const Thresholds& thresholds, Diagnostics& diags) {
  HomogeneityReport r;
  r.thresholds = thresholds;
  for (Level level : kAllLevels) {
    auto d = dominance_stats.find(level);
    auto t = tolerance_stats.find(level);
    if (d == dominance_stats.end() || t == tolerance_stats.end()) {
      if (d != dominance_stats.end() || t != tolerance_stats.end()) {
        diags.warn("report", "level " + std::string(to_string(level)) +
                                 " has only one of dominance/tolerance; skipped");
      }
      continue;
    }
    r.levels.push_back({d->second, t->second});
  }
  if (r.levels.size() < std::size(kAllLevels)) {
    diags.warn("report", "verdict computed over " + std::to_string(r.levels.size()) + " of " +
                             std::to_string(std::size(kAllLevels)) + " levels");
  }
  r.verdict = decide_verdict(r.levels, thresholds);
  return r;
}

nlohmann::ordered_json report_to_json(const HomogeneityReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["config"] = report.config.is_null() ? ordered_json::object() : report.config;
  doc["thresholds"] = {{"dominance_min", report.thresholds.dominance_min},
                       {"tolerance_max", report.thresholds.tolerance_max}};
  ordered_json levels = ordered_json::array();
  for (const auto& l : report.levels) {
    ordered_json d;
    d["total_j"] = l.dominance.total_j;
    d["empty"] = l.dominance.empty;
    d["shares"] = ordered_json::object();
    for (const auto& [region, s] : l.dominance.shares) d["shares"][region] = s;
    d["max_share"] = l.dominance.max_share();
    d["dominant_region"] = l.dominance.dominant_region();
    d["top_counts"] = ordered_json::object();
    for (const auto& [k, counts] : l.dominance.top_counts) {
      ordered_json c = ordered_json::object();
      for (const auto& [region, n] : counts) c[region] = n;
      d["top_counts"]["top_" + std::to_string(k)] = c;
    }
    d["top"] = ordered_json::array();
    for (const auto& e : l.dominance.top) {
      d["top"].push_back({{"entity", e.entity}, {"region", e.region}, {"j", e.j}});
    }
    ordered_json t;
    t["cross_region_edge_weight"] = l.tolerance.cross_weight;
    t["total_edge_weight"] = l.tolerance.total_weight;
    t["tolerance_fraction"] = l.tolerance.fraction;
    t["cross_link_count"] = l.tolerance.cross_link_count;
    t["international_edges"] = l.tolerance.international_edges;
    t["international_edge_weight"] = l.tolerance.international_weight;
    t["cross_edges"] = ordered_json::array();
    for (const auto& e : l.tolerance.cross_edges) {
      t["cross_edges"].push_back({{"u", e.u},
                                  {"v", e.v},
                                  {"region_u", e.region_u},
                                  {"region_v", e.region_v},
                                  {"weight", e.weight}});
    }
    levels.push_back({{"level", std::string(to_string(l.dominance.level))},
                      {"dominance", d},
                      {"tolerance", t}});
  }
  doc["levels"] = levels;
  doc["verdict"] = std::string(to_string(report.verdict));
  return doc;
}

Verdict verdict_from_json(const nlohmann::ordered_json& doc) {
  Thresholds th;
  th.dominance_min = doc.at("thresholds").at("dominance_min").get<double>();
  th.tolerance_max = doc.at("thresholds").at("tolerance_max").get<double>();
  std::vector<std::pair<double, double>> v;
  for (const auto& l : doc.at("levels")) {
    double share = 0.0;
    for (const auto& [region, s] : l.at("dominance").at("shares").items()) {
      share = std::max(share, s.get<double>());
    }
    v.push_back({share, l.at("tolerance").at("tolerance_fraction").get<double>()});
  }
  return verdict_of(v, th);
}

std::string report_to_text(const HomogeneityReport& report) {
  std::ostringstream out;
  out << "verdict: " << to_string(report.verdict) << " (dominance_min "
      << format_fixed(report.thresholds.dominance_min, 3) << ", tolerance_max "
      << format_fixed(report.thresholds.tolerance_max, 3) << ")\n";
  for (const auto& l : report.levels) {
    out << "\n[" << to_string(l.dominance.level) << "]\n";
    if (l.dominance.empty) {
      out << "  no ranked entities\n";
    } else {
      out << "  j-mass " << l.dominance.total_j << "\n";
      for (const auto& [region, s] : l.dominance.shares) {
        out << "  share " << region << ": " << format_fixed(s, 4) << "\n";
      }
      for (const auto& [k, counts] : l.dominance.top_counts) {
        out << "  top " << k << ":";
        for (const auto& [region, n] : counts) out << " " << region << "=" << n;
        out << "\n";
      }
    }
    const auto& t = l.tolerance;
    out << "  tolerance " << format_fixed(t.fraction, 4) << " (cross weight " << t.cross_weight
        << " of " << t.total_weight << ", " << t.cross_link_count << " cross links";
    if (t.international_edges > 0) {
      out << ", " << t.international_edges << " international edges excluded";
    }
    out << ")\n";
    for (const auto& e : t.cross_edges) {
      out << "    " << e.u << " (" << e.region_u << ") -- " << e.v << " (" << e.region_v
          << ") x" << e.weight << "\n";
    }
  }
  return out.str();
}

}  // namespace biblio
