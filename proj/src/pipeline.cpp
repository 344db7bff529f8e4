#include "biblio/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biblio/tables.hpp"
#include "biblio/wos_parser.hpp"

namespace biblio {

namespace fs = std::filesystem;

namespace {

void require_path(const std::optional<std::string>& path, const char* what) {
  if (path && !fs::is_regular_file(*path)) {
    throw InputError(std::string(what) + " not found: " + *path);
  }
}

nlohmann::ordered_json level_map_json(const std::map<Level, long long>& values) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (Level l : kAllLevels) j[std::string(to_string(l))] = values.at(l);
  return j;
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  fs::create_directories(cfg.out_dir);
  const fs::path path = fs::path(cfg.out_dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file: " + path.string());
  out << content;
  if (!out) throw InputError("cannot write file: " + path.string());
}

std::vector<std::string> finish(Analysis& a, std::vector<std::string> written) {
  write_file(a.config(), "diagnostics.log", a.diagnostics().to_log());
  written.push_back("diagnostics.log");
  return written;
}

std::string level_name(Level l) { return std::string(to_string(l)); }

}  // namespace

void RunConfig::validate() const {
  filter.validate();
  if (inputs.empty()) throw ConfigError("no input files given");
  for (Level l : kAllLevels) {
    if (min_j.count(l) == 0 || min_j.at(l) < 0) throw ConfigError("min-j must be >= 0");
    if (min_edge_weight.count(l) == 0 || min_edge_weight.at(l) < 1) {
      throw ConfigError("min-edge-weight must be >= 1");
    }
  }
  if (!(thresholds.dominance_min >= 0.0 && thresholds.dominance_min <= 1.0)) {
    throw ConfigError("dominance-min must lie in [0, 1]");
  }
  if (!(thresholds.tolerance_max >= 0.0 && thresholds.tolerance_max <= 1.0)) {
    throw ConfigError("tolerance-max must lie in [0, 1]");
  }
  if (breakpoints.size() < 2 || !std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
      std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end()) {
    throw ConfigError("breakpoints must be >= 2 strictly increasing years");
  }
  plot.validate();
  for (const auto& in : inputs) {
    if (!fs::is_regular_file(in)) throw InputError("input file not found: " + in);
  }
  require_path(region_map_path, "region map");
  require_path(author_overrides_path, "author overrides");
  require_path(country_table_path, "country table");
  require_path(institution_aliases_path, "institution aliases");
}

nlohmann::ordered_json RunConfig::to_json(const RegionMap& regions) const {
  nlohmann::ordered_json j;
  j["inputs"] = inputs;
  nlohmann::ordered_json f;
  f["min_citations"] = filter.min_citations;
  f["min_citations_inclusive"] = true;
  f["exclude_anonymous"] = filter.exclude_anonymous;
  f["year_range"] = filter.year_range
                        ? nlohmann::ordered_json({filter.year_range->first, filter.year_range->second})
                        : nlohmann::ordered_json(nullptr);
  j["filter"] = f;
  j["min_j"] = level_map_json(min_j);
  j["min_j_inclusive"] = inclusive;
  j["min_edge_weight"] = level_map_json(min_edge_weight);
  j["seed"] = seed;
  j["thresholds"] = {{"dominance_min", thresholds.dominance_min},
                     {"tolerance_max", thresholds.tolerance_max}};
  j["breakpoints"] = breakpoints;
  nlohmann::ordered_json rm;
  rm["source"] = region_map_path ? *region_map_path : std::string("default");
  rm["digest"] = regions.digest();
  rm["default_region"] = regions.default_region;
  rm["mapping"] = nlohmann::ordered_json::object();
  for (const auto& [country, label] : regions.mapping) rm["mapping"][country] = label;
  rm["institutions"] = nlohmann::ordered_json::object();
  for (const auto& [inst, label] : regions.institutions) rm["institutions"][inst] = label;
  j["region_map"] = rm;
  j["author_overrides"] = author_overrides_path ? *author_overrides_path : std::string("none");
  j["country_table"] = country_table_path ? *country_table_path : std::string("default");
  j["institution_aliases"] =
      institution_aliases_path ? *institution_aliases_path : std::string("default");
  return j;
}

Analysis::Analysis(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  {
    const auto defaults_country = parse_two_column(default_tables::countries(), "data/countries.tsv");
    const auto abbreviations = parse_two_column(default_tables::institution_abbreviations(),
                                                "data/institution_abbreviations.tsv");
    const auto aliases = parse_two_column(default_tables::institution_aliases(),
                                          "data/institution_aliases.tsv");
    tables_ = NormalizationTables::from_rows(
        config_.country_table_path ? load_two_column(*config_.country_table_path) : defaults_country,
        abbreviations,
        config_.institution_aliases_path ? load_two_column(*config_.institution_aliases_path)
                                         : aliases);
  }
  region_map_ = config_.region_map_path ? RegionMap::from_rows(load_two_column(*config_.region_map_path))
                                        : RegionMap::defaults();
  std::vector<AuthorOverride> overrides;
  if (config_.author_overrides_path) {
    overrides = overrides_from_rows(load_two_column(*config_.author_overrides_path));
  }

  std::vector<fs::path> paths(config_.inputs.begin(), config_.inputs.end());
  parsed_ = load_publications(paths, diags_);
  corpus_ = build_corpus(parsed_, config_.filter, tables_, overrides, diags_);

  for (Level l : kAllLevels) {
    LevelAnalysis la;
    // Missing-RP warnings are per publication, so they are logged once.
    Diagnostics scratch;
    la.ledger = tally_credits(corpus_, l, l == Level::author ? diags_ : scratch);
    la.ranked = rank_entities(la.ledger, config_.min_j.at(l), config_.inclusive);
    if (la.ranked.empty()) {
      diags_.info("yindex:" + level_name(l),
                  "no entity reaches min j " + std::to_string(config_.min_j.at(l)));
    }
    la.network = build_network(corpus_, l, config_.min_edge_weight.at(l), diags_);
    la.regions = entity_regions(corpus_, l, region_map_, tables_);
    levels_.emplace(l, std::move(la));
  }
  report();
}

LevelAnalysis& Analysis::level(Level l) { return levels_.at(l); }

const Partition& Analysis::partition(Level l) {
  auto& la = levels_.at(l);
  if (!la.partition) la.partition = louvain(la.network, config_.seed);
  return *la.partition;
}

const Layout& Analysis::layout(Level l) {
  auto& la = levels_.at(l);
  if (!la.layout) la.layout = kamada_kawai(la.network, config_.seed);
  return *la.layout;
}

const HomogeneityReport& Analysis::report() {
  if (!report_) {
    std::map<Level, DominanceStats> dom;
    std::map<Level, ToleranceStats> tol;
    for (auto& [l, la] : levels_) {
      dom[l] = dominance(l, la.ranked, la.regions);
      tol[l] = tolerance(la.network, la.regions);
    }
    report_ = homogeneity_report(dom, tol, config_.thresholds, diags_);
    report_->config = config_.to_json(region_map_);
  }
  return *report_;
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json publication_to_json(const Publication& pub) {
  nlohmann::ordered_json j;
  j["id"] = pub.id;
  j["title"] = pub.title;
  j["year"] = pub.year ? nlohmann::ordered_json(*pub.year) : nlohmann::ordered_json(nullptr);
  j["doc_type"] = std::string(to_string(pub.doc_type));
  j["source"] = pub.source;
  j["times_cited"] = pub.times_cited;
  j["language"] = pub.language;
  j["authors"] = pub.authors;
  j["full_names"] = pub.full_names;
  j["addresses"] = nlohmann::ordered_json::array();
  for (const auto& a : pub.addresses) {
    j["addresses"].push_back({{"authors", a.linked_authors},
                              {"institution", a.institution_raw},
                              {"country", a.country_raw}});
  }
  j["reprint"] = nlohmann::ordered_json::array();
  for (const auto& r : pub.reprint_entries) {
    j["reprint"].push_back(
        {{"author", r.author}, {"institution", r.institution_raw}, {"country", r.country_raw}});
  }
  return j;
}

std::string yindex_csv(const std::vector<YIndex>& ranked, Level level) {
  std::string out = "entity,level,fp,rp,j,h,x,y,label\n";
  for (const auto& y : ranked) {
    out += csv_field(y.entity) + "," + level_name(level) + "," + std::to_string(y.fp) + "," +
           std::to_string(y.rp) + "," + std::to_string(y.j) + "," + format_fixed(y.h, 6) + "," +
           format_fixed(y.x, 4) + "," + format_fixed(y.y, 4) + "," + csv_field(y.label) + "\n";
  }
  return out;
}

std::vector<std::string> write_parse(Analysis& a) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& p : a.parsed()) doc.push_back(publication_to_json(p));
  write_file(a.config(), "publications.json", doc.dump(2) + "\n");
  return finish(a, {"publications.json"});
}

std::vector<std::string> write_filter(Analysis& a) {
  const Corpus& c = a.corpus();
  const auto stats = corpus_stats(c);
  const auto timeline = summarize_timeline(c, a.config().breakpoints);
  nlohmann::ordered_json doc;
  doc["parsed_publications"] = a.parsed().size();
  doc["kept_publications"] = stats.publications;
  doc["min_citations"] = c.filter.min_citations;
  doc["doc_types"] = nlohmann::ordered_json::object();
  for (const auto& [t, n] : stats.doc_types) doc["doc_types"][std::string(to_string(t))] = n;
  doc["authors"] = stats.authors;
  doc["single_authored_authors"] = stats.single_authored_authors;
  doc["timeline"] = nlohmann::ordered_json::array();
  for (const auto& p : timeline.periods) {
    doc["timeline"].push_back(
        {{"period", p.label()}, {"publications", p.pub_count}, {"mean_citations", p.mean_citations}});
  }
  doc["unknown_year"] = timeline.unknown_count;
  doc["kept_ids"] = nlohmann::ordered_json::array();
  for (const auto& p : c.publications) doc["kept_ids"].push_back(p.id);
  write_file(a.config(), "corpus_summary.json", doc.dump(2) + "\n");

  std::string authors = "id,display_name,variants\n";
  for (const auto& [id, author] : c.authors) {
    std::string variants;
    for (const auto& v : author.variants) variants += (variants.empty() ? "" : "; ") + v;
    authors += csv_field(id) + "," + csv_field(author.display_name) + "," + csv_field(variants) + "\n";
  }
  write_file(a.config(), "authors.csv", authors);
  return finish(a, {"corpus_summary.json", "authors.csv"});
}

std::vector<std::string> write_yindex(Analysis& a, const std::vector<Level>& levels) {
  std::vector<std::string> written;
  for (Level l : levels) {
    const std::string name = level_name(l) + "_yindex.csv";
    write_file(a.config(), name, yindex_csv(a.level(l).ranked, l));
    written.push_back(name);
  }
  return finish(a, written);
}

std::vector<std::string> write_network(Analysis& a, const std::vector<Level>& levels) {
  std::vector<std::string> written;
  for (Level l : levels) {
    const auto& net = a.level(l).network;
    const auto& part = a.partition(l);
    const auto& lay = a.layout(l);
    const std::string base = level_name(l);

    std::string edges = "u,v,weight\n";
    for (const auto& e : net.edges) {
      edges += csv_field(net.nodes[e.u]) + "," + csv_field(net.nodes[e.v]) + "," +
               std::to_string(e.weight) + "\n";
    }
    std::string partition = "node,community\n";
    std::string layout = "node,x,y\n";
    for (std::size_t i = 0; i < net.size(); ++i) {
      partition += csv_field(net.nodes[i]) + "," + std::to_string(part.community[i]) + "\n";
      layout += csv_field(net.nodes[i]) + "," + format_fixed(lay.positions[i].x, 6) + "," +
                format_fixed(lay.positions[i].y, 6) + "\n";
    }
    std::ostringstream summary;
    summary << "level " << base << "\n"
            << "min_edge_weight " << a.config().min_edge_weight.at(l) << "\n"
            << "nodes " << net.size() << "\n"
            << "edges " << net.edges.size() << "\n"
            << "total_weight " << net.total_weight() << "\n"
            << "components " << lay.components << "\n"
            << "communities " << part.community_count() << "\n"
            << "modularity " << format_fixed(part.modularity, 6) << "\n"
            << "initial_stress " << format_fixed(lay.initial_stress, 6) << "\n"
            << "stress " << format_fixed(lay.stress, 6) << "\n"
            << "sweeps " << (lay.stress_trace.empty() ? 0 : lay.stress_trace.size() - 1) << "\n";
    for (const auto& [name, content] :
         {std::pair<std::string, std::string>{base + "_edges.csv", edges},
          {base + "_partition.csv", partition},
          {base + "_layout.csv", layout},
          {base + "_network_summary.txt", summary.str()}}) {
      write_file(a.config(), name, content);
      written.push_back(name);
    }
  }
  return finish(a, written);
}

std::vector<std::string> write_report(Analysis& a) {
  const auto& report = a.report();
  auto doc = report_to_json(report);
  const auto stats = corpus_stats(a.corpus());
  const auto timeline = summarize_timeline(a.corpus(), a.config().breakpoints);
  nlohmann::ordered_json corpus;
  corpus["publications"] = stats.publications;
  corpus["authors"] = stats.authors;
  corpus["single_authored_authors"] = stats.single_authored_authors;
  corpus["doc_types"] = nlohmann::ordered_json::object();
  for (const auto& [t, n] : stats.doc_types) corpus["doc_types"][std::string(to_string(t))] = n;
  corpus["timeline"] = nlohmann::ordered_json::array();
  for (const auto& p : timeline.periods) {
    corpus["timeline"].push_back(
        {{"period", p.label()}, {"publications", p.pub_count}, {"mean_citations", p.mean_citations}});
  }
  corpus["unknown_year"] = timeline.unknown_count;
  doc["corpus"] = corpus;
  for (auto& entry : doc["levels"]) {
    const Level l = *parse_level(entry["level"].get<std::string>());
    const auto& net = a.level(l).network;
    const auto weighted = network_degrees(net);
    const auto distinct = network_link_counts(net);
    std::vector<std::pair<std::string, long long>> order(weighted.begin(), weighted.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    nlohmann::ordered_json n;
    n["min_edge_weight"] = a.config().min_edge_weight.at(l);
    n["nodes"] = net.size();
    n["edges"] = net.edges.size();
    n["total_edge_weight"] = net.total_weight();
    n["top_nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < order.size() && i < 10; ++i) {
      n["top_nodes"].push_back({{"node", order[i].first},
                                {"total_links", order[i].second},
                                {"distinct_links", distinct.at(order[i].first)}});
    }
    entry["network"] = n;
  }
  write_file(a.config(), "report.json", doc.dump(2) + "\n");

  std::ostringstream text;
  text << "publications " << stats.publications << " (min citations "
       << a.config().filter.min_citations << "), authors " << stats.authors << "\n";
  text << report_to_text(report);
  write_file(a.config(), "report.txt", text.str());
  return finish(a, {"report.json", "report.txt"});
}

std::vector<std::string> write_render(Analysis& a) {
  std::vector<std::string> written;
  for (Level l : kAllLevels) {
    const std::string base = level_name(l);
    write_file(a.config(), base + "_polar.svg",
               render_polar(a.level(l).ranked, a.config().plot, "Y-index, " + base + " level"));
    written.push_back(base + "_polar.svg");
    const auto& net = a.level(l).network;
    write_file(a.config(), base + "_network.svg",
               render_network(net, a.partition(l), a.layout(l), network_degrees(net),
                              a.config().plot, "Collaboration, " + base + " level"));
    written.push_back(base + "_network.svg");
  }
  const auto timeline = summarize_timeline(a.corpus(), a.config().breakpoints);
  write_file(a.config(), "corpus_timeline.svg", render_timeline(timeline.periods, a.config().plot));
  written.push_back("corpus_timeline.svg");
  return finish(a, written);
}

std::vector<std::string> write_run(Analysis& a) {
  std::vector<std::string> all;
  const std::vector<Level> levels(std::begin(kAllLevels), std::end(kAllLevels));
  for (auto part : {write_parse(a), write_filter(a), write_yindex(a, levels),
                    write_network(a, levels), write_report(a), write_render(a)}) {
    for (auto& name : part) {
      if (std::find(all.begin(), all.end(), name) == all.end()) all.push_back(name);
    }
  }
  return all;
}

}  // namespace biblio
