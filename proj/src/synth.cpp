#include "biblio/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "biblio/random.hpp"
#include "biblio/wos_parser.hpp"

namespace biblio {

namespace {

constexpr const char* kSyllables[] = {"ka", "lo", "mi", "nu", "pe", "ra", "si", "to",
                                      "ve", "zu", "ba", "de", "fo", "gi", "ho", "ju"};

std::string syllable_name(std::size_t index, std::size_t min_syllables) {
  std::string s;
  std::size_t n = index;
  for (std::size_t i = 0; i < min_syllables || n > 0; ++i) {
    s += kSyllables[n % 16];
    n /= 16;
  }
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string policy_name(CorrespondingPolicy p) {
  return p == CorrespondingPolicy::first_author ? "first_author" : "random_coauthor";
}

template <typename T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  return doc.at(key).get<T>();
}

std::string address_tail(const SynthAuthor& a) {
  if (a.country == "USA") return a.institution + ", " + a.city + ", MA 02138 USA.";
  return a.institution + ", " + a.city + ", " + a.country + ".";
}

}  // namespace

void SynthSpec::validate() const {
  if (n_pubs <= 0) throw ConfigError("synth: n_pubs must be > 0");
  if (regions.empty()) throw ConfigError("synth: at least one region is required");
  std::set<std::string> labels;
  for (const auto& r : regions) {
    if (r.label.empty()) throw ConfigError("synth: region label is empty");
    if (!labels.insert(r.label).second) throw ConfigError("synth: duplicate region " + r.label);
    if (r.n_authors <= 0) throw ConfigError("synth: region " + r.label + " needs n_authors > 0");
    if (r.countries.empty()) throw ConfigError("synth: region " + r.label + " has no countries");
  }
  std::map<std::string, long long> used;
  for (const auto& g : groups) {
    if (labels.count(g.region) == 0) throw ConfigError("synth: group names unknown region " + g.region);
    if (g.size <= 0) throw ConfigError("synth: group size must be > 0");
    used[g.region] += g.size;
  }
  for (const auto& r : regions) {
    if (used[r.label] > r.n_authors) {
      throw ConfigError("synth: groups of region " + r.label + " need " +
                        std::to_string(used[r.label]) + " authors, region has " +
                        std::to_string(r.n_authors));
    }
  }
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0)) {
    throw ConfigError("synth: p_in and p_out must lie in [0, 1]");
  }
  if (citation_range.first < 0 || citation_range.first > citation_range.second) {
    throw ConfigError("synth: invalid citation_range");
  }
  if (authors_per_pub.first < 1 || authors_per_pub.first > authors_per_pub.second) {
    throw ConfigError("synth: invalid authors_per_pub");
  }
  if (year_range.first > year_range.second) throw ConfigError("synth: invalid year_range");
}

SynthSpec SynthSpec::from_json(const nlohmann::json& doc) {
  SynthSpec s;
  try {
    s.seed = get_or<std::uint64_t>(doc, "seed", s.seed);
    s.n_pubs = get_or<int>(doc, "n_pubs", s.n_pubs);
    for (const auto& r : doc.at("regions")) {
      s.regions.push_back({r.at("label").get<std::string>(), r.at("n_authors").get<int>(),
                           r.at("countries").get<std::vector<std::string>>()});
    }
    if (doc.contains("groups")) {
      for (const auto& g : doc.at("groups")) {
        s.groups.push_back({g.at("region").get<std::string>(), g.at("size").get<int>()});
      }
    }
    s.p_in = get_or<double>(doc, "p_in", s.p_in);
    s.p_out = get_or<double>(doc, "p_out", s.p_out);
    s.citation_range = get_or(doc, "citation_range", s.citation_range);
    s.authors_per_pub = get_or(doc, "authors_per_pub", s.authors_per_pub);
    s.year_range = get_or(doc, "year_range", s.year_range);
    const auto policy = get_or<std::string>(doc, "corresponding_policy", "first_author");
    if (policy == "first_author") {
      s.corresponding = CorrespondingPolicy::first_author;
    } else if (policy == "random_coauthor") {
      s.corresponding = CorrespondingPolicy::random_coauthor;
    } else {
      throw ConfigError("synth: unknown corresponding_policy " + policy);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synth spec: ") + e.what());
  }
  s.validate();
  return s;
}

nlohmann::ordered_json SynthSpec::to_json() const {
  nlohmann::ordered_json doc;
  doc["seed"] = seed;
  doc["n_pubs"] = n_pubs;
  doc["regions"] = nlohmann::ordered_json::array();
  for (const auto& r : regions) {
    doc["regions"].push_back({{"label", r.label}, {"n_authors", r.n_authors}, {"countries", r.countries}});
  }
  doc["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : groups) doc["groups"].push_back({{"region", g.region}, {"size", g.size}});
  doc["p_in"] = p_in;
  doc["p_out"] = p_out;
  doc["citation_range"] = {citation_range.first, citation_range.second};
  doc["corresponding_policy"] = policy_name(corresponding);
  doc["authors_per_pub"] = {authors_per_pub.first, authors_per_pub.second};
  doc["year_range"] = {year_range.first, year_range.second};
  return doc;
}

SynthResult generate_corpus(const SynthSpec& spec) {
  spec.validate();
  SynthResult result;
  GroundTruth& truth = result.truth;
  Rng rng(spec.seed);

  // Authors, region by region; institutions two per country.
  std::vector<std::vector<std::size_t>> group_members;
  std::map<std::string, std::size_t> institution_ids;
  for (const auto& region : spec.regions) {
    const std::size_t first = truth.authors.size();
    for (int i = 0; i < region.n_authors; ++i) {
      const std::size_t idx = truth.authors.size();
      SynthAuthor a;
      const std::string last = syllable_name(idx, 3);
      const char initial = static_cast<char>('A' + (idx * 7) % 26);
      a.au = last + ", " + initial;
      a.af = last + ", " + initial + ".";
      a.id = normalize_author_name(a.au);
      a.region = region.label;
      a.country = region.countries[static_cast<std::size_t>(i) % region.countries.size()];
      const std::string inst_key =
          a.country + "#" + std::to_string((static_cast<std::size_t>(i) / region.countries.size()) % 2);
      auto [it, inserted] = institution_ids.emplace(inst_key, institution_ids.size());
      a.institution = "Univ " + syllable_name(it->second, 2);
      a.city = syllable_name(it->second + 7, 2) + "ville";
      truth.authors.push_back(a);
    }
    std::size_t next = first;
    for (const auto& g : spec.groups) {
      if (g.region != region.label) continue;
      std::vector<std::size_t> members;
      for (int k = 0; k < g.size; ++k) members.push_back(next++);
      group_members.push_back(std::move(members));
    }
    if (next < truth.authors.size()) {
      std::vector<std::size_t> members;
      while (next < truth.authors.size()) members.push_back(next++);
      group_members.push_back(std::move(members));
    }
  }
  for (std::size_t g = 0; g < group_members.size(); ++g) {
    std::vector<std::string> ids;
    for (auto idx : group_members[g]) {
      truth.authors[idx].group = static_cast<int>(g);
      ids.push_back(truth.authors[idx].id);
    }
    truth.communities.push_back(std::move(ids));
  }
  for (const auto& a : truth.authors) truth.author_region[a.id] = a.region;

  const double total_p = spec.p_in + spec.p_out;
  const double q_in = total_p > 0.0 ? spec.p_in / total_p : 1.0;

  ExportFile file;
  file.header.push_back({"FN", {"Clarivate Analytics Web of Science"}});
  file.header.push_back({"VR", {"1.0"}});
  for (int p = 0; p < spec.n_pubs; ++p) {
    const std::size_t g = draw_below(group_members.size(), rng);
    const auto& own = group_members[g];
    std::vector<std::size_t> byline{own[draw_below(own.size(), rng)]};
    const auto span = static_cast<std::uint64_t>(spec.authors_per_pub.second -
                                                 spec.authors_per_pub.first + 1);
    const int target = total_p > 0.0
                           ? spec.authors_per_pub.first + static_cast<int>(draw_below(span, rng))
                           : 1;
    while (static_cast<int>(byline.size()) < target) {
      std::vector<std::size_t> in_pool, out_pool;
      for (std::size_t i = 0; i < truth.authors.size(); ++i) {
        if (std::find(byline.begin(), byline.end(), i) != byline.end()) continue;
        (truth.authors[i].group == static_cast<int>(g) ? in_pool : out_pool).push_back(i);
      }
      if (in_pool.empty() && out_pool.empty()) break;
      bool inside = draw_bernoulli(q_in, rng);
      if (inside && in_pool.empty()) inside = false;
      if (!inside && out_pool.empty()) inside = true;
      const auto& pool = inside ? in_pool : out_pool;
      byline.push_back(pool[draw_below(pool.size(), rng)]);
    }
    std::size_t corresponding = byline.front();
    if (spec.corresponding == CorrespondingPolicy::random_coauthor) {
      corresponding = byline[draw_below(byline.size(), rng)];
    }
    const int year = spec.year_range.first +
                     static_cast<int>(draw_below(
                         static_cast<std::uint64_t>(spec.year_range.second - spec.year_range.first + 1), rng));
    const long long cites =
        spec.citation_range.first +
        static_cast<long long>(draw_below(
            static_cast<std::uint64_t>(spec.citation_range.second - spec.citation_range.first + 1), rng));

    std::vector<std::string> ids;
    for (auto idx : byline) ids.push_back(truth.authors[idx].id);
    for (std::size_t a = 0; a < byline.size(); ++a) {
      for (std::size_t b = a + 1; b < byline.size(); ++b) {
        ++truth.total_pairs;
        if (truth.authors[byline[a]].region != truth.authors[byline[b]].region) ++truth.cross_pairs;
      }
    }
    ++truth.credits[truth.authors[byline.front()].id].fp;
    ++truth.credits[truth.authors[corresponding].id].rp;
    truth.bylines.push_back(std::move(ids));

    RawRecord rec;
    char ut[32];
    std::snprintf(ut, sizeof ut, "WOS:SYN%09d", p + 1);
    std::vector<std::string> au, af, c1;
    for (auto idx : byline) {
      au.push_back(truth.authors[idx].au);
      af.push_back(truth.authors[idx].af);
    }
    // One C1 line per distinct affiliation, in byline order.
    std::vector<std::pair<std::string, std::vector<std::string>>> affiliations;
    for (auto idx : byline) {
      const std::string tail = address_tail(truth.authors[idx]);
      auto it = std::find_if(affiliations.begin(), affiliations.end(),
                             [&](const auto& x) { return x.first == tail; });
      if (it == affiliations.end()) {
        affiliations.push_back({tail, {truth.authors[idx].af}});
      } else {
        it->second.push_back(truth.authors[idx].af);
      }
    }
    for (const auto& [tail, names] : affiliations) {
      std::string names_text;
      for (const auto& n : names) names_text += (names_text.empty() ? "" : "; ") + n;
      c1.push_back("[" + names_text + "] " + tail);
    }
    const auto& ca = truth.authors[corresponding];
    rec.fields = {{"PT", {"J"}},
                  {"AU", au},
                  {"AF", af},
                  {"TI", {"Synthetic study " + std::to_string(p + 1) + " of " + ca.region +
                          " collaboration"}},
                  {"SO", {"JOURNAL OF SYNTHETIC STUDIES"}},
                  {"LA", {"English"}},
                  {"DT", {"Article"}},
                  {"C1", c1},
                  {"RP", {ca.au + " (corresponding author), " + address_tail(ca)}},
                  {"TC", {std::to_string(cites)}},
                  {"PY", {std::to_string(year)}},
                  {"UT", {ut}}};
    file.records.push_back(std::move(rec));
  }
  truth.cross_fraction = truth.total_pairs > 0 ? static_cast<double>(truth.cross_pairs) /
                                                     static_cast<double>(truth.total_pairs)
                                               : 0.0;

  result.export_text = serialize_export(file);
  auto parsed = parse_export(result.export_text, "synthetic");
  result.diagnostics.append(parsed.diagnostics);
  std::vector<Publication> pubs;
  for (const auto& r : parsed.file.records) pubs.push_back(record_to_publication(r, result.diagnostics));
  FilterConfig filter;
  filter.min_citations = spec.citation_range.first;
  result.corpus = build_corpus(std::move(pubs), filter, NormalizationTables::defaults(), {},
                               result.diagnostics);
  return result;
}

nlohmann::ordered_json truth_to_json(const GroundTruth& truth) {
  nlohmann::ordered_json doc;
  doc["total_pairs"] = truth.total_pairs;
  doc["cross_pairs"] = truth.cross_pairs;
  doc["cross_fraction"] = truth.cross_fraction;
  doc["communities"] = truth.communities;
  doc["authors"] = nlohmann::ordered_json::array();
  for (const auto& a : truth.authors) {
    const auto it = truth.credits.find(a.id);
    const Credit c = it == truth.credits.end() ? Credit{} : it->second;
    doc["authors"].push_back({{"id", a.id},
                              {"name", a.af},
                              {"region", a.region},
                              {"country", a.country},
                              {"institution", a.institution},
                              {"group", a.group},
                              {"fp", c.fp},
                              {"rp", c.rp}});
  }
  return doc;
}

CoNetwork planted_partition_network(std::size_t groups, std::size_t group_size, double p_in,
                                    double p_out, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = groups * group_size;
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "v%06zu", i);
    nodes.emplace_back(buf);
  }
  std::vector<std::tuple<std::string, std::string, long long>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool same = a / group_size == b / group_size;
      if (draw_bernoulli(same ? p_in : p_out, rng)) edges.emplace_back(nodes[a], nodes[b], 1);
    }
  }
  return make_network(Level::author, nodes, edges);
}

}  // namespace biblio
