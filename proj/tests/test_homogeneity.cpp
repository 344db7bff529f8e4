#include <cmath>

#include "doctest.h"

#include "biblio/homogeneity.hpp"
#include "biblio/synth.hpp"
#include "support.hpp"

using namespace biblio;

namespace {

std::vector<YIndex> ranked(std::vector<std::pair<std::string, long long>> rows) {
  std::vector<YIndex> out;
  for (auto& [e, j] : rows) {
    YIndex y;
    y.entity = e;
    y.j = j;
    y.fp = j;
    out.push_back(y);
  }
  return out;
}

LevelStats level_stats(Level level, double share, double fraction) {
  LevelStats s;
  s.dominance.level = level;
  s.dominance.empty = false;
  s.dominance.shares = {{"Western", share}, {"non-Western", 1.0 - share}};
  s.tolerance.level = level;
  s.tolerance.fraction = fraction;
  return s;
}

Corpus corpus_from(const std::vector<testing::RecordText>& records) {
  Diagnostics d;
  auto parsed = parse_export(testing::export_text(records));
  std::vector<Publication> pubs;
  for (const auto& r : parsed.file.records) pubs.push_back(record_to_publication(r, d));
  FilterConfig cfg;
  cfg.min_citations = 0;
  return build_corpus(pubs, cfg, NormalizationTables::defaults(), {}, d);
}

}  // namespace

TEST_SUITE("homogeneity") {

TEST_CASE("default region map") {
  const auto m = RegionMap::defaults();
  for (const char* w : {"USA", "United Kingdom", "Canada"}) CHECK(classify_region(w, m) == "Western");
  for (const char* n : {"China", "Israel", "Singapore", "Korea", "Brazil"}) {
    CHECK(classify_region(n, m) == "non-Western");
  }
  CHECK(classify_region(std::string(kUnknownEntity), m) == kUnclassified);
  CHECK(classify_region("", m) == kUnclassified);
  CHECK(m.digest() == RegionMap::defaults().digest());
}

TEST_CASE("region map validation") {
  CHECK_THROWS_AS(RegionMap::from_rows({{"USA", "Western"}, {"USA", "Other"}}), ConfigError);
  CHECK_THROWS_AS(RegionMap::from_rows({{"USA", " "}}), ConfigError);
  auto m = RegionMap::from_rows({{"USA", "A"}, {"*", "B"}});
  CHECK(classify_region("USA", m) == "A");
  CHECK(classify_region("Peru", m) == "B");
  auto plain = RegionMap::from_rows({{"USA", "A"}});
  CHECK(classify_region("Peru", plain) == kUnclassified);
  CHECK(m.digest() != plain.digest());
}

TEST_CASE("dominance shares") {
  std::map<std::string, std::string> regions{{"a", "Western"}, {"b", "Western"}, {"c", "Western"},
                                             {"d", "non-Western"}};
  auto all_w = dominance(Level::country, ranked({{"a", 3}, {"b", 2}}), regions);
  CHECK(all_w.shares.at("Western") == 1.0);
  CHECK(all_w.dominant_region() == "Western");

  auto mix = dominance(Level::country, ranked({{"a", 10}, {"b", 5}, {"c", 5}, {"d", 5}}), regions);
  CHECK(mix.shares.at("Western") == doctest::Approx(0.8));
  CHECK(mix.total_j == 25);

  auto unknown = dominance(Level::country, ranked({{"zzz", 4}, {"a", 4}}), regions);
  CHECK(unknown.shares.at(std::string(kUnclassified)) == doctest::Approx(0.5));

  auto empty = dominance(Level::country, {}, regions);
  CHECK(empty.empty);
  CHECK(empty.shares.empty());
  CHECK(empty.max_share() == 0.0);
}

TEST_CASE("top-k counts include the three leading countries") {
  const auto m = RegionMap::defaults();
  std::map<std::string, std::string> regions;
  for (const char* c : {"USA", "United Kingdom", "Canada", "China", "Israel"}) {
    regions[c] = classify_region(c, m);
  }
  auto d = dominance(Level::country,
                     ranked({{"USA", 511}, {"United Kingdom", 85}, {"Canada", 39}, {"China", 10}, {"Israel", 8}}),
                     regions);
  CHECK(d.top_counts.at(5).at("Western") == 3);
  CHECK(d.top_counts.at(5).at("non-Western") == 2);
  CHECK(d.top.size() == 5);
  CHECK(d.top[0].entity == "USA");
}

TEST_CASE("shares sum to one") {
  std::map<std::string, std::string> regions{{"a", "R1"}, {"b", "R2"}, {"c", "R3"}};
  for (int t = 1; t < 30; ++t) {
    auto d = dominance(Level::author,
                       ranked({{"a", t}, {"b", 2 * t + 1}, {"c", (t * 7) % 11 + 1}, {"z", t % 3 + 1}}),
                       regions);
    double sum = 0.0;
    for (const auto& [r, s] : d.shares) {
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      sum += s;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("tolerance fraction") {
  std::map<std::string, std::string> regions{{"a", "W"}, {"b", "W"}, {"c", "W"}, {"d", "N"}, {"e", "W"}};
  auto same = make_network(Level::author, {}, {{"a", "b", 1}, {"b", "c", 3}});
  CHECK(tolerance(same, regions).fraction == 0.0);

  auto one_cross = make_network(Level::author, {},
                                {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"c", "d", 1}});
  auto t = tolerance(one_cross, regions);
  CHECK(t.fraction == doctest::Approx(0.25));
  CHECK(t.cross_link_count == 1);
  REQUIRE(t.cross_edges.size() == 1);
  CHECK(t.cross_edges[0].weight == 1);

  auto empty = make_network(Level::author, {"a"}, {});
  CHECK(tolerance(empty, regions).fraction == 0.0);
}

TEST_CASE("edges touching international organizations are excluded") {
  std::map<std::string, std::string> regions{{"a", "W"}, {"b", "N"}, {"o", std::string(kInternational)}};
  auto net = make_network(Level::institution, {}, {{"a", "b", 1}, {"a", "o", 5}, {"b", "o", 2}});
  auto t = tolerance(net, regions);
  CHECK(t.total_weight == 1);
  CHECK(t.cross_weight == 1);
  CHECK(t.international_edges == 2);
  CHECK(t.international_weight == 7);
}

TEST_CASE("tolerance is invariant under weight scaling") {
  std::map<std::string, std::string> regions;
  auto base = planted_partition_network(2, 6, 0.7, 0.3, 8);
  for (std::size_t i = 0; i < base.size(); ++i) regions[base.nodes[i]] = i < 6 ? "W" : "N";
  const double f = tolerance(base, regions).fraction;
  for (long long k : {2LL, 3LL, 17LL}) {
    CoNetwork scaled = base;
    for (auto& e : scaled.edges) e.weight *= k;
    CHECK(tolerance(scaled, regions).fraction == doctest::Approx(f).epsilon(1e-15));
  }
}

TEST_CASE("swapping region labels swaps shares and keeps tolerance") {
  auto net = planted_partition_network(2, 5, 0.8, 0.3, 12);
  std::map<std::string, std::string> regions;
  std::map<std::string, std::string> swapped;
  std::vector<std::pair<std::string, long long>> rows;
  for (std::size_t i = 0; i < net.size(); ++i) {
    regions[net.nodes[i]] = i < 5 ? "Western" : "non-Western";
    swapped[net.nodes[i]] = i < 5 ? "non-Western" : "Western";
    rows.push_back({net.nodes[i], static_cast<long long>(i % 4 + 1)});
  }
  CHECK(tolerance(net, regions).fraction == tolerance(net, swapped).fraction);
  auto d1 = dominance(Level::author, ranked(rows), regions);
  auto d2 = dominance(Level::author, ranked(rows), swapped);
  CHECK(d1.shares.at("Western") == d2.shares.at("non-Western"));
  CHECK(d1.shares.at("non-Western") == d2.shares.at("Western"));
}

TEST_CASE("verdict rules") {
  Thresholds th;
  std::vector<LevelStats> homo, hetero, mixed;
  for (Level l : kAllLevels) {
    homo.push_back(level_stats(l, 1.0, 0.0));
    hetero.push_back(level_stats(l, 0.5, 0.5));
  }
  mixed = {level_stats(Level::author, 1.0, 0.0), level_stats(Level::country, 0.5, 0.5)};
  CHECK(decide_verdict(homo, th) == Verdict::homogeneous);
  CHECK(decide_verdict(hetero, th) == Verdict::heterogeneous);
  CHECK(decide_verdict(mixed, th) == Verdict::mixed);
  CHECK(decide_verdict({}, th) == Verdict::mixed);
  for (Verdict v : {Verdict::homogeneous, Verdict::mixed, Verdict::heterogeneous}) {
    CHECK(parse_verdict(to_string(v)) == v);
  }
}

TEST_CASE("verdict is reproducible from the serialized report") {
  for (double share : {0.5, 0.79, 0.8, 1.0}) {
    for (double frac : {0.0, 0.1, 0.11, 0.5}) {
      std::map<Level, DominanceStats> dom;
      std::map<Level, ToleranceStats> tol;
      for (Level l : kAllLevels) {
        auto s = level_stats(l, share, frac);
        dom[l] = s.dominance;
        tol[l] = s.tolerance;
      }
      Diagnostics d;
      auto report = homogeneity_report(dom, tol, Thresholds{}, d);
      CHECK(d.empty());
      const auto doc = nlohmann::ordered_json::parse(report_to_json(report).dump());
      CHECK(verdict_from_json(doc) == report.verdict);
      CHECK(doc.at("verdict") == std::string(to_string(report.verdict)));
    }
  }
}

TEST_CASE("missing level gives a warning") {
  std::map<Level, DominanceStats> dom{{Level::author, level_stats(Level::author, 1.0, 0.0).dominance}};
  std::map<Level, ToleranceStats> tol{{Level::author, level_stats(Level::author, 1.0, 0.0).tolerance}};
  Diagnostics d;
  auto r = homogeneity_report(dom, tol, Thresholds{}, d);
  CHECK(r.levels.size() == 1);
  CHECK(r.verdict == Verdict::homogeneous);
  CHECK(d.count(Severity::warning) >= 1);
}

TEST_CASE("entity regions at every level") {
  testing::RecordText a, b, c;
  a.add("AU", {"Alpha, A", "Beta, B"})
      .add("C1", {"[Alpha, A] Harvard Univ, Boston, MA 02163 USA.", "[Beta, B] Peking Univ, Beijing, Peoples R China."})
      .add("RP", {"Alpha, A (corresponding author), Harvard Univ, Boston, MA 02163 USA."})
      .add("PY", {"2001"})
      .add("UT", {"WOS:1"});
  b.add("AU", {"Beta, B"})
      .add("C1", {"[Beta, B] Peking Univ, Beijing, Peoples R China."})
      .add("RP", {"Beta, B (corresponding author), Peking Univ, Beijing, Peoples R China."})
      .add("PY", {"2002"})
      .add("UT", {"WOS:2"});
  c.add("AU", {"Gamma, C"})
      .add("C1", {"[Gamma, C] World Bank, Washington, DC 20433 USA."})
      .add("RP", {"Gamma, C (corresponding author), World Bank, Washington, DC 20433 USA."})
      .add("PY", {"2003"})
      .add("UT", {"WOS:3"});
  const auto corpus = corpus_from({a, b, c});
  const auto map = RegionMap::defaults();
  const auto tables = NormalizationTables::defaults();

  auto countries = entity_regions(corpus, Level::country, map, tables);
  CHECK(countries.at("USA") == "Western");
  CHECK(countries.at("China") == "non-Western");

  auto authors = entity_regions(corpus, Level::author, map, tables);
  CHECK(authors.at("alpha, A") == "Western");
  CHECK(authors.at("beta, B") == "non-Western");

  auto inst = entity_regions(corpus, Level::institution, map, tables);
  CHECK(inst.at("harvard university") == "Western");
  CHECK(inst.at("peking university") == "non-Western");
  const auto intl = normalize_institution("World Bank", tables);
  REQUIRE(inst.count(intl) == 1);
  CHECK(inst.at(intl) == kInternational);
}

TEST_CASE("text report names the verdict") {
  std::map<Level, DominanceStats> dom;
  std::map<Level, ToleranceStats> tol;
  for (Level l : kAllLevels) {
    auto s = level_stats(l, 1.0, 0.0);
    dom[l] = s.dominance;
    tol[l] = s.tolerance;
  }
  Diagnostics d;
  auto text = report_to_text(homogeneity_report(dom, tol, Thresholds{}, d));
  CHECK(text.find("homogeneous") != std::string::npos);
}

}  // TEST_SUITE
