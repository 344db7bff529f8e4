#include <fstream>

#include "doctest.h"

#include "biblio/pipeline.hpp"
#include "biblio/synth.hpp"
#include "support.hpp"

using namespace biblio;
using testing::quote;

namespace {

std::filesystem::path write_synth(const std::filesystem::path& dir, const SynthSpec& spec) {
  const auto r = generate_corpus(spec);
  const auto path = dir / "export.txt";
  std::ofstream(path, std::ios::binary) << r.export_text;
  return path;
}

SynthSpec small_spec(std::uint64_t seed) {
  SynthSpec s;
  s.seed = seed;
  s.n_pubs = 120;
  s.regions = {{"Western", 24, {"USA", "United Kingdom"}}, {"non-Western", 12, {"China"}}};
  s.p_in = 0.8;
  s.p_out = 0.2;
  return s;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("golden fixture runs cleanly") {
  const auto dir = testing::scratch("golden");
  const int code = testing::run_cli("run --out " + quote(dir / "out") + " " +
                                        quote(testing::fixture("golden.txt")),
                                    dir / "stdout.txt");
  CHECK(code == 0);
  const auto log = read_file(dir / "out" / "diagnostics.log");
  CHECK(log.find("WARN\t") == std::string::npos);
  CHECK(log.find("ERROR\t") == std::string::npos);
  auto report = nlohmann::ordered_json::parse(read_file(dir / "out" / "report.json"));
  CHECK(report.at("corpus").at("publications") == 1);
  CHECK(std::filesystem::exists(dir / "out" / "author_polar.svg"));
  CHECK(std::filesystem::exists(dir / "out" / "corpus_timeline.svg"));
}

TEST_CASE("nonexistent input exits with 2 and names the path") {
  const auto dir = testing::scratch("missing");
  const auto missing = dir / "nope.txt";
  CHECK(testing::run_cli("run --out " + quote(dir / "out") + " " + quote(missing), dir / "stdout.txt") == 2);
  CHECK(read_file(dir / "stdout.txt").find(missing.string()) != std::string::npos);
}

TEST_CASE("bad flags exit with 2") {
  const auto dir = testing::scratch("badflag");
  CHECK(testing::run_cli("run --no-such-flag x", dir / "stdout.txt") == 2);
  CHECK(testing::run_cli("yindex --level galaxy " + quote(testing::fixture("golden.txt")), dir / "stdout.txt") == 2);
}

TEST_CASE("warnings give exit code 1") {
  const auto dir = testing::scratch("warn");
  CHECK(testing::run_cli("run --out " + quote(dir / "out") + " " + quote(testing::fixture("missing_ef.txt")),
                         dir / "stdout.txt") == 1);
  CHECK(read_file(dir / "out" / "diagnostics.log").find("missing EF") != std::string::npos);
}

TEST_CASE("identical runs give identical trees") {
  const auto dir = testing::scratch("rerun");
  const auto input = write_synth(dir, small_spec(2));
  for (const char* out : {"a", "b"}) {
    CHECK(testing::run_cli("run --out " + quote(dir / out) + " " + quote(input), dir / "log.txt") == 0);
  }
  const auto a = testing::read_tree(dir / "a");
  CHECK(a.size() >= 20);
  CHECK(a == testing::read_tree(dir / "b"));
}

TEST_CASE("run equals the composition of subcommands") {
  const auto dir = testing::scratch("compose");
  const auto input = write_synth(dir, small_spec(8));
  CHECK(testing::run_cli("run --out " + quote(dir / "run") + " " + quote(input), dir / "log.txt") == 0);
  for (const char* sub : {"parse", "filter", "yindex", "network", "report", "render"}) {
    CHECK(testing::run_cli(std::string(sub) + " --out " + quote(dir / "parts") + " " + quote(input),
                           dir / "log.txt") == 0);
  }
  CHECK(testing::read_tree(dir / "run") == testing::read_tree(dir / "parts"));
}

TEST_CASE("default configuration is echoed") {
  RunConfig cfg;
  cfg.inputs = {testing::fixture("golden.txt").string()};
  Analysis a(cfg);
  const auto& echo = a.report().config;
  CHECK(echo.at("filter").at("min_citations") == 100);
  CHECK(echo.at("min_edge_weight").at("author") == 2);
  CHECK(echo.at("min_j").at("author") == 5);
  CHECK(echo.at("min_j").at("institution") == 7);
  CHECK(echo.at("min_j").at("country") == 7);
  CHECK(echo.at("seed") == 42);
  CHECK(echo.at("region_map").at("mapping").at("USA") == "Western");
  CHECK(echo.at("region_map").at("mapping").at("China") == "non-Western");
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.inputs = {testing::fixture("golden.txt").string()};
  CHECK_NOTHROW(cfg.validate());
  cfg.region_map_path = "/no/such/map.tsv";
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("verdict agrees with the one implied by ground truth") {
  // Oracle: author-level stats recomputed from the generator's own credits,
  // regions and bylines, using the default thresholds and cutoffs.
  for (bool single : {true, false}) {
    const auto dir = testing::scratch(single ? "truth_single" : "truth_mixed");
    SynthSpec spec = small_spec(31);
    if (single) spec.regions = {{"Western", 30, {"USA", "Canada"}}};
    spec.p_in = single ? 0.9 : 0.5;
    spec.p_out = single ? 0.1 : 0.5;
    const auto r = generate_corpus(spec);
    const auto input = write_synth(dir, spec);

    RunConfig cfg;
    cfg.inputs = {input.string()};
    Analysis a(cfg);
    const auto& report = a.report();
    const auto& author = report.levels.front();
    REQUIRE(author.dominance.level == Level::author);

    long long total_j = 0;
    std::map<std::string, long long> j_by_region;
    for (const auto& [id, c] : r.truth.credits) {
      if (c.fp + c.rp < 5) continue;
      total_j += c.fp + c.rp;
      j_by_region[r.truth.author_region.at(id)] += c.fp + c.rp;
    }
    REQUIRE(total_j > 0);
    for (const auto& [region, j] : j_by_region) {
      CHECK(author.dominance.shares.at(region) ==
            doctest::Approx(static_cast<double>(j) / static_cast<double>(total_j)));
    }

    std::map<std::pair<std::string, std::string>, long long> pairs;
    for (const auto& byline : r.truth.bylines) {
      std::set<std::string> ids(byline.begin(), byline.end());
      for (auto i = ids.begin(); i != ids.end(); ++i) {
        for (auto k = std::next(i); k != ids.end(); ++k) ++pairs[{*i, *k}];
      }
    }
    long long kept = 0;
    long long cross = 0;
    for (const auto& [p, w] : pairs) {
      if (w < 2) continue;
      kept += w;
      if (r.truth.author_region.at(p.first) != r.truth.author_region.at(p.second)) cross += w;
    }
    const double fraction = kept == 0 ? 0.0 : static_cast<double>(cross) / static_cast<double>(kept);
    CHECK(author.tolerance.fraction == doctest::Approx(fraction));

    if (single) {
      CHECK(report.verdict == Verdict::homogeneous);
    } else {
      std::vector<LevelStats> levels = report.levels;
      CHECK(report.verdict == decide_verdict(levels, report.thresholds));
      CHECK(report.verdict != Verdict::homogeneous);
    }
    CHECK(verdict_from_json(nlohmann::ordered_json::parse(report_to_json(report).dump())) == report.verdict);
  }
}

}  // TEST_SUITE
