#include <algorithm>

#include "doctest.h"

#include "biblio/wos_parser.hpp"
#include "support.hpp"

using namespace biblio;
using testing::count_message;
using testing::fixture_text;

TEST_SUITE("wos_parser") {

TEST_CASE("golden fixture parses to one record without diagnostics") {
  const auto r = parse_export(fixture_text("golden.txt"), "golden.txt");
  CHECK(r.diagnostics.empty());
  REQUIRE(r.file.records.size() == 1);
  CHECK(r.file.header.size() == 2);
  const auto& rec = r.file.records.front();
  REQUIRE(rec.find("TI") != nullptr);
  CHECK(rec.find("TI")->lines.size() == 2);
  CHECK(rec.joined("TI") == "Example title that wraps onto a second line");
  CHECK(rec.values("AU") == std::vector<std::string>{"Zahra, SA", "Cumming, D"});
  CHECK(rec.find("ER") == nullptr);
  CHECK(rec.span.first_line == 3);
  CHECK(rec.span.last_line == 16);
}

TEST_CASE("serialize round trip is byte stable") {
  const std::string text = fixture_text("golden.txt");
  const auto r = parse_export(text);
  CHECK(serialize_export(r.file) == text);
  const auto again = parse_export(serialize_export(r.file));
  CHECK(serialize_export(again.file) == text);
}

TEST_CASE("record count equals ER count") {
  for (const char* name : {"golden.txt", "missing_ef.txt", "malformed_line.txt",
                           "unterminated_record.txt"}) {
    const std::string text = fixture_text(name);
    std::size_t er = 0;
    for (const auto& line : split(text, '\n')) {
      if (rtrim(line) == "ER") ++er;
    }
    CHECK_MESSAGE(parse_export(text).file.records.size() == er, name);
  }
}

TEST_CASE("malformation: missing EF") {
  const auto r = parse_export(fixture_text("missing_ef.txt"));
  CHECK(r.file.records.size() == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics.items()[0].message == "missing EF");
  CHECK(r.diagnostics.items()[0].severity == Severity::warning);
}

TEST_CASE("malformation: malformed line is skipped") {
  const auto r = parse_export(fixture_text("malformed_line.txt"), "m.txt");
  CHECK(r.file.records.size() == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics.items()[0].message == "malformed line");
  CHECK(r.diagnostics.items()[0].location == "m.txt:10");
  CHECK(r.file.records[0].joined("SO") == "JOURNAL OF BUSINESS VENTURING");
}

TEST_CASE("malformation: unterminated record is dropped") {
  const auto r = parse_export(fixture_text("unterminated_record.txt"));
  CHECK(r.file.records.size() == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics.items()[0].message == "unterminated record");
}

TEST_CASE("three-line TI is joined with single spaces") {
  testing::RecordText rec;
  rec.add("PT", {"J"}).add("AU", {"Doe, J"}).add("TI", {"one", "two", "three"}).add("TC", {"5"});
  const auto r = parse_export(testing::export_text({rec}));
  REQUIRE(r.file.records.size() == 1);
  CHECK(r.file.records[0].find("TI")->lines.size() == 3);
  CHECK(r.file.records[0].joined("TI") == "one two three");
}

TEST_CASE("byte order mark and CRLF are accepted") {
  std::string text = "\xEF\xBB\xBF" + fixture_text("golden.txt");
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  const auto r = parse_export(crlf);
  CHECK(r.diagnostics.empty());
  CHECK(r.file.records.size() == 1);
}

TEST_CASE("empty export is fatal") {
  CHECK_THROWS_AS(parse_export("FN Clarivate Analytics Web of Science\nVR 1.0\nEF\n"), InputError);
  CHECK_THROWS_AS(parse_export(""), InputError);
  CHECK_THROWS_AS(parse_export_file(testing::fixture("does_not_exist.txt")), InputError);
}

TEST_CASE("tab-delimited export") {
  const std::string text =
      "PT\tAU\tTI\tTC\tPY\tC1\tUT\n"
      "J\tZahra, SA; Cumming, D\tA title\t150\t2005\t[Zahra, SA] Univ Minnesota, Minneapolis, MN "
      "55455 USA\tWOS:1\n"
      "J\tDoe, J\tOther\t90\t2001\t\tWOS:2\n";
  const auto r = parse_export(text);
  CHECK(r.file.tab_delimited);
  REQUIRE(r.file.records.size() == 2);
  Diagnostics d;
  const auto pub = record_to_publication(r.file.records[0], d);
  CHECK(pub.authors == std::vector<std::string>{"Zahra, SA", "Cumming, D"});
  CHECK(pub.times_cited == 150);
  REQUIRE(pub.addresses.size() == 1);
  CHECK(pub.addresses[0].country_raw == "USA");
}

TEST_CASE("record_to_publication maps fields") {
  const auto r = parse_export(fixture_text("golden.txt"));
  Diagnostics d;
  const auto pub = record_to_publication(r.file.records[0], d);
  CHECK(d.empty());
  CHECK(pub.id == "WOS:000123456700001");
  CHECK(pub.times_cited == 150);
  CHECK(pub.year == 2005);
  CHECK(pub.doc_type == DocType::article);
  CHECK(pub.source == "JOURNAL OF BUSINESS VENTURING");
  CHECK(pub.authors.front() == "Zahra, SA");
  REQUIRE(pub.reprint_entries.size() == 1);
  CHECK(pub.reprint_entries[0].institution_raw == "Univ Minnesota");
}

TEST_CASE("doc types") {
  CHECK(parse_doc_type("Article") == DocType::article);
  CHECK(parse_doc_type("REVIEW") == DocType::review);
  CHECK(parse_doc_type("Proceedings Paper") == DocType::proceedings_paper);
  CHECK(parse_doc_type("Article; Proceedings Paper") == DocType::proceedings_paper);
  CHECK(parse_doc_type("Editorial Material") == DocType::editorial);
  CHECK(parse_doc_type("Book Chapter") == DocType::book_chapter);
  CHECK(parse_doc_type("Book") == DocType::book);
  CHECK(parse_doc_type("Letter") == DocType::other);
}

TEST_CASE("missing TC defaults to zero with a diagnostic") {
  testing::RecordText rec;
  rec.add("PT", {"J"}).add("AU", {"Doe, J"}).add("TI", {"x"}).add("UT", {"WOS:7"});
  const auto r = parse_export(testing::export_text({rec}));
  Diagnostics d;
  const auto pub = record_to_publication(r.file.records[0], d);
  CHECK(pub.times_cited == 0);
  CHECK(count_message(d, "missing TC") == 1);
}

TEST_CASE("record without AU or AF is anonymous") {
  testing::RecordText rec;
  rec.add("PT", {"J"}).add("TI", {"Editorial"}).add("TC", {"500"});
  const auto r = parse_export(testing::export_text({rec}));
  Diagnostics d;
  const auto pub = record_to_publication(r.file.records[0], d);
  CHECK(pub.anonymous());
  CHECK(count_message(d, "anonymous") == 1);
}

TEST_CASE("missing UT gives a stable synthesized id") {
  testing::RecordText rec;
  rec.add("AU", {"Doe, J"}).add("TI", {"x"}).add("PY", {"2001"}).add("TC", {"5"});
  const auto text = testing::export_text({rec});
  Diagnostics d;
  const auto a = record_to_publication(parse_export(text).file.records[0], d);
  const auto b = record_to_publication(parse_export(text).file.records[0], d);
  CHECK(a.id == b.id);
  CHECK(a.id.rfind("SYN:", 0) == 0);
}

TEST_CASE("parse_reprint") {
  Diagnostics d;
  auto one = parse_reprint(
      "Zahra, SA (corresponding author), Univ Minnesota, Minneapolis, MN 55455 USA.", d);
  REQUIRE(one.size() == 1);
  CHECK(one[0].author == "Zahra, SA");
  CHECK(one[0].institution_raw == "Univ Minnesota");
  CHECK(one[0].country_raw == "USA");

  auto two = parse_reprint(
      "Zahra, SA (corresponding author), Univ Minnesota, Minneapolis, MN 55455 USA.; "
      "Cumming, D (corresponding author), York Univ, Toronto, ON, Canada.",
      d);
  REQUIRE(two.size() == 2);
  CHECK(two[1].author == "Cumming, D");
  CHECK(two[1].institution_raw == "York Univ");
  CHECK(two[1].country_raw == "Canada");

  auto reprint = parse_reprint("Doe, J (reprint author), Univ Oslo, Oslo, Norway.", d);
  REQUIRE(reprint.size() == 1);
  CHECK(reprint[0].country_raw == "Norway");

  CHECK(parse_reprint("", d).empty());
  CHECK(d.empty());

  Diagnostics bad;
  CHECK(parse_reprint("garbage without marker", bad).empty());
  CHECK(bad.size() == 1);
}

TEST_CASE("parse_addresses") {
  Diagnostics d;
  auto a = parse_addresses(
      {"[Cumming, Douglas] York Univ, Schulich Sch Business, Toronto, ON, Canada"}, d);
  REQUIRE(a.size() == 1);
  CHECK(a[0].linked_authors == std::vector<std::string>{"Cumming, Douglas"});
  CHECK(a[0].institution_raw == "York Univ");
  CHECK(a[0].country_raw == "Canada");
  CHECK(a[0].full_text ==
        "[Cumming, Douglas] York Univ, Schulich Sch Business, Toronto, ON, Canada");

  auto b = parse_addresses({"Harvard Univ, Boston, MA 02163 USA"}, d);
  REQUIRE(b.size() == 1);
  CHECK(b[0].linked_authors.empty());
  CHECK(b[0].country_raw == "USA");

  auto c = parse_addresses({"[A, B; C, D] Univ X, Paris, France.", "Univ Y, Lyon, France."}, d);
  REQUIRE(c.size() == 2);
  CHECK(c[0].linked_authors == std::vector<std::string>{"A, B", "C, D"});
  CHECK(c[1].institution_raw == "Univ Y");
}

TEST_CASE("address country token") {
  CHECK(address_country_token("Univ Minnesota, Minneapolis, MN 55455 USA.") == "USA");
  CHECK(address_country_token("Tsinghua Univ, Beijing, Peoples R China.") == "Peoples R China");
  CHECK(address_country_token("Univ Oxford, Oxford OX1 2JD, England") == "England");
}

}  // TEST_SUITE
